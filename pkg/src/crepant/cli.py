"""Command line front end.

Input is a YAML (or JSON) document holding exactly one of::

    cone:
      rays: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [-3, -7, -9, 20]]

    polytope:
      vertices: [[0, 0], [2, 0], [0, 2]]

plus an optional ``options: {budget: N}``.  Every command prints one JSON
document.  Exit status is 0 for a completed answer, 2 for bad input and 3
when a budget cut the computation short.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Any

import yaml

from .cone import (
    ConeError,
    FlatteningMap,
    GorensteinCertificate,
    NotGorenstein,
    gorenstein_vector,
    make_cone,
    support_polytope,
)
from .fvectors import h_from_f
from .lattice import DegenerateRayError
from .polytope import (
    DEFAULT_POINT_BUDGET,
    BudgetExceededError,
    DegeneratePolytopeError,
    LatticePolytope,
    RedundantVertexError,
    lattice_points,
)
from .screening import ScreeningReport, Verdict, screen, screen_cone, ub_final_rhs
from .triangulation import (
    DEFAULT_SEARCH_BUDGET,
    SearchStatus,
    basic_triangulation_search,
    boundary_of,
    f_vector_of,
    full_triangulation,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3

BUDGET_ENV = "CREPANT_BUDGET"


class InputError(Exception):
    pass


@dataclass
class InputDocument:
    rays: list[tuple[int, ...]] | None = None
    vertices: list[tuple[int, ...]] | None = None
    budget: int | None = None


def _int_vectors(value: Any, where: str) -> list[tuple[int, ...]]:
    if not isinstance(value, list) or not value:
        raise InputError(f"{where}: expected a non-empty list of integer vectors")
    out = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or not row:
            raise InputError(f"{where}[{i}]: expected a non-empty list of integers")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise InputError(f"{where}[{i}][{j}]: {x!r} is not an integer")
        out.append(tuple(row))
    dims = {len(r) for r in out}
    if len(dims) != 1:
        raise InputError(f"{where}: vectors have mixed lengths {sorted(dims)}")
    return out


def parse_document(text: str) -> InputDocument:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}: " if mark else ""
        problem = getattr(exc, "problem", None) or str(exc)
        raise InputError(f"{where}{problem}") from None
    if not isinstance(data, dict):
        raise InputError("top level must be a mapping with a 'cone' or 'polytope' key")
    unknown = set(data) - {"cone", "polytope", "options"}
    if unknown:
        raise InputError(f"unknown top-level keys: {sorted(unknown)}")
    if ("cone" in data) == ("polytope" in data):
        raise InputError("exactly one of 'cone' and 'polytope' must be given")
    doc = InputDocument()
    if "cone" in data:
        cone = data["cone"]
        if not isinstance(cone, dict) or "rays" not in cone:
            raise InputError("cone: expected a mapping with a 'rays' list")
        doc.rays = _int_vectors(cone["rays"], "cone.rays")
    else:
        poly = data["polytope"]
        if not isinstance(poly, dict) or "vertices" not in poly:
            raise InputError("polytope: expected a mapping with a 'vertices' list")
        doc.vertices = _int_vectors(poly["vertices"], "polytope.vertices")
    options = data.get("options") or {}
    if not isinstance(options, dict):
        raise InputError("options: expected a mapping")
    if "budget" in options:
        b = options["budget"]
        if isinstance(b, bool) or not isinstance(b, int) or b <= 0:
            raise InputError(f"options.budget: expected a positive integer, got {b!r}")
        doc.budget = b
    return doc


def _resolve_budget(cli_value: int | None, doc: InputDocument) -> int:
    if cli_value is not None:
        return cli_value
    if doc.budget is not None:
        return doc.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise InputError(f"{BUDGET_ENV}={env!r} is not an integer") from None
        if value <= 0:
            raise InputError(f"{BUDGET_ENV} must be positive")
        return value
    return DEFAULT_SEARCH_BUDGET


def _polytope(doc: InputDocument) -> tuple[LatticePolytope, dict]:
    """The support polytope of the document plus provenance for ``--verbose``."""
    if doc.vertices is not None:
        return LatticePolytope(doc.vertices), {}
    cone = make_cone(doc.rays)
    cert = gorenstein_vector(cone)
    if isinstance(cert, NotGorenstein):
        raise InputError(f"cone is not Gorenstein ({cert.reason.value}): {cert.detail}")
    P, fmap = support_polytope(cone, cert)
    return P, {"certificate": cert, "flattening": fmap}


# -- serialization ----------------------------------------------------------

def dumps(obj: Any, indent: int = 0) -> str:
    """JSON with flat arrays of scalars kept on one line."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and any(isinstance(x, (list, dict)) for x in obj):
        items = [inner + dumps(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj)


def _vecs(vs) -> list[list[int]]:
    return [list(v) for v in vs]


def _gorenstein_doc(g) -> dict | None:
    if g is None:
        return None
    if isinstance(g, GorensteinCertificate):
        return {"gorenstein": True, "m_sigma": list(g.m_sigma)}
    return {"gorenstein": False, "reason": g.reason.value, "detail": g.detail}


def _flattening_doc(f: FlatteningMap | None) -> dict | None:
    if f is None:
        return None
    return {"base_point": list(f.base_point), "basis": _vecs(f.basis)}


def report_document(r: ScreeningReport, verbose: bool = False) -> dict:
    doc: dict[str, Any] = {
        "verdict": r.verdict.value,
        "d": r.d,
        "input": {"rays": _vecs(r.rays)} if r.rays is not None else {"vertices": _vecs(r.vertices)},
        "certificate": _gorenstein_doc(r.gorenstein),
        "volume": r.volume,
        "points_total": r.points_total,
        "points_boundary": r.points_boundary,
        "points_interior": (
            r.points_total - r.points_boundary if r.points_total is not None else None
        ),
        "bound_rhs": r.bound_rhs,
        "bound_holds": r.bound_holds,
        "search_status": r.search_status.value if r.search_status else None,
        "search_nodes": r.search_nodes,
        "search_budget": r.search_budget,
        "limiting_stage": r.limiting_stage,
        "witness": _vecs_of_cells(r.witness) if r.witness else None,
    }
    if verbose and r.polytope is not None:
        doc["evidence"] = {
            "support_vertices": _vecs(r.polytope.vertices),
            "flattening": _flattening_doc(r.flattening),
            "facets": [
                {"normal": list(h.normal), "offset": h.offset} for h in r.polytope.facets
            ],
        }
    return doc


def _vecs_of_cells(T) -> list[list[list[int]]]:
    return [[list(T.points[i]) for i in c] for c in T.cells]


# -- commands ---------------------------------------------------------------

def cmd_screen(doc: InputDocument, args) -> tuple[dict, int]:
    budget = _resolve_budget(args.budget, doc)
    if doc.rays is not None:
        report = screen_cone(make_cone(doc.rays), budget)
    else:
        report = screen(LatticePolytope(doc.vertices), budget)
    code = EXIT_BUDGET if report.verdict is Verdict.INCONCLUSIVE else EXIT_OK
    return report_document(report, args.verbose), code


def cmd_points(doc: InputDocument, args) -> tuple[dict, int]:
    P, _ = _polytope(doc)
    pts = lattice_points(P, DEFAULT_POINT_BUDGET)
    out: dict[str, Any] = {
        "total": len(pts.all_points),
        "boundary": len(pts.boundary_points),
        "interior": len(pts.interior_points),
    }
    if args.verbose:
        out["boundary_points"] = _vecs(pts.boundary_points)
        out["interior_points"] = _vecs(pts.interior_points)
    return out, EXIT_OK


def cmd_volume(doc: InputDocument, args) -> tuple[dict, int]:
    P, _ = _polytope(doc)
    return {"volume": P.volume}, EXIT_OK


def cmd_bound(doc: InputDocument, args) -> tuple[dict, int]:
    P, _ = _polytope(doc)
    pts = lattice_points(P, DEFAULT_POINT_BUDGET)
    total, bd = len(pts.all_points), len(pts.boundary_points)
    rhs = ub_final_rhs(total, bd, P.ambient_dim)
    return {
        "d": P.ambient_dim,
        "points_total": total,
        "points_boundary": bd,
        "rhs": rhs,
        "volume": P.volume,
        "holds": P.volume <= rhs,
    }, EXIT_OK


def cmd_fvector(doc: InputDocument, args) -> tuple[dict, int]:
    P, _ = _polytope(doc)
    T = full_triangulation(P)
    f = f_vector_of(T)
    bd = boundary_of(T, check=False).f_vector()
    return {
        "cells": len(T.cells),
        "f": list(f.faces),
        "h": list(h_from_f(f).entries),
        "boundary_f": list(bd.faces),
        "boundary_h": list(h_from_f(bd).entries),
    }, EXIT_OK


def cmd_triangulate(doc: InputDocument, args) -> tuple[dict, int]:
    P, _ = _polytope(doc)
    if not args.exhaustive:
        T = full_triangulation(P)
        return {"kind": "full", "cells": _vecs_of_cells(T)}, EXIT_OK
    budget = _resolve_budget(args.budget, doc)
    result = basic_triangulation_search(P, budget)
    out = {
        "kind": "basic-search",
        "status": result.status.value,
        "nodes": result.nodes,
        "budget": result.budget,
        "candidate_cells": result.candidate_cells,
        "cells": _vecs_of_cells(result.witness) if result.witness else None,
    }
    code = EXIT_BUDGET if result.status is SearchStatus.BUDGET_EXCEEDED else EXIT_OK
    return out, code


COMMANDS = {
    "screen": cmd_screen,
    "points": cmd_points,
    "volume": cmd_volume,
    "bound": cmd_bound,
    "fvector": cmd_fvector,
    "triangulate": cmd_triangulate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crepant",
        description="Screen Gorenstein toric singularities for crepant resolutions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("file", help="input document (YAML or JSON); '-' reads stdin")
        p.add_argument("--verbose", action="store_true", help="include the full evidence chain")
        if name in ("screen", "triangulate"):
            p.add_argument("--budget", type=int, default=None, help="search node budget")
        if name == "triangulate":
            p.add_argument(
                "--exhaustive", action="store_true", help="search for a basic triangulation"
            )
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "budget", None) is not None and args.budget <= 0:
            raise InputError("--budget must be positive")
        if args.file == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
        doc = parse_document(text)
        out, code = COMMANDS[args.command](doc, args)
    except (InputError, ConeError, DegeneratePolytopeError, RedundantVertexError, DegenerateRayError) as exc:
        print(f"crepant: input error: {exc}", file=stderr)
        return EXIT_INPUT
    except BudgetExceededError as exc:
        print(f"crepant: {exc}", file=stderr)
        return EXIT_BUDGET
    print(dumps(out), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
