"""Command-line front end.

Reads a self-describing JSON structure definition, dispatches one of the
analyses (exact structure-equation check, quotient-complex cohomology,
filtration table, gauge fixed-point search), and emits a deterministic
report as JSON or rendered text.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .polyjet import Poly, parse_poly
from .linal import cohomology, graded_pieces
from .algebroid import (
    IsotropyAlgebra,
    LieAlgebroidData,
    LieNAlgebroidData,
    build_q,
    build_q_graded,
    fixed_point_order,
    fixed_point_type,
    la_filtration,
    la_quotient_complex,
    lna_quotient_complex,
    mc_defect,
)
from .sympoisson import (
    BialgebroidPair,
    CourantData,
    PNData,
    b_pair,
    b_reduced_h1,
    bialgebroid_complex,
    bialgebroid_table,
    bivector_function,
    courant_complex,
    courant_fixed_point_order,
    courant_theta,
    derived_bracket,
    lift_algebroid,
    lift_dual_algebroid,
    pair_fixed_point_order,
    pn_compat_errors,
    pn_complex,
    poisson_complex,
    poisson_pair,
    quad_lie_complex,
    standard_tangent_data,
    sym_bracket,
)
from .dirac import (
    DiracGraph,
    b_tangent_split,
    dirac_complex,
    dirac_mc_defect,
    graph_split,
    tangent_split,
)
from .gauge import (
    AlgebroidContext,
    GaugeSearchError,
    PairContext,
    SearchConfig,
    find_fixed_point,
    gauge_translate,
)

KINDS = (
    "lie_algebroid",
    "lie_n_algebroid",
    "poisson",
    "b_poisson",
    "poisson_nijenhuis",
    "lie_bialgebroid",
    "courant",
    "quadratic_lie",
    "dirac_split",
)


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _frac(v, where: str) -> Fraction:
    if isinstance(v, float):
        raise InputError(f"{where}: floating point literals are not exact; "
                         "use integers or p/q strings")
    try:
        return Fraction(str(v))
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"{where}: not a rational number ({e})") from None


def _poly(v, n: int, where: str) -> Poly:
    if isinstance(v, float):
        raise InputError(f"{where}: floating point literals are not exact")
    if isinstance(v, int):
        return Poly.const(n, v)
    if isinstance(v, str):
        try:
            return parse_poly(v, n)
        except ValueError as e:
            raise InputError(f"{where}: {e}") from None
    raise InputError(f"{where}: expected a polynomial literal")


def _poly_matrix(v, n: int, shape, where: str):
    def walk(node, dims, path):
        if not dims:
            return _poly(node, n, f"{where}{path}")
        if not isinstance(node, list) or (
            dims[0] is not None and len(node) != dims[0]
        ):
            want = "any" if dims[0] is None else str(dims[0])
            raise InputError(
                f"{where}{path}: expected a list of length {want}"
            )
        return [walk(x, dims[1:], f"{path}[{i}]") for i, x in enumerate(node)]

    return walk(v, list(shape), "")


def _frac_matrix(v, shape, where: str):
    def walk(node, dims, path):
        if not dims:
            return _frac(node, f"{where}{path}")
        if not isinstance(node, list) or (
            dims[0] is not None and len(node) != dims[0]
        ):
            raise InputError(f"{where}{path}: expected a list of length {dims[0]}")
        return [walk(x, dims[1:], f"{path}[{i}]") for i, x in enumerate(node)]

    return walk(v, list(shape), "")


@dataclass
class StructureDef:
    kind: str
    base_dim: int
    point: list
    order: object
    fields: dict
    echo: dict = field(default_factory=dict)


def parse_structure(source: str) -> StructureDef:
    """Parse a structure definition from a file path or raw JSON text."""
    text = source
    if os.path.exists(source):
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: line {e.lineno}, column {e.colno}: {e.msg}")
    if not isinstance(raw, dict):
        raise InputError("top level must be a JSON object")
    kind = raw.get("kind")
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if "base_dim" not in raw or not isinstance(raw["base_dim"], int):
        raise InputError("base_dim: required integer field")
    n = raw["base_dim"]
    point = [_frac(v, f"point[{i}]") for i, v in enumerate(raw.get("point", [0] * n))]
    if len(point) != n:
        raise InputError(f"point: expected {n} entries, got {len(point)}")
    order = raw.get("order", 1)
    fields = {}

    def rank_of(key="rank"):
        if key not in raw or not isinstance(raw[key], int) or raw[key] < 1:
            raise InputError(f"{key}: required positive integer field")
        return raw[key]

    if kind in ("lie_algebroid", "lie_n_algebroid", "lie_bialgebroid"):
        r = rank_of()
        fields["rank"] = r
        fields["anchor"] = _poly_matrix(raw.get("anchor"), n, (r, n), "anchor")
        fields["bracket"] = _poly_matrix(
            raw.get("bracket"), n, (r, r, r), "bracket"
        )
    if kind == "lie_n_algebroid":
        r2 = rank_of("rank2")
        r = fields["rank"]
        fields["rank2"] = r2
        fields["unary"] = _poly_matrix(raw.get("unary"), n, (r2, r), "unary")
        if "mixed" in raw:
            fields["mixed"] = _poly_matrix(raw["mixed"], n, (r, r2, r2), "mixed")
        if "ternary" in raw:
            fields["ternary"] = _poly_matrix(
                raw["ternary"], n, (r, r, r, r2), "ternary"
            )
        if not (isinstance(order, list) and len(order) == 2):
            raise InputError("order: two-level structures need [k, l]")
        order = (int(order[0]), int(order[1]))
    elif kind == "lie_bialgebroid":
        r = fields["rank"]
        fields["dual_anchor"] = _poly_matrix(
            raw.get("dual_anchor"), n, (r, n), "dual_anchor"
        )
        fields["dual_bracket"] = _poly_matrix(
            raw.get("dual_bracket"), n, (r, r, r), "dual_bracket"
        )
    if kind in ("poisson", "b_poisson", "poisson_nijenhuis"):
        fields["bivector"] = _poly_matrix(
            raw.get("bivector"), n, (n, n), "bivector"
        )
    if kind == "poisson_nijenhuis":
        fields["endomorphism"] = _poly_matrix(
            raw.get("endomorphism"), n, (n, n), "endomorphism"
        )
    if kind in ("b_poisson", "dirac_split"):
        h = raw.get("hypersurface", 0)
        if not isinstance(h, int) or not 0 <= h < n:
            raise InputError("hypersurface: coordinate index out of range")
        fields["hypersurface"] = h
    if kind == "courant":
        r = rank_of()
        fields["rank"] = r
        fields["pairing"] = _frac_matrix(raw.get("pairing"), (r, r), "pairing")
        fields["anchor"] = _poly_matrix(raw.get("anchor"), n, (r, n), "anchor")
        fields["cubic"] = _poly_matrix(raw.get("cubic"), n, (r, r, r), "cubic")
    if kind == "quadratic_lie":
        r = rank_of("dim")
        fields["dim"] = r
        fields["pairing"] = _frac_matrix(raw.get("pairing"), (r, r), "pairing")
        fields["bracket"] = _frac_matrix(raw.get("bracket"), (r, r, r), "bracket")
        action = raw.get("action")
        if not isinstance(action, list) or len(action) != r:
            raise InputError(f"action: expected {r} matrices")
        fields["action"] = [
            _frac_matrix(m, (n, n), f"action[{i}]") for i, m in enumerate(action)
        ]
    if kind == "dirac_split":
        split = raw.get("split", "tangent")
        if split not in ("tangent", "b_tangent"):
            raise InputError("split: expected 'tangent' or 'b_tangent'")
        fields["split"] = split
        fields["graph"] = _poly_matrix(raw.get("graph"), n, (n, n), "graph")
    if kind not in ("lie_n_algebroid",):
        order = int(order) if not isinstance(order, list) else order

    echo = {"kind": kind, "base_dim": n}
    for key in ("rank", "rank2", "dim", "hypersurface", "split"):
        if key in fields:
            echo[key] = fields[key]
    echo["point"] = [str(v) for v in point]
    echo["order"] = list(order) if isinstance(order, tuple) else order
    return StructureDef(kind, n, point, order, fields, echo)


def _check_degree_bound(sd: StructureDef, bound):
    if bound is None:
        return
    def walk(node, path):
        if isinstance(node, Poly):
            if node.total_degree() > bound:
                raise InputError(
                    f"{path}: polynomial degree exceeds the bound {bound}"
                )
        elif isinstance(node, list):
            for i, x in enumerate(node):
                walk(x, f"{path}[{i}]")
    for key, val in sd.fields.items():
        walk(val, key)


# ---------------------------------------------------------------------------
# coordinate adaptation for hypersurface kinds
# ---------------------------------------------------------------------------


def _permute_poly(q: Poly, perm) -> Poly:
    out = {}
    for expo, c in q.terms.items():
        new = [0] * len(expo)
        for i, e in enumerate(expo):
            new[perm[i]] = e
        out[tuple(new)] = c
    return Poly(q.n, out)


def _adapt_hypersurface(sd: StructureDef, matrices):
    """Move the hypersurface coordinate to position 0: returns the permuted
    point and matrices (rows/columns follow the coordinates)."""
    h = sd.fields.get("hypersurface", 0)
    n = sd.base_dim
    if h == 0:
        return sd.point, matrices
    perm = [0] * n  # perm[old] = new
    perm[h] = 0
    pos = 1
    for i in range(n):
        if i != h:
            perm[i] = pos
            pos += 1
    point = [None] * n
    for i, v in enumerate(sd.point):
        point[perm[i]] = v
    out = []
    for m in matrices:
        new = [[None] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                new[perm[a]][perm[b]] = _permute_poly(m[a][b], perm)
        out.append(new)
    return point, out


# ---------------------------------------------------------------------------
# per-kind assembly
# ---------------------------------------------------------------------------


def _algebroid_data(sd: StructureDef) -> LieAlgebroidData:
    return LieAlgebroidData(sd.base_dim, sd.fields["rank"], sd.fields["anchor"],
                            sd.fields["bracket"])


def _lna_data(sd: StructureDef) -> LieNAlgebroidData:
    return LieNAlgebroidData(
        sd.base_dim,
        sd.fields["rank"],
        sd.fields["rank2"],
        sd.fields["anchor"],
        sd.fields["bracket"],
        sd.fields["unary"],
        sd.fields.get("mixed"),
        sd.fields.get("ternary"),
    )


def _bialgebroid_pair(sd: StructureDef) -> BialgebroidPair:
    st = bialgebroid_table(sd.base_dim, sd.fields["rank"])
    pi_a = lift_algebroid(_algebroid_data(sd), st)
    dual = LieAlgebroidData(
        sd.base_dim, sd.fields["rank"], sd.fields["dual_anchor"],
        sd.fields["dual_bracket"],
    )
    f_b = lift_dual_algebroid(dual, st)
    return BialgebroidPair(st, pi_a, f_b)


def _courant_data(sd: StructureDef) -> CourantData:
    return CourantData(sd.base_dim, sd.fields["rank"], sd.fields["pairing"],
                       sd.fields["anchor"], sd.fields["cubic"])


def _quad_data(sd: StructureDef):
    g = IsotropyAlgebra(sd.fields["dim"], sd.fields["bracket"])
    return g, sd.fields["pairing"], sd.fields["action"]


def _dirac_split(sd: StructureDef):
    point, (graph,) = _adapt_hypersurface(sd, [sd.fields["graph"]])
    base = (
        tangent_split(sd.base_dim)
        if sd.fields["split"] == "tangent"
        else b_tangent_split(sd.base_dim)
    )
    return base, DiracGraph.from_matrix(base.st, graph), point


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------

_EQ_ERR = "structure does not satisfy the structure equation"


def _structure_errors(sd: StructureDef) -> list:
    """Exact structure-equation status; empty list means verified."""
    kind = sd.kind
    try:
        if kind == "lie_algebroid":
            return [] if mc_defect(build_q(_algebroid_data(sd))).is_zero() else [_EQ_ERR]
        if kind == "lie_n_algebroid":
            return [] if mc_defect(build_q_graded(_lna_data(sd))).is_zero() else [_EQ_ERR]
        if kind == "poisson":
            n = sd.base_dim
            st = bialgebroid_table(n, n)
            pi_dr = lift_algebroid(standard_tangent_data(n), st)
            f_pi = bivector_function(st, sd.fields["bivector"])
            ok = derived_bracket(st, pi_dr, f_pi, f_pi).is_zero()
            return [] if ok else ["bivector does not satisfy the structure equation"]
        if kind == "b_poisson":
            point, (pi,) = _adapt_hypersurface(sd, [sd.fields["bivector"]])
            return b_pair(sd.base_dim, pi).mc_errors()
        if kind == "poisson_nijenhuis":
            return pn_compat_errors(
                PNData(sd.base_dim, sd.fields["bivector"], sd.fields["endomorphism"])
            )
        if kind == "lie_bialgebroid":
            return _bialgebroid_pair(sd).mc_errors()
        if kind == "courant":
            _, defect = courant_theta(_courant_data(sd))
            return [] if defect.is_zero() else [_EQ_ERR]
        if kind == "quadratic_lie":
            g, pairing, taus = _quad_data(sd)
            g.check_jacobi()
            from .sympoisson import quadratic_courant_data

            _, defect = courant_theta(quadratic_courant_data(g, pairing, taus))
            return [] if defect.is_zero() else [_EQ_ERR]
        if kind == "dirac_split":
            base, graph, _ = _dirac_split(sd)
            defect = dirac_mc_defect(base, graph)
            return [] if defect.is_zero() else ["graph does not satisfy the structure equation"]
    except ValueError as e:
        return [str(e)]
    raise InputError(f"unknown kind {kind}")


def _detected_order(sd: StructureDef):
    kind = sd.kind
    if kind == "lie_algebroid":
        return fixed_point_order(build_q(_algebroid_data(sd)), sd.point)
    if kind == "lie_n_algebroid":
        return list(fixed_point_type(build_q_graded(_lna_data(sd)), sd.point))
    if kind == "poisson":
        st = bialgebroid_table(sd.base_dim, sd.base_dim)
        f_pi = bivector_function(st, sd.fields["bivector"])
        orders = [
            q.recenter(sd.point).vanishing_order() for q in f_pi.terms.values()
        ]
        return min(orders) if orders else None
    if kind == "b_poisson":
        point, (pi,) = _adapt_hypersurface(sd, [sd.fields["bivector"]])
        return pair_fixed_point_order(b_pair(sd.base_dim, pi), point)
    if kind == "poisson_nijenhuis":
        st = bialgebroid_table(sd.base_dim, sd.base_dim)
        f_pi = bivector_function(st, sd.fields["bivector"])
        orders = [
            q.recenter(sd.point).vanishing_order() for q in f_pi.terms.values()
        ]
        return min(orders) if orders else None
    if kind == "lie_bialgebroid":
        return pair_fixed_point_order(_bialgebroid_pair(sd), sd.point)
    if kind == "courant":
        d = _courant_data(sd)
        theta, _ = courant_theta(d)
        return courant_fixed_point_order(d, theta, sd.point)
    if kind == "quadratic_lie":
        return 1
    if kind == "dirac_split":
        return 1
    raise InputError(f"unknown kind {kind}")


def _governing_complex(sd: StructureDef):
    kind = sd.kind
    if kind == "lie_algebroid":
        return la_quotient_complex(build_q(_algebroid_data(sd)), sd.point, sd.order)
    if kind == "lie_n_algebroid":
        return lna_quotient_complex(build_q_graded(_lna_data(sd)), sd.point, sd.order)
    if kind == "poisson":
        return poisson_complex(sd.fields["bivector"], sd.point, sd.order)
    if kind == "b_poisson":
        point, (pi,) = _adapt_hypersurface(sd, [sd.fields["bivector"]])
        return bialgebroid_complex(b_pair(sd.base_dim, pi), point, sd.order)
    if kind == "poisson_nijenhuis":
        d = PNData(sd.base_dim, sd.fields["bivector"], sd.fields["endomorphism"])
        return pn_complex(d, sd.point, sd.order)
    if kind == "lie_bialgebroid":
        return bialgebroid_complex(_bialgebroid_pair(sd), sd.point, sd.order)
    if kind == "courant":
        return courant_complex(_courant_data(sd), sd.point, sd.order)
    if kind == "quadratic_lie":
        g, pairing, taus = _quad_data(sd)
        return quad_lie_complex(g, pairing, taus)
    if kind == "dirac_split":
        base, graph, point = _dirac_split(sd)
        return dirac_complex(graph_split(base, graph), point)
    raise InputError(f"unknown kind {kind}")


def _fmt_frac(v) -> str:
    return str(v)


def _reps_json(reps):
    return [[[lbl, _fmt_frac(c)] for lbl, c in rep] for rep in reps]


def run(command: str, sd: StructureDef, options=None) -> dict:
    """Execute one command on a parsed structure definition."""
    options = options or {}
    t0 = time.perf_counter()
    report = dict(sd.echo)
    report["command"] = command
    errors = _structure_errors(sd)
    report["mc_verified"] = not errors
    report["errors"] = errors
    if command == "check" or errors:
        if options.get("timing"):
            report["timing_ms"] = round((time.perf_counter() - t0) * 1000, 3)
        return report

    det = _detected_order(sd)
    report["detected_order"] = (
        det if not isinstance(det, float) else ("inf" if det == float("inf") else int(det))
    )
    if command in ("cohomology", "graded"):
        C = _governing_complex(sd)
        rep = cohomology(C)
        report["dims"] = list(C.dims)
        report["h0_dim"] = rep.h0_dim
        report["h1_dim"] = rep.h1_dim
        report["h1_representatives"] = _reps_json(rep.h1_representatives)
        governing = rep.h1_dim
        if options.get("reduced"):
            if sd.kind != "b_poisson":
                raise InputError("--reduced applies only to b_poisson inputs")
            if sd.order != 1:
                raise InputError("--reduced requires order 1")
            point, (pi,) = _adapt_hypersurface(sd, [sd.fields["bivector"]])
            red = b_reduced_h1(pi, point)
            report["reduced_h1"] = red
            governing = red
        report["verdict"] = (
            "stability criterion met" if governing == 0 else "criterion failed"
        )
        if command == "graded" or options.get("filtration"):
            if sd.kind != "lie_algebroid":
                raise InputError("the filtration table applies only to lie_algebroid inputs")
            Q = build_q(_algebroid_data(sd))
            levels = la_filtration(Q.table, sd.point, sd.order)
            pieces = graded_pieces(C, levels)
            table = []
            for t, P in enumerate(pieces):
                prep = cohomology(P)
                table.append(
                    {
                        "level": t,
                        "dims": list(P.dims),
                        "h0_dim": prep.h0_dim,
                        "h1_dim": prep.h1_dim,
                    }
                )
            report["gr_table"] = table
    elif command == "search":
        report.update(_search(sd, options))
    else:
        raise InputError(f"unknown command {command!r}")
    if options.get("timing"):
        report["timing_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return report


def _search_context(sd: StructureDef):
    if sd.kind == "lie_algebroid":
        Q = build_q(_algebroid_data(sd))
        return AlgebroidContext(Q, sd.point, sd.order)
    if sd.kind == "poisson":
        pair = poisson_pair(sd.base_dim, sd.fields["bivector"])
        return PairContext(pair, sd.point, sd.order)
    if sd.kind == "b_poisson":
        point, (pi,) = _adapt_hypersurface(sd, [sd.fields["bivector"]])
        return PairContext(b_pair(sd.base_dim, pi), point, sd.order)
    raise InputError(f"search is not supported for kind {sd.kind!r}")


def _search_structure(sd: StructureDef):
    if sd.kind == "lie_algebroid":
        return build_q(_algebroid_data(sd))
    if sd.kind == "poisson":
        pair = poisson_pair(sd.base_dim, sd.fields["bivector"])
        return pair.pi_a + pair.f_b
    if sd.kind == "b_poisson":
        _, (pi,) = _adapt_hypersurface(sd, [sd.fields["bivector"]])
        pair = b_pair(sd.base_dim, pi)
        return pair.pi_a + pair.f_b
    raise InputError(f"search is not supported for kind {sd.kind!r}")


def _search(sd: StructureDef, options) -> dict:
    perturb_src = options.get("perturb")
    if not perturb_src:
        raise InputError("search requires --perturb <file>")
    text = perturb_src
    if os.path.exists(perturb_src):
        with open(perturb_src, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"perturbation file: invalid JSON: {e.msg}")
    if "translate" in raw:
        w = [_frac(v, f"translate[{i}]") for i, v in enumerate(raw["translate"])]
        if len(w) != sd.base_dim:
            raise InputError("translate: wrong number of components")
        structure = gauge_translate(_search_structure(sd), w)
        perturb_echo = {"translate": [str(v) for v in w]}
    else:
        psd = parse_structure(json.dumps(raw))
        if psd.kind != sd.kind or psd.base_dim != sd.base_dim:
            raise InputError("perturbation structure must match the base kind")
        perrs = _structure_errors(psd)
        if perrs:
            raise InputError("perturbed structure: " + "; ".join(perrs))
        structure = _search_structure(psd)
        perturb_echo = {"kind": psd.kind}
    context = _search_context(sd)
    cfg = SearchConfig(
        tol=float(options.get("tol", 1e-10)),
        max_iter=int(options.get("max_iter", 60)),
    )
    try:
        res = find_fixed_point(structure, context, cfg)
    except GaugeSearchError as e:
        return {"search": {"perturbation": perturb_echo, "error": str(e)}}
    return {
        "search": {
            "perturbation": perturb_echo,
            "v": [str(c) for c in res.v] if res.verified else [float(c) for c in res.v],
            "iterations": res.iterations,
            "residual": float(res.residual),
            "verified": res.verified,
            "family": [[[lbl, str(c)] for lbl, c in vec] for vec in res.family],
            "message": res.message,
        }
    }


# ---------------------------------------------------------------------------
# rendering and entry point
# ---------------------------------------------------------------------------


def _render_text(report: dict) -> str:
    lines = []

    def emit(key, val, indent=0):
        pad = "  " * indent
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            for k, v in val.items():
                emit(k, v, indent + 1)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(
                    f"{pad}  " + "  ".join(f"{k}={json.dumps(v)}" for k, v in item.items())
                )
        else:
            lines.append(f"{pad}{key}: {json.dumps(val)}")

    for k, v in report.items():
        emit(k, v)
    return "\n".join(lines)


def _run_one(command, path, options):
    try:
        sd = parse_structure(path)
        _check_degree_bound(sd, options.get("degree_bound"))
        report = run(command, sd, options)
        failed = bool(report.get("errors")) or "error" in report.get("search", {})
        return report, 1 if failed else 0
    except (InputError, ValueError) as e:
        return {"error": str(e), "input": path}, 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="bracketlab",
        description="exact stability criteria for fixed points of bracket structures",
    )
    ap.add_argument("command", choices=["check", "cohomology", "graded", "search"])
    ap.add_argument("path", nargs="?", help="structure definition file (JSON)")
    ap.add_argument("--dir", dest="batch_dir", help="run every .json file in a directory")
    ap.add_argument("--reduced", action="store_true")
    ap.add_argument("--filtration", action="store_true")
    ap.add_argument("--perturb", help="perturbation file for search")
    ap.add_argument("--format", choices=["json", "text"], default="json")
    ap.add_argument("--degree-bound", type=int, default=None)
    ap.add_argument(
        "--timing", action="store_true",
        help="append a timing_ms field (off by default so reports are "
        "byte-identical for identical input)",
    )
    ap.add_argument("--tol", type=float, default=1e-10)
    ap.add_argument("--max-iter", type=int, default=60)
    args = ap.parse_args(argv)

    options = {
        "reduced": args.reduced,
        "filtration": args.filtration,
        "perturb": args.perturb,
        "degree_bound": args.degree_bound,
        "tol": args.tol,
        "max_iter": args.max_iter,
        "timing": args.timing,
    }

    if args.batch_dir:
        files = sorted(
            f for f in os.listdir(args.batch_dir) if f.endswith(".json")
        )
        paths = [os.path.join(args.batch_dir, f) for f in files]
        with concurrent.futures.ThreadPoolExecutor() as pool:
            results = list(
                pool.map(lambda p: _run_one(args.command, p, options), paths)
            )
        code = max((c for _, c in results), default=0)
        reports = [
            dict(r, input=f) for (r, _), f in zip(results, files)
        ]
        if args.format == "json":
            print(json.dumps(reports, indent=2))
        else:
            print("\n\n".join(_render_text(r) for r in reports))
        return code

    if not args.path:
        print(json.dumps({"error": "no input file (give a path or --dir)"}))
        return 1
    report, code = _run_one(args.command, args.path, options)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(_render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
