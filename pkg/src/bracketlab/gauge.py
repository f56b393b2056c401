"""Constant-translation gauge action and a certified fixed-point search.

A translation by a base vector v acts on any polynomial-coefficient structure
by substituting x -> x + v in every coefficient.  Projecting the translated
structure into the order-k jet quotient gives an evaluation map whose zeroes
are exactly the translations moving a fixed point onto the base point; the
search runs floating-point Newton on that map and then re-verifies a rational
rounding of the result exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .polyjet import Poly
from .gca import Derivation, GElement, commutator
from .linal import kernel_and_rank
from .algebroid import la_schemas, la_quotient_complex
from .sympoisson import (
    BialgebroidPair,
    _bialgebroid_schemas,
    bialgebroid_complex,
    sym_bracket,
)


@dataclass
class TranslationGauge:
    """Translation by a base vector; acts by substituting x -> x + v."""

    v: list

    def apply(self, structure):
        return gauge_translate(structure, self.v)


@dataclass
class SearchConfig:
    radius: float = 1.0
    tol: float = 1e-10
    max_iter: int = 60
    denominator_bound: int = 10**12


class GaugeSearchError(ValueError):
    pass


def gauge_translate(structure, v):
    """Substitute x -> x + v in every coefficient (Derivation or GElement)."""
    return structure.map_polys(lambda q: q.translate(v))


def _taylor_poly(q: Poly, alpha) -> Poly:
    """d^alpha q / alpha! as a polynomial; evaluating it at a point gives the
    alpha-th jet coefficient of q there."""
    out = q
    denom = 1
    for i, k in enumerate(alpha):
        for _ in range(k):
            out = out.partial(i)
        denom *= math.factorial(k)
    return out.scale(Fraction(1, denom))


# ---------------------------------------------------------------------------
# quotient contexts
# ---------------------------------------------------------------------------


class AlgebroidContext:
    """Order-k jet-quotient context for a degree-1 structure derivation."""

    def __init__(self, Q: Derivation, p, k: int):
        self.Q = Q
        self.p = [Fraction(v) for v in p]
        self.k = k
        self.n = Q.table.n
        self.complex = la_quotient_complex(Q, p, k)
        self.w0, self.w1, self.w2 = la_schemas(Q.table, p, k)

    def translate(self, structure, v):
        return gauge_translate(structure, v)

    def bracket(self, a, b):
        return commutator(a, b)

    def project1(self, structure):
        return self.w1.project(structure)

    def lift1(self, vec):
        return self.w1.lift(vec)

    def project2(self, structure):
        return self.w2.project(structure)

    def ev_polys(self, structure):
        out = []
        for e_idx, alpha in self.w1.basis:
            kind, idx, word, _ = self.w1.entries[e_idx]
            img = (
                structure.base_images[idx]
                if kind == "x"
                else structure.fiber_images[idx]
            )
            out.append(_taylor_poly(img.coeff(word), alpha))
        return out


class PairContext:
    """Order-k jet-quotient context for a dual frame pair; the structure
    being translated is the sum element pi_a + f_b."""

    def __init__(self, pair: BialgebroidPair, p, k: int):
        self.pair = pair
        self.st = pair.st
        self.p = [Fraction(v) for v in p]
        self.k = k
        self.n = pair.st.n
        self.complex = bialgebroid_complex(pair, p, k)
        self.w0, self.w1, self.w2 = _bialgebroid_schemas(pair.st, p, k)

    @property
    def structure(self) -> GElement:
        return self.pair.pi_a + self.pair.f_b

    def translate(self, structure, v):
        return gauge_translate(structure, v)

    def bracket(self, a, b):
        return sym_bracket(self.st, a, b)

    def project1(self, structure):
        return self.w1.project(structure)

    def lift1(self, vec):
        return self.w1.lift(vec)

    def project2(self, structure):
        return self.w2.project(structure)

    def ev_polys(self, structure):
        out = []
        for e_idx, alpha in self.w1.basis:
            word, _ = self.w1.entries[e_idx]
            out.append(_taylor_poly(structure.coeff(word), alpha))
        return out


# ---------------------------------------------------------------------------
# the evaluation and curvature maps
# ---------------------------------------------------------------------------


def ev_map(structure, v, context):
    """Class of the translated structure in the W1 label basis.

    Exact (Fractions) when every component of v is rational; floating point
    otherwise.
    """
    if all(isinstance(c, (int, Fraction)) for c in v):
        return context.project1(context.translate(structure, v))
    polys = context.ev_polys(structure)
    pt = [float(pi) + float(vi) for pi, vi in zip(context.p, v)]
    return [q.eval_float(pt) for q in polys]


def r_map(v, structure, w, context):
    """Quadratic curvature map on W1 classes, valued in W2; vanishes on the
    evaluation class of any structure satisfying its structure equation."""
    X = context.translate(structure, v)
    s1e = context.lift1(context.project1(X))
    s1w = context.lift1(w)
    out = context.bracket(X - s1e, s1w)
    out = out + context.bracket(s1w, s1w).scale(Fraction(1, 2))
    return context.project2(out)


# ---------------------------------------------------------------------------
# fixed-point search
# ---------------------------------------------------------------------------


@dataclass
class SearchResult:
    v: list
    iterations: int
    residual: float
    verified: bool
    residual_class: list = field(default_factory=list)
    family: list = field(default_factory=list)
    message: str = ""


def find_fixed_point(structure, context, cfg: SearchConfig, directions=None):
    """Newton search for a translation v with ev(v) = 0.

    Iterates in floating point on the exact polynomial evaluation map (least
    squares steps, so degenerate directions are handled), then rounds the
    result to rationals and re-verifies membership exactly.  Raises
    GaugeSearchError when the iteration leaves the search radius or runs out
    of iterations; a result with verified=False carries the exact residual
    class of the rounded point.
    """
    import numpy as np

    n = context.n
    free = list(directions) if directions is not None else list(range(n))
    polys = context.ev_polys(structure)
    jpolys = [[q.partial(i) for i in free] for q in polys]
    v = [0.0] * n
    it = 0
    for it in range(1, cfg.max_iter + 1):
        pt = [float(pi) + vi for pi, vi in zip(context.p, v)]
        F = np.array([q.eval_float(pt) for q in polys])
        if float(np.linalg.norm(F)) <= cfg.tol:
            break
        J = np.array([[jq.eval_float(pt) for jq in row] for row in jpolys])
        step, *_ = np.linalg.lstsq(J, -F, rcond=None)
        for pos, i in enumerate(free):
            v[i] += float(step[pos])
        if math.sqrt(sum(c * c for c in v)) > cfg.radius:
            raise GaugeSearchError("search left the trust radius")
    else:
        raise GaugeSearchError("maximum number of iterations exceeded")

    def rounded(bound):
        return [
            Fraction(v[i]).limit_denominator(bound) if i in free else Fraction(0)
            for i in range(n)
        ]

    # try coarse roundings first so a nearby simple rational is found even
    # when Newton stopped a little short of the root
    bound = 1
    verified = False
    v_rat, ev_exact = [], []
    while bound <= cfg.denominator_bound:
        v_rat = rounded(bound)
        ev_exact = context.project1(context.translate(structure, v_rat))
        if all(c == 0 for c in ev_exact):
            verified = True
            break
        bound *= 10
    _, ker0 = kernel_and_rank(context.complex.D0)
    family = [
        [(lbl, c) for lbl, c in zip(context.complex.labels0, vec) if c]
        for vec in ker0
    ]
    residual = math.sqrt(sum(float(c) ** 2 for c in ev_exact))
    return SearchResult(
        v=v_rat if verified else v,
        iterations=it,
        residual=residual,
        verified=verified,
        residual_class=[] if verified else ev_exact,
        family=family,
        message="membership verified exactly"
        if verified
        else "rounded point is not an exact zero; residual class returned",
    )
