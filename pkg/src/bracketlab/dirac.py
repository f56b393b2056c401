"""Deformations of one side of a transverse frame pair by quadratic graphs.

A split pair carries two structures in one dual-frame symplectic table: a
bidegree (2,1) element on the side being deformed and a bidegree (1,2)
element on the complementary side.  Deformations are quadratic xi-elements
(graphs of skew maps into the complement); the structure equation for a
graph, its induced structure, and the order-1 quotient complex at a fixed
point all come out of the big bracket.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .polyjet import Poly
from .gca import GElement
from .linal import QMatrix, TwoTermComplex, _Echelon, invert_matrix, kernel_and_rank
from .algebroid import _as_poly
from .sympoisson import (
    BialgebroidPair,
    SymplecticTable,
    b_tangent_data,
    bialgebroid_table,
    derived_bracket,
    lift_dual_algebroid,
    standard_tangent_data,
    sym_bracket,
)


# ---------------------------------------------------------------------------
# split pairs and graphs
# ---------------------------------------------------------------------------


@dataclass
class SplitCourantData:
    """A dual frame pair: `pair.pi_a` is the structure on the deforming side
    (its cochains are the xi-words), `pair.f_b` the structure on the
    complement (it supplies the bracket on deformations)."""

    pair: BialgebroidPair

    def __post_init__(self):
        errs = self.pair.mc_errors()
        if errs:
            raise ValueError("; ".join(errs))

    @property
    def st(self) -> SymplecticTable:
        return self.pair.st

    @property
    def structure(self) -> GElement:
        return self.pair.pi_a

    @property
    def dual_structure(self) -> GElement:
        return self.pair.f_b


def tangent_split(n: int) -> SplitCourantData:
    """Split pair over the coordinate frame: zero structure on the deforming
    side, the full tangent structure on the complement."""
    st = bialgebroid_table(n, n)
    f = lift_dual_algebroid(standard_tangent_data(n), st)
    return SplitCourantData(BialgebroidPair(st, GElement.zero(st.gt), f))


def b_tangent_split(n: int) -> SplitCourantData:
    """Same as tangent_split over the hypersurface-adapted frame."""
    st = bialgebroid_table(n, n)
    f = lift_dual_algebroid(b_tangent_data(n), st)
    return SplitCourantData(BialgebroidPair(st, GElement.zero(st.gt), f))


class DiracGraph:
    """Quadratic deformation parameter: a sum of poly * xi_a xi_b words.

    Such an element is the graph of a skew bundle map from the deforming
    side into its complement; skewness is automatic in this representation.
    """

    def __init__(self, st: SymplecticTable, element: GElement):
        if element.table is not st.gt and element.table != st.gt:
            raise ValueError("element does not live in the given table")
        for word in element.terms:
            if len(word) != 2 or any(g >= st.th_start for g in word):
                raise ValueError(
                    "graph element must be quadratic in the xi generators"
                )
        self.st = st
        self.element = element

    @classmethod
    def from_components(cls, st: SymplecticTable, comps) -> "DiracGraph":
        """Build from {(a < b): coefficient} frame components."""
        out = GElement.zero(st.gt)
        for (a, b), poly in comps.items():
            if not 0 <= a < b < st.th_start:
                raise ValueError(f"component index {(a, b)} is not valid")
            out = out + GElement.from_word(st.gt, (a, b), _as_poly(st.n, poly))
        return cls(st, out)

    @classmethod
    def from_matrix(cls, st: SymplecticTable, mat) -> "DiracGraph":
        """Build from an antisymmetric coefficient matrix mat[a][b]."""
        r = st.th_start
        rows = [[_as_poly(st.n, v) for v in row] for row in mat]
        if len(rows) != r or any(len(row) != r for row in rows):
            raise ValueError("component matrix has wrong shape")
        comps = {}
        for a in range(r):
            if rows[a][a]:
                raise ValueError("component matrix has a nonzero diagonal entry")
            for b in range(a + 1, r):
                if rows[a][b] != rows[b][a].scale(-1):
                    raise ValueError("component matrix is not antisymmetric")
                if rows[a][b]:
                    comps[(a, b)] = rows[a][b]
        return cls.from_components(st, comps)


# ---------------------------------------------------------------------------
# structure equation and induced structures
# ---------------------------------------------------------------------------


def dirac_mc_defect(d: SplitCourantData, A: DiracGraph) -> GElement:
    """d(A) + 1/2 [A, A] for the differential of the deforming side and the
    derived bracket of the complement; zero iff the graph of A closes."""
    st = d.st
    out = sym_bracket(st, d.structure, A.element)
    out = out + derived_bracket(st, d.dual_structure, A.element, A.element).scale(
        Fraction(1, 2)
    )
    return out


def graph_split(d: SplitCourantData, A: DiracGraph) -> SplitCourantData:
    """Split pair with the deforming side replaced by the graph of A."""
    if dirac_mc_defect(d, A):
        raise ValueError("graph does not satisfy the structure equation")
    st = d.st
    new_structure = d.structure + sym_bracket(st, A.element, d.dual_structure)
    return SplitCourantData(BialgebroidPair(st, new_structure, d.dual_structure))


def poisson_split(pi) -> SplitCourantData:
    """Graph of a Poisson bivector over the coordinate frame."""
    n = len(pi)
    base = tangent_split(n)
    return graph_split(base, DiracGraph.from_matrix(base.st, pi))


def b_poisson_split(pi) -> SplitCourantData:
    """Graph of a hypersurface-adapted bivector (frame components pi[a][b])."""
    n = len(pi)
    base = b_tangent_split(n)
    return graph_split(base, DiracGraph.from_matrix(base.st, pi))


# ---------------------------------------------------------------------------
# order-1 quotient complex at a fixed point
# ---------------------------------------------------------------------------


def _extend_to_basis(kernel_basis, r: int):
    """Deterministic complement of a kernel inside the rank-r fiber: the
    lexicographically first coordinate vectors independent of the kernel."""
    ech = _Echelon()
    for v in kernel_basis:
        ech.add(v)
    complement = []
    for a in range(r):
        e = [Fraction(0)] * r
        e[a] = Fraction(1)
        if ech.add(e):
            complement.append(e)
    return complement


def dirac_complex(d: SplitCourantData, p) -> TwoTermComplex:
    """Three-term order-1 quotient at p: wedge words in the fiber at p modulo
    words lying entirely inside the kernel of the complement's anchor, with
    the differential of the deforming side.

    Requires the anchor of the deforming side to vanish at p.
    """
    st = d.st
    n, r = st.n, st.th_start
    p = [Fraction(v) for v in p]
    for a in range(r):
        for i in range(n):
            if d.structure.coeff((a, st.momentum(i))).eval(p):
                raise ValueError("p is not a fixed point")
    # anchor of the complement at p, as a map from the fiber to the base
    anchor = QMatrix(
        [
            [d.dual_structure.coeff((st.th(a), st.momentum(i))).eval(p) for a in range(r)]
            for i in range(n)
        ]
    )
    _, kernel_basis = kernel_and_rank(anchor)
    complement = _extend_to_basis(kernel_basis, r)
    s_count = len(complement)
    cols = complement + [list(v) for v in kernel_basis]
    names = [f"s{j}" for j in range(s_count)] + [
        f"z{j}" for j in range(r - s_count)
    ]
    # change of basis: adapted generator j = sum_a cols[j][a] xi_a
    change = [[cols[j][a] for j in range(r)] for a in range(r)]

    def adapted_words(m):
        return [
            w
            for w in itertools.combinations(range(r), m)
            if any(j < s_count for j in w)
        ]

    def std_words(m):
        return list(itertools.combinations(range(r), m))

    def det(sub):
        mat = [row[:] for row in sub]
        m = len(mat)
        sign = Fraction(1)
        for c in range(m):
            piv = next((i for i in range(c, m) if mat[i][c]), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                mat[c], mat[piv] = mat[piv], mat[c]
                sign = -sign
            for i in range(c + 1, m):
                f = mat[i][c] / mat[c][c]
                for jj in range(c, m):
                    mat[i][jj] -= f * mat[c][jj]
        out = sign
        for c in range(m):
            out *= mat[c][c]
        return out

    def transition(m):
        """Matrix expressing adapted m-words in standard m-words."""
        std = std_words(m)
        rows = []
        for u in std:
            rows.append(
                [
                    det([[change[a][j] for j in w] for a in u])
                    for w in itertools.combinations(range(r), m)
                ]
            )
        return std, rows

    schemas = []
    for m in (1, 2, 3):
        std, T = transition(m)
        Tinv = invert_matrix(T) if std else []
        keep = adapted_words(m)
        keep_pos = [
            i
            for i, w in enumerate(itertools.combinations(range(r), m))
            if any(j < s_count for j in w)
        ]
        labels = [".".join(names[j] for j in w) for w in keep]
        schemas.append((m, std, T, Tinv, keep, keep_pos, labels))

    def lift(schema, j):
        m, std, T, _, keep, keep_pos, _ = schema
        col = keep_pos[j]
        out = GElement.zero(st.gt)
        for row, u in enumerate(std):
            if T[row][col]:
                out = out + GElement.from_word(
                    st.gt, u, Poly.const(n, T[row][col])
                )
        return out

    def project(schema, e: GElement):
        m, std, _, Tinv, keep, keep_pos, _ = schema
        vec = [e.coeff(u).eval(p) for u in std]
        adapted = [
            sum(Tinv[i][k] * vec[k] for k in range(len(std)))
            for i in range(len(std))
        ]
        return [adapted[i] for i in keep_pos]

    def differential(src, dst):
        M = QMatrix.zeros(len(dst[6]), len(src[6]), dst[6], src[6])
        for j in range(len(src[6])):
            col = project(dst, sym_bracket(st, d.structure, lift(src, j)))
            for i in range(len(dst[6])):
                M.rows[i][j] = col[i]
        return M

    w0, w1, w2 = schemas
    D0 = differential(w0, w1)
    D1 = differential(w1, w2)
    return TwoTermComplex(D0, D1, w0[6], w1[6], w2[6])
