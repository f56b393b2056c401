"""Degree-2 symplectic polynomial Poisson algebras and their specializations.

The carrier algebra has base coordinates x^i, odd fiber generators with a
constant nondegenerate symmetric pairing, and momenta p_i conjugate to the
x^i.  The big bracket is the unique degree -2 biderivation extending the
generator relations {p_i, x^j} = delta, {theta_A, theta_B} = g_{AB}.

Everything in this file is a derived bracket or a jet quotient of this one
operation: pair structures on dual frames, Poisson bivectors (flat or
hypersurface-adapted frames), Nijenhuis-compatible pairs, cubic structure
functions of a pairing-compatible bracket on a metric bundle, and the
explicit three-term complex of a quadratic Lie algebra acting on a vector
space.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyjet import Poly, grlex_key
from .gca import Derivation, GElement, GeneratorTable, normalize_word
from .linal import QMatrix, TwoTermComplex, invert_matrix, reduced_h1
from .algebroid import (
    IsotropyAlgebra,
    LieAlgebroidData,
    _as_poly,
    alphas_below,
    _alpha_str,
    build_q,
    mc_defect,
)


# ---------------------------------------------------------------------------
# symplectic generator tables
# ---------------------------------------------------------------------------


class SymplecticTable:
    """GeneratorTable with momenta plus a constant fiber pairing.

    `pairing[A][B]` is the bracket of fiber generators A and B (a symmetric
    Fraction matrix, both generators being odd).  For dual-frame tables the
    first `rank` generators are the frame coordinates xi_a and the next
    `rank` their conjugates th_a; `th_start` marks where the multivector
    family begins (0 when there is no xi family).
    """

    def __init__(self, gt: GeneratorTable, pairing, th_start: int = 0):
        self.gt = gt
        self.pairing = [[Fraction(v) for v in row] for row in pairing]
        m = gt.num_fibers
        if len(self.pairing) != m or any(len(r) != m for r in self.pairing):
            raise ValueError("pairing matrix has wrong shape")
        for a in range(m):
            for b in range(m):
                if self.pairing[a][b] != self.pairing[b][a]:
                    raise ValueError("pairing is not symmetric")
        self.pairing_inv = invert_matrix(self.pairing)  # raises if singular
        self.th_start = th_start
        self.th_count = m - th_start

    @property
    def n(self) -> int:
        return self.gt.n

    def momentum(self, i: int) -> int:
        return self.gt.momentum(i)

    def th(self, a: int) -> int:
        """Generator index of the a-th multivector-frame generator."""
        if not 0 <= a < self.th_count:
            raise IndexError("frame index out of range")
        return self.th_start + a

    def conjugate(self, g: int) -> int:
        """Index of the pairing-conjugate of fiber generator g (dual-frame
        tables only: xi_a <-> th_a)."""
        if self.th_start == 0:
            raise ValueError("table has no conjugate frame split")
        r = self.th_start
        return g + r if g < r else g - r


def bialgebroid_table(n: int, rank: int) -> SymplecticTable:
    """Dual-frame table: xi_a (frame of one side), th_a (conjugates), p_i."""
    fibers = [(f"xi{a}", 1) for a in range(rank)] + [
        (f"th{a}", 1) for a in range(rank)
    ]
    gt = GeneratorTable(n, fibers, momenta=True)
    pairing = [[Fraction(0)] * (2 * rank) for _ in range(2 * rank)]
    for a in range(rank):
        pairing[a][rank + a] = Fraction(1)
        pairing[rank + a][a] = Fraction(1)
    return SymplecticTable(gt, pairing, th_start=rank)


def courant_table(n: int, rank: int, pairing) -> SymplecticTable:
    """Single odd frame th_0..th_{rank-1} with an arbitrary nondegenerate
    symmetric pairing, plus momenta."""
    gt = GeneratorTable(n, [(f"th{a}", 1) for a in range(rank)], momenta=True)
    return SymplecticTable(gt, pairing, th_start=0)


# ---------------------------------------------------------------------------
# the big bracket
# ---------------------------------------------------------------------------


def _fiber_partial(table: GeneratorTable, f: GElement, g: int, side: str) -> GElement:
    """Graded partial derivative of f with respect to generator g.

    `side` is "left" (sign from the prefix degree) or "right" (sign from the
    suffix degree); for even generators the two coincide.
    """
    dg = table.degrees[g]
    out: dict[tuple, Poly] = {}
    for w, poly in f.terms.items():
        total = table.word_degree(w)
        pre = 0
        for j, gi in enumerate(w):
            if gi == g:
                if side == "left":
                    flip = (dg % 2) and (pre % 2)
                else:
                    flip = (dg % 2) and ((total - pre - dg) % 2)
                q = poly.scale(-1) if flip else poly
                nw = w[:j] + w[j + 1 :]
                cur = out.get(nw)
                cur = q if cur is None else cur + q
                if cur:
                    out[nw] = cur
                else:
                    out.pop(nw, None)
            pre += table.degrees[gi]
    return GElement(table, out)


def sym_bracket(st: SymplecticTable, f: GElement, g: GElement) -> GElement:
    """The degree -2 Poisson bracket {f, g} of the symplectic table."""
    table = st.gt
    if f.table != table or g.table != table:
        raise ValueError("generator table mismatch")
    out = GElement.zero(table)
    for i in range(table.n):
        pi = table.momentum(i)
        dpf_r = _fiber_partial(table, f, pi, "right")
        if dpf_r:
            dxg = g.map_polys(lambda q, i=i: q.partial(i))
            if dxg:
                out = out + dpf_r * dxg
        dxf = f.map_polys(lambda q, i=i: q.partial(i))
        if dxf:
            dpg_l = _fiber_partial(table, g, pi, "left")
            if dpg_l:
                out = out - dxf * dpg_l
    for a in range(table.num_fibers):
        dfa = None
        for b in range(table.num_fibers):
            c = st.pairing[a][b]
            if not c:
                continue
            if dfa is None:
                dfa = _fiber_partial(table, f, a, "right")
                if dfa.is_zero():
                    break
            dgb = _fiber_partial(table, g, b, "left")
            if dgb:
                out = out + (dfa * dgb).scale(c)
    return out


def bidegree(st: SymplecticTable, f: GElement):
    """(u, v) with u = #p + #xi and v = #p + #th per word, for dual-frame
    tables; None for 0, error if mixed."""
    if st.th_start == 0:
        raise ValueError("bidegree needs a dual-frame table")
    seen = set()
    for w in f.terms:
        u = v = 0
        for g in w:
            if st.gt.is_momentum(g):
                u += 1
                v += 1
            elif g < st.th_start:
                u += 1
            else:
                v += 1
        seen.add((u, v))
    if not seen:
        return None
    if len(seen) > 1:
        raise ValueError(f"element has mixed bidegrees {sorted(seen)}")
    return seen.pop()


# ---------------------------------------------------------------------------
# lifts of classical data
# ---------------------------------------------------------------------------


def _transplant(st: SymplecticTable, e: GElement, src: GeneratorTable) -> GElement:
    mapping = [st.gt.index[nm] for nm in src.names]
    out = GElement.zero(st.gt)
    for w, p in e.terms.items():
        out = out + GElement.from_word(st.gt, tuple(mapping[g] for g in w), p)
    return out


def ham_function(st: SymplecticTable, delta: Derivation) -> GElement:
    """The function f with {f, -} = delta on the image of the embedding.

    `delta` lives on a momentum-free table whose fiber names all occur in
    `st`; its generator images are transplanted, the base images get paired
    with momenta and the fiber images with the conjugate generators.
    """
    out = GElement.zero(st.gt)
    for i in range(delta.table.n):
        img = delta.base_images[i]
        if img:
            out = out + _transplant(st, img, delta.table) * GElement.gen(
                st.gt, st.momentum(i)
            )
    for g, nm in enumerate(delta.table.names):
        img = delta.fiber_images[g]
        if img:
            out = out + _transplant(st, img, delta.table) * GElement.gen(
                st.gt, st.conjugate(st.gt.index[nm])
            )
    return out


def _frame_derivation(table: GeneratorTable, d: LieAlgebroidData) -> Derivation:
    """Anchor/structure-function derivation on an arbitrary rank-matching
    degree-1 fiber table (same formulas as build_q)."""
    base = []
    for i in range(d.n):
        img = GElement.zero(table)
        for a in range(d.rank):
            img = img + GElement.from_word(table, (a,), d.rho[a][i])
        base.append(img)
    fiber = []
    for k in range(d.rank):
        img = GElement.zero(table)
        for i, j in itertools.combinations(range(d.rank), 2):
            img = img + GElement.from_word(table, (i, j), d.c[k][i][j].scale(-1))
        fiber.append(img)
    return Derivation(table, 1, base, fiber)


def lift_algebroid(d: LieAlgebroidData, st: SymplecticTable | None = None) -> GElement:
    """Bidegree (2,1) element whose derived brackets reproduce d exactly."""
    if not mc_defect(build_q(d)).is_zero():
        raise ValueError("input data does not satisfy the structure equation")
    if st is None:
        st = bialgebroid_table(d.n, d.rank)
    return ham_function(st, build_q(d))


def lift_dual_algebroid(d: LieAlgebroidData, st: SymplecticTable) -> GElement:
    """Bidegree (1,2) element encoding frame data on the conjugate side."""
    gt = GeneratorTable(d.n, [(f"th{a}", 1) for a in range(d.rank)])
    return ham_function(st, _frame_derivation(gt, d))


def multivector_function(st: SymplecticTable, comps) -> GElement:
    """Sum over `comps` {(a_1<...<a_m): coefficient} of coeff * th-word."""
    out = GElement.zero(st.gt)
    for word, poly in comps.items():
        if list(word) != sorted(set(word)):
            raise ValueError(f"component index {word} is not strictly increasing")
        w = tuple(st.th(a) for a in word)
        out = out + GElement.from_word(st.gt, w, _as_poly(st.n, poly))
    return out


def bivector_function(st: SymplecticTable, pi) -> GElement:
    """f_pi for an antisymmetric coefficient matrix pi[i][j]."""
    m = st.th_count
    rows = [[_as_poly(st.n, v) for v in row] for row in pi]
    if len(rows) != m or any(len(r) != m for r in rows):
        raise ValueError("bivector matrix has wrong shape")
    comps = {}
    for i in range(m):
        if rows[i][i]:
            raise ValueError("bivector matrix has a nonzero diagonal entry")
        for j in range(i + 1, m):
            if rows[i][j] != rows[j][i].scale(-1):
                raise ValueError("bivector matrix is not antisymmetric")
            if rows[i][j]:
                comps[(i, j)] = rows[i][j]
    return multivector_function(st, comps)


def derived_bracket(st: SymplecticTable, S: GElement, f: GElement, g: GElement) -> GElement:
    """[f, g]_S = (-1)^{|f|-1} {{S, f}, g}."""
    sign = 1 if (f.degree() - 1) % 2 == 0 else -1
    return sym_bracket(st, sym_bracket(st, S, f), g).scale(sign)


def standard_tangent_data(n: int) -> LieAlgebroidData:
    """Coordinate frame of the full tangent structure: anchor = identity."""
    rho = [
        [Poly.const(n, 1 if a == i else 0) for i in range(n)] for a in range(n)
    ]
    z = Poly.zero(n)
    return LieAlgebroidData(n, n, rho, [[[z] * n for _ in range(n)] for _ in range(n)])


def b_tangent_data(n: int) -> LieAlgebroidData:
    """Frame adapted to the hypersurface {x0 = 0}: e_0 -> x0 d/dx0, e_i -> d/dx_i."""
    rho = [[Poly.zero(n) for _ in range(n)] for _ in range(n)]
    rho[0][0] = Poly.var(n, 0)
    for a in range(1, n):
        rho[a][a] = Poly.const(n, 1)
    z = Poly.zero(n)
    return LieAlgebroidData(n, n, rho, [[[z] * n for _ in range(n)] for _ in range(n)])


# ---------------------------------------------------------------------------
# dual pairs
# ---------------------------------------------------------------------------


@dataclass
class BialgebroidPair:
    """A dual pair of frame structures encoded symplectically."""

    st: SymplecticTable
    pi_a: GElement  # bidegree (2,1)
    f_b: GElement  # bidegree (1,2)

    def mc_errors(self) -> list[str]:
        errs = []
        if sym_bracket(self.st, self.pi_a, self.pi_a):
            errs.append("primary structure fails its structure equation")
        if sym_bracket(self.st, self.pi_a, self.f_b):
            errs.append("pair is not compatible")
        if sym_bracket(self.st, self.f_b, self.f_b):
            errs.append("dual structure fails its structure equation")
        return errs

    def mc_defect(self) -> GElement:
        S = self.pi_a + self.f_b
        return sym_bracket(self.st, S, S).scale(Fraction(1, 2))


def pair_fixed_point_order(pair: BialgebroidPair, p):
    """Largest k with the dual anchor slot in I_p^k and the dual bracket slot
    in I_p^{k-1}, read off the (1,2) element."""
    st = pair.st
    ord_anchor = math.inf
    ord_bracket = math.inf
    for w, poly in pair.f_b.terms.items():
        o = poly.recenter(p).vanishing_order()
        if any(st.gt.is_momentum(g) for g in w):
            ord_anchor = min(ord_anchor, o)
        else:
            ord_bracket = min(ord_bracket, o)
    return max(min(ord_anchor, ord_bracket + 1), 0)


def poisson_pair(n: int, pi) -> BialgebroidPair:
    """Pair (full tangent frame, the structure induced by a bivector pi)."""
    st = bialgebroid_table(n, n)
    pi_a = lift_algebroid(standard_tangent_data(n), st)
    f_b = sym_bracket(st, pi_a, bivector_function(st, pi))
    return BialgebroidPair(st, pi_a, f_b)


def b_pair(n: int, pi) -> BialgebroidPair:
    """Same as poisson_pair but over the hypersurface-adapted frame, with the
    bivector given by frame components pi[a][b]."""
    st = bialgebroid_table(n, n)
    pi_a = lift_algebroid(b_tangent_data(n), st)
    f_b = sym_bracket(st, pi_a, bivector_function(st, pi))
    return BialgebroidPair(st, pi_a, f_b)


# ---------------------------------------------------------------------------
# jet quotient schemas for functions
# ---------------------------------------------------------------------------


class FunQuotientSchema:
    """Finite basis of a jet quotient of symplectic functions.

    An entry is (word, order): the span of poly * word with poly modulo
    I_p^order.  Basis vectors pair entries with shifted-monomial exponents
    alpha, |alpha| < order; labels read `word|alpha`.
    """

    def __init__(self, st: SymplecticTable, point, entries):
        self.st = st
        self.point = [Fraction(v) for v in point]
        self.entries = []
        for word, order in entries:
            if order == math.inf:
                raise ValueError("slot with infinite order")
            sign, w = normalize_word(st.gt, word)
            if sign != 1:
                raise ValueError(f"entry word {word} is not in canonical order")
            if order > 0:
                self.entries.append((w, int(order)))
        self.basis = []
        self.labels = []
        for e_idx, (word, order) in enumerate(self.entries):
            wordname = ".".join(st.gt.names[g] for g in word) or "1"
            for alpha in alphas_below(st.n, order):
                self.basis.append((e_idx, alpha))
                self.labels.append(f"{wordname}|{_alpha_str(alpha)}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def lift_basis(self, j: int) -> GElement:
        e_idx, alpha = self.basis[j]
        word, _ = self.entries[e_idx]
        mono = Poly.monomial(self.st.n, alpha).translate([-v for v in self.point])
        return GElement(self.st.gt, {word: mono})

    def lift(self, vec) -> GElement:
        out = GElement.zero(self.st.gt)
        for j, cval in enumerate(vec):
            if cval:
                out = out + self.lift_basis(j).scale(cval)
        return out

    def project(self, e: GElement) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        pos = 0
        cache: dict[tuple, Poly] = {}
        for word, order in self.entries:
            poly = cache.get(word)
            if poly is None:
                poly = e.coeff(word).recenter(self.point)
                cache[word] = poly
            alphas = alphas_below(self.st.n, order)
            for off, alpha in enumerate(alphas):
                v = poly.terms.get(alpha)
                if v:
                    out[pos + off] = v
            pos += len(alphas)
        return out


def fun_differential(op, src: FunQuotientSchema, dst: FunQuotientSchema) -> QMatrix:
    M = QMatrix.zeros(dst.dim, src.dim, dst.labels, src.labels)
    for j in range(src.dim):
        col = dst.project(op(src.lift_basis(j)))
        for i in range(dst.dim):
            M.rows[i][j] = col[i]
    return M


# ---------------------------------------------------------------------------
# dual-pair quotient complex
# ---------------------------------------------------------------------------


def _bialgebroid_schemas(st: SymplecticTable, p, k: int):
    n = st.n
    r = st.th_start
    xis = list(range(r))
    ths = [st.th(a) for a in range(r)]
    moms = [st.momentum(i) for i in range(n)]
    th_pairs = list(itertools.combinations(ths, 2))
    th_triples = list(itertools.combinations(ths, 3))
    w0 = FunQuotientSchema(st, p, [((m,), 1) for m in moms])
    w1_entries = [((t, m), k) for t in ths for m in moms]
    w1_entries += [((x,) + tp, k - 1) for x in xis for tp in th_pairs]
    w2_entries = [(tp + (m,), 2 * k - 1) for tp in th_pairs for m in moms]
    w2_entries += [((x,) + tt, 2 * k - 2) for x in xis for tt in th_triples]
    w2_entries += [
        ((moms[i], moms[j]), k) for i in range(n) for j in range(i, n)
    ]
    w2_entries += [((x, t, m), k - 1) for x in xis for t in ths for m in moms]
    w2_entries += [
        (xp + tp, k - 2)
        for xp in itertools.combinations(xis, 2)
        for tp in th_pairs
    ]
    return (
        w0,
        FunQuotientSchema(st, p, w1_entries),
        FunQuotientSchema(st, p, w2_entries),
    )


def bialgebroid_complex(pair: BialgebroidPair, p, k: int) -> TwoTermComplex:
    """Three-term jet quotient of the deformation algebra of the dual side."""
    if k < 1:
        raise ValueError("order k must be >= 1")
    errs = pair.mc_errors()
    if errs:
        raise ValueError("; ".join(errs))
    if pair_fixed_point_order(pair, p) < k:
        raise ValueError(f"p is not a fixed point of order {k}")
    st = pair.st
    S = pair.pi_a + pair.f_b
    w0, w1, w2 = _bialgebroid_schemas(st, p, k)
    op = lambda u: sym_bracket(st, S, u)
    D0 = fun_differential(op, w0, w1)
    D1 = fun_differential(op, w1, w2)
    return TwoTermComplex(D0, D1, w0.labels, w1.labels, w2.labels)


# ---------------------------------------------------------------------------
# flat-frame bivector complex
# ---------------------------------------------------------------------------


def _multivector_schemas(st: SymplecticTable, p, k: int):
    ths = [st.th(a) for a in range(st.th_count)]
    w0 = FunQuotientSchema(st, p, [((t,), 1) for t in ths])
    w1 = FunQuotientSchema(
        st, p, [(tp, k) for tp in itertools.combinations(ths, 2)]
    )
    w2 = FunQuotientSchema(
        st, p, [(tt, 2 * k - 1) for tt in itertools.combinations(ths, 3)]
    )
    return w0, w1, w2


def poisson_complex(pi, p, k: int) -> TwoTermComplex:
    """Multivector jet quotient with differential [pi, -] in the flat frame."""
    n = len(pi)
    if k < 1:
        raise ValueError("order k must be >= 1")
    st = bialgebroid_table(n, n)
    pi_dr = lift_algebroid(standard_tangent_data(n), st)
    f_pi = bivector_function(st, pi)
    if derived_bracket(st, pi_dr, f_pi, f_pi):
        raise ValueError("bivector does not satisfy the structure equation")
    if min(
        (q.recenter(p).vanishing_order() for q in f_pi.terms.values()),
        default=math.inf,
    ) < k:
        raise ValueError(f"p is not a fixed point of order {k}")
    w0, w1, w2 = _multivector_schemas(st, p, k)
    op = lambda u: derived_bracket(st, pi_dr, f_pi, u)
    D0 = fun_differential(op, w0, w1)
    D1 = fun_differential(op, w1, w2)
    return TwoTermComplex(D0, D1, w0.labels, w1.labels, w2.labels)


def b_attainable_labels(n: int) -> list[str]:
    """W1 label subset actually reached by hypersurface-adapted deformations:
    everything except the e_0 (x) d/dx0 direction."""
    return [
        f"th{a}.p{i}|1" for a in range(n) for i in range(n) if (a, i) != (0, 0)
    ]


def b_reduced_h1(pi, p) -> int:
    """Reduced first cohomology of the order-1 hypersurface complex.

    `pi` gives frame components of the bivector; p must lie on {x0 = 0} and
    be an order-1 fixed point.
    """
    n = len(pi)
    if Fraction(p[0]) != 0:
        raise ValueError("point is off the hypersurface; use the flat-frame route")
    pair = b_pair(n, pi)
    errs = pair.mc_errors()
    if errs:
        raise ValueError("; ".join(errs))
    C = bialgebroid_complex(pair, p, 1)
    return reduced_h1(C, b_attainable_labels(n))


# ---------------------------------------------------------------------------
# Nijenhuis-compatible pairs
# ---------------------------------------------------------------------------


class PNData:
    """A bivector pi[i][j] together with an endomorphism field N[i][j]
    (coefficient of d/dx_i in N(d/dx_j))."""

    def __init__(self, n: int, pi, nt):
        self.n = n
        self.pi = [[_as_poly(n, v) for v in row] for row in pi]
        self.nt = [[_as_poly(n, v) for v in row] for row in nt]
        if len(self.pi) != n or any(len(r) != n for r in self.pi):
            raise ValueError("bivector matrix has wrong shape")
        if len(self.nt) != n or any(len(r) != n for r in self.nt):
            raise ValueError("endomorphism matrix has wrong shape")


def n_algebroid_data(d: PNData) -> LieAlgebroidData:
    """Deformed tangent frame data: anchor N, bracket
    [X,Y]_N = [NX,Y] + [X,NY] - N[X,Y] on the coordinate frame."""
    n = d.n
    rho = [[d.nt[i][a] for i in range(n)] for a in range(n)]
    c = [[[Poly.zero(n) for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                c[k][i][j] = d.nt[k][j].partial(i) - d.nt[k][i].partial(j)
    return LieAlgebroidData(n, n, rho, c)


def _pn_elements(d: PNData):
    n = d.n
    st = bialgebroid_table(n, n)
    pi_dr = lift_algebroid(standard_tangent_data(n), st)
    gt = GeneratorTable(n, [(f"xi{a}", 1) for a in range(n)])
    pi_n = ham_function(st, _frame_derivation(gt, n_algebroid_data(d)))
    f_pi = bivector_function(st, d.pi)
    return st, pi_dr, pi_n, f_pi


def pn_compat_errors(d: PNData) -> list[str]:
    st, pi_dr, pi_n, f_pi = _pn_elements(d)
    errs = []
    if derived_bracket(st, pi_dr, f_pi, f_pi):
        errs.append("bivector does not satisfy the structure equation")
    if sym_bracket(st, pi_n, pi_n):
        errs.append("endomorphism is not integrable")
    f_dpi = sym_bracket(st, pi_dr, f_pi)
    if sym_bracket(st, pi_n, f_dpi):
        errs.append("bivector and endomorphism are not compatible")
    return errs


def pn_complex(d: PNData, p, k: int) -> TwoTermComplex:
    """Multivector quotient with the extra symmetric-valued block of the
    compatible-pair deformation algebra."""
    if k < 1:
        raise ValueError("order k must be >= 1")
    errs = pn_compat_errors(d)
    if errs:
        raise ValueError("; ".join(errs))
    st, pi_dr, pi_n, f_pi = _pn_elements(d)
    if min(
        (q.recenter(p).vanishing_order() for q in f_pi.terms.values()),
        default=math.inf,
    ) < k:
        raise ValueError(f"p is not a fixed point of order {k}")
    n = d.n
    w0, w1, _ = _multivector_schemas(st, p, k)
    ths = [st.th(a) for a in range(n)]
    xis = list(range(n))
    moms = [st.momentum(i) for i in range(n)]
    w2_entries = [(tt, 2 * k - 1) for tt in itertools.combinations(ths, 3)]
    w2_entries += [((moms[i], moms[j]), k) for i in range(n) for j in range(i, n)]
    w2_entries += [((x, t, m), k - 1) for x in xis for t in ths for m in moms]
    w2_entries += [
        (xp + tp, k - 2)
        for xp in itertools.combinations(xis, 2)
        for tp in itertools.combinations(ths, 2)
    ]
    w2 = FunQuotientSchema(st, p, w2_entries)

    def op(u):
        return derived_bracket(st, pi_dr, f_pi, u) + sym_bracket(
            st, pi_n, sym_bracket(st, pi_dr, u)
        )

    D0 = fun_differential(op, w0, w1)
    D1 = fun_differential(op, w1, w2)
    return TwoTermComplex(D0, D1, w0.labels, w1.labels, w2.labels)


# ---------------------------------------------------------------------------
# metric-bundle cubic structures
# ---------------------------------------------------------------------------


class CourantData:
    """Pairing g[a][b], anchor rho[a][i], structure functions T[a][b][c]
    (pairing of the bracket of two frame sections with a third; totally
    antisymmetric)."""

    def __init__(self, n: int, rank: int, pairing, rho, T):
        self.n = n
        self.rank = rank
        self.st = courant_table(n, rank, pairing)
        self.rho = [[_as_poly(n, v) for v in row] for row in rho]
        if len(self.rho) != rank or any(len(r) != n for r in self.rho):
            raise ValueError("anchor matrix has wrong shape")
        self.T = [
            [[_as_poly(n, v) for v in row] for row in plane] for plane in T
        ]
        if len(self.T) != rank or any(
            len(pl) != rank or any(len(r) != rank for r in pl) for pl in self.T
        ):
            raise ValueError("structure tensor has wrong shape")
        for a in range(rank):
            for b in range(rank):
                for c in range(rank):
                    if (
                        self.T[a][b][c] != -self.T[b][a][c]
                        or self.T[a][b][c] != -self.T[a][c][b]
                    ):
                        raise ValueError("structure tensor is not antisymmetric")


def courant_theta(d: CourantData):
    """Degree-3 generating function and its self-bracket defect.

    Theta = sum (g^{-1} rho)[A][i] th_A p_i + sum_{a<b<c} (raised T)_{abc}
    th_a th_b th_c; the defect {Theta, Theta} is zero exactly when the input
    satisfies the axioms.  Round trips: rho_A(f) = {{Theta, th_A}, f} and
    T_abc = {th_c, {th_b, {th_a, Theta}}}.
    """
    st = d.st
    n, r = d.n, d.rank
    ginv = st.pairing_inv
    theta = GElement.zero(st.gt)
    for A in range(r):
        for i in range(n):
            coeff = Poly.zero(n)
            for B in range(r):
                if ginv[A][B] and d.rho[B][i]:
                    coeff = coeff + d.rho[B][i].scale(ginv[A][B])
            if coeff:
                theta = theta + GElement.from_word(
                    st.gt, (st.th(A), st.momentum(i)), coeff
                )
    for a, b, c in itertools.combinations(range(r), 3):
        coeff = Poly.zero(n)
        for x in range(r):
            for y in range(r):
                gax = ginv[a][x]
                gby = ginv[b][y]
                if not (gax and gby):
                    continue
                for z in range(r):
                    v = gax * gby * ginv[c][z]
                    if v and d.T[x][y][z]:
                        coeff = coeff + d.T[x][y][z].scale(v)
        if coeff:
            theta = theta + GElement.from_word(
                st.gt, (st.th(a), st.th(b), st.th(c)), coeff
            )
    defect = sym_bracket(st, theta, theta)
    return theta, defect


def courant_fixed_point_order(d: CourantData, theta: GElement, p):
    """Largest k with the anchor slot of theta in I_p^k and the cubic slot
    in I_p^{k-1}."""
    ord_anchor = math.inf
    ord_cubic = math.inf
    for w, poly in theta.terms.items():
        o = poly.recenter(p).vanishing_order()
        if any(d.st.gt.is_momentum(g) for g in w):
            ord_anchor = min(ord_anchor, o)
        else:
            ord_cubic = min(ord_cubic, o)
    return max(min(ord_anchor, ord_cubic + 1), 0)


def courant_complex(d: CourantData, p, k: int, theta: GElement | None = None) -> TwoTermComplex:
    """Three-term jet quotient of the metric-bundle deformation algebra."""
    if k < 1:
        raise ValueError("order k must be >= 1")
    if theta is None:
        theta, defect = courant_theta(d)
        if defect:
            raise ValueError("input data does not satisfy the structure equation")
    if courant_fixed_point_order(d, theta, p) < k:
        raise ValueError(f"p is not a fixed point of order {k}")
    st = d.st
    n, r = d.n, d.rank
    ths = [st.th(a) for a in range(r)]
    moms = [st.momentum(i) for i in range(n)]
    w0 = FunQuotientSchema(st, p, [((m,), 1) for m in moms])
    w1_entries = [((t, m), k) for t in ths for m in moms]
    w1_entries += [(tt, k - 1) for tt in itertools.combinations(ths, 3)]
    w1 = FunQuotientSchema(st, p, w1_entries)
    w2_entries = [(tp + (m,), 2 * k - 1) for tp in itertools.combinations(ths, 2) for m in moms]
    w2_entries += [(tq, 2 * k - 2) for tq in itertools.combinations(ths, 4)]
    w2_entries += [((moms[i], moms[j]), 2 * k) for i in range(n) for j in range(i, n)]
    w2 = FunQuotientSchema(st, p, w2_entries)
    op = lambda u: sym_bracket(st, theta, u)
    D0 = fun_differential(op, w0, w1)
    D1 = fun_differential(op, w1, w2)
    return TwoTermComplex(D0, D1, w0.labels, w1.labels, w2.labels)


# ---------------------------------------------------------------------------
# quadratic Lie algebras acting on a vector space
# ---------------------------------------------------------------------------


def quad_lie_complex(g: IsotropyAlgebra, pairing, taus) -> TwoTermComplex:
    """Explicit complex V -> g^v (x) V -> Lambda^2 g^v (x) V (+) S^2 V (x)
    (V^v (+) R) for a Lie algebra with invariant pairing acting on V.

    The first two differentials are the standard coboundary formulas; the
    extra block sends gamma to the symmetrized composition of gamma with the
    action, contracted through the metric-dual basis.  D1 D0 = 0 requires
    coisotropic stabilizers and is not checked here.
    """
    r = g.dim
    if len(taus) != r:
        raise ValueError("one action matrix per generator required")
    nv = len(taus[0]) if r else 0
    ginv = invert_matrix(pairing)
    pairs = list(itertools.combinations(range(r), 2))
    sym_pairs = [(u, w) for u in range(nv) for w in range(u, nv)]
    labels0 = [f"v{i}" for i in range(nv)]
    labels1 = [f"e^{a}*v{i}" for i in range(nv) for a in range(r)]
    labels2 = [f"e^{a}.e^{b}*v{i}" for i in range(nv) for a, b in pairs]
    sym_slots = [f"w{c}" for c in range(nv)] + ["c"]
    labels2 += [f"v{u}.v{w}*{s}" for u, w in sym_pairs for s in sym_slots]

    D0 = QMatrix.zeros(len(labels1), nv, labels1, labels0)
    for j in range(nv):
        for a in range(r):
            for i in range(nv):
                D0.rows[i * r + a][j] = Fraction(taus[a][i][j])

    D1 = QMatrix.zeros(len(labels2), len(labels1), labels2, labels1)
    npairs = len(pairs)
    base2 = nv * npairs
    nslots = nv + 1
    for src_i in range(nv):
        for src_a in range(r):
            col = src_i * r + src_a
            for pidx, (a, b) in enumerate(pairs):
                for i in range(nv):
                    val = Fraction(0)
                    if b == src_a:
                        val += Fraction(taus[a][i][src_i])
                    if a == src_a:
                        val -= Fraction(taus[b][i][src_i])
                    if i == src_i:
                        val -= g.mu[src_a][a][b]
                    if val:
                        D1.rows[i * npairs + pidx][col] = val
            # symmetric-valued block: on v_c the value is
            # sum_{i,d} ginv[i][src_a] tau_i[d][c] (v_{src_i} . v_d)
            for c in range(nv):
                for i in range(r):
                    gia = ginv[i][src_a]
                    if not gia:
                        continue
                    for dd in range(nv):
                        v = gia * Fraction(taus[i][dd][c])
                        if v:
                            u, w = min(src_i, dd), max(src_i, dd)
                            row = base2 + sym_pairs.index((u, w)) * nslots + c
                            D1.rows[row][col] += v
    return TwoTermComplex(
        D0, D1, labels0, labels1, labels2, check=False
    )


def double_quadratic_data(g: IsotropyAlgebra, taus):
    """Double a Lie algebra acting on V into a quadratic Lie algebra on
    g (+) g^v with the hyperbolic pairing; the dual half acts by zero.

    Returns (doubled IsotropyAlgebra, pairing, doubled action matrices).
    """
    r = g.dim
    dim = 2 * r
    mu = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for k in range(r):
        for i in range(r):
            for j in range(r):
                mu[k][i][j] = g.mu[k][i][j]
    for i in range(r):
        for b in range(r):
            for m in range(r):
                v = -g.mu[b][i][m]
                if v:
                    mu[r + m][i][r + b] = v
                    mu[r + m][r + b][i] = -v
    pairing = [[Fraction(0)] * dim for _ in range(dim)]
    for a in range(r):
        pairing[a][r + a] = Fraction(1)
        pairing[r + a][a] = Fraction(1)
    nv = len(taus[0]) if r else 0
    zero = [[Fraction(0)] * nv for _ in range(nv)]
    taus_d = [
        [[Fraction(v) for v in row] for row in t] for t in taus
    ] + [zero for _ in range(r)]
    return IsotropyAlgebra(dim, mu), pairing, taus_d


def coadjoint_action(g: IsotropyAlgebra):
    """Matrices of the dual action on g^v: tau[i][a][b] = -mu[b][i][a]."""
    r = g.dim
    return [
        [[-g.mu[b][i][a] for b in range(r)] for a in range(r)] for i in range(r)
    ]


def quadratic_courant_data(g: IsotropyAlgebra, pairing, taus) -> CourantData:
    """Action data over the representation space: trivial bundle with the
    given quadratic Lie algebra fiber, anchor = infinitesimal action, cubic
    slot = pairing-lowered bracket."""
    r = g.dim
    nv = len(taus[0]) if r else 0
    rho = [
        [
            sum(
                (Poly.var(nv, j).scale(Fraction(taus[a][i][j])) for j in range(nv)),
                Poly.zero(nv),
            )
            for i in range(nv)
        ]
        for a in range(r)
    ]
    T = [[[Poly.zero(nv) for _ in range(r)] for _ in range(r)] for _ in range(r)]
    for a in range(r):
        for b in range(r):
            for c in range(r):
                v = sum(
                    (g.mu[k][a][b] * Fraction(pairing[k][c]) for k in range(r)),
                    Fraction(0),
                )
                if v:
                    T[a][b][c] = Poly.const(nv, v)
    return CourantData(nv, r, pairing, rho, T)
