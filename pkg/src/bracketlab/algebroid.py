"""Bracket structures on (graded) vector bundles as homological derivations.

Classical input data (anchor matrices, structure functions, multibrackets)
is converted into a degree-1 derivation Q on the free graded-commutative
algebra of fiber generators; all order detection and cochain-complex assembly
happens through Q.  Quotient complexes are computed by lift - bracket -
project: a basis class is lifted to a polynomial-coefficient derivation, fed
to [Q,-], and truncated back into the finite jet quotient.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyjet import Poly, grlex_key
from .gca import Derivation, GElement, GeneratorTable, commutator
from .linal import QMatrix, TwoTermComplex


# ---------------------------------------------------------------------------
# classical data
# ---------------------------------------------------------------------------


def _as_poly(n: int, v) -> Poly:
    if isinstance(v, Poly):
        if v.n != n:
            raise ValueError("polynomial has wrong base dimension")
        return v
    return Poly.const(n, v)


class LieAlgebroidData:
    """Anchor rho[a][i] (coefficient of d/dx_i in rho(e_a)) and structure
    functions c[k][i][j] with [e_i, e_j] = sum_k c[k][i][j] e_k."""

    def __init__(self, n: int, rank: int, rho, c):
        self.n = n
        self.rank = rank
        self.rho = [[_as_poly(n, v) for v in row] for row in rho]
        if len(self.rho) != rank or any(len(r) != n for r in self.rho):
            raise ValueError("anchor matrix has wrong shape")
        self.c = [
            [[_as_poly(n, v) for v in row] for row in plane] for plane in c
        ]
        if len(self.c) != rank or any(
            len(p) != rank or any(len(r) != rank for r in p) for p in self.c
        ):
            raise ValueError("structure tensor has wrong shape")
        for k in range(rank):
            for i in range(rank):
                for j in range(rank):
                    if self.c[k][i][j] != -self.c[k][j][i]:
                        raise ValueError(f"c^{k}_{i}{j} is not antisymmetric")

    @staticmethod
    def zero(n: int, rank: int) -> "LieAlgebroidData":
        z = Poly.zero(n)
        return LieAlgebroidData(
            n,
            rank,
            [[z] * n for _ in range(rank)],
            [[[z] * rank for _ in range(rank)] for _ in range(rank)],
        )


class LieNAlgebroidData:
    """Two-level graded bundle E1 (degree 0 part of the complex, rank r1) and
    E2 (rank r2), with anchor on E1 and the multibracket coefficients:

    - rho[a][i]:      anchor of the E1 frame,
    - c[k][i][j]:     binary bracket on E1, antisymmetric in i,j,
    - ell1[alpha][a]: unary bracket E2 -> E1,
    - ell2e[b][beta][alpha]: binary bracket E1 x E2 -> E2,
    - ell3[a][b][c][alpha]:  ternary bracket on E1 with values in E2,
      totally antisymmetric in a,b,c.

    Only two graded levels are supported; higher towers have no fixture to
    pin conventions against and are rejected.
    """

    def __init__(self, n, r1, r2, rho, c, ell1, ell2e=None, ell3=None):
        self.n, self.r1, self.r2 = n, r1, r2
        base = LieAlgebroidData(n, r1, rho, c)  # reuse validation
        self.rho, self.c = base.rho, base.c
        self.ell1 = [[_as_poly(n, v) for v in row] for row in ell1]
        if len(self.ell1) != r2 or any(len(r) != r1 for r in self.ell1):
            raise ValueError("ell1 has wrong shape")
        z = Poly.zero(n)
        if ell2e is None:
            ell2e = [[[z] * r2 for _ in range(r2)] for _ in range(r1)]
        self.ell2e = [
            [[_as_poly(n, v) for v in row] for row in plane] for plane in ell2e
        ]
        if ell3 is None:
            ell3 = [
                [[[z] * r2 for _ in range(r1)] for _ in range(r1)]
                for _ in range(r1)
            ]
        self.ell3 = [
            [[[_as_poly(n, v) for v in row] for row in plane] for plane in cube]
            for cube in ell3
        ]
        for a in range(r1):
            for b in range(r1):
                for cc in range(r1):
                    for al in range(self.r2):
                        if self.ell3[a][b][cc][al] != -self.ell3[b][a][cc][al]:
                            raise ValueError("ell3 is not antisymmetric")
                        if self.ell3[a][b][cc][al] != -self.ell3[a][cc][b][al]:
                            raise ValueError("ell3 is not antisymmetric")


# ---------------------------------------------------------------------------
# homological derivations
# ---------------------------------------------------------------------------


def algebroid_table(n: int, rank: int) -> GeneratorTable:
    return GeneratorTable(n, [(f"xi{a}", 1) for a in range(rank)])


def graded_table(n: int, r1: int, r2: int) -> GeneratorTable:
    fibers = [(f"xi{a}", 1) for a in range(r1)] + [
        (f"eta{al}", 2) for al in range(r2)
    ]
    return GeneratorTable(n, fibers)


def build_q(d: LieAlgebroidData) -> Derivation:
    """Q(x_i) = sum_a rho[a][i] xi_a,  Q(xi_k) = -1/2 c^k_{ij} xi_i xi_j."""
    table = algebroid_table(d.n, d.rank)
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


def build_q_graded(d: LieNAlgebroidData) -> Derivation:
    """Homological derivation of a two-level graded bracket structure.

    On top of the binary-level images, the unary bracket ell1 enters as
    Q(xi_a) += ell1[alpha][a] eta_alpha and the E2-component of the binary
    bracket as Q(eta_alpha) -= ell2e[b][beta][alpha] xi_b eta_beta; the
    ternary bracket contributes Q(eta_alpha) -= ell3 xi xi xi.  The relative
    signs are forced by [Q,Q] = 0.
    """
    table = graded_table(d.n, d.r1, d.r2)
    base = []
    for i in range(d.n):
        img = GElement.zero(table)
        for a in range(d.r1):
            img = img + GElement.from_word(table, (a,), d.rho[a][i])
        base.append(img)
    fiber = []
    for k in range(d.r1):
        img = GElement.zero(table)
        for i, j in itertools.combinations(range(d.r1), 2):
            img = img + GElement.from_word(table, (i, j), d.c[k][i][j].scale(-1))
        for al in range(d.r2):
            img = img + GElement.from_word(table, (d.r1 + al,), d.ell1[al][k])
        fiber.append(img)
    for al in range(d.r2):
        img = GElement.zero(table)
        for b in range(d.r1):
            for be in range(d.r2):
                img = img + GElement.from_word(
                    table, (b, d.r1 + be), d.ell2e[b][be][al].scale(-1)
                )
        for a, b, cc in itertools.combinations(range(d.r1), 3):
            img = img + GElement.from_word(
                table, (a, b, cc), d.ell3[a][b][cc][al].scale(-1)
            )
        fiber.append(img)
    return Derivation(table, 1, base, fiber)


def mc_defect(Q: Derivation) -> Derivation:
    """(1/2)[Q,Q]; the zero derivation exactly when Q is a valid structure."""
    if Q.deg != 1:
        raise ValueError("expected a degree-1 derivation")
    return commutator(Q, Q).scale(Fraction(1, 2))


# ---------------------------------------------------------------------------
# interpreting Q back as classical data
# ---------------------------------------------------------------------------


def iota(Q_table: GeneratorTable, X: Sequence) -> Derivation:
    """Contraction with a section given by Poly components in the degree-1
    frame: the degree -1 derivation xi_a -> -X^a."""
    n = Q_table.n
    fiber = []
    for g in range(len(Q_table.names)):
        if Q_table.degrees[g] == 1 and g < len(X):
            fiber.append(GElement.from_poly(Q_table, _as_poly(n, X[g]).scale(-1)))
        else:
            fiber.append(GElement.zero(Q_table))
    return Derivation(Q_table, -1, None, fiber)


def recovered_anchor(Q: Derivation, a: int) -> list[Poly]:
    """rho(e_a) recovered through rho(X)(f) = -[Q, iota_X](f)."""
    table = Q.table
    X = [Poly.const(table.n, 1 if g == a else 0) for g in range(table.num_fibers)]
    op = commutator(Q, iota(table, X)).scale(-1)
    out = []
    for i in range(table.n):
        img = op.apply(GElement.from_poly(table, Poly.var(table.n, i)))
        out.append(img.coeff(()))
    return out


def recovered_bracket(Q: Derivation, a: int, b: int) -> list[Poly]:
    """[e_a, e_b] recovered from the nested-contraction formula."""
    table = Q.table
    ea = [Poly.const(table.n, 1 if g == a else 0) for g in range(table.num_fibers)]
    eb = [Poly.const(table.n, 1 if g == b else 0) for g in range(table.num_fibers)]
    op = commutator(commutator(iota(table, eb), Q), iota(table, ea))
    # op = iota of the bracket section: read off -(image of xi_k)
    out = []
    for k in range(table.num_fibers):
        img = op.fiber_images[k]
        out.append(img.coeff(()).scale(-1))
    return out


# ---------------------------------------------------------------------------
# fixed-point orders
# ---------------------------------------------------------------------------


def _order_at(poly: Poly, p) -> float:
    return poly.recenter(p).vanishing_order()


def _slot_order(Q: Derivation, p, inputs, word_filter) -> float:
    """Minimal vanishing order at p over the selected image coefficients."""
    table = Q.table
    best = math.inf
    for kind, idx in inputs:
        img = Q.base_images[idx] if kind == "x" else Q.fiber_images[idx]
        for w, poly in img.terms.items():
            if word_filter(w):
                best = min(best, _order_at(poly, p))
    return best


def _deg1_gens(table: GeneratorTable):
    return [g for g in range(table.num_fibers) if table.degrees[g] == 1]


def _deg2_gens(table: GeneratorTable):
    return [g for g in range(table.num_fibers) if table.degrees[g] == 2]


def fixed_point_order(Q: Derivation, p) -> float:
    """Largest k with anchor coefficients in I_p^k and bracket coefficients
    in I_p^{k-1}; 0 means p is not a fixed point, inf for the zero structure."""
    table = Q.table
    xs = [("x", i) for i in range(table.n)]
    xis = [("f", g) for g in _deg1_gens(table)]
    ord_rho = _slot_order(Q, p, xs, lambda w: len(w) == 1)
    ord_c = _slot_order(Q, p, xis, lambda w: len(w) == 2)
    k = min(ord_rho, ord_c + 1)
    return max(k, 0)


def _graded_orders(Q: Derivation, p):
    """Vanishing orders at p of the anchor, binary, unary and ternary slots."""
    table = Q.table
    xs = [("x", i) for i in range(table.n)]
    deg1 = _deg1_gens(table)
    deg2 = set(_deg2_gens(table))
    if not deg2:
        raise ValueError("expected a graded bundle with two levels")
    xis = [("f", g) for g in deg1]
    etas = [("f", g) for g in deg2]
    ord_rho = _slot_order(Q, p, xs, lambda w: len(w) == 1)
    ord_c = _slot_order(
        Q, p, xis, lambda w: len(w) == 2 and all(g not in deg2 for g in w)
    )
    ord_l1 = _slot_order(Q, p, xis, lambda w: len(w) == 1 and w[0] in deg2)
    ord_l3 = _slot_order(Q, p, etas, lambda w: len(w) == 3)
    return ord_rho, ord_c, ord_l1, ord_l3


def fixed_point_type(Q: Derivation, p) -> tuple:
    """Maximal (k, l) order of a two-level graded structure at p.

    k is maximized first (anchor in I_p^k, binary bracket in I_p^{k-1}),
    then l (unary bracket in I_p^l), subject to l <= 2k-2 and the ternary
    bracket lying in I_p^{2k-2-l} whenever k >= 2.  For k = 1 the level l is
    unconstrained from above.
    """
    ord_rho, ord_c, ord_l1, ord_l3 = _graded_orders(Q, p)
    kmax = min(ord_rho, ord_c + 1)
    if kmax <= 0:
        return (0, 0)
    k = kmax
    while k >= 2:
        l = min(ord_l1, 2 * k - 2)
        if l >= 2 * k - 2 - ord_l3:
            return (int(k), int(l))
        k -= 1
    return (1, ord_l1 if ord_l1 != math.inf else math.inf)


# ---------------------------------------------------------------------------
# isotropy and its linear holonomy
# ---------------------------------------------------------------------------


@dataclass
class IsotropyAlgebra:
    dim: int
    mu: list  # mu[k][i][j] Fractions, [e_i,e_j] = sum_k mu[k][i][j] e_k

    def check_jacobi(self):
        r = self.dim
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    for m in range(r):
                        s = Fraction(0)
                        for t in range(r):
                            s += (
                                self.mu[t][i][j] * self.mu[m][t][k]
                                + self.mu[t][j][k] * self.mu[m][t][i]
                                + self.mu[t][k][i] * self.mu[m][t][j]
                            )
                        if s != 0:
                            raise ValueError("isotropy bracket fails Jacobi")


@dataclass
class BottRep:
    taus: list  # one dim(V) x dim(V) Fraction matrix per isotropy generator


def isotropy_algebra(Q: Derivation, p) -> IsotropyAlgebra:
    if fixed_point_order(Q, p) < 1:
        raise ValueError("not a fixed point: isotropy algebra undefined")
    table = Q.table
    deg1 = _deg1_gens(table)
    r = len(deg1)
    mu = [[[Fraction(0)] * r for _ in range(r)] for _ in range(r)]
    for k_idx, k in enumerate(deg1):
        img = Q.fiber_images[k]
        for i_idx, i in enumerate(deg1):
            for j_idx, j in enumerate(deg1):
                if i < j:
                    v = -img.coeff((i, j)).eval(p)
                    mu[k_idx][i_idx][j_idx] = v
                    mu[k_idx][j_idx][i_idx] = -v
    g = IsotropyAlgebra(r, mu)
    g.check_jacobi()
    return g


def bott_rep(Q: Derivation, p) -> BottRep:
    """tau(e_a) = -(Jacobian at p of the anchor field of e_a)."""
    if fixed_point_order(Q, p) < 1:
        raise ValueError("not a fixed point: linear holonomy undefined")
    table = Q.table
    n = table.n
    taus = []
    for a in _deg1_gens(table):
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            rho_ia = Q.base_images[i].coeff((a,))
            for j in range(n):
                m[i][j] = -rho_ia.partial(j).eval(p)
        taus.append(m)
    return BottRep(taus)


def ce_complex(g: IsotropyAlgebra, rep: BottRep) -> TwoTermComplex:
    """V -> g^v (x) V -> Lambda^2 g^v (x) V with the coboundary formulas
    d0(v)(x) = tau(x)v and d1(a)(x,y) = tau(x)a(y) - tau(y)a(x) - a([x,y])."""
    r = g.dim
    if len(rep.taus) != r:
        raise ValueError("representation dimension mismatch")
    n = len(rep.taus[0]) if r else 0
    pairs = list(itertools.combinations(range(r), 2))
    labels0 = [f"v{i}" for i in range(n)]
    labels1 = [f"e^{a}*v{i}" for i in range(n) for a in range(r)]
    labels2 = [f"e^{a}.e^{b}*v{i}" for i in range(n) for a, b in pairs]

    D0 = QMatrix.zeros(len(labels1), n, labels1, labels0)
    for j in range(n):
        for a in range(r):
            for i in range(n):
                D0.rows[i * r + a][j] = rep.taus[a][i][j]

    D1 = QMatrix.zeros(len(labels2), len(labels1), labels2, labels1)
    for src_i in range(n):
        for src_a in range(r):
            col = src_i * r + src_a
            # alpha = e^{src_a} (x) v with v = unit vector src_i
            for pi, (a, b) in enumerate(pairs):
                # value of d1(alpha) on (e_a, e_b), component i
                for i in range(n):
                    val = Fraction(0)
                    if b == src_a:
                        val += rep.taus[a][i][src_i]
                    if a == src_a:
                        val -= rep.taus[b][i][src_i]
                    if i == src_i:
                        val -= g.mu[src_a][a][b]
                    if val:
                        D1.rows[i * len(pairs) + pi][col] = val
    return TwoTermComplex(D1=D1, D0=D0, labels0=labels0, labels1=labels1, labels2=labels2, check=False)


# ---------------------------------------------------------------------------
# jet quotient schemas for derivations
# ---------------------------------------------------------------------------


def alphas_below(n: int, order) -> list[tuple]:
    """All exponent tuples of total degree < order, in graded-lex order."""
    if order is None or order <= 0:
        return []
    out = []
    top = int(order) - 1 if order != math.inf else None
    if top is None:
        raise ValueError("infinite jet order")
    for d in range(top + 1):
        out.extend(_compositions(d, n))
    return sorted(out, key=grlex_key)


def _compositions(d: int, n: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


def _alpha_str(alpha) -> str:
    s = "".join(
        f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(alpha) if k
    )
    return s or "1"


class DerQuotientSchema:
    """Finite basis of a jet quotient of derivations.

    An entry is (kind, index, word, order): the class of derivations sending
    the given generator to poly * word, with poly taken modulo I_p^order.
    Basis vectors are entries paired with shifted-monomial exponents alpha,
    |alpha| < order; labels read `input|word|alpha`.
    """

    def __init__(self, table: GeneratorTable, point, entries, degree: int):
        self.table = table
        self.point = [Fraction(v) for v in point]
        self.entries = []
        for kind, idx, word, order in entries:
            if order == math.inf:
                raise ValueError("slot with infinite order")
            if order > 0:
                self.entries.append((kind, idx, tuple(word), int(order)))
        self.degree = degree
        self.basis = []
        self.labels = []
        for e_idx, (kind, idx, word, order) in enumerate(self.entries):
            inname = f"x{idx}" if kind == "x" else table.names[idx]
            wordname = ".".join(table.names[g] for g in word) or "1"
            for alpha in alphas_below(table.n, order):
                self.basis.append((e_idx, alpha))
                self.labels.append(f"{inname}|{wordname}|{_alpha_str(alpha)}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def lift_basis(self, j: int) -> Derivation:
        e_idx, alpha = self.basis[j]
        kind, idx, word, _ = self.entries[e_idx]
        mono = Poly.monomial(self.table.n, alpha).translate(
            [-v for v in self.point]
        )  # (x - p)^alpha
        img = GElement.from_word(self.table, word, mono)
        D = Derivation.zero(self.table, self.degree)
        if kind == "x":
            D.base_images[idx] = D.base_images[idx] + img
        else:
            D.fiber_images[idx] = D.fiber_images[idx] + img
        return D

    def lift(self, vec) -> Derivation:
        D = Derivation.zero(self.table, self.degree)
        for j, cval in enumerate(vec):
            if cval:
                D = D + self.lift_basis(j).scale(cval)
        return D

    def project(self, D: Derivation) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        pos = 0
        cache: dict[tuple, Poly] = {}
        for e_idx, (kind, idx, word, order) in enumerate(self.entries):
            img = D.base_images[idx] if kind == "x" else D.fiber_images[idx]
            key = (kind, idx, word)
            poly = cache.get(key)
            if poly is None:
                poly = img.coeff(word).recenter(self.point)
                cache[key] = poly
            count = len(alphas_below(self.table.n, order))
            for off, alpha in enumerate(alphas_below(self.table.n, order)):
                v = poly.terms.get(alpha)
                if v:
                    out[pos + off] = v
            pos += count
        return out


def differential_matrix(Q: Derivation, src: DerQuotientSchema, dst: DerQuotientSchema) -> QMatrix:
    M = QMatrix.zeros(dst.dim, src.dim, dst.labels, src.labels)
    for j in range(src.dim):
        col = dst.project(commutator(Q, src.lift_basis(j)))
        for i in range(dst.dim):
            M.rows[i][j] = col[i]
    return M


def _tangent_schema(table: GeneratorTable, p) -> DerQuotientSchema:
    entries = [("x", i, (), 1) for i in range(table.n)]
    return DerQuotientSchema(table, p, entries, 0)


def la_schemas(table: GeneratorTable, p, k: int):
    n = table.n
    gens = _deg1_gens(table)
    w0 = _tangent_schema(table, p)
    w1_entries = [("x", i, (a,), k) for i in range(n) for a in gens]
    w1_entries += [
        ("f", a, (b, c), k - 1)
        for a in gens
        for b, c in itertools.combinations(gens, 2)
    ]
    w2_entries = [
        ("x", i, (b, c), 2 * k - 1)
        for i in range(n)
        for b, c in itertools.combinations(gens, 2)
    ]
    w2_entries += [
        ("f", a, w, 2 * k - 2)
        for a in gens
        for w in itertools.combinations(gens, 3)
    ]
    return (
        w0,
        DerQuotientSchema(table, p, w1_entries, 1),
        DerQuotientSchema(table, p, w2_entries, 2),
    )


def quotient_complex_from_schemas(Q, w0, w1, w2) -> TwoTermComplex:
    D0 = differential_matrix(Q, w0, w1)
    D1 = differential_matrix(Q, w1, w2)
    return TwoTermComplex(D0, D1, w0.labels, w1.labels, w2.labels)


def la_quotient_complex(Q: Derivation, p, k: int) -> TwoTermComplex:
    if k < 1:
        raise ValueError("order k must be >= 1")
    if fixed_point_order(Q, p) < k:
        raise ValueError(f"p is not a fixed point of order {k}")
    w0, w1, w2 = la_schemas(Q.table, p, k)
    return quotient_complex_from_schemas(Q, w0, w1, w2)


def la_filtration(table: GeneratorTable, p, k: int):
    """Label subsets per filtration level t = 0..k-1 for the order-k quotient.

    Level t keeps: all of W0; anchor-slot labels with |alpha| >= t and
    bracket-slot labels with |alpha| >= t-1 in W1; and W2 labels from level
    k-1+t (anchor slot) and k-2+t (bracket slot) on.  Level 0 covers all of
    W0 and W1; the W2 labels below level 0 are never produced by the
    differential of a structure of order k.
    """
    w0, w1, w2 = la_schemas(table, p, k)

    def w_labels(schema, min_shift_x, min_shift_f, t):
        keep = []
        for (e_idx, alpha), lbl in zip(schema.basis, schema.labels):
            kind = schema.entries[e_idx][0]
            bound = min_shift_x + t if kind == "x" else min_shift_f + t
            if sum(alpha) >= bound:
                keep.append(lbl)
        return keep

    levels = []
    for t in range(k):
        s0 = list(w0.labels)  # full until the last level
        s1 = w_labels(w1, 0, -1, t)
        s2 = w_labels(w2, k - 1, k - 2, t)
        levels.append((s0, s1, s2))
    return levels


def lna_schemas(table: GeneratorTable, p, order):
    n = table.n
    xis = _deg1_gens(table)
    etas = _deg2_gens(table)
    k, l = order
    w0 = _tangent_schema(table, p)
    xi_pairs = list(itertools.combinations(xis, 2))
    xi_triples = list(itertools.combinations(xis, 3))
    if k == 1:
        w1_entries = [("x", i, (a,), 1) for i in range(n) for a in xis]
        w1_entries += [("f", a, (al,), l) for a in xis for al in etas]
        w2_entries = [("x", i, w, 1) for i in range(n) for w in xi_pairs]
        w2_entries += [("x", i, (al,), l + 1) for i in range(n) for al in etas]
        w2_entries += [
            ("f", a, (b, al), l) for a in xis for b in xis for al in etas
        ]
    else:
        if not 0 <= l <= 2 * k - 2:
            raise ValueError("level must satisfy 0 <= l <= 2k-2")
        w1_entries = [("x", i, (a,), k) for i in range(n) for a in xis]
        w1_entries += [("f", a, w, k - 1) for a in xis for w in xi_pairs]
        w1_entries += [("f", a, (al,), l) for a in xis for al in etas]
        w1_entries += [
            ("f", al, w, 2 * k - 2 - l) for al in etas for w in xi_triples
        ]
        w2_entries = [("x", i, w, 2 * k - 1) for i in range(n) for w in xi_pairs]
        w2_entries += [("x", i, (al,), k + l) for i in range(n) for al in etas]
        w2_entries += [("f", a, w, 2 * k - 2) for a in xis for w in xi_triples]
    return (
        w0,
        DerQuotientSchema(table, p, w1_entries, 1),
        DerQuotientSchema(table, p, w2_entries, 2),
    )


def lna_quotient_complex(Q: Derivation, p, order) -> TwoTermComplex:
    k, l = order
    if k < 1 or l < 0:
        raise ValueError("order components must satisfy k >= 1, l >= 0")
    ord_rho, ord_c, ord_l1, ord_l3 = _graded_orders(Q, p)
    ok = ord_rho >= k and ord_c >= k - 1 and ord_l1 >= l
    if k >= 2:
        ok = ok and l <= 2 * k - 2 and ord_l3 >= 2 * k - 2 - l
    if not ok:
        raise ValueError(f"p is not a fixed point of order {order}")
    w0, w1, w2 = lna_schemas(Q.table, p, order)
    return quotient_complex_from_schemas(Q, w0, w1, w2)
