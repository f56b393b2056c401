"""Exact rational linear algebra for finite two-term cochain complexes.

Rank/kernel use fraction-free (Bareiss) elimination on denominator-cleared
integer rows, so every verdict is an exact yes/no.  Pivots are taken in label
order, which keeps kernel bases and cohomology representatives deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence


class QMatrix:
    """Dense matrix of Fractions with row/column labels."""

    def __init__(self, rows, row_labels=None, col_labels=None):
        self.rows = [[Fraction(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if self.rows:
            self.ncols = len(self.rows[0])
        else:
            # a 0 x m matrix: the width comes from the column labels
            self.ncols = len(col_labels) if col_labels is not None else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")
        self.row_labels = list(row_labels) if row_labels is not None else [
            str(i) for i in range(self.nrows)
        ]
        self.col_labels = list(col_labels) if col_labels is not None else [
            str(j) for j in range(self.ncols)
        ]
        if len(self.row_labels) != self.nrows or len(self.col_labels) != self.ncols:
            raise ValueError("label counts do not match matrix dimensions")

    @staticmethod
    def zeros(nrows: int, ncols: int, row_labels=None, col_labels=None) -> "QMatrix":
        return QMatrix(
            [[Fraction(0)] * ncols for _ in range(nrows)], row_labels, col_labels
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list[Fraction]]:
        return [self.column(j) for j in range(self.ncols)]

    def matvec(self, v: Sequence[Fraction]) -> list[Fraction]:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch in matvec")
        return [sum((r[j] * v[j] for j in range(self.ncols)), Fraction(0)) for r in self.rows]

    def matmul(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matmul")
        rows = [
            [
                sum((self.rows[i][k] * other.rows[k][j] for k in range(self.ncols)), Fraction(0))
                for j in range(other.ncols)
            ]
            for i in range(self.nrows)
        ]
        return QMatrix(rows, self.row_labels, other.col_labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"QMatrix({self.nrows}x{self.ncols})"


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        mult = 1
        for x in r:
            mult = mult * x.denominator // gcd(mult, x.denominator)
        out.append([int(x * mult) for x in r])
    return out


def _bareiss_echelon(rows: Sequence[Sequence[Fraction]]):
    """Fraction-free forward elimination.

    Returns (echelon integer rows, pivot column list).  Pivots are chosen in
    column order, first nonzero row from the top — deterministic.
    """
    m = _integer_rows(rows)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    piv_cols: list[int] = []
    piv = 0
    prev = 1
    for c in range(ncols):
        if piv >= nrows:
            break
        r = next((i for i in range(piv, nrows) if m[i][c] != 0), None)
        if r is None:
            continue
        if r != piv:
            m[piv], m[r] = m[r], m[piv]
        for i in range(piv + 1, nrows):
            for j in range(ncols):
                if j == c:
                    continue
                num = m[piv][c] * m[i][j] - m[i][c] * m[piv][j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("Bareiss exact-division invariant violated")
                m[i][j] = q
            m[i][c] = 0
        prev = m[piv][c]
        piv_cols.append(c)
        piv += 1
    return m, piv_cols


def kernel_and_rank(M: QMatrix):
    """Exact rank and a deterministic kernel basis over Q."""
    if M.ncols == 0:
        return 0, []
    if M.nrows == 0:
        basis = []
        for j in range(M.ncols):
            v = [Fraction(0)] * M.ncols
            v[j] = Fraction(1)
            basis.append(v)
        return 0, basis
    ech, piv_cols = _bareiss_echelon(M.rows)
    rank = len(piv_cols)
    free_cols = [j for j in range(M.ncols) if j not in piv_cols]
    basis = []
    for f in free_cols:
        v = [Fraction(0)] * M.ncols
        v[f] = Fraction(1)
        # back-substitute pivot variables from the bottom up
        for r in range(rank - 1, -1, -1):
            c = piv_cols[r]
            s = sum((Fraction(ech[r][j]) * v[j] for j in range(c + 1, M.ncols)), Fraction(0))
            v[c] = -s / ech[r][c]
        basis.append(v)
    return rank, basis


def invert_matrix(rows):
    """Exact inverse of a square matrix of Fractions (Gauss-Jordan)."""
    n = len(rows)
    aug = []
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValueError("matrix is not square")
        aug.append([Fraction(x) for x in r] + [Fraction(int(j == i)) for j in range(n)])
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [r[n:] for r in aug]


class _Echelon:
    """Incremental row space (over Q) for membership and rank queries."""

    def __init__(self):
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def reduce(self, vec: Sequence[Fraction]) -> list[Fraction]:
        v = [Fraction(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                c = v[p] / row[p]
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def add(self, vec: Sequence[Fraction]) -> bool:
        """Insert vec; returns True if it enlarged the span."""
        v = self.reduce(vec)
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        self.rows.append(v)
        self.pivots.append(p)
        return True

    def contains(self, vec: Sequence[Fraction]) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    @property
    def rank(self) -> int:
        return len(self.rows)


class DSquaredError(ValueError):
    def __init__(self, column_label: str):
        self.column_label = column_label
        super().__init__(f"D1*D0 != 0 at column {column_label!r}")


class TwoTermComplex:
    """W0 --D0--> W1 --D1--> W2 with labeled bases and exact matrices."""

    def __init__(self, D0: QMatrix, D1: QMatrix, labels0, labels1, labels2, check=True):
        self.D0 = D0
        self.D1 = D1
        self.labels0 = list(labels0)
        self.labels1 = list(labels1)
        self.labels2 = list(labels2)
        if D0.nrows != len(self.labels1) or D0.ncols != len(self.labels0):
            raise ValueError("D0 shape does not match labels")
        if D1.nrows != len(self.labels2) or D1.ncols != len(self.labels1):
            raise ValueError("D1 shape does not match labels")
        if check:
            prod = D1.matmul(D0)
            for j in range(prod.ncols):
                if any(prod.rows[i][j] != 0 for i in range(prod.nrows)):
                    raise DSquaredError(self.labels0[j])

    @property
    def dims(self) -> tuple[int, int, int]:
        return (len(self.labels0), len(self.labels1), len(self.labels2))

    def is_cocycle(self, vec: Sequence[Fraction]) -> bool:
        return all(x == 0 for x in self.D1.matvec(list(vec)))

    def is_coboundary(self, vec: Sequence[Fraction]) -> bool:
        span = _Echelon()
        for col in self.D0.columns():
            span.add(col)
        return span.contains(list(vec))


@dataclass
class CohomologyReport:
    h0_dim: int
    h1_dim: int
    h1_representatives: list = field(default_factory=list)  # list of (label, Fraction) lists
    verdict: str = ""

    def rep_vectors(self):
        return self.h1_representatives


def cohomology(C: TwoTermComplex) -> CohomologyReport:
    rank0, ker0 = kernel_and_rank(C.D0)
    _, ker1 = kernel_and_rank(C.D1)
    h0 = len(ker0)
    h1 = len(ker1) - rank0
    span = _Echelon()
    for col in C.D0.columns():
        span.add(col)
    reps = []
    for v in ker1:
        if span.add(v):
            reps.append([(lbl, x) for lbl, x in zip(C.labels1, v) if x != 0])
    assert len(reps) == h1, "representative count disagrees with h1 dimension"
    verdict = "stable_criterion_met" if h1 == 0 else "criterion_failed"
    return CohomologyReport(h0_dim=h0, h1_dim=h1, h1_representatives=reps, verdict=verdict)


def _select(labels, subset):
    idx = [i for i, lbl in enumerate(labels) if lbl in subset]
    return idx


def graded_pieces(C: TwoTermComplex, filtration) -> list[TwoTermComplex]:
    """Associated-graded complexes of a descending filtration.

    `filtration` is a list over levels t = 0..T of triples (S0, S1, S2) of
    label subsets; level 0 must cover all of W0 and W1, levels must be nested,
    and the level after T is empty.  Both differentials must preserve every
    level; W2 labels outside level 0 are then never hit by D1, so dropping
    them from every piece does not change degree-0/1 cohomology.
    """
    levels = [
        (set(s0), set(s1), set(s2)) for s0, s1, s2 in filtration
    ]
    if not levels:
        raise ValueError("empty filtration")
    if levels[0][0] != set(C.labels0) or levels[0][1] != set(C.labels1):
        raise ValueError("filtration level 0 must contain every W0/W1 label")
    if not levels[0][2] <= set(C.labels2):
        raise ValueError("filtration uses unknown W2 labels")
    for a, b in zip(levels, levels[1:]):
        if not (b[0] <= a[0] and b[1] <= a[1] and b[2] <= a[2]):
            raise ValueError("filtration levels are not nested")
    levels.append((set(), set(), set()))

    # preservation check: D(F^t) subset F^t
    for t, (s0, s1, s2) in enumerate(levels[:-1]):
        for j in _select(C.labels0, s0):
            for i, x in enumerate(C.D0.column(j)):
                if x != 0 and C.labels1[i] not in s1:
                    raise ValueError(
                        f"D0 does not preserve filtration level {t}: "
                        f"{C.labels0[j]} -> {C.labels1[i]}"
                    )
        for j in _select(C.labels1, s1):
            for i, x in enumerate(C.D1.column(j)):
                if x != 0 and C.labels2[i] not in s2:
                    raise ValueError(
                        f"D1 does not preserve filtration level {t}: "
                        f"{C.labels1[j]} -> {C.labels2[i]}"
                    )

    pieces = []
    for t in range(len(levels) - 1):
        cur, nxt = levels[t], levels[t + 1]
        idx0 = [i for i, l in enumerate(C.labels0) if l in cur[0] and l not in nxt[0]]
        idx1 = [i for i, l in enumerate(C.labels1) if l in cur[1] and l not in nxt[1]]
        idx2 = [i for i, l in enumerate(C.labels2) if l in cur[2] and l not in nxt[2]]
        D0 = QMatrix(
            [[C.D0.rows[i][j] for j in idx0] for i in idx1],
            [C.labels1[i] for i in idx1],
            [C.labels0[j] for j in idx0],
        )
        D1 = QMatrix(
            [[C.D1.rows[i][j] for j in idx1] for i in idx2],
            [C.labels2[i] for i in idx2],
            [C.labels1[j] for j in idx1],
        )
        pieces.append(
            TwoTermComplex(
                D0,
                D1,
                [C.labels0[i] for i in idx0],
                [C.labels1[i] for i in idx1],
                [C.labels2[i] for i in idx2],
            )
        )
    return pieces


def reduced_h1(C: TwoTermComplex, K) -> int:
    """dim(span K ∩ ker D1) - rank(D0), for a label subset K of W1.

    Preconditions (checked): every column of D0 is supported on K and lies in
    span K ∩ ker D1 (which holds automatically for coboundaries supported on
    K, since D1*D0 = 0).
    """
    K = set(K)
    unknown = K - set(C.labels1)
    if unknown:
        raise ValueError(f"labels not in W1: {sorted(unknown)}")
    outside = [i for i, lbl in enumerate(C.labels1) if lbl not in K]
    for j in range(C.D0.ncols):
        col = C.D0.column(j)
        for i in outside:
            if col[i] != 0:
                raise ValueError(
                    f"im D0 is not contained in span K: column {C.labels0[j]} "
                    f"hits {C.labels1[i]}"
                )
    # effective K = vectors supported on K that are cocycles
    sel_rows = []
    for i in outside:
        row = [Fraction(0)] * len(C.labels1)
        row[i] = Fraction(1)
        sel_rows.append(row)
    stacked = QMatrix(
        list(C.D1.rows) + sel_rows,
        list(C.D1.row_labels) + [f"sel:{C.labels1[i]}" for i in outside],
        C.labels1,
    )
    _, effK = kernel_and_rank(stacked)
    eff_span = _Echelon()
    for v in effK:
        eff_span.add(v)
    rank0 = 0
    d0_span = _Echelon()
    for col in C.D0.columns():
        if not eff_span.contains(col):
            raise ValueError("a coboundary lies outside span K ∩ ker D1")
        if d0_span.add(col):
            rank0 += 1
    return len(effK) - rank0
