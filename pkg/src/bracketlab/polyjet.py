"""Exact sparse multivariate polynomials over Q, plus jet (Taylor) truncation.

Everything downstream — graded algebras, cochain complexes, gauge searches —
runs on the arithmetic in this file.  Coefficients are `fractions.Fraction`
throughout; there is no floating point anywhere in this module.

A polynomial in n base coordinates x0..x{n-1} is a dict mapping exponent
tuples (length n) to nonzero Fractions.  Monomials are ordered graded-lex
(total degree first, then lexicographic), fixed globally so basis labels are
deterministic across the whole package.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]
Expo = tuple  # exponent multi-index, tuple[int, ...]


def _frac(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"non-rational coefficient: {c!r}")


class Poly:
    """Sparse polynomial over Q in a fixed number of base coordinates."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Expo, Scalar] | None = None):
        self.n = n
        clean: dict[Expo, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = _frac(c)
                if c != 0:
                    if len(e) != n:
                        raise ValueError(f"exponent {e} has wrong length for n={n}")
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(n: int) -> "Poly":
        return Poly(n, {})

    @staticmethod
    def const(n: int, c: Scalar) -> "Poly":
        return Poly(n, {(0,) * n: _frac(c)})

    @staticmethod
    def var(n: int, i: int) -> "Poly":
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for n={n}")
        e = [0] * n
        e[i] = 1
        return Poly(n, {tuple(e): Fraction(1)})

    @staticmethod
    def monomial(n: int, expo: Sequence[int], c: Scalar = 1) -> "Poly":
        return Poly(n, {tuple(expo): _frac(c)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self) -> int:
        """Degree of the zero polynomial is -1 by convention here."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def vanishing_order(self) -> float:
        """Smallest total degree of a monomial; inf for the zero polynomial.

        With terms written around a point (see `recenter`), this is the order
        of membership in the vanishing ideal I_p: order >= k iff poly in I_p^k.
        """
        if not self.terms:
            return float("inf")
        return min(sum(e) for e in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.n, out)

    def __neg__(self) -> "Poly":
        return Poly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        out: dict[Expo, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.n, out)

    def scale(self, c: Scalar) -> "Poly":
        c = _frac(c)
        if c == 0:
            return Poly.zero(self.n)
        return Poly(self.n, {e: c * k for e, k in self.terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- calculus ----------------------------------------------------------

    def partial(self, i: int) -> Poly:
        if not 0 <= i < self.n:
            raise IndexError(f"index {i} out of range for n={self.n}")
        out: dict[Expo, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            f = list(e)
            f[i] -= 1
            out[tuple(f)] = c * e[i]
        return Poly(self.n, out)

    def eval(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.n:
            raise ValueError("dimension mismatch in eval")
        pt = [_frac(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x**k
            total += v
        return total

    def eval_float(self, point: Sequence[float]) -> float:
        total = 0.0
        for e, c in self.terms.items():
            v = float(c)
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return total

    def translate(self, v: Sequence[Scalar]) -> "Poly":
        """Substitute x_i -> x_i + v_i, expanded exactly."""
        if len(v) != self.n:
            raise ValueError("dimension mismatch in translate")
        shifted = [Poly.var(self.n, i) + Poly.const(self.n, v[i]) for i in range(self.n)]
        out = Poly.zero(self.n)
        for e, c in self.terms.items():
            term = Poly.const(self.n, c)
            for i, k in enumerate(e):
                if k:
                    term = term * shifted[i] ** k
            out = out + term
        return out

    def recenter(self, p: Sequence[Scalar]) -> "Poly":
        """Rewrite in powers of (x - p): the Taylor expansion around p."""
        return self.translate(list(p))

    def truncate(self, k: int) -> "Poly":
        """Drop every monomial of total degree > k (k < 0 gives zero)."""
        return Poly(self.n, {e: c for e, c in self.terms.items() if sum(e) <= k})

    def truncate_below(self, k: int) -> "Poly":
        """Keep only monomials of total degree >= k."""
        return Poly(self.n, {e: c for e, c in self.terms.items() if sum(e) >= k})

    # -- display -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Expo, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = "".join(
                f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append(factors)
            elif c == -1:
                parts.append("-" + factors)
            else:
                parts.append(f"{c} {factors}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def grlex_key(e: Iterable[int]) -> tuple:
    """Graded-lex sort key for exponent tuples (the global monomial order)."""
    e = tuple(e)
    return (sum(e), tuple(-x for x in e))


# -- free-function wrappers -------------------------------------------------


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        # b must be a constant polynomial
        if b.total_degree() > 0:
            raise ValueError("scale expects a constant second operand")
        c = b.terms.get((0,) * b.n, Fraction(0))
        return a.scale(c)
    raise ValueError(f"unknown op {op!r}")


def translate(a: Poly, v: Sequence[Scalar]) -> Poly:
    return a.translate(v)


def partial_derivative(a: Poly, i: int) -> Poly:
    return a.partial(i)


class JetClass:
    """A k-jet at a rational point: representative stored in shifted variables.

    The representative is a Poly in y = x - p with no monomial of total
    degree > order, so I_p^{k+1}-membership is just a degree cutoff.
    """

    __slots__ = ("point", "order", "rep")

    def __init__(self, point: Sequence[Scalar], order: int, rep: Poly):
        self.point = tuple(_frac(v) for v in point)
        self.order = order
        self.rep = rep.truncate(order)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, JetClass)
            and self.point == other.point
            and self.order == other.order
            and self.rep == other.rep
        )

    def __repr__(self) -> str:
        return f"jet(order={self.order}, p={self.point}, rep={self.rep})"


def jet_project(a: Poly, p: Sequence[Scalar], k: int) -> JetClass:
    if k < 0:
        raise ValueError("jet order must be >= 0")
    return JetClass(p, k, a.recenter(p))


# -- polynomial literal parser ---------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x\d+)(?:\^(?P<pow>\d+))?|(?P<sign>[+-]))"
)


def parse_poly(text: str, n: int) -> Poly:
    """Parse the literal grammar: terms split on +/-, factors like `3/2 x0^2 x1`.

    Rejects anything that is not an integer or `p/q` rational (irrational
    inputs fail here, by design).
    """
    if isinstance(text, (int, Fraction)):
        return Poly.const(n, text)
    s = text.strip()
    if not s:
        return Poly.zero(n)
    result = Poly.zero(n)
    pos = 0
    sign = 1
    current: Poly | None = None
    saw_factor = False

    def flush():
        nonlocal result, current, saw_factor, sign
        if saw_factor:
            assert current is not None
            result = result + current.scale(sign)
        current = None
        saw_factor = False
        sign = 1

    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"malformed polynomial literal at {s[pos:]!r}")
        pos = m.end()
        if m.group("sign"):
            flush()
            sign = -1 if m.group("sign") == "-" else 1
            continue
        if current is None:
            current = Poly.const(n, 1)
        if m.group("num"):
            current = current * Poly.const(n, Fraction(m.group("num")))
        else:
            i = int(m.group("var")[1:])
            if i >= n:
                raise ValueError(f"variable x{i} out of range (base dimension {n})")
            k = int(m.group("pow") or 1)
            current = current * Poly.var(n, i) ** k
        saw_factor = True
    if sign != 1 and not saw_factor:
        raise ValueError("dangling sign in polynomial literal")
    flush()
    return result
