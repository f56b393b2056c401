"""Free graded-commutative algebras over Poly, and graded derivations.

Generators live in a GeneratorTable: base coordinates x0..x{n-1} (degree 0,
handled inside Poly), fiber generators of degree >= 1, and optionally momentum
generators p_i of degree 2 paired with the base coordinates (used by the
degree-2 symplectic layer).  A monomial is a sorted tuple of generator
indices; odd generators square to zero structurally, and every reordering
picks up the Koszul sign.

Derivations are stored intensionally: degree plus the image of every
generator.  Application is Leibniz extension; the graded commutator of two
derivations is again given by its generator images.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polyjet import Poly, Scalar

Word = tuple  # tuple[int, ...] of generator indices, canonically sorted


class GeneratorTable:
    """Ordered generator list for a free graded-commutative algebra."""

    def __init__(
        self,
        n: int,
        fibers: Sequence[tuple[str, int]] = (),
        momenta: bool = False,
    ):
        self.n = n
        names: list[str] = []
        degrees: list[int] = []
        for name, deg in fibers:
            if deg < 1:
                raise ValueError(f"fiber generator {name} must have degree >= 1")
            names.append(name)
            degrees.append(deg)
        self.num_fibers = len(names)
        self.momenta = momenta
        if momenta:
            for i in range(n):
                names.append(f"p{i}")
                degrees.append(2)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.index = {name: i for i, name in enumerate(names)}

    def momentum(self, i: int) -> int:
        """Generator index of p_i."""
        if not self.momenta:
            raise ValueError("table has no momentum generators")
        return self.num_fibers + i

    def is_momentum(self, g: int) -> bool:
        return self.momenta and g >= self.num_fibers

    def degree(self, g: int) -> int:
        return self.degrees[g]

    def is_odd(self, g: int) -> bool:
        return self.degrees[g] % 2 == 1

    def word_degree(self, word: Word) -> int:
        return sum(self.degrees[g] for g in word)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GeneratorTable)
            and self.n == other.n
            and self.names == other.names
            and self.degrees == other.degrees
        )

    def __repr__(self) -> str:
        gens = ", ".join(f"{nm}:{d}" for nm, d in zip(self.names, self.degrees))
        return f"GeneratorTable(n={self.n}, [{gens}])"


def normalize_word(table: GeneratorTable, raw: Sequence[int]):
    """Sort a generator word into canonical order.

    Returns (sign, word) where sign is +1/-1 from odd-odd transpositions, or
    (0, None) when an odd generator repeats.
    """
    word = list(raw)
    sign = 1
    # insertion sort, counting odd-odd transpositions
    for i in range(1, len(word)):
        j = i
        while j > 0 and word[j - 1] > word[j]:
            if table.is_odd(word[j - 1]) and table.is_odd(word[j]):
                sign = -sign
            word[j - 1], word[j] = word[j], word[j - 1]
            j -= 1
    for a, b in zip(word, word[1:]):
        if a == b and table.is_odd(a):
            return 0, None
    return sign, tuple(word)


class GElement:
    """Element of the free graded-commutative algebra: map word -> Poly."""

    __slots__ = ("table", "terms")

    def __init__(self, table: GeneratorTable, terms=None):
        self.table = table
        clean: dict[Word, Poly] = {}
        if terms:
            for w, p in terms.items():
                if p:
                    clean[tuple(w)] = p
        self.terms = clean

    @staticmethod
    def zero(table: GeneratorTable) -> "GElement":
        return GElement(table, {})

    @staticmethod
    def from_poly(table: GeneratorTable, p: Poly) -> "GElement":
        return GElement(table, {(): p})

    @staticmethod
    def from_word(table: GeneratorTable, raw: Sequence[int], coeff=None) -> "GElement":
        sign, word = normalize_word(table, raw)
        if sign == 0:
            return GElement.zero(table)
        p = coeff if coeff is not None else Poly.const(table.n, 1)
        if sign < 0:
            p = p.scale(-1)
        return GElement(table, {word: p})

    @staticmethod
    def gen(table: GeneratorTable, g: int) -> "GElement":
        return GElement(table, {(g,): Poly.const(table.n, 1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GElement)
            and self.table == other.table
            and self.terms == other.terms
        )

    def coeff(self, word: Word) -> Poly:
        return self.terms.get(tuple(word), Poly.zero(self.table.n))

    def degrees_present(self) -> set[int]:
        return {self.table.word_degree(w) for w in self.terms}

    def degree(self) -> int:
        """Degree of a homogeneous element (zero counts as any; returns 0)."""
        degs = self.degrees_present()
        if not degs:
            return 0
        if len(degs) > 1:
            raise ValueError(f"element not homogeneous, degrees {sorted(degs)}")
        return degs.pop()

    def homogeneous_part(self, d: int) -> "GElement":
        return GElement(
            self.table,
            {w: p for w, p in self.terms.items() if self.table.word_degree(w) == d},
        )

    def __add__(self, other: "GElement") -> "GElement":
        out = dict(self.terms)
        for w, p in other.terms.items():
            s = out.get(w)
            s = p if s is None else s + p
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return GElement(self.table, out)

    def __neg__(self) -> "GElement":
        return GElement(self.table, {w: -p for w, p in self.terms.items()})

    def __sub__(self, other: "GElement") -> "GElement":
        return self + (-other)

    def scale(self, c: Scalar) -> "GElement":
        return GElement(self.table, {w: p.scale(c) for w, p in self.terms.items()})

    def scale_poly(self, q: Poly) -> "GElement":
        return GElement(self.table, {w: p * q for w, p in self.terms.items()})

    def __mul__(self, other: "GElement") -> "GElement":
        out: dict[Word, Poly] = {}
        for w1, p1 in self.terms.items():
            for w2, p2 in other.terms.items():
                sign, w = normalize_word(self.table, w1 + w2)
                if sign == 0:
                    continue
                q = p1 * p2
                if sign < 0:
                    q = q.scale(-1)
                s = out.get(w)
                s = q if s is None else s + q
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return GElement(self.table, out)

    def map_polys(self, fn) -> "GElement":
        return GElement(self.table, {w: fn(p) for w, p in self.terms.items()})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            label = ".".join(self.table.names[g] for g in w) or "1"
            parts.append(f"({self.terms[w]})*{label}")
        return " + ".join(parts)


def gmul(a: GElement, b: GElement) -> GElement:
    if a.table != b.table:
        raise ValueError("generator table mismatch")
    return a * b


class Derivation:
    """Graded derivation given by its images on all generators.

    base_images[i] is the image of x_i (a GElement of degree = deg of the
    derivation); fiber_images[g] is the image of generator g (degree deg(g) +
    derivation degree).  Missing/None images mean zero.
    """

    __slots__ = ("table", "deg", "base_images", "fiber_images")

    def __init__(self, table: GeneratorTable, deg: int, base_images=None, fiber_images=None):
        self.table = table
        self.deg = deg
        z = GElement.zero(table)
        self.base_images = list(base_images) if base_images else [z] * table.n
        self.fiber_images = (
            list(fiber_images) if fiber_images else [z] * len(table.names)
        )
        if len(self.base_images) != table.n:
            raise ValueError("wrong number of base images")
        if len(self.fiber_images) != len(table.names):
            raise ValueError("wrong number of fiber images")

    @staticmethod
    def zero(table: GeneratorTable, deg: int = 0) -> "Derivation":
        return Derivation(table, deg)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.base_images) and all(
            e.is_zero() for e in self.fiber_images
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Derivation)
            and self.table == other.table
            and self.deg == other.deg
            and self.base_images == other.base_images
            and self.fiber_images == other.fiber_images
        )

    def __add__(self, other: "Derivation") -> "Derivation":
        if self.deg != other.deg and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot add derivations of different degree")
        return Derivation(
            self.table,
            other.deg if self.is_zero() else self.deg,
            [a + b for a, b in zip(self.base_images, other.base_images)],
            [a + b for a, b in zip(self.fiber_images, other.fiber_images)],
        )

    def __neg__(self) -> "Derivation":
        return self.scale(-1)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + (-other)

    def scale(self, c: Scalar) -> "Derivation":
        return Derivation(
            self.table,
            self.deg,
            [e.scale(c) for e in self.base_images],
            [e.scale(c) for e in self.fiber_images],
        )

    def map_polys(self, fn) -> "Derivation":
        return Derivation(
            self.table,
            self.deg,
            [e.map_polys(fn) for e in self.base_images],
            [e.map_polys(fn) for e in self.fiber_images],
        )

    def apply(self, f: GElement) -> GElement:
        if f.table != self.table:
            raise ValueError("generator table mismatch")
        table = self.table
        out = GElement.zero(table)
        for word, coeff in f.terms.items():
            # action on the polynomial coefficient: X(c) = sum_i dc/dx_i X(x_i)
            for i in range(table.n):
                img = self.base_images[i]
                if img.is_zero():
                    continue
                dc = coeff.partial(i)
                if dc:
                    out = out + img.scale_poly(dc) * GElement.from_word(table, word)
            # Leibniz over the fiber word
            prefix_deg = 0
            for j, g in enumerate(word):
                img = self.fiber_images[g]
                if not img.is_zero():
                    sign = -1 if (self.deg % 2) and (prefix_deg % 2) else 1
                    piece = GElement.from_word(table, word[:j], coeff.scale(sign))
                    piece = piece * img
                    piece = piece * GElement.from_word(table, word[j + 1 :])
                    out = out + piece
                prefix_deg += table.degrees[g]
        return out

    def __repr__(self) -> str:
        bits = []
        for i in range(self.table.n):
            if not self.base_images[i].is_zero():
                bits.append(f"x{i} -> {self.base_images[i]}")
        for g, nm in enumerate(self.table.names):
            if not self.fiber_images[g].is_zero():
                bits.append(f"{nm} -> {self.fiber_images[g]}")
        return f"Derivation(deg={self.deg}; " + "; ".join(bits) + ")"


def apply_derivation(X: Derivation, f: GElement) -> GElement:
    return X.apply(f)


def commutator(X: Derivation, Y: Derivation) -> Derivation:
    """Graded commutator [X,Y] = XY - (-1)^{|X||Y|} YX, as a derivation."""
    if X.table != Y.table:
        raise ValueError("generator table mismatch")
    table = X.table
    sign = -1 if (X.deg % 2) and (Y.deg % 2) else 1
    base = []
    for i in range(table.n):
        a = X.apply(Y.base_images[i]) - Y.apply(X.base_images[i]).scale(sign)
        base.append(a)
    fiber = []
    for g in range(len(table.names)):
        a = X.apply(Y.fiber_images[g]) - Y.apply(X.fiber_images[g]).scale(sign)
        fiber.append(a)
    return Derivation(table, X.deg + Y.deg, base, fiber)


def _weight(word: Word) -> int:
    return len(word)


def bigrade(X: Derivation) -> list[tuple[int, Derivation]]:
    """Split a derivation into arity (weight-change) components.

    The weight of a monomial is its fiber-word length; a component of arity a
    raises the weight of every function by a.  The parts sum back to X.
    """
    table = X.table
    parts: dict[int, Derivation] = {}

    def put(arity: int, kind: str, idx: int, word: Word, poly: Poly):
        d = parts.get(arity)
        if d is None:
            d = Derivation.zero(table, X.deg)
            parts[arity] = d
        target = d.base_images if kind == "base" else d.fiber_images
        target[idx] = target[idx] + GElement(table, {word: poly})

    for i in range(table.n):
        for w, p in X.base_images[i].terms.items():
            put(_weight(w), "base", i, w, p)  # x_i has weight 0
    for g in range(len(table.names)):
        for w, p in X.fiber_images[g].terms.items():
            put(_weight(w) - 1, "fiber", g, w, p)
    return sorted(parts.items())
