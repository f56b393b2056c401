import random
from fractions import Fraction

import pytest

from bracketlab.polyjet import Poly
from bracketlab.gca import (
    Derivation,
    GElement,
    GeneratorTable,
    bigrade,
    commutator,
    normalize_word,
)

random.seed(20260823)


def table(n=2, r=2):
    return GeneratorTable(n, [(f"xi{a}", 1) for a in range(r)])


def rand_poly(n, deg=2):
    out = Poly.zero(n)
    for _ in range(3):
        expo = tuple(random.randint(0, deg) for _ in range(n))
        out = out + Poly.monomial(n, expo, Fraction(random.randint(-3, 3)))
    return out


def test_word_normalization_signs():
    gt = table()
    a = GElement.from_word(gt, (0, 1), Poly.const(2, 1))
    b = GElement.from_word(gt, (1, 0), Poly.const(2, 1))
    assert a == b.scale(-1)
    # repeated odd generator squares to zero
    assert GElement.from_word(gt, (0, 0), Poly.const(2, 1)).is_zero()


def test_normalize_word():
    gt = table(2, 3)
    assert normalize_word(gt, (2, 0, 1)) == (1, (0, 1, 2))
    assert normalize_word(gt, (1, 0)) == (-1, (0, 1))
    assert normalize_word(gt, (0, 0)) == (0, None)


def test_gelement_product_is_associative_and_graded_commutative():
    gt = table(2, 3)
    for _ in range(20):
        elts = []
        for _ in range(3):
            w = tuple(sorted(random.sample(range(3), random.randint(0, 2))))
            elts.append(GElement.from_word(gt, w, rand_poly(2)))
        a, b, c = elts
        assert (a * b) * c == a * (b * c)
        da = sum(gt.degrees[g] for g in next(iter(a.terms), ()))
        db = sum(gt.degrees[g] for g in next(iter(b.terms), ()))
        sign = -1 if (da % 2) and (db % 2) else 1
        assert a * b == (b * a).scale(sign)


def rand_derivation(gt, deg=1):
    n, r = gt.n, gt.num_fibers
    base = [
        GElement(gt, {(a,): rand_poly(n) for a in range(r)}) for _ in range(n)
    ]
    fiber = [
        GElement(gt, {(0, 1): rand_poly(n), (): Poly.zero(n)})
        for _ in range(r)
    ]
    return Derivation(gt, deg, base, fiber)


def test_commutator_graded_antisymmetry_and_jacobi():
    gt = table()
    for _ in range(25):
        d1 = rand_derivation(gt)
        d2 = rand_derivation(gt)
        d3 = rand_derivation(gt)
        # degree-1 derivations: [d1,d2] = d1 d2 + d2 d1 is symmetric
        assert commutator(d1, d2) == commutator(d2, d1)
        # graded Jacobi for odd elements:
        # [d1,[d2,d3]] = [[d1,d2],d3] - [d2,[d1,d3]]
        j = (
            commutator(d1, commutator(d2, d3))
            - commutator(commutator(d1, d2), d3)
            + commutator(d2, commutator(d1, d3))
        )
        assert j.is_zero()


def test_derivation_leibniz():
    gt = table()
    d = rand_derivation(gt)
    for _ in range(10):
        f = GElement.from_poly(gt, rand_poly(2))
        g = GElement.from_word(gt, (0,), rand_poly(2))
        left = d.apply(f * g)
        right = d.apply(f) * g + f * d.apply(g)
        assert left == right


def test_bigrade_components_sum_back():
    gt = table()
    for _ in range(10):
        d = rand_derivation(gt)
        parts = bigrade(d)
        total = Derivation.zero(gt, d.deg)
        for _, comp in parts:
            total = total + comp
        assert total == d
