import random
from fractions import Fraction

import pytest

from bracketlab.polyjet import Poly
from bracketlab.gca import Derivation, GElement, GeneratorTable
from bracketlab.linal import cohomology
from bracketlab.algebroid import IsotropyAlgebra
from bracketlab.sympoisson import (
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
    double_quadratic_data,
    coadjoint_action,
    ham_function,
    lift_algebroid,
    lift_dual_algebroid,
    pair_fixed_point_order,
    pn_compat_errors,
    pn_complex,
    poisson_complex,
    poisson_pair,
    quad_lie_complex,
    quadratic_courant_data,
    standard_tangent_data,
    sym_bracket,
)

import oracles
import structures as S

random.seed(20260823)


def rand_poly(nv, deg=1):
    out = Poly.zero(nv)
    for _ in range(3):
        expo = tuple(random.randint(0, deg) for _ in range(nv))
        out = out + Poly.monomial(nv, expo, Fraction(random.randint(-2, 2)))
    return out


def rand_homog(st, deg, tries=60):
    """Random nonzero element of homogeneous total degree."""
    gt = st.gt
    gens = list(range(len(gt.names)))
    for _ in range(tries):
        word = []
        total = 0
        random.shuffle(gens)
        for g in gens:
            if total + gt.degrees[g] <= deg and (
                gt.degrees[g] % 2 == 0 or g not in word
            ):
                if random.random() < 0.6:
                    word.append(g)
                    total += gt.degrees[g]
        if total == deg:
            e = GElement.from_word(gt, tuple(sorted(word)), rand_poly(gt.n))
            if not e.is_zero():
                return e
    return GElement.from_poly(gt, rand_poly(st.n)) if deg == 0 else GElement.zero(st.gt)


def koszul(a, b):
    return -1 if (a % 2) and (b % 2) else 1


def test_big_bracket_graded_identities():
    st = bialgebroid_table(2, 2)
    for trial in range(60):
        degs = [random.randint(1, 4) for _ in range(3)]
        f, g, h = (rand_homog(st, d) for d in degs)
        if f.is_zero() or g.is_zero() or h.is_zero():
            continue
        sf, sg, sh = (d - 2 for d in degs)
        assert sym_bracket(st, f, g) == sym_bracket(st, g, f).scale(
            -koszul(sf, sg)
        )
        j1 = sym_bracket(st, f, sym_bracket(st, g, h))
        j2 = sym_bracket(st, sym_bracket(st, f, g), h)
        j3 = sym_bracket(st, g, sym_bracket(st, f, h)).scale(koszul(sf, sg))
        assert j1 == j2 + j3


def test_poisson_check_matches_jacobiator_oracle():
    n = 3
    st = bialgebroid_table(n, n)
    pi_dr = lift_algebroid(standard_tangent_data(n), st)
    for trial in range(25):
        pi = S.skew(n, {
            (0, 1): rand_poly(n), (0, 2): rand_poly(n), (1, 2): rand_poly(n),
        })
        f_pi = bivector_function(st, pi)
        engine_flat = derived_bracket(st, pi_dr, f_pi, f_pi).is_zero()
        assert engine_flat == oracles.is_poisson(pi)


def test_poisson_complex_known_values():
    pi = S.poisson_r2()
    C = poisson_complex(pi, [0, 0], 1)
    rep = cohomology(C)
    assert (rep.h0_dim, rep.h1_dim) == (1, 0)
    z2 = [[Poly.zero(2)] * 2 for _ in range(2)]
    rz = cohomology(poisson_complex(z2, [0, 0], 1))
    assert rz.h1_dim == 1


def test_pair_route_agrees_with_flat_route():
    done = 0
    while done < 20:
        nn = 2
        k = random.choice([1, 2])
        q = rand_poly(nn, 2).truncate_below(k)
        if q.is_zero() or q.recenter([Fraction(0)] * nn).vanishing_order() < k:
            continue
        mat = [[Poly.zero(nn), q], [q.scale(-1), Poly.zero(nn)]]
        cp = cohomology(poisson_complex(mat, [0] * nn, k))
        pair = poisson_pair(nn, mat)
        assert pair.mc_errors() == []
        cb = cohomology(bialgebroid_complex(pair, [0] * nn, k))
        assert cp.h1_dim == cb.h1_dim
        done += 1


def test_b_frame_r2():
    pi = S.b_bivector_r2()
    pair = b_pair(2, pi)
    assert pair.mc_errors() == []
    assert pair_fixed_point_order(pair, [0, 0]) == 1
    C = bialgebroid_complex(pair, [0, 0], 1)
    rep = cohomology(C)
    assert rep.h1_dim >= 1
    idx = {lbl: i for i, lbl in enumerate(C.labels1)}
    vec = [Fraction(0)] * len(C.labels1)
    vec[idx["th0.p0|1"]] = Fraction(1)
    assert C.is_cocycle(vec) and not C.is_coboundary(vec)
    assert b_reduced_h1(pi, [0, 0]) == 0


def test_b_frame_zero_bivector_reduced():
    assert b_reduced_h1([[0, 0], [0, 0]], [0, 0]) == 1


def test_b_frame_r3():
    pair = b_pair(3, S.b_bivector_r3())
    assert pair.mc_errors() == []
    rep = cohomology(bialgebroid_complex(pair, [0, 0, 0], 1))
    assert rep.h1_dim == 0


def test_pair_compatibility_error_messages():
    # dual structure broken: non-Poisson bivector
    n = 3
    x1, x2 = Poly.var(n, 1), Poly.var(n, 2)
    bad = S.skew(n, {(0, 1): x2, (1, 2): x1})
    st = bialgebroid_table(n, n)
    pi_a = lift_algebroid(standard_tangent_data(n), st)
    f_b = sym_bracket(st, pi_a, bivector_function(st, bad))
    errs = BialgebroidPair(st, pi_a, f_b).mc_errors()
    assert errs and any("dual" in e for e in errs)


def test_pn_compatibility_and_complex():
    pim, Jm = S.pn_r4()
    d = PNData(4, pim, Jm)
    assert pn_compat_errors(d) == []
    rep = cohomology(pn_complex(d, [0] * 4, 1))
    assert rep.h1_dim == 0
    # breaking compatibility is reported with the right message
    pim2 = [row[:] for row in pim]
    pim2[2][3] = pim2[2][3] + Poly.const(4, Fraction(1, 100))
    pim2[3][2] = pim2[3][2] - Poly.const(4, Fraction(1, 100))
    errs = pn_compat_errors(PNData(4, pim2, Jm))
    assert errs == ["bivector and endomorphism are not compatible"]


def test_pn_identity_endomorphism_matches_flat_h01():
    pi = S.poisson_r2()
    id2 = [[Poly.const(2, 1 if i == j else 0) for j in range(2)] for i in range(2)]
    dn = PNData(2, pi, id2)
    assert pn_compat_errors(dn) == []
    rn = cohomology(pn_complex(dn, [0, 0], 1))
    rp = cohomology(poisson_complex(pi, [0, 0], 1))
    assert (rn.h0_dim, rn.h1_dim) == (rp.h0_dim, rp.h1_dim)


def _standard_split(nn):
    rank = 2 * nn
    pairing = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(nn):
        pairing[i][nn + i] = Fraction(1)
        pairing[nn + i][i] = Fraction(1)
    rho = [[Poly.const(nn, 1 if a == i else 0) for i in range(nn)] for a in range(nn)]
    rho += [[Poly.zero(nn)] * nn for _ in range(nn)]
    T = [[[Poly.zero(nn)] * rank for _ in range(rank)] for _ in range(rank)]
    return CourantData(nn, rank, pairing, rho, T)


def test_courant_theta_round_trips():
    cd = _standard_split(2)
    theta, defect = courant_theta(cd)
    assert defect.is_zero()
    # anchor round trip
    for A in range(4):
        thA = GElement.gen(cd.st.gt, cd.st.th(A))
        for i in range(2):
            got = sym_bracket(
                cd.st, sym_bracket(cd.st, theta, thA),
                GElement.from_poly(cd.st.gt, Poly.var(2, i)),
            )
            assert got == GElement.from_poly(cd.st.gt, cd.rho[A][i])
    assert courant_fixed_point_order(cd, theta, [0, 0]) == 0


def test_quadratic_lie_routes_agree():
    sl2 = S.sl2_algebra()
    coad = coadjoint_action(sl2)
    taus_vw = S.block_sum(coad, S.sl2_std_rep())
    dd, pairing_d, taus_d = double_quadratic_data(sl2, taus_vw)
    dd.check_jacobi()
    cd = quadratic_courant_data(dd, pairing_d, taus_d)
    theta, defect = courant_theta(cd)
    assert defect.is_zero()
    # cubic round trip on a few triples
    for (a, b, c) in ((0, 1, 2), (1, 3, 4), (2, 0, 5)):
        tha = GElement.gen(cd.st.gt, cd.st.th(a))
        thb = GElement.gen(cd.st.gt, cd.st.th(b))
        thc = GElement.gen(cd.st.gt, cd.st.th(c))
        got = sym_bracket(
            cd.st, thc, sym_bracket(cd.st, thb, sym_bracket(cd.st, tha, theta))
        )
        assert got == GElement.from_poly(cd.st.gt, cd.T[a][b][c])
    Cq = quad_lie_complex(dd, pairing_d, taus_d)
    assert Cq.D1.matmul(Cq.D0).is_zero()
    rq = cohomology(Cq)
    Cc = courant_complex(cd, [0] * 5, 1)
    rc = cohomology(Cc)
    assert (rq.h0_dim, rq.h1_dim) == (rc.h0_dim, rc.h1_dim) == (0, 0)


def test_quadratic_lie_w0_has_identity_class():
    sl2 = S.sl2_algebra()
    dd0, pairing0, taus0 = double_quadratic_data(sl2, coadjoint_action(sl2))
    Cq0 = quad_lie_complex(dd0, pairing0, taus0)
    rq0 = cohomology(Cq0)
    assert rq0.h1_dim >= 1
    idx1 = {lbl: i for i, lbl in enumerate(Cq0.labels1)}
    vid = [Fraction(0)] * len(Cq0.labels1)
    for a in range(3):
        vid[idx1[f"e^{3 + a}*v{a}"]] = Fraction(1)
    assert Cq0.is_cocycle(vid)
    assert not Cq0.is_coboundary(vid)


def test_ham_lift_reproduces_derivation():
    n, r = 2, 2
    from bracketlab.algebroid import algebroid_table

    st = bialgebroid_table(n, r)
    at = algebroid_table(n, r)
    for trial in range(10):
        base = [GElement(at, {(a,): rand_poly(n) for a in range(r)}) for _ in range(n)]
        fiber = [GElement(at, {(0, 1): rand_poly(n)}) for _ in range(r)]
        delta = Derivation(at, 1, base, fiber)
        fdel = ham_function(st, delta)
        for i in range(n):
            img = sym_bracket(st, fdel, GElement.from_poly(st.gt, Poly.var(n, i)))
            want = GElement(st.gt, dict(delta.base_images[i].terms))
            assert img == want
