import random
from fractions import Fraction

import pytest

from m3decomp.errors import SingularMatrix
from m3decomp.maps import (
    AUTOMORPHISM,
    ANTIAUTOMORPHISM,
    apply_map,
    conjugation,
    is_algebra_map,
    phi_map,
    preserves,
    psi_map,
    rescaled_pair_images_63,
    rescaled_pair_images_72,
    theta,
    transpose_map,
)
from m3decomp.matrices import Mat3, span


def e(i, j):
    return Mat3.basis(i, j)


M7 = span([e(1, 1), e(1, 2), e(1, 3), e(2, 2), e(2, 3), e(3, 2), e(3, 3)])
UPPER = span([e(1, 1), e(1, 2), e(1, 3), e(2, 2), e(2, 3), e(3, 3)])


def test_conjugation_theta12():
    t12 = conjugation(e(1, 2) + e(2, 1) + e(3, 3))
    assert t12.image(e(1, 1)) == e(2, 2)


def test_conjugation_identity():
    c = conjugation(Mat3.identity())
    for (i, j) in ((1, 1), (2, 3), (3, 1)):
        assert c.image(e(i, j)) == e(i, j)


def test_theta23_action():
    t23 = theta(2, 3)
    assert t23.image(e(2, 2)) == e(3, 3)
    assert t23.image(e(1, 2)) == e(1, 3)


def test_conjugation_singular():
    with pytest.raises(SingularMatrix):
        conjugation(e(1, 1))


def test_phi_specializations():
    # beta=gamma=kappa=nu=0, lamda=mu=1 is the 2<->3 index swap
    phi = phi_map(0, 0, 0, 1, 1, 0)
    t23 = theta(2, 3)
    assert phi.matrix9 == tuple(
        tuple(x * phi.den for x in row) for row in
        [[y * t23.den ** 0 for y in row] for row in t23.matrix9]
    ) or all(
        phi.image(e(i, j)) == t23.image(e(i, j)) for (i, j) in
        [(a, b) for a in (1, 2, 3) for b in (1, 2, 3)]
    )
    # identity parameters
    ident = phi_map(0, 0, 1, 0, 0, 1)
    for (i, j) in ((1, 1), (2, 1), (3, 2)):
        assert ident.image(e(i, j)) == e(i, j)


def test_phi_e11_image():
    phi = phi_map(2, 3, 1, 0, 0, 1)
    assert phi.image(e(1, 1)) == e(1, 1) + e(1, 2).scale(2) + e(1, 3).scale(3)


def test_phi_delta_zero():
    with pytest.raises(SingularMatrix):
        phi_map(0, 0, 1, 1, 1, 1)


def test_psi_identity_and_e13():
    ident = psi_map(1, 0, 0, 1, 0)
    assert ident.image(e(2, 2)) == e(2, 2)
    psi = psi_map(5, 1, 2, 3, 4)
    assert psi.image(e(1, 3)) == e(1, 3).scale(5)


def test_psi_equals_phi_mu0_randomized():
    rng = random.Random(4)
    done = 0
    while done < 20:
        a, b, g, d, eps = (rng.randint(-5, 5) for _ in range(5))
        if a == 0 or d == 0:
            continue
        done += 1
        psi = psi_map(a, b, g, d, eps)
        phi = phi_map(b, g, d, eps, 0, a)
        for (i, j) in [(x, y) for x in (1, 2, 3) for y in (1, 2, 3)]:
            assert psi.image(e(i, j)) == phi.image(e(i, j))


def test_apply_map_theta23():
    s = span([e(2, 2), e(2, 3)])
    img = apply_map(theta(2, 3), s)
    assert img.same_space(span([e(3, 3), e(3, 2)]))


def test_apply_map_relates_case3_and_r5():
    # the group element beta=gamma=mu=0, kappa=lamda=nu=1 carries (R5) onto
    # the case-3 span, so the two lie in one orbit
    phi = phi_map(0, 0, 1, 1, 0, 1)
    case3 = span([e(2, 1) + e(2, 2) + e(3, 3), e(3, 1) + e(2, 2) + e(3, 3)])
    r5 = span([e(2, 1) + e(2, 2) + e(3, 3), e(3, 1)])
    assert apply_map(phi, r5).same_space(case3)


def test_transpose_map():
    t = transpose_map()
    assert t.kind == ANTIAUTOMORPHISM
    assert t.image(e(1, 2)) == e(2, 1)
    assert t.compose(t).matrix9 == conjugation(Mat3.identity()).matrix9
    m7t = apply_map(t, M7)
    assert not m7t.same_space(M7)
    assert m7t.same_space(
        span([e(1, 1), e(2, 1), e(3, 1), e(2, 2), e(3, 2), e(2, 3), e(3, 3)])
    )


def test_is_algebra_map_phi_symbolic():
    phi = phi_map()
    ok, witness = is_algebra_map(phi)
    assert ok, witness


def test_phi_preserves_m7_symbolically():
    phi = phi_map()
    ring = phi.domain
    m7_ring = span([g.map_domain(ring) for g in M7.generators])
    assert preserves(phi, m7_ring)


def test_is_algebra_map_psi_symbolic():
    psi = psi_map()
    ok, witness = is_algebra_map(psi)
    assert ok, witness
    ring = psi.domain
    upper_ring = span([g.map_domain(ring) for g in UPPER.generators])
    assert preserves(psi, upper_ring)


def test_is_algebra_map_transpose():
    ok, witness = is_algebra_map(transpose_map())
    assert ok, witness


def test_is_algebra_map_rejects_bad_map():
    t = transpose_map()
    rows = [list(r) for r in conjugation(Mat3.identity()).matrix9]
    # send e11 to e12, fix everything else: violates e11^2 = e11
    rows = [[Fraction(0)] * 9 for _ in range(9)]
    for k in range(9):
        rows[k][k] = Fraction(1)
    rows[0][0] = Fraction(0)
    rows[1][0] = Fraction(1)
    bad = type(t)(rows, Fraction(1), AUTOMORPHISM)
    ok, witness = is_algebra_map(bad)
    assert not ok


def test_phi_composition_randomized():
    rng = random.Random(12)
    done = 0
    while done < 10:
        ps = [rng.randint(-3, 3) for _ in range(12)]
        d1 = ps[2] * ps[5] - ps[3] * ps[4]
        d2 = ps[8] * ps[11] - ps[9] * ps[10]
        if d1 == 0 or d2 == 0:
            continue
        done += 1
        f1 = phi_map(*ps[:6])
        f2 = phi_map(*ps[6:])
        comp = f1.compose(f2)
        ok, witness = is_algebra_map(comp)
        assert ok, witness


def test_lemma_rescaling_identities():
    for (computed, claimed) in rescaled_pair_images_72():
        assert computed == claimed
    for (computed, claimed) in rescaled_pair_images_63():
        assert computed == claimed


def test_apply_map_preserves_verdicts():
    rng = random.Random(8)
    s = span([e(2, 1) + e(2, 2), e(3, 1)])
    bad = span([e(1, 2), e(2, 1)])
    done = 0
    while done < 10:
        ps = [rng.randint(-3, 3) for _ in range(6)]
        if ps[2] * ps[5] - ps[3] * ps[4] == 0:
            continue
        done += 1
        phi = phi_map(*ps)
        assert apply_map(phi, s).is_subalgebra()[0]
        assert not apply_map(phi, bad).is_subalgebra()[0]


def test_apply_map_preserves_direct_sum_verdict():
    from m3decomp.matrices import is_direct_sum

    m7 = span([e(i, j) for (i, j) in
               ((1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3))])
    s = span([e(2, 1) + e(2, 2), e(3, 1)])
    not_complement = span([e(2, 1), e(1, 1)])
    rng = random.Random(14)
    done = 0
    while done < 8:
        ps = [rng.randint(-3, 3) for _ in range(6)]
        if ps[2] * ps[5] - ps[3] * ps[4] == 0:
            continue
        done += 1
        phi = phi_map(*ps)
        assert is_direct_sum(apply_map(phi, s), apply_map(phi, m7))
        assert not is_direct_sum(apply_map(phi, not_complement), apply_map(phi, m7))
