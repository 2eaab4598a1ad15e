import random
from fractions import Fraction

import pytest

from m3decomp.catalog import LEMMA5_SUBALGEBRAS, entry_by_id
from m3decomp.errors import CharNotZero, DimensionMismatch, NotSupported
from m3decomp.invariants import (
    classify_2dim,
    fingerprint,
    idempotents,
    matrix_rank,
    principal_idempotent,
    radical,
)
from m3decomp.maps import apply_map, phi_map, transpose_map
from m3decomp.matrices import Mat3, span
from m3decomp.scalars import GF


def e(i, j):
    return Mat3.basis(i, j)


def s_of(ident):
    entry = entry_by_id(ident)
    S, _ = entry.specialize({p: 2 + k for k, p in enumerate(entry.params)})
    return S


def test_radical_full_matrix_algebra():
    full = span([e(i, j) for i in (1, 2, 3) for j in (1, 2, 3)])
    assert radical(full).dim == 0


def test_radical_m7():
    m7 = span([e(1, 1), e(1, 2), e(1, 3), e(2, 2), e(2, 3), e(3, 2), e(3, 3)])
    rad = radical(m7)
    assert rad.dim == 2
    assert rad.same_space(span([e(1, 2), e(1, 3)]))
    # oracle: span{e12,e13} is a nilpotent ideal and the quotient dims fit
    # the 1 + 4 block structure (1x1 plus 2x2 blocks)
    for g in m7.generators:
        for r in (e(1, 2), e(1, 3)):
            assert rad.contains(g @ r) and rad.contains(r @ g)
    assert (e(1, 2) @ e(1, 3)).is_zero() and (e(1, 2) @ e(1, 2)).is_zero()
    assert m7.dim - rad.dim == 5


def test_radical_upper_triangular():
    upper = span([e(1, 1), e(1, 2), e(1, 3), e(2, 2), e(2, 3), e(3, 3)])
    rad = radical(upper)
    assert rad.dim == 3
    assert rad.same_space(span([e(1, 2), e(1, 3), e(2, 3)]))


def test_radical_fp_fallback():
    F = GF(3)
    up = span([Mat3.basis(1, 1, F), Mat3.basis(1, 2, F)])
    with pytest.raises(CharNotZero):
        radical(up)
    rad = radical(up, allow_fp=True)
    assert rad.dim == 1
    assert rad.contains(Mat3.basis(1, 2, F))
    # scalar multiples of E inside M_3(F_3): trace form degenerates but the
    # fallback still reports a zero radical
    ident = span([Mat3.identity(F)])
    assert radical(ident, allow_fp=True).dim == 0


def test_radical_is_nilpotent_ideal_catalog_sample():
    for ident in ("T2", "X6", "Z2", "V4"):
        S = s_of(ident)
        rad = radical(S)
        rb = [m for m in rad.basis_mats() if not m.is_zero()]
        for g in S.generators:
            for r in rb:
                assert rad.contains(g @ r)
                assert rad.contains(r @ g)


def test_classify_2dim_remark1():
    expected = {f"R{k}": f"D{k}" for k in range(1, 8)}
    for ident, d in expected.items():
        assert classify_2dim(s_of(ident)) == d


def test_classify_2dim_examples():
    assert classify_2dim(span([e(2, 1), e(3, 1)])) == "D1"
    s = span([e(2, 1), e(3, 1) + e(2, 3)])
    assert classify_2dim(s) == "D2"
    g = e(3, 1) + e(2, 3)
    assert g @ g == e(2, 1)
    assert classify_2dim(span([e(2, 1) + e(2, 2), e(3, 1) + e(3, 2)])) == "D6"


def test_classify_2dim_dimension_check():
    with pytest.raises(DimensionMismatch):
        classify_2dim(span([e(1, 1)]))


def test_classify_2dim_basis_change_invariant():
    rng = random.Random(21)
    for ident in ("R4", "R5", "R6", "R8"):
        s = s_of(ident)
        tag = classify_2dim(s)
        g1, g2 = s.generators
        for _ in range(10):
            while True:
                a, b, c, d = (Fraction(rng.randint(-4, 4)) for _ in range(4))
                if a * d - b * c != 0:
                    break
            t = span([g1.scale(a) + g2.scale(b), g1.scale(c) + g2.scale(d)])
            assert classify_2dim(t) == tag


def test_idempotents_r5_r6():
    r5 = idempotents(s_of("R5"))
    u = e(2, 1) + e(2, 2) + e(3, 3)
    assert any(pt == u for pt, _ in r5.points)
    assert r5.all_ranks() == (2,)
    assert r5.contains_matrix(u + e(3, 1).scale(7))
    r6 = idempotents(s_of("R6"))
    assert any(pt == e(2, 1) + e(2, 2) for pt, _ in r6.points)
    assert r6.all_ranks() == (1,)


def test_idempotents_nilpotent_empty():
    assert idempotents(span([e(2, 1), e(3, 1)])).points == ()


def test_idempotents_d7_split():
    ids = idempotents(s_of("R7"))
    assert len(ids.points) == 3
    assert ids.all_ranks() == (1, 2)


def test_idempotents_dim_limit():
    with pytest.raises(NotSupported):
        idempotents(s_of("T1") if s_of("T1").dim > 2 else s_of("X1"))


def test_idempotents_fp_enumeration():
    F = GF(3)
    s = span([Mat3.basis(2, 1, F) + Mat3.basis(2, 2, F), Mat3.basis(3, 1, F)])
    ids = idempotents(s)
    assert any(pt == Mat3.basis(2, 1, F) + Mat3.basis(2, 2, F) for pt, _ in ids.points)


def test_fingerprint_t_cases():
    fps = {ident: fingerprint(s_of(ident)) for ident in ("T1", "T2", "T3", "T4", "T5", "T6")}
    assert fps["T1"].rad_dims[0] == 3 and fps["T1"].ss_dim == 0
    assert fps["T2"].ss_dim == 1 and fps["T3"].ss_dim == 1
    assert fps["T2"].rad_in_left_ann and not fps["T3"].rad_in_left_ann
    assert fps["T5"].has_unit
    t5_unit = e(1, 1) + e(2, 2) + e(3, 1)
    s5 = s_of("T5")
    assert s5.contains(t5_unit)
    assert all((t5_unit @ g) == g and (g @ t5_unit) == g for g in s5.generators)
    assert not fps["T4"].has_unit and not fps["T6"].has_unit
    # T4 and T6 are antiisomorphic: fingerprints agree only after the swap
    assert fps["T4"] != fps["T6"]
    assert fps["T4"] == fps["T6"].swapped()


def test_fingerprint_x_cases():
    fps = {f"X{k}": fingerprint(s_of(f"X{k}")) for k in range(1, 8)}
    assert fps["X6"].rad_in_left_ann
    assert not fps["X7"].rad_in_left_ann and not fps["X7"].rad_in_right_ann
    assert fps["X5"].rad_dims[0] == 0
    for k in (1, 2, 3, 4):
        assert fps[f"X{k}"].rad_dims[0] == 3
    for k in (6, 7):
        assert fps[f"X{k}"].rad_dims[0] != 3
    assert fps["X1"].ann_radsq_has_idempotent
    assert not fps["X2"].ann_radsq_has_idempotent
    assert fps["X4"].idempotent_ranks == (2,)
    assert fps["X1"].idempotent_ranks == (1,)


def test_fingerprint_z_cases():
    fps = {f"Z{k}": fingerprint(s_of(f"Z{k}")) for k in range(1, 5)}
    for k in (1, 3):
        assert fps[f"Z{k}"].rad_dims[0] == 3
    for k in (2, 4):
        assert fps[f"Z{k}"].rad_dims[0] != 3
    assert fps["Z4"].rad_in_left_ann
    assert not fps["Z2"].rad_in_left_ann and not fps["Z2"].rad_in_right_ann


def test_fingerprint_lemma5_separation():
    fps = {}
    for k, comp in LEMMA5_SUBALGEBRAS.items():
        fps[k] = fingerprint(comp.subspace())
    # unique semisimple, unique 2-dim radical, two non-unital ones
    assert [k for k in fps if fps[k].rad_dims[0] == 0] == [1]
    assert [k for k in fps if fps[k].rad_dims[0] == 2] == [2]
    assert sorted(k for k in fps if not fps[k].has_unit) == [4, 5]
    keys = sorted(fps)
    for i in keys:
        for j in keys:
            if i < j:
                assert not fps[i].matches_up_to_transpose(fps[j]), (i, j)


def test_fingerprint_automorphism_invariance():
    rng = random.Random(31)
    for ident in ("R5", "T2", "X6", "Z4"):
        s = s_of(ident)
        fp = fingerprint(s)
        done = 0
        while done < 5:
            ps = [rng.randint(-3, 3) for _ in range(6)]
            if ps[2] * ps[5] - ps[3] * ps[4] == 0:
                continue
            done += 1
            img = apply_map(phi_map(*ps), s)
            assert fingerprint(img) == fp


def test_fingerprint_transpose_swaps_sides():
    for ident in ("T2", "X6", "Z4"):
        s = s_of(ident)
        st = apply_map(transpose_map(), s)
        assert fingerprint(st) == fingerprint(s).swapped()


def test_principal_idempotent_ranks():
    assert matrix_rank(principal_idempotent(s_of("X4"))) == 2
    assert matrix_rank(principal_idempotent(s_of("X1"))) == 1
    assert principal_idempotent(span([e(2, 1), e(3, 1)])) is None
    for ident in ("T5", "V1", "Y8"):
        s = s_of(ident)
        u = principal_idempotent(s)
        assert u is not None and (u @ u) == u and s.contains(u)
