from fractions import Fraction

import pytest

from m3decomp.catalog import entry_by_id
from m3decomp.errors import NotDirectSum
from m3decomp.matrices import Mat3, span
from m3decomp.rota_baxter import (
    RBOperator,
    check_complement_identity,
    check_rb_identity,
    rb_for_entry,
    rb_pair_for_entry,
    splitting_rb,
)


def e(i, j):
    return Mat3.basis(i, j)


def test_r1_projection_values():
    S, B = entry_by_id("R1").specialize({})
    r = splitting_rb(S, B, Fraction(3))
    # e21 lies in S: killed; e11 lies in B: scaled by -weight
    img = r.apply_numerator(e(2, 1))
    assert img.is_zero()
    img = r.apply_numerator(e(1, 1))
    assert img == e(1, 1).scale(Fraction(-3) * r.den)


def test_projection_identity():
    S, B = entry_by_id("R1").specialize({})
    r = splitting_rb(S, B, Fraction(2))
    # R^2 = -weight * R, checked fraction-free
    for (i, j) in ((1, 1), (2, 1), (3, 3), (1, 2)):
        x = e(i, j)
        lhs = r.apply_numerator(r.apply_numerator(x))
        rhs = r.apply_numerator(x).scale(Fraction(-2) * r.den)
        assert lhs == rhs


def test_identity_in_s_for_s1():
    entry = entry_by_id("S1")
    S, B = entry.specialize({})
    r = splitting_rb(S, B, Fraction(1))
    assert r.apply_numerator(Mat3.identity()).is_zero()


def test_zero_and_scaled_identity_pass():
    zero = RBOperator(
        tuple(tuple(Fraction(0) for _ in range(9)) for _ in range(9)),
        Fraction(1), Fraction(1),
    )
    ok, _ = check_rb_identity(zero)
    assert ok
    neg = RBOperator(
        tuple(tuple(Fraction(-1) if i == j else Fraction(0) for j in range(9))
              for i in range(9)),
        Fraction(1), Fraction(1),
    )
    ok, _ = check_rb_identity(neg)
    assert ok


def test_broken_operator_fails():
    rows = [[Fraction(0)] * 9 for _ in range(9)]
    rows[1][0] = Fraction(1)  # e11 -> e12, everything else -> 0
    bad = RBOperator(tuple(tuple(r) for r in rows), Fraction(1), Fraction(1))
    ok, witness = check_rb_identity(bad)
    assert not ok and witness is not None


def test_not_direct_sum_rejected():
    s = span([e(1, 1)])
    b = span([e(1, 1), e(2, 2)])
    with pytest.raises(NotDirectSum):
        splitting_rb(s, b, Fraction(1))


def test_symbolic_identities_sample():
    for ident in ("R10", "S11", "T5", "U8@M1", "V5", "X6", "Y10", "Z4"):
        r, rt = rb_pair_for_entry(entry_by_id(ident))
        ok, witness = check_rb_identity(r)
        assert ok, (ident, witness)
        ok, witness = check_rb_identity(rt)
        assert ok, (ident, witness)
        assert check_complement_identity(r, rt), ident


def test_concrete_weight():
    r, rt = rb_pair_for_entry(entry_by_id("R9"), weight=Fraction(5, 2))
    assert check_rb_identity(r)[0]
    assert check_complement_identity(r, rt)


def test_export_shape():
    r = rb_for_entry(entry_by_id("R1"), weight=1)
    doc = r.to_json()
    assert len(doc["matrix"]) == 9 and len(doc["matrix"][0]) == 9
    assert doc["coordinate_order"][0] == "e11" and doc["coordinate_order"][-1] == "e33"
