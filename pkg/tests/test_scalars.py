import random
from fractions import Fraction

import pytest

from m3decomp.errors import MissingVariable, ParseError
from m3decomp.scalars import (
    GF,
    ConstraintSet,
    PolynomialRing,
    QQ,
    certified_nonzero,
    constraint_satisfied,
    parse_poly,
    poly_eval,
    poly_to_string,
)


def ring(*names):
    return PolynomialRing(names)


def test_rational_field_axioms_randomized():
    rng = random.Random(11)
    for _ in range(200):
        a = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        b = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        c = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        if b != 0:
            assert (a / b) * b == a


def test_fraction_normalization_idempotent():
    x = Fraction(-6, 8)
    assert x.numerator == -3 and x.denominator == 4
    assert Fraction(x.numerator, x.denominator) == x


def test_fp_arithmetic():
    F = GF(5)
    a, b = F.from_int(3), F.from_int(4)
    assert a + b == F.from_int(2)
    assert a * b == F.from_int(2)
    assert (a * a.inverse()) == F.one()
    assert F.coerce(Fraction(1, 2)) == F.from_int(3)
    with pytest.raises(ValueError):
        GF(6)


def test_poly_eval_substitution():
    R = ring("y")
    y = R.gen("y")
    assert poly_eval(1 - y, {"y": 0}) == Fraction(1)


def test_poly_eval_constraint_boundary():
    R = ring("e", "u")
    e, u = R.gens()
    assert poly_eval(e * u - 1, {"e": 1, "u": 1}) == Fraction(0)


def test_poly_eval_theorem4_relation():
    # n = d(m-p)-e evaluated by hand: 2*(3-1)-4 = 0
    R = ring("d", "e", "m", "p")
    d, e, m, p = R.gens()
    assert poly_eval(d * (m - p) - e, {"d": 2, "m": 3, "p": 1, "e": 4}) == Fraction(0)


def test_poly_eval_missing_variable():
    R = ring("y")
    y = R.gen("y")
    with pytest.raises(MissingVariable):
        poly_eval(y + 1, {})


def test_poly_eval_is_ring_homomorphism_randomized():
    R = ring("a", "b", "c")
    rng = random.Random(7)
    gens = R.gens()

    def random_poly():
        p = R.zero()
        for _ in range(rng.randint(1, 5)):
            term = R.constant(rng.randint(-4, 4))
            for g in gens:
                term = term * g ** rng.randint(0, 2)
            p = p + term
        return p

    for _ in range(40):
        p, q = random_poly(), random_poly()
        sigma = {n: rng.randint(-5, 5) for n in R.names}
        assert poly_eval(p * q, sigma) == poly_eval(p, sigma) * poly_eval(q, sigma)
        assert poly_eval(p + q, sigma) == poly_eval(p, sigma) + poly_eval(q, sigma)


def test_poly_eval_into_fp():
    R = ring("x")
    x = R.gen("x")
    F = GF(3)
    assert poly_eval(x * x + 1, {"x": F.from_int(2)}, F) == F.from_int(2)


def test_constraint_satisfied():
    R = ring("f")
    f = R.gen("f")
    assert constraint_satisfied(ConstraintSet([f]), {"f": 1})
    Ry = ring("y")
    y = Ry.gen("y")
    assert not constraint_satisfied(ConstraintSet([y]), {"y": 0})
    Reu = ring("e", "u")
    e, u = Reu.gens()
    assert not constraint_satisfied(ConstraintSet([], [(e, u)]), {"e": 0, "u": 0})
    assert constraint_satisfied(ConstraintSet([], [(e, u)]), {"e": 0, "u": 2})


def test_certified_nonzero():
    R = ring("e", "f", "u")
    e, f, u = R.gens()
    c = ConstraintSet([f, e * u - 1])
    assert certified_nonzero(R.constant(Fraction(-3, 2)), c)
    assert certified_nonzero(f, c)
    assert certified_nonzero(f * f, c)
    assert certified_nonzero((e * u - 1) * f * 2, c)
    assert not certified_nonzero(e, c)
    assert not certified_nonzero(f + 1, c)
    assert not certified_nonzero(R.zero(), c)


def test_exact_divide():
    R = ring("x", "y")
    x, y = R.gens()
    p = (x + y) * (x - y) * 3
    assert p.exact_divide(x + y) == (x - y) * 3
    with pytest.raises(ValueError):
        p.exact_divide(x + 1)


def test_parser_roundtrip():
    R = ring("d", "f", "y")
    d, f, y = R.gens()
    cases = [f * y - 1, -(f * y), d * (f - y) + 2, R.constant(0), f * f * f - 2 * d]
    for p in cases:
        assert parse_poly(poly_to_string(p), R) == p


def test_parser_examples():
    R = ring("b", "m", "p")
    b, m, p = R.gens()
    assert parse_poly("m*(m-p)", R) == m * m - m * p
    assert parse_poly("-(b+1)", R) == -b - 1
    assert parse_poly("  2 * m -  3", R) == 2 * m - 3


def test_parser_rejects_division():
    R = ring("f")
    with pytest.raises(ParseError):
        parse_poly("1/f", R)
    with pytest.raises(ParseError):
        parse_poly("f^2", R)
    with pytest.raises(ParseError):
        parse_poly("q", R)


def test_cast_between_rings():
    R = ring("a", "b")
    S = ring("a", "b", "lam")
    p = R.gen("a") * 2 + R.gen("b")
    q = p.cast(S)
    assert poly_eval(q, {"a": 1, "b": 2, "lam": 9}) == Fraction(4)


def test_qq_domain():
    assert QQ.coerce(3) == Fraction(3)
    assert QQ.one() - QQ.one() == QQ.zero()
