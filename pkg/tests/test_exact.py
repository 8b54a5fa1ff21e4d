"""Exact arithmetic layer: quadratic numbers, intervals, comparisons."""

import random
from fractions import Fraction

import pytest

from seshadri.errors import (
    DivisionByZeroInterval,
    IncompatibleRadicands,
    NegativeRadicand,
    NegativeRadicandInterval,
)
from seshadri.exact import (
    DEFAULT_SQRT_WIDTH,
    Const,
    QuadraticNumber,
    RationalInterval,
    Var,
    compare,
    interval_eval,
    parse_quadratic,
    sqrt_enclosure,
    squarefree_decomposition,
)


def test_squarefree_decomposition_basics():
    """n = f**2 * m with m squarefree, returned as (f, m)."""
    assert squarefree_decomposition(1) == (1, 1)
    assert squarefree_decomposition(8) == (2, 2)
    assert squarefree_decomposition(12) == (2, 3)
    assert squarefree_decomposition(49) == (7, 1)
    assert squarefree_decomposition(360) == (6, 10)


def test_squarefree_decomposition_random():
    rng = random.Random(42)
    for _ in range(300):
        n = rng.randrange(1, 10**6)
        f, m = squarefree_decomposition(n)
        assert f * f * m == n
        # m must carry no square factor
        for p in range(2, 50):
            assert m % (p * p) != 0


def test_normalization_extracts_square_factors():
    x = QuadraticNumber(Fraction(0), Fraction(1), 8)
    assert x.rad == 2 and x.b == 2
    y = QuadraticNumber(Fraction(1), Fraction(3), 50)
    assert y.rad == 2 and y.b == 15
    # perfect square radicand collapses to a rational
    z = QuadraticNumber(Fraction(1), Fraction(2), 9)
    assert z.is_rational and z.a == 7 and z.b == 0 and z.rad == 0


def test_structural_equality_is_value_equality():
    assert QuadraticNumber.sqrt(8) == QuadraticNumber.sqrt(2) * 2
    assert QuadraticNumber.sqrt(Fraction(1, 2)) == QuadraticNumber.sqrt(2) / 2
    assert QuadraticNumber.from_rational(Fraction(7, 2)) == Fraction(7, 2)
    assert hash(QuadraticNumber.from_rational(Fraction(7, 2))) == hash(Fraction(7, 2))


def test_sqrt_of_rational():
    x = QuadraticNumber.sqrt(Fraction(9, 4))
    assert x == Fraction(3, 2)
    y = QuadraticNumber.sqrt(Fraction(2, 3))
    assert (y * y) == Fraction(2, 3)
    with pytest.raises(NegativeRadicand):
        QuadraticNumber.sqrt(-2)


def test_arithmetic_in_a_fixed_field():
    rng = random.Random(7)
    for _ in range(200):
        rad = rng.choice([2, 3, 5, 7, 10, 13])
        a = Fraction(rng.randrange(-20, 21), rng.randrange(1, 9))
        b = Fraction(rng.randrange(-20, 21), rng.randrange(1, 9))
        c = Fraction(rng.randrange(-20, 21), rng.randrange(1, 9))
        d = Fraction(rng.randrange(-20, 21), rng.randrange(1, 9))
        x = QuadraticNumber(a, b, rad)
        y = QuadraticNumber(c, d, rad)
        # ring identities
        assert (x + y) - y == x
        assert x * y == y * x
        if y != 0:
            assert (x / y) * y == x
        # (a + b sqrt(n))(a - b sqrt(n)) = a^2 - b^2 n is rational
        conj = QuadraticNumber(a, -b, rad)
        assert (x * conj).is_rational


def test_division_by_conjugate_norm_zero_is_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QuadraticNumber.sqrt(2) / 0


def test_incompatible_radicands_rejected():
    with pytest.raises(IncompatibleRadicands):
        QuadraticNumber.sqrt(2) + QuadraticNumber.sqrt(3)
    with pytest.raises(IncompatibleRadicands):
        QuadraticNumber.sqrt(2) * QuadraticNumber.sqrt(3)
    # same squarefree part is fine even when written differently
    assert QuadraticNumber.sqrt(8) + QuadraticNumber.sqrt(2) == QuadraticNumber.sqrt(2) * 3


def test_compare_decides_order_exactly():
    # 99/70 is a convergent of sqrt(2): the gap is below 1e-4
    assert compare(QuadraticNumber.sqrt(2), Fraction(99, 70)) < 0
    assert compare(QuadraticNumber.sqrt(2), Fraction(140, 99)) > 0
    assert compare(QuadraticNumber.sqrt(2), QuadraticNumber.sqrt(2)) == 0
    # equal values in different clothing
    assert compare(QuadraticNumber.sqrt(18), QuadraticNumber.sqrt(2) * 3) == 0


def test_compare_random_against_float_oracle():
    rng = random.Random(99)
    for _ in range(300):
        rad = rng.choice([2, 3, 5, 6, 7, 10])
        x = QuadraticNumber(
            Fraction(rng.randrange(-50, 51), rng.randrange(1, 11)),
            Fraction(rng.randrange(-50, 51), rng.randrange(1, 11)),
            rad,
        )
        y = QuadraticNumber(
            Fraction(rng.randrange(-50, 51), rng.randrange(1, 11)),
            Fraction(rng.randrange(-50, 51), rng.randrange(1, 11)),
            rad,
        )
        got = compare(x, y)
        fx = float(x.a) + float(x.b) * rad**0.5
        fy = float(y.a) + float(y.b) * rad**0.5
        if abs(fx - fy) > 1e-9:
            assert got == (-1 if fx < fy else 1)
        else:
            assert got == 0 or abs(fx - fy) <= 1e-9


def test_rich_comparisons_and_sign():
    assert QuadraticNumber.sqrt(2) < Fraction(3, 2)
    assert QuadraticNumber.sqrt(2) > 1
    assert QuadraticNumber.sqrt(2).sign() == 1
    assert (-QuadraticNumber.sqrt(2)).sign() == -1
    assert QuadraticNumber.from_rational(0).sign() == 0


def test_sqrt_enclosure_brackets_and_width():
    rng = random.Random(5)
    for _ in range(200):
        x = Fraction(rng.randrange(0, 10**6), rng.randrange(1, 10**3))
        width = Fraction(1, 2 ** rng.randrange(4, 40))
        iv = sqrt_enclosure(x, width)
        assert iv.hi - iv.lo <= width
        assert iv.lo * iv.lo <= x <= iv.hi * iv.hi
        assert iv.lo >= 0


def test_sqrt_enclosure_exact_for_perfect_squares():
    iv = sqrt_enclosure(Fraction(9, 4), Fraction(1, 2**32))
    assert iv.lo == iv.hi == Fraction(3, 2)
    iv = sqrt_enclosure(49, Fraction(1, 2**10))
    assert iv.lo == iv.hi == 7


def test_interval_arithmetic_soundness_random():
    """Random expressions, random sample points: f(points) inside f(intervals)."""
    rng = random.Random(2024)
    for _ in range(250):
        lo1 = Fraction(rng.randrange(-100, 100), rng.randrange(1, 10))
        lo2 = Fraction(rng.randrange(-100, 100), rng.randrange(1, 10))
        w1 = Fraction(rng.randrange(0, 20), rng.randrange(1, 10))
        w2 = Fraction(rng.randrange(0, 20), rng.randrange(1, 10))
        x = RationalInterval(lo1, lo1 + w1)
        y = RationalInterval(lo2, lo2 + w2)
        px = lo1 + w1 * Fraction(rng.randrange(0, 11), 10)
        py = lo2 + w2 * Fraction(rng.randrange(0, 11), 10)
        assert (x + y).contains(px + py)
        assert (x - y).contains(px - py)
        assert (x * y).contains(px * py)
        if not (y.lo <= 0 <= y.hi):
            assert (x / y).contains(px / py)


def test_interval_division_by_zero_interval():
    with pytest.raises(DivisionByZeroInterval):
        RationalInterval(1, 2) / RationalInterval(-1, 1)


def test_interval_sqrt_clamps_and_rejects():
    iv = RationalInterval(Fraction(-1, 10**9), Fraction(4))
    s = iv.sqrt(Fraction(1, 2**20))
    assert s.lo == 0
    assert s.hi * s.hi >= 4
    with pytest.raises(NegativeRadicandInterval):
        RationalInterval(-4, -1).sqrt()


def test_intersect():
    a = RationalInterval(0, 2)
    b = RationalInterval(1, 3)
    assert a.intersect(b) == RationalInterval(1, 2)
    assert a.intersect(RationalInterval(5, 6)) is None


def test_enclosure_width_and_containment():
    rng = random.Random(11)
    for _ in range(100):
        x = QuadraticNumber(
            Fraction(rng.randrange(-30, 31), rng.randrange(1, 7)),
            Fraction(rng.randrange(-30, 31), rng.randrange(1, 7)),
            rng.choice([2, 3, 5, 11]),
        )
        width = Fraction(1, 2 ** rng.randrange(8, 48))
        iv = x.enclosure(width)
        assert iv.hi - iv.lo <= width
        assert compare(x, iv.lo) >= 0 and compare(x, iv.hi) <= 0


def test_render_parse_round_trip_random():
    rng = random.Random(17)
    for _ in range(300):
        x = QuadraticNumber(
            Fraction(rng.randrange(-40, 41), rng.randrange(1, 12)),
            Fraction(rng.randrange(-40, 41), rng.randrange(1, 12)),
            rng.choice([0, 2, 3, 7, 13, 14]),
        )
        assert parse_quadratic(x.render()) == x


def test_render_canonical_forms():
    assert QuadraticNumber.from_rational(Fraction(77, 24)).render() == "77/24"
    assert QuadraticNumber.sqrt(13).render() == "sqrt(13)"
    assert (QuadraticNumber.sqrt(3) * Fraction(-1, 3) + 4).render() == "4 - 1/3*sqrt(3)"
    assert (QuadraticNumber.sqrt(2) * 2).render() == "2*sqrt(2)"
    assert (-QuadraticNumber.sqrt(5)).render() == "-sqrt(5)"


def test_parse_quadratic_rejects_garbage():
    for bad in ("", "sqrt", "1 +", "sqrt(-4)", "two"):
        with pytest.raises(ValueError):
            parse_quadratic(bad)


def test_approx_decimal_matches_value():
    x = QuadraticNumber.sqrt(2)
    assert x.approx_decimal(6) == "1.414214"
    assert QuadraticNumber.from_rational(Fraction(77, 24)).approx_decimal(6) == "3.208333"
    assert (-QuadraticNumber.sqrt(2)).approx_decimal(3) == "-1.414"


def test_interval_eval_matches_direct_ops():
    x = Var("x")
    expr = (x * x - 2).sqrt() / (x + 1)
    iv = RationalInterval(Fraction(3, 2), 2)
    got = interval_eval(expr, {"x": iv}, Fraction(1, 2**24))
    direct = (iv * iv - 2).sqrt(Fraction(1, 2**24)) / (iv + 1)
    assert got == direct
    # point evaluation brackets the true value sqrt(2)/3 at x = 2
    point = RationalInterval.point(2)
    enc = interval_eval(expr, {"x": point}, Fraction(1, 2**24))
    true = QuadraticNumber.sqrt(2) / 3
    assert compare(true, enc.lo) >= 0 and compare(true, enc.hi) <= 0


def test_interval_eval_missing_binding():
    with pytest.raises(KeyError):
        interval_eval(Var("y") + Const(Fraction(1)), {"x": RationalInterval(0, 1)})


def test_default_sqrt_width():
    assert DEFAULT_SQRT_WIDTH == Fraction(1, 2**32)
