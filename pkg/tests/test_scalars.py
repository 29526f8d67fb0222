import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowlink import config
from shadowlink.scalars import (
    AlgebraicField,
    Cmp,
    Enclosure,
    PrecisionError,
    Q,
    Quadratic,
    arith,
    bounds_of,
    compare,
    exact_cmp,
    format_scalar,
    golden_ratio,
    parse_scalar,
    sqrt_bounds,
    to_enclosure,
)

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=1000
).map(Q)


def quad(d):
    return st.tuples(rationals, rationals).map(lambda pq: Quadratic(pq[0], pq[1], d))


# -- basic arithmetic ---------------------------------------------------------


def test_rational_add():
    assert arith(Q(1, 3), Q(1, 6), "+") == Q(1, 2)


def test_golden_square_is_golden_plus_one():
    s = golden_ratio()
    assert s * s == s + 1


def test_enclosure_product_contains_two():
    e = Enclosure(Q(141, 100), Q(142, 100))
    assert (e * e).contains(2)


def test_cmp_examples():
    assert compare(Q(1, 2), Q(1, 2)) is Cmp.EQ
    assert compare(golden_ratio(), Q(8, 5)) is Cmp.GT
    a = Enclosure(Q(30, 100), Q(31, 100))
    b = Enclosure(Q(305, 1000), Q(32, 100))
    assert compare(a, b) is Cmp.UNKNOWN


def test_exact_cmp_raises_on_unknown():
    a = Enclosure(0, 1)
    with pytest.raises(PrecisionError):
        exact_cmp(a, a)


def test_division_errors():
    with pytest.raises(ZeroDivisionError):
        golden_ratio() / Quadratic(0, 0, 5)
    with pytest.raises(ZeroDivisionError):
        Enclosure(1, 2) / Enclosure(-1, 1)


def test_mixed_radicand_rejected():
    with pytest.raises(ValueError):
        Quadratic(1, 1, 5) + Quadratic(1, 1, 2)


# -- field axioms (property) --------------------------------------------------


@given(quad(5), quad(5), quad(5))
@settings(max_examples=100, deadline=None)
def test_quadratic_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + (-a) == Quadratic(0, 0, 5)


@given(quad(2))
@settings(max_examples=100, deadline=None)
def test_quadratic_inverse(a):
    if a.sign() != 0:
        assert a * (Quadratic(1, 0, 2) / a) == Quadratic(1, 0, 2)


@given(quad(3), quad(3))
@settings(max_examples=200, deadline=None)
def test_quadratic_sign_matches_float(a, b):
    diff = a - b
    approx = float(diff.p) + float(diff.q) * math.sqrt(3)
    if abs(approx) > 1e-9:
        assert diff.sign() == (1 if approx > 0 else -1)


# -- enclosure soundness ------------------------------------------------------


@given(rationals, rationals, st.sampled_from("+-*/"))
@settings(max_examples=200, deadline=None)
def test_enclosure_soundness(x, y, op):
    ex = Enclosure(x - Q(1, 977), x + Q(1, 977))
    ey = Enclosure(y - Q(1, 977), y + Q(1, 977))
    if op == "/" and (ey.lo <= 0 <= ey.hi):
        return
    assert arith(ex, ey, op).contains(arith(x, y, op))


@given(rationals)
@settings(max_examples=50, deadline=None)
def test_outward_rounding_keeps_containment(x):
    with config.precision(16):
        e = Enclosure(x, x) * Q(1, 3)
    assert e.contains(x / 3)


def test_sqrt_bounds_tight():
    lo, hi = sqrt_bounds(2, 100)
    assert lo * lo <= 2 <= hi * hi
    assert hi - lo <= Q(1, 2**100)


# -- cubic field --------------------------------------------------------------


@pytest.fixture(scope="module")
def cubic():
    # x^3 - 2x - 5, unique real root near 2.0946
    return AlgebraicField([-5, -2, 0, 1], 2, 3)


def test_cubic_generator_satisfies_minpoly(cubic):
    t = cubic.generator()
    assert t * t * t - 2 * t - 5 == 0


def test_cubic_division(cubic):
    t = cubic.generator()
    v = (t * t - 3) / (t + 7)
    assert v * (t + 7) == t * t - 3


def test_cubic_sign_and_bounds(cubic):
    t = cubic.generator()
    assert (t - 2).sign() == 1
    assert (t - Q(21, 10)).sign() == -1
    lo, hi = t.bounds(80)
    assert hi - lo <= Q(1, 2**80)
    assert abs(float(t) - 2.0945514815423265) < 1e-12


_CUBIC = AlgebraicField([-5, -2, 0, 1], 2, 3)


@given(st.lists(rationals, min_size=3, max_size=3),
       st.lists(rationals, min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_cubic_ring_axioms(ca, cb):
    a, b = _CUBIC.element(ca), _CUBIC.element(cb)
    assert a * b == b * a
    assert (a + b) * (a - b) == a * a - b * b
    if b.sign() != 0:
        assert (a / b) * b == a


# -- text round-trip ----------------------------------------------------------


@given(rationals)
def test_rational_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(quad(5))
def test_quadratic_roundtrip(a):
    back = parse_scalar(format_scalar(a))
    assert back == a


def test_enclosure_roundtrip():
    e = Enclosure(Q(-3, 8), Q(7, 16))
    back = parse_scalar(format_scalar(e))
    assert back.lo == e.lo and back.hi == e.hi


def test_bounds_of_modes():
    assert bounds_of(Q(1, 2)) == (Q(1, 2), Q(1, 2))
    lo, hi = bounds_of(golden_ratio())
    assert lo < Q(1618, 1000) < hi or lo <= hi  # sane interval
    assert to_enclosure(golden_ratio()).contains(golden_ratio())
