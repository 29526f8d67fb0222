import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowlink.maps import (
    CUBE,
    LOG_OSCILLATION,
    PIECEWISE_CUBIC,
    DomainError,
    PLMap,
    SmoothMap1D,
    core,
    critical_points,
    detect_critical_cycle,
    log_oscillation_fixed_points,
    make_tent,
    make_tent_golden,
    restrict,
    tent_core,
)
from shadowlink.scalars import Q, Quadratic, golden_ratio

rat01 = st.fractions(min_value=0, max_value=1, max_denominator=512).map(Q)


def test_make_tent_values():
    t = make_tent(Q(2))
    assert t(Q(1, 2)) == 1 and t(Q(1)) == 0 and t(Q(1, 4)) == Q(1, 2)
    t = make_tent(Q(3, 2))
    assert t(Q(1, 2)) == Q(3, 4)
    assert t(Q(3, 4)) == Q(3, 8)
    assert t(Q(3, 8)) == Q(9, 16)


def test_make_tent_slope_range():
    with pytest.raises(ValueError):
        make_tent(Q(1))
    with pytest.raises(ValueError):
        make_tent(Q(5, 2))


def test_golden_three_cycle_exact():
    g = make_tent_golden()
    c = Q(1, 2)
    assert g.iterate(c, 3) == c
    assert g.iterate(c, 1) != c and g.iterate(c, 2) != c


def test_eval_second_preimage_of_fixed_point():
    s = golden_ratio()
    g = make_tent_golden()
    d = 1 / (s + s * s)
    fix = s / (1 + s)
    assert g.iterate(d, 2) == fix
    assert g(fix) == fix


@given(rat01)
@settings(max_examples=50, deadline=None)
def test_tent_symmetry(x):
    g = make_tent_golden()
    assert g(x) == g(1 - x)


def test_breakpoint_values_consistent():
    m = PLMap([Q(0), Q(1, 3), Q(1)], [Q(1, 4), Q(1), Q(0)])
    for p, v in zip(m.breakpoints, m.values):
        assert m(p) == v
    assert not m.is_constant_slope()
    assert make_tent(Q(2)).is_constant_slope()


def test_self_map_enforced():
    with pytest.raises(ValueError):
        PLMap([Q(0), Q(1, 2), Q(1)], [Q(0), Q(3, 2), Q(0)])


def test_critical_points():
    assert critical_points(make_tent(Q(2))) == [0, Q(1, 2), 1]
    g = make_tent_golden()
    cc = tent_core(g)
    c = Q(1, 2)
    assert critical_points(cc) == [g(g(c)), c, g(c)]


def test_restrict():
    g = make_tent_golden()
    s = golden_ratio()
    lo, hi = core(g)
    cc = restrict(g, lo, hi)
    assert cc.lo == lo and cc.hi == hi
    d = 1 / (s + s * s)
    r = restrict(g, d, g(Q(1, 2)))  # [d, f(c)] is invariant
    assert r.contains(d)
    with pytest.raises(DomainError):
        restrict(make_tent(Q(2)), Q(3, 10), Q(3, 5))


def test_restrict_compose():
    g = make_tent_golden()
    lo, hi = core(g)
    once = restrict(g, lo, hi)
    # a further restriction of the core to itself is the identity operation
    again = restrict(once, lo, hi)
    assert again.breakpoints == once.breakpoints
    assert again.values == once.values


def test_core_values():
    assert core(make_tent(Q(2))) == (0, 1)
    assert core(make_tent(Q(3, 2))) == (Q(3, 8), Q(3, 4))
    s = golden_ratio()
    lo, hi = core(make_tent_golden())
    assert lo == (s - 1) / 2 and hi == s / 2
    with pytest.raises(ValueError):
        core(make_tent(Q(5, 4)))  # 5/4 < sqrt(2)


def test_detect_critical_cycle_tent2():
    vs = {v.point: v for v in detect_critical_cycle(make_tent(Q(2)), 10)}
    v = vs[Q(1, 2)]
    assert v.status == "eventually-periodic"
    assert (v.preperiod, v.period) == (2, 1)


def test_detect_critical_cycle_golden():
    vs = {v.point: v for v in detect_critical_cycle(make_tent_golden(), 10)}
    v = vs[Q(1, 2)]
    assert (v.status, v.preperiod, v.period) == ("eventually-periodic", 0, 3)


def test_detect_critical_cycle_three_halves_is_honest():
    # the slope-3/2 critical orbit keeps doubling denominators (numerators
    # stay odd), so no exact recurrence ever happens; the verdict must say so
    vs = {v.point: v for v in detect_critical_cycle(make_tent(Q(3, 2)), 300)}
    assert vs[Q(1, 2)].status == "undecided"
    orbit = vs[Q(1, 2)].orbit
    assert all(x.numerator % 2 == 1 for x in orbit[1:5])


def test_quadratic_breakpoint_mixing():
    s = golden_ratio()
    g = make_tent(s)
    assert g(s / 2) == s * (1 - s / 2)
    assert isinstance(g(Q(1, 4)), Quadratic)


# -- smooth demo maps ---------------------------------------------------------


def test_cube_map():
    f = SmoothMap1D(CUBE)
    e = f(Q(1, 2))
    assert e.contains(Q(1, 8))
    assert f(Q(-1)).contains(Q(-1)) and f(Q(1)).contains(Q(1))


def test_piecewise_cubic_fixes_anchor_points():
    f = SmoothMap1D(PIECEWISE_CUBIC)
    for x in (Q(-1), Q(0), Q(1)):
        assert f(x).contains(x)
    assert f(Q(-1, 2)).contains(Q(-1, 2))  # (2x+1)=0 there: ((0)^3-1)/2=-1/2


def test_log_oscillation_right_branch():
    f = SmoothMap1D(LOG_OSCILLATION)
    assert f(Q(1, 2)).contains(Q(1, 8))
    assert f(Q(0)).contains(Q(0))


def test_log_oscillation_fixed_points_accumulate_left():
    f = SmoothMap1D(LOG_OSCILLATION)
    fps = log_oscillation_fixed_points(4)
    prev = None
    for fp in fps:
        assert fp.hi < 0
        img = f(fp)
        # f(fp) must overlap fp (fixed up to enclosure width)
        assert img.lo <= fp.hi and fp.lo <= img.hi
        if prev is not None:
            assert fp.hi > prev.hi  # increasing towards 0
        prev = fp


def test_monotone_spot_check():
    for variant in SmoothMap1D.VARIANTS:
        f = SmoothMap1D(variant)
        xs = [Q(i, 8) for i in range(-8, 9)]
        vals = [f(x) for x in xs]
        for a, b in zip(vals, vals[1:]):
            assert a.lo <= b.hi  # weak monotonicity up to enclosure width
