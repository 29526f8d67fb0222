"""Shadow sets, epsilon-linking, linking verdicts, and the inclusion test."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowlink.intervals import IntervalSet
from shadowlink.maps import (
    detect_critical_cycle,
    make_double_tent,
    make_tent,
    make_tent_golden,
    tent_core,
)
from shadowlink.pseudo import exact_orbit, perturbed_orbit
from shadowlink.scalars import AlgebraicField, Q, exact_cmp, golden_ratio, scalar_abs
from shadowlink.shadowing import (
    check_inclusion_dagger,
    eps_linked,
    has_linking,
    modulus_estimate,
    return_time,
    set_A,
    shadow_set,
)
from shadowlink.tracing import golden_restriction


class TestShadowSet:
    def test_exact_orbit_contains_start(self):
        m = make_tent_golden()
        po = exact_orbit(m, Q(2, 7), 15)
        s = shadow_set(m, po, Q(1, 100))
        assert s.contains_point(Q(2, 7))

    def test_agrees_with_grid_oracle(self):
        # membership of a grid point in the shadow set is by definition
        # "its exact orbit stays within eps of the pseudo-orbit"; both
        # computations are exact, so they must agree point for point
        m = make_tent(Q(2))
        po = perturbed_orbit(m, Q(1, 3), 10, Q(1, 32), seed=11)
        eps = Q(1, 10)
        s = shadow_set(m, po, eps)
        assert not s.is_empty()

        def oracle(z):
            orb = m.orbit(z, po.n_steps)
            return all(
                exact_cmp(scalar_abs(orb[i] - po.points[i]), eps) <= 0
                for i in range(len(orb)))

        for k in range(0, 1001):
            z = Q(k, 1000)
            assert s.contains_point(z) == oracle(z)
        # the expansive map makes the set far narrower than the grid, so
        # probe points drawn from the set itself as well
        for a, b in s:
            for z in (a, b, (a + b) / 2):
                assert oracle(z)

    def test_empty_for_impossible_demands(self):
        m = make_tent(Q(2))
        # pretend the orbit jumps 0 -> 1 -> 0 with tiny eps: nothing shadows
        from shadowlink.pseudo import PseudoOrbit
        po = PseudoOrbit((Q(0), Q(1), Q(0), Q(1)), delta=Q(1))
        assert shadow_set(m, po, Q(1, 100)).is_empty()


class TestEpsLinked:
    @settings(max_examples=25, deadline=None)
    @given(num=st.integers(0, 2**8), mm=st.integers(1, 8))
    def test_orbit_points_are_linked_targets(self, num, mm):
        # y on the forward orbit of x (step >= 1) is linked to x for any
        # eps: the witness is z = x itself
        m = make_tent_golden()
        x = Q(num, 2**8)
        y = m.iterate(x, mm)
        r = eps_linked(m, x, y, Q(1, 1000), m_max=mm)
        assert r.linked and r.m <= mm
        assert r.witnesses.contains_point(x) or not r.witnesses.is_empty()

    def test_no_linking_restriction_negative(self):
        # on the restriction to [d, f(c)], d is not eps-linked to any
        # critical point at eps = 1/100 within 50 steps
        gr = golden_restriction()
        s = golden_ratio()
        d = 1 / (s + s * s)
        fc = s / 2
        for target in (d, Q(1, 2), fc):
            r = eps_linked(gr, d, target, Q(1, 100), m_max=50)
            assert not r.linked

    def test_fixed_point_self_linked(self):
        m = make_tent(Q(2))
        r = eps_linked(m, Q(0), Q(0), Q(1, 10), m_max=3)
        assert r.linked and r.m == 1


class TestHasLinking:
    def test_tent_two_yes(self):
        assert has_linking(make_tent(Q(2))).status == "yes-certified"

    def test_tent_golden_yes(self):
        assert has_linking(make_tent_golden()).status == "yes-certified"

    def test_golden_core_yes(self):
        assert has_linking(tent_core(make_tent_golden())).status == "yes-certified"

    def test_double_tent_no(self):
        v = has_linking(make_double_tent())
        assert v.status == "no"
        unlinked = [d for d in v.details if not d.linked]
        assert unlinked and all(
            exact_cmp(d.orbit_gap, 0) > 0 for d in unlinked)

    def test_golden_restriction_no(self):
        v = has_linking(golden_restriction())
        assert v.status == "no"


# slopes in (sqrt(2), 2] whose tent map has an eventually periodic critical
# orbit: (minimal polynomial coefficients c0..ck, isolating interval,
# preperiod + period of the orbit of 1/2, verified exactly offline)
PERIODIC_SLOPES = [
    ([-1, 0, -1, 1], Q(1465569, 1000000), Q(1465573, 1000000), 7),
    ([-1, 1, -1, -1, 1], Q(756437, 500000), Q(756439, 500000), 5),
    ([1, -1, -1, 1, -1, -1, 1], Q(389007, 250000), Q(24313, 15625), 7),
    ([1, 0, -1, -2, -1, 0, 1], Q(316469, 200000), Q(1582349, 1000000), 24),
    ([-1, 1, -1, -1, 1, -1, -1, 1], Q(1597207, 1000000), Q(1597211, 1000000), 8),
    ([-1, -1, 1], Q(1618031, 1000000), Q(323607, 200000), 3),
    ([-1, 1, -2, 0, -1, 1], Q(824151, 500000), Q(824153, 500000), 8),
    ([-1, 1, 1, -1, -1, -1, 1], Q(421481, 250000), Q(210741, 125000), 7),
    ([-1, -1, 1, 1, -1, -1, -1, 1], Q(26807, 15625), Q(428913, 250000), 8),
    ([1, -1, -1, -1, 1], Q(1722081, 1000000), Q(344417, 200000), 5),
    ([-1, -2, -1, -2, -1, 0, 1], Q(432279, 250000), Q(10807, 6250), 8),
    ([-1, 1, -2, 1], Q(14039, 8000), Q(1754879, 1000000), 7),
    ([-1, 1, -1, 1, -1, -1, -1, 1], Q(888443, 500000), Q(177689, 100000), 8),
    ([-1, 1, -1, -1, -1, 1], Q(4481, 2500), Q(448101, 250000), 6),
    ([1, -1, -1, 1, -1, -1, -1, 1], Q(1807089, 1000000), Q(1807093, 1000000), 8),
    ([-1, -1, 1, -1, -1, -1, 1], Q(911971, 500000), Q(911973, 500000), 7),
    ([-1, -1, -1, 1], Q(459821, 250000), Q(229911, 125000), 4),
    ([1, 1, -1, -1, -1, -1, 1], Q(1855883, 1000000), Q(1855887, 1000000), 7),
    ([-1, 1, 1, -1, -1, -1, -1, 1], Q(1870941, 1000000), Q(374189, 200000), 8),
    ([1, -2, 1, -2, 1], Q(1883201, 1000000), Q(376641, 200000), 6),
]


class TestLinkingMapVersusCore:
    @pytest.mark.parametrize("coeffs,lo,hi,horizon", PERIODIC_SLOPES,
                             ids=[str(i) for i in range(len(PERIODIC_SLOPES))])
    def test_map_verdict_iff_core_verdict(self, coeffs, lo, hi, horizon):
        field = AlgebraicField(coeffs, lo, hi)
        s = field.generator()
        m = make_tent(s)
        verdicts = detect_critical_cycle(m, 300)
        crit_mid = [v for v in verdicts if exact_cmp(v.point, Q(1, 2)) == 0]
        assert crit_mid[0].status == "eventually-periodic"
        assert crit_mid[0].preperiod + crit_mid[0].period == horizon
        whole = has_linking(m)
        core = has_linking(tent_core(m))
        assert whole.status == core.status == "yes-certified"


class TestInclusionAndReturnTime:
    def test_return_time_exists_on_tent_two(self):
        m = make_tent(Q(2))
        n = return_time(m, Q(1, 3), Q(1, 40), n_max=12)
        assert n is not None
        assert check_inclusion_dagger(m, Q(1, 3), Q(1, 40), n)

    def test_set_A_zero_steps_is_a_ball(self):
        m = make_tent(Q(2))
        a = set_A(m, Q(1, 3), 0, Q(1, 10), Q(4))
        assert a == IntervalSet.ball(Q(1, 3), Q(1, 10), m.lo, m.hi)

    def test_set_A_nested_in_ball(self):
        m = make_tent_golden()
        lam = m.max_slope() ** 2
        a = set_A(m, Q(2, 5), 3, Q(1, 20), lam)
        assert a.is_subset_of(IntervalSet.ball(Q(2, 5), Q(1, 20), m.lo, m.hi))
        assert not a.is_empty()


class TestModulusEstimate:
    def test_returns_dyadic_estimate(self):
        m = make_tent(Q(2))
        delta, j = modulus_estimate(m, Q(1, 4), length=10, trials=10, seed=1)
        assert delta is not None
        assert delta == Q(1, 2**j)
        assert exact_cmp(delta, Q(1, 4)) <= 0

    def test_deterministic_in_seed(self):
        m = make_tent_golden()
        a = modulus_estimate(m, Q(1, 8), length=8, trials=5, seed=3)
        b = modulus_estimate(m, Q(1, 8), length=8, trials=5, seed=3)
        assert a == b
