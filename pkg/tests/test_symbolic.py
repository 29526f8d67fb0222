"""Shift spaces, the ladder system, ICT chains, omega-limits, projections."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shadowlink.scalars import Q, exact_cmp
from shadowlink.symbolic import (
    INF,
    LadderPoint,
    SftSpec,
    SymSeq,
    ict_chain,
    in_x_infinity,
    ladder_delta,
    ladder_metric,
    ladder_omega,
    ladder_shadow,
    parse_seq,
    projection_pi,
    random_ladder_pseudo_orbit,
    random_sft,
    random_sft_point,
    random_sft_pseudo_orbit,
    seq_metric,
    sft_membership,
    shift,
    verify_ladder_pseudo_orbit,
    verify_projection_properties,
    walters_modulus,
    walters_shadow,
    xk_spec,
    zeros,
)


class TestSymSeq:
    def test_literal_round_trip(self):
        s = parse_seq("001(10)")
        assert [s.at(i) for i in range(7)] == list("0011010")
        assert parse_seq(repr(s)) == s

    def test_zero_star_sugar(self):
        assert parse_seq("0010*") == SymSeq(("0", "0", "1"), ("0",))
        assert repr(parse_seq("0010*")) == "0010*"

    def test_canonical_minimal_period(self):
        assert SymSeq((), ("1", "0", "1", "0")) == SymSeq((), ("1", "0"))

    def test_canonical_absorbs_prefix(self):
        # 0(10) reads 0,1,0,1,0,... = (01)
        assert SymSeq(("0",), ("1", "0")) == SymSeq((), ("0", "1"))

    def test_shift(self):
        s = parse_seq("001(10)")
        assert shift(s) == parse_seq("01(10)")
        assert shift(zeros()) == zeros()
        assert shift(parse_seq("(01)")) == parse_seq("(10)")


class TestSeqMetric:
    def test_equal_sequences(self):
        assert seq_metric(zeros(), zeros()) == Q(0)

    def test_difference_at_index_five(self):
        assert seq_metric(zeros(), parse_seq("000001" + "0*")) == Q(1, 32)

    def test_difference_at_zero(self):
        assert seq_metric(parse_seq("10*"), zeros()) == Q(1)

    def test_symmetry_and_ultrametric(self):
        a, b, c = parse_seq("01(10)"), parse_seq("0(01)"), zeros()
        assert seq_metric(a, b) == seq_metric(b, a)
        lhs = seq_metric(a, c)
        rhs = max(seq_metric(a, b), seq_metric(b, c))
        assert exact_cmp(lhs, rhs) <= 0


class TestSftMembership:
    def test_x2_contains_zeros(self):
        assert sft_membership(xk_spec(2), zeros())

    def test_x1_contains_period_100(self):
        assert sft_membership(xk_spec(1), parse_seq("(100)"))

    def test_x2_rejects_period_100(self):
        assert not sft_membership(xk_spec(2), parse_seq("(100)"))

    def test_alphabet_mismatch_rejected(self):
        s = SftSpec(("0", "1"), ("11",))
        assert not sft_membership(s, SymSeq((), ("2",)))

    def test_memory(self):
        assert xk_spec(0).memory == 1
        assert xk_spec(3).memory == 4
        assert SftSpec(("0", "1"), ()).memory == 0

    @settings(max_examples=40, deadline=None)
    @given(k=st.integers(0, 9), seed=st.integers(0, 10**4))
    def test_xk_nested_decreasing(self, k, seed):
        rng = random.Random(seed)
        xi = random_sft_point(rng, xk_spec(k + 1))
        assert sft_membership(xk_spec(k + 1), xi)
        assert sft_membership(xk_spec(k), xi)


class TestWaltersShadow:
    def test_constant_pseudo_orbit_returns_fixed_point(self):
        s = xk_spec(0)
        z, cert = walters_shadow(s, [zeros()] * 5, Q(1, 8))
        assert z == zeros()
        assert cert.verified and cert.sup_distance == Q(0)

    def test_hopping_between_shifts(self):
        s = xk_spec(0)
        a, b = parse_seq("(10)"), parse_seq("(01)")
        po = [a, b, a, b, a]
        z, cert = walters_shadow(s, po, Q(1, 8))
        assert sft_membership(s, z)
        assert exact_cmp(cert.sup_distance, cert.eps) <= 0

    def test_full_shift_diagonal(self):
        s = SftSpec(("0", "1"), ())
        po = [parse_seq("10*"), parse_seq("00(1)"), parse_seq("(01)")]
        z, cert = walters_shadow(s, po, Q(1, 4), eps=Q(1, 2))
        assert sft_membership(s, z)
        assert exact_cmp(cert.sup_distance, Q(1, 2)) <= 0

    def test_rejects_delta_above_modulus(self):
        with pytest.raises(ValueError):
            walters_shadow(xk_spec(2), [zeros()] * 3, Q(1, 2))

    def test_rejects_uncertified_input(self):
        s = SftSpec(("0", "1"), ())
        with pytest.raises(ValueError):
            walters_shadow(s, [zeros(), parse_seq("1(1)")], Q(1, 8))

    def test_modulus_formula(self):
        assert walters_modulus(xk_spec(1), Q(1, 2)) == Q(1, 16)
        assert walters_modulus(xk_spec(1), Q(1, 64)) == Q(1, 64)

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10**5))
    def test_random_sfts_round_trip(self, seed):
        rng = random.Random(seed)
        s = random_sft(rng)
        po, delta = random_sft_pseudo_orbit(rng, s, 12)
        z, cert = walters_shadow(s, po, delta)
        assert sft_membership(s, z)
        assert cert.verified


class TestLadderDelta:
    def test_half(self):
        delta, k = ladder_delta(Q(1, 2))
        assert k == 2
        # min{1/8, delta_1 = 1/16, delta_2 = 1/32}
        assert delta == Q(1, 32)

    def test_near_one(self):
        _, k = ladder_delta(Q(99, 100))
        assert k == 1

    def test_rejects_eps_at_least_one(self):
        with pytest.raises(ValueError):
            ladder_delta(Q(1))
        with pytest.raises(ValueError):
            ladder_delta(Q(3, 2))


class TestLadderShadow:
    def test_constant_level_case_one(self):
        eps = Q(1, 4)
        delta, _ = ladder_delta(eps)
        p = LadderPoint(1, parse_seq("(100)"))
        po = [p]
        for _ in range(6):
            po.append(po[-1].apply())
        z = ladder_shadow(po, delta, eps)
        assert z.level == 1

    def test_level_infinity_case_two(self):
        eps = Q(1, 2)
        delta, k = ladder_delta(eps)
        assert k == 2
        po = [LadderPoint(INF, parse_seq("0000010*"))]
        for _ in range(8):
            po.append(po[-1].apply())
        z = ladder_shadow(po, delta, eps)
        # the shadow lives at a genuinely different (finite) level
        assert z.level == 2

    def test_level_jump_rejected(self):
        eps = Q(1, 4)
        delta, _ = ladder_delta(eps)
        po = [LadderPoint(1, zeros()), LadderPoint(2, zeros())]
        with pytest.raises(ValueError):
            ladder_shadow(po, delta, eps)

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 10**5),
           eps_pow=st.sampled_from([1, 2, 3]))
    def test_random_ladder_orbits_shadowed(self, seed, eps_pow):
        eps = Q(1, 2 ** eps_pow)
        delta, k = ladder_delta(eps)
        rng = random.Random(seed)
        level = rng.choice([0, 1, 2, 3, 4, INF])
        if level == INF:
            start = LadderPoint(INF, parse_seq("0" * rng.randint(0, 6) + "10*"))
        else:
            start = LadderPoint(level, random_sft_point(rng, xk_spec(level)))
        po = [start]
        for _ in range(20):
            po.append(po[-1].apply())
        assert verify_ladder_pseudo_orbit(po, delta)
        z = ladder_shadow(po, delta, eps)
        w = z
        for p in po:
            assert exact_cmp(ladder_metric(w, p), eps) <= 0
            w = w.apply()

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 10**5),
           eps_pow=st.sampled_from([1, 2, 3]))
    def test_generator_emits_certified_orbits(self, seed, eps_pow):
        eps = Q(1, 2 ** eps_pow)
        rng = random.Random(seed)
        po, delta = random_ladder_pseudo_orbit(rng, eps, 40)
        assert len(po) == 40
        # constant level and within the ladder modulus
        assert len({p.level for p in po}) == 1
        assert exact_cmp(delta, ladder_delta(eps)[0]) == 0
        assert verify_ladder_pseudo_orbit(po, delta)
        z = ladder_shadow(po, delta, eps)
        w = z
        for p in po:
            assert exact_cmp(ladder_metric(w, p), eps) <= 0
            w = w.apply()

    def test_generator_is_deterministic(self):
        po1, _ = random_ladder_pseudo_orbit(random.Random(5), Q(1, 4), 30)
        po2, _ = random_ladder_pseudo_orbit(random.Random(5), Q(1, 4), 30)
        assert po1 == po2


class TestIctChain:
    def test_fixed_point_chain(self):
        chain = ict_chain(zeros(), zeros(), Q(1, 8))
        assert chain[0] == chain[-1] == zeros()

    def test_documented_example(self):
        chain = ict_chain(parse_seq("010*"), parse_seq("10*"), Q(1, 8))
        assert chain[0] == parse_seq("010*")
        assert chain[-1] == parse_seq("10*")
        assert zeros() in chain
        # the inserted connector needs 2^-n < 1/8, so at least four zeros
        connector = chain[chain.index(zeros()) + 1]
        assert connector.prefix.index("1") >= 4

    def test_huge_delta_connects_in_one_step(self):
        chain = ict_chain(parse_seq("10*"), parse_seq("0010*"), Q(2))
        assert len(chain) == 2

    def test_exhaustive_small_family(self):
        delta = Q(1, 2 ** 6)
        pts = [zeros()] + [parse_seq("0" * m + "10*") for m in range(5)]
        for xi in pts:
            for eta in pts:
                chain = ict_chain(xi, eta, delta)
                assert chain[0] == xi and chain[-1] == eta
                for w in chain:
                    assert in_x_infinity(w)
                for a, b in zip(chain, chain[1:]):
                    assert exact_cmp(seq_metric(a.shift(), b), delta) <= 0


class TestLadderOmega:
    def test_level_infinity_singleton(self):
        p = LadderPoint(INF, parse_seq("00000001" + "0*"))
        om = ladder_omega(p)
        assert om == [LadderPoint(INF, zeros())]

    def test_finite_level_cycle(self):
        p = LadderPoint(1, parse_seq("(100)"))
        om = ladder_omega(p)
        assert len(om) == 3
        assert all(q.level == 1 for q in om)
        seqs = {q.seq for q in om}
        assert seqs == {parse_seq("(100)"), parse_seq("(001)"),
                        parse_seq("(010)")}

    def test_level_zero_fixed_point(self):
        p = LadderPoint(0, zeros())
        assert ladder_omega(p) == [p]


class TestProjection:
    def test_identity_on_low_levels(self):
        p = LadderPoint(1, parse_seq("(100)"))
        assert projection_pi(3, p) == p

    def test_raises_deep_levels(self):
        p = LadderPoint(INF, zeros())
        q = projection_pi(3, p)
        assert q.level == 2 and q.seq == zeros()

    def test_commutes_with_the_map(self):
        p = LadderPoint(INF, parse_seq("0010*"))
        assert projection_pi(2, p.apply()) == projection_pi(2, p).apply()

    def test_properties_on_samples(self):
        rng = random.Random(5)
        pts = [LadderPoint(INF, zeros()),
               LadderPoint(INF, parse_seq("00010*")),
               LadderPoint(0, zeros()),
               LadderPoint(2, random_sft_point(rng, xk_spec(2))),
               LadderPoint(5, random_sft_point(rng, xk_spec(5)))]
        pairs = [(a, b) for a in pts for b in pts]
        for n in (1, 2, 3, 5):
            rep = verify_projection_properties(n, pairs)
            assert rep.all_hold
            assert rep.pairs_checked == len(pairs)


class TestSeparationWitness:
    def test_x_infinity_has_large_diameter_but_trivial_omegas(self):
        far_a = LadderPoint(INF, parse_seq("10*"))
        far_b = LadderPoint(INF, zeros())
        assert exact_cmp(ladder_metric(far_a, far_b), Q(1, 2)) >= 0
        for p in (far_a, far_b,
                  LadderPoint(INF, parse_seq("000010*"))):
            assert ladder_omega(p) == [LadderPoint(INF, zeros())]
