"""Tests for the identity registry, the Bailey transform, the trivariate
generating-function check and limit stabilization.

Scale here is kept small; the acceptance battery (test_acceptance.py)
runs the full desk-scale sweeps.
"""

import pytest
from hypothesis import given, settings, strategies as st

from qtrin.identities import (REGISTRY, IdentityDef, IdentityInstance,
                              bailey_sides, compute_side, mono,
                              verify_identity, verify_lemma31,
                              verify_limit_stabilization)
from qtrin.series import LaurentSeries


def q(k):
    return 2 * k


class TestRegistrySchema:
    def test_unknown_id(self):
        with pytest.raises(KeyError):
            verify_identity(IdentityInstance("nonsense", {}))

    def test_missing_and_extra_params(self):
        with pytest.raises(ValueError):
            verify_identity(IdentityInstance("third_pair", {}))
        with pytest.raises(ValueError):
            verify_identity(IdentityInstance("third_pair", {"L": 1, "x": 2}))

    def test_cutoff_required_for_truncated(self):
        with pytest.raises(ValueError):
            verify_identity(IdentityInstance("kr1", {}))

    def test_cutoff_rejected_for_exact(self):
        with pytest.raises(ValueError):
            verify_identity(IdentityInstance("third_pair", {"L": 2}, q(10)))

    def test_negative_parameter_rejected(self):
        with pytest.raises(ValueError):
            verify_identity(IdentityInstance("third_pair", {"L": -1}))


class TestComputeSide:
    def test_third_pair_base_case(self):
        got = compute_side(IdentityInstance("third_pair", {"L": 0}), "LHS")
        assert got == LaurentSeries.one()

    def test_thm71_small_instance(self):
        want = LaurentSeries({0: 1, q(2): 1, q(3): 1, q(4): 1})
        inst = IdentityInstance("thm71", {"M": 1})
        assert compute_side(inst, "LHS") == want
        assert compute_side(inst, "RHS") == want

    def test_kr1_product_coefficient(self):
        inst = IdentityInstance("kr1", {}, q(6))
        rhs = compute_side(inst, "RHS")
        # partitions of 6 into the allowed parts: {6}, {4,2}
        assert rhs.coeff_at(q(6)) == 2

    def test_exact_sides_have_no_cutoff(self):
        side = compute_side(IdentityInstance("t0_sum", {"L": 3, "a": 1}),
                            "RHS")
        assert side.is_exact


class TestVerifyIdentity:
    @pytest.mark.parametrize("id", ["first_pair", "second_pair", "third_pair",
                                    "first_pair_dual", "second_pair_dual",
                                    "third_pair_dual"])
    def test_pair_families_small(self, id):
        for L in range(6):
            rep = verify_identity(IdentityInstance(id, {"L": L}))
            assert rep.match, (id, L, rep.first_mismatch)

    def test_truncated_series(self):
        for id in ("kr1", "cap2", "outlook2"):
            rep = verify_identity(IdentityInstance(id, {}, q(30)))
            assert rep.match, (id, rep.first_mismatch)

    def test_poch_reversal(self):
        for n in range(8):
            assert verify_identity(
                IdentityInstance("poch_reversal", {"n": n})).match

    @given(st.integers(0, 7), st.integers(-7, 7))
    @settings(max_examples=40, deadline=None)
    def test_summations_property(self, L, a):
        for id in ("t0_sum", "t1_sum", "tm1_sum", "bmo_transform"):
            rep = verify_identity(IdentityInstance(id, {"L": L, "a": a}))
            assert rep.match, (id, L, a, rep.first_mismatch)

    def test_report_fields(self):
        rep = verify_identity(IdentityInstance("thm71", {"M": 2}))
        assert rep.match is True
        assert rep.first_mismatch is None
        assert rep.elapsed_ms >= 0


class TestPerturbationFixture:
    """The harness must locate a planted defect, not just rubber-stamp."""

    @pytest.fixture
    def perturbed(self):
        base = REGISTRY["first_pair"]

        def bad_rhs(params, cutoff):
            return base.rhs(params, cutoff) + LaurentSeries({q(2): 1})

        REGISTRY["perturbed_pair"] = IdentityDef(
            "perturbed_pair", base.param_names, base.mode, base.lhs,
            bad_rhs, base.check)
        yield "perturbed_pair"
        del REGISTRY["perturbed_pair"]

    def test_mismatch_located(self, perturbed):
        rep = verify_identity(IdentityInstance(perturbed, {"L": 3}))
        assert not rep.match
        exp, lhs_c, rhs_c = rep.first_mismatch
        assert exp == q(2)
        assert rhs_c == lhs_c + 1


class TestBailey:
    def test_empty_alpha(self):
        lhs, rhs = bailey_sides(0, {}, 3)
        assert lhs.is_zero() and rhs.is_zero()

    def test_unit_alpha_hand_case(self):
        # alpha supported at 0 with value 1, L=1: both sides are [2,1]
        lhs, rhs = bailey_sides(0, {0: LaurentSeries.one()}, 1)
        want = LaurentSeries({0: 1, q(1): 1})
        assert lhs == want and rhs == want

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            bailey_sides(2, {}, 1)

    @pytest.mark.parametrize("kind,efn,tid", [
        (0, lambda j: 3 * j * j + 2 * j, "thm71"),
        (1, lambda j: 3 * j * j - j, "thm72"),
        (-1, lambda j: 3 * j * j + j, "fincap2m"),
    ])
    def test_reproduces_bounded_identities(self, kind, efn, tid):
        for M in range(4):
            alpha = {j: mono(efn(j)) for j in range(-M - 2, M + 3)}
            lhs, rhs = bailey_sides(kind, alpha, M, step=6)
            inst = IdentityInstance(tid, {"M": M})
            assert lhs.first_mismatch(rhs) is None
            assert lhs.first_mismatch(compute_side(inst, "LHS")) is None
            assert rhs.first_mismatch(compute_side(inst, "RHS")) is None


class TestLemma31:
    def test_degree_zero(self):
        rep = verify_lemma31(0, t_cutoff=0, q_cutoff=q(4))
        assert rep.match

    def test_small_window(self):
        for n in (-1, 0, 1):
            rep = verify_lemma31(n, t_cutoff=4, q_cutoff=q(8))
            assert rep.match, (n, rep.first_mismatch)

    def test_large_n_rejected(self):
        with pytest.raises(ValueError):
            verify_lemma31(5, t_cutoff=2, q_cutoff=10)

    def test_genfun_products(self):
        for pair in (1, 2, 3):
            rep = verify_identity(IdentityInstance(
                "genfun_products", {"pair": pair, "t_cutoff": 4}, q(8)))
            assert rep.match, (pair, rep.first_mismatch)


class TestStabilization:
    def test_trivial_window(self):
        rep = verify_limit_stabilization("third_pair", window=0)
        assert rep.match
        assert rep.detail["stabilized_at"] == 0

    def test_pair_limits(self):
        for id in ("first_pair", "second_pair", "third_pair"):
            rep = verify_limit_stabilization(id, window=q(6))
            assert rep.match, id
            assert rep.detail["stabilized_at"] >= 0

    def test_binomial_limits(self):
        assert verify_limit_stabilization(
            "binom_limit", q(6), {"m": 2}).match
        assert verify_limit_stabilization(
            "binom_limit2", q(6), {"nu": 1, "j": 0}).match

    def test_unknown_target(self):
        with pytest.raises(KeyError):
            verify_limit_stabilization("thm71", 10)


class TestEmpiricalPositivity:
    """Exploratory: the bounded double-sum sides look coefficientwise
    non-negative at desk scale; recorded as observation, not theorem."""

    def test_thm71_and_fincap2m_lhs_nonnegative(self):
        for id in ("thm71", "fincap2m"):
            for M in range(9):
                side = compute_side(IdentityInstance(id, {"M": M}), "LHS")
                assert all(c >= 0 for c in side.terms.values()), (id, M)
