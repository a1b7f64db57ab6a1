"""Unit and property tests for the exact series kernel."""

import pytest
from hypothesis import given, strategies as st

from qtrin.series import LaurentSeries, TrivariateSeries, exact_divide


def S(terms, cutoff=None):
    return LaurentSeries(terms, cutoff)


# q^k in half-exponent units
def q(k):
    return 2 * k


small_polys = st.dictionaries(
    st.integers(min_value=-8, max_value=12),
    st.integers(min_value=-9, max_value=9),
    max_size=6,
).map(LaurentSeries)


class TestBasics:
    def test_add(self):
        assert S({0: 1, q(1): 1}) + S({q(1): 1}) == S({0: 1, q(1): 2})

    def test_add_zero_identity(self):
        p = S({q(2): 5, -1: 3})
        assert p + LaurentSeries.zero() == p

    def test_add_cutoff_min_rule(self):
        # (1 - q, cutoff q^1) + q^2 -> the q^2 term is beyond the window
        a = S({0: 1, q(1): -1}, cutoff=q(1))
        b = S({q(2): 1})
        out = a + b
        assert out.cutoff == q(1)
        assert out.terms == {0: 1, q(1): -1}

    def test_mul(self):
        assert S({0: 1, q(1): -1}) * S({0: 1, q(1): 1}) == S({0: 1, q(2): -1})

    def test_mul_one_identity(self):
        p = S({0: 1, q(1): 1, q(2): 1})
        assert p * LaurentSeries.one() == p

    def test_mul_hand_convolution(self):
        a = S({0: 1, q(1): 1, q(2): 1})
        b = S({0: 1, q(2): 1, q(4): 1})
        want = S({0: 1, q(1): 1, q(2): 2, q(3): 1, q(4): 2, q(5): 1, q(6): 1})
        assert a * b == want

    def test_zero_coefficients_dropped(self):
        assert S({q(1): 0, 0: 2}).terms == {0: 2}

    def test_coeff_at(self):
        p = S({0: 1, q(2): 2})
        assert p.coeff_at(q(2)) == 2
        assert p.coeff_at(q(1)) == 0

    def test_coeff_at_above_cutoff_errors(self):
        p = S({0: 1}, cutoff=q(3))
        with pytest.raises(ValueError):
            p.coeff_at(q(4))

    def test_eval_at_one(self):
        assert S({0: 1, q(1): 1, q(2): 1}).eval_at_one() == 3
        assert LaurentSeries.zero().eval_at_one() == 0

    def test_eval_at_one_rejects_truncated(self):
        with pytest.raises(ValueError):
            S({0: 1}, cutoff=4).eval_at_one()

    def test_truncate(self):
        p = S({0: 1, q(1): 1, q(5): 1})
        t = p.truncate(q(2))
        assert t.terms == {0: 1, q(1): 1}
        assert t.cutoff == q(2)

    def test_truncate_never_loosens(self):
        p = S({0: 1}, cutoff=q(2))
        assert p.truncate(q(9)).cutoff == q(2)

    def test_reverse(self):
        assert S({3: 1}).reverse_exponents() == S({-3: 1})
        with pytest.raises(ValueError):
            S({0: 1}, cutoff=4).reverse_exponents()

    def test_scale_exponents(self):
        assert S({0: 1, q(1): 1}).scale_exponents(3) == S({0: 1, q(3): 1})
        p = S({0: 1, q(1): 1, q(2): 1})
        assert p.scale_exponents(1) == p
        assert p.scale_exponents(2) == S({0: 1, q(2): 1, q(4): 1})

    def test_shift(self):
        assert S({0: 1, 2: 1}).shift(1) == S({1: 1, 3: 1})

    def test_first_mismatch(self):
        a = S({0: 1, q(2): 3})
        b = S({0: 1, q(2): 4})
        assert a.first_mismatch(b) == (q(2), 3, 4)
        assert a.first_mismatch(a) is None

    def test_first_mismatch_respects_cutoff(self):
        a = S({0: 1}, cutoff=q(1))
        b = S({0: 1, q(2): 7})
        assert a.first_mismatch(b) is None


class TestProperties:
    @given(small_polys, small_polys, small_polys)
    def test_ring_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(small_polys, small_polys, st.integers(-4, 20))
    def test_truncation_coherence(self, a, b, c):
        direct = (a * b).truncate(c)
        staged = (a.truncate(c) * b.truncate(c)).truncate(c)
        assert direct.first_mismatch(staged) is None

    @given(small_polys)
    def test_reverse_involution(self, p):
        assert p.reverse_exponents().reverse_exponents() == p
        assert p.reverse_exponents().eval_at_one() == p.eval_at_one()

    @given(small_polys, small_polys, st.integers(1, 4))
    def test_scale_is_ring_homomorphism(self, a, b, k):
        assert (a * b).scale_exponents(k) == \
            a.scale_exponents(k) * b.scale_exponents(k)
        assert (a + b).scale_exponents(k) == \
            a.scale_exponents(k) + b.scale_exponents(k)

    @given(small_polys, small_polys)
    def test_exact_divide_roundtrip(self, a, b):
        if b.is_zero():
            return
        assert exact_divide(a * b, b) == a


class TestExactDivide:
    def test_cyclotomic(self):
        num = S({0: 1, q(3): -1})
        den = S({0: 1, q(1): -1})
        assert exact_divide(num, den) == S({0: 1, q(1): 1, q(2): 1})

    def test_self_division(self):
        p = S({q(1): 2, q(4): -3})
        assert exact_divide(p, p) == LaurentSeries.one()

    def test_non_divisible_raises(self):
        with pytest.raises(ValueError):
            exact_divide(S({0: 1, q(2): -1}), S({0: 1, q(3): -1}))

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            exact_divide(S({0: 1}), LaurentSeries.zero())


class TestTrivariate:
    def test_one_and_entry(self):
        t = TrivariateSeries.one(t_cutoff=3, q_cutoff=10)
        assert t.entry(0, 0).terms == {0: 1}
        assert t.entry(2, 0).is_zero()

    def test_mul_tracks_degrees(self):
        t = TrivariateSeries.term(1, 1, LaurentSeries.one(),
                                  t_cutoff=3, q_cutoff=10)
        sq = t * t
        assert sq.entry(2, 2).terms == {0: 1}
        assert (sq * sq).entries == {}   # t-degree 4 > cutoff

    def test_first_mismatch(self):
        a = TrivariateSeries.term(1, 0, S({2: 5}), t_cutoff=3, q_cutoff=10)
        b = TrivariateSeries.term(1, 0, S({2: 6}), t_cutoff=3, q_cutoff=10)
        assert a.first_mismatch(b) == (1, 0, 2, 5, 6)
        assert a.first_mismatch(a) is None
