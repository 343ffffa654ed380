"""Both Stirling computation routes and the valuation extraction."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stirval import (
    INFINITE,
    ModStirlingEngine,
    PrecisionExceeded,
    StirlingTriangle,
    de_wannemacker_gap,
    get_engine,
    identity_battery,
    ksf_mod,
    nu_int,
    special_values_check,
    stirling_closed_small,
    stirling_exact,
    val2_closed_small,
    val2_stirling,
)


class TestTriangle:
    def test_examples(self):
        assert stirling_exact(4, 2) == 7
        assert stirling_exact(8, 5) == 1050
        for n in (0, 1, 5, 40):
            assert stirling_exact(n, n) == 1
        assert stirling_exact(3, 7) == 0
        assert stirling_exact(5, 0) == 0

    def test_bound_enforced(self):
        small = StirlingTriangle(n_bound=50)
        assert small.value(50, 3) == stirling_exact(50, 3)
        with pytest.raises(ValueError):
            small.value(51, 3)

    def test_row_symmetry_anchor(self):
        # S(n,2) counts proper nonempty subset pairs
        for n in range(2, 20):
            assert stirling_exact(n, 2) == 2 ** (n - 1) - 1

    def test_pochhammer_identity(self):
        # x^n = sum_k S(n,k) * x(x-1)...(x-k+1), exactly
        def falling(x, k):
            out = 1
            for i in range(k):
                out *= x - i
            return out

        for x in range(1, 11):
            for n in range(1, 13):
                total = sum(
                    stirling_exact(n, k) * falling(x, k) for k in range(n + 1)
                )
                assert total == x**n


class TestClosedForms:
    def test_examples(self):
        assert stirling_closed_small(5, 3) == 25
        assert stirling_closed_small(6, 4) == 65
        assert stirling_closed_small(6, 5) == 15

    def test_rejects_bad_k_or_n(self):
        with pytest.raises(ValueError):
            stirling_closed_small(10, 6)
        with pytest.raises(ValueError):
            stirling_closed_small(4, 5)

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_agrees_with_triangle_to_500(self, k):
        for n in range(k, 501):
            assert stirling_closed_small(n, k) == stirling_exact(n, k)


class TestKsfMod:
    def test_examples(self):
        assert ksf_mod(8, 5, 8) == 48  # 120 * 1050 == 48 mod 256
        for n in (1, 9, 250):
            assert ksf_mod(n, 1, 32) == 1
        for M in (16, 64):
            assert ksf_mod(4, 5, M) == 0  # S(4,5) = 0

    def test_requires_positive_n(self):
        with pytest.raises(ValueError):
            ksf_mod(0, 3, 16)

    @pytest.mark.parametrize("M", [16, 64])
    def test_matches_factorial_times_triangle_to_200(self, M):
        mod = 1 << M
        for k in range(1, 201):
            fact = math.factorial(k)
            for n in range(k, 201):
                assert ksf_mod(n, k, M) == fact * stirling_exact(n, k) % mod


class TestVal2Stirling:
    def test_examples(self):
        assert val2_stirling(8, 5) == 1
        assert val2_stirling(28, 5) == 6
        assert val2_stirling(31, 5) == 7
        assert val2_stirling(156, 5) == 11
        for q in range(3, 11):
            assert val2_stirling(1 << q, 7) == 2  # s_2(7) - 1

    def test_infinite_below_order(self):
        assert val2_stirling(4, 5) is INFINITE
        assert val2_stirling(3, 11) is INFINITE

    def test_matches_exact_oracle_to_120(self):
        for n in range(1, 121):
            for k in range(1, n + 1):
                assert val2_stirling(n, k) == nu_int(2, stirling_exact(n, k))

    @pytest.mark.parametrize("k", [3, 5, 17])
    def test_range_scan_matches_pointwise(self, k):
        engine = get_engine(k)
        for n, v in engine.val2_range(1, 400):
            assert v == val2_stirling(n, k)

    @settings(max_examples=150, deadline=None)
    @given(st.integers(min_value=1, max_value=300), st.integers(min_value=1, max_value=300))
    def test_adaptive_precision_is_stable(self, n, k):
        # a nonzero residue pins the valuation; doubling M never changes it
        engine = get_engine(k)
        M = 64
        r = engine.ksf_mod(n, M)
        if r:
            assert nu_int(2, r) == nu_int(2, engine.ksf_mod(n, 2 * M))

    def test_precision_ceiling_raises(self):
        tight = ModStirlingEngine(5, m_start=4, m_max=8)
        with pytest.raises(PrecisionExceeded):
            tight.val2(28)  # nu_2(120 * S(28,5)) = 9 needs more than 8 bits
        roomy = ModStirlingEngine(5, m_start=4, m_max=16)
        assert roomy.val2(28) == 6

    def test_engine_rejects_bad_order(self):
        with pytest.raises(ValueError):
            ModStirlingEngine(0)


class TestVal2ClosedSmall:
    def test_examples(self):
        assert val2_closed_small(7, 3) == 0
        assert val2_closed_small(8, 3) == 1
        assert val2_closed_small(9, 4) == 1
        assert val2_closed_small(10, 4) == 0
        for n in (1, 2, 17, 64):
            assert val2_closed_small(n, 1) == 0

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            val2_closed_small(10, 5)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_matches_exact_to_300(self, k):
        for n in range(k, 301):
            assert val2_closed_small(n, k) == nu_int(2, stirling_exact(n, k))


class TestDeWannemacker:
    def test_examples(self):
        assert de_wannemacker_gap(8, 5) == 0
        for n in (1, 6, 33):
            assert de_wannemacker_gap(n, n) == 0
        for q in range(3, 9):
            for k in (1, 3, 2**q - 1, 2**q):
                assert de_wannemacker_gap(1 << q, k) == 0

    def test_nonnegative_to_150(self):
        for n in range(1, 151):
            for k in range(1, n + 1):
                assert de_wannemacker_gap(n, k) >= 0

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            de_wannemacker_gap(5, 6)


class TestSpecialValues:
    def test_spot_values(self):
        assert val2_stirling(33, 6) == 1  # s_2(5) - 1
        assert val2_stirling(34, 8) == 1  # s_2(6) - 1
        assert val2_stirling(24, 5) == 1  # 24 = 3 * 2^3

    def test_family_scan(self):
        report = special_values_check(q_max=8, k_max=32)
        assert report.status == "CONSISTENT"
        assert report.checked > 500

    def test_rejects_small_q_max(self):
        with pytest.raises(ValueError):
            special_values_check(q_max=2, k_max=8)


def test_identity_battery_consistent():
    report = identity_battery(n_max=80, q_max=4, k_max=16)
    assert report.status == "CONSISTENT"
    names = [sub["name"] for sub in report.details["subchecks"]]
    assert "special values" in names
