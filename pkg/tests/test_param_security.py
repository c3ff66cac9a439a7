from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from knapqsec import param_security as ps
from knapqsec.errors import DegenerateModulus


class TestFiveConditions:
    def test_109_29(self):
        assert ps.check_fc(109, 29).all_pass

    def test_composite_p(self):
        assert not ps.check_fc(4, 3).p_prime

    def test_h_window(self):
        fc = ps.check_fc(109, 37)
        assert not fc.h_in_11_31 and fc.h_prime

    def test_size_window_edges(self):
        assert not ps.check_fc(7, 4).size_window
        assert not ps.check_fc(997, 31).size_window  # ~9e92


class TestGpf:
    def test_7_4(self):
        res = ps.gpf_bound_check(7, 4)
        assert res.status == ps.SATISFIED and res.greatest_known == 5
        assert res.factors == {2: 5, 3: 1, 5: 2}

    def test_3_2(self):
        assert ps.gpf_bound_check(3, 2).status == ps.SATISFIED

    def test_tiny_budget_unknown(self):
        assert ps.gpf_bound_check(109, 29, budget=0).status == ps.UNKNOWN

    def test_109_29_full(self):
        res = ps.gpf_bound_check(109, 29)
        assert res.status == ps.VIOLATED
        assert res.greatest_known == 93747720530583417795580950351920580529

    def test_small_bound_violated(self):
        assert ps.gpf_bound_check(7, 4, bound=3).status == ps.VIOLATED

    def test_unfactored_but_small_cofactor(self):
        # 1000003 * 1000033 survives a zero budget yet is below the bound
        res = ps.gpf_bound_check(2, 40, budget=0)
        assert res.status == ps.SATISFIED


class TestQuantumRatio:
    def test_109_29(self):
        assert ps.round_decimal(ps.quantum_ratio(109, 29), 1) == "3460753.1"

    def test_2_1(self):
        assert ps.quantum_ratio(2, 1) == 16

    def test_degenerate(self):
        with pytest.raises(DegenerateModulus):
            ps.quantum_ratio(1, 1)

    def test_round_decimal(self):
        assert ps.round_decimal(Fraction(1, 4), 1) == "0.2"  # half-even
        assert ps.round_decimal(Fraction(3, 4), 1) == "0.8"
        assert ps.round_decimal(Fraction(-21, 10), 1) == "-2.1"
        assert ps.round_decimal(Fraction(7, 2), 0) == "4"


class TestAudit:
    def test_109_29(self):
        rep = ps.chor_rivest_quantum_audit(109, 29)
        assert not rep.quantum_secure
        assert rep.to_json()["break_probability_display"] == "1/6921506.2"
        assert rep.break_probability_bound == Fraction(109**29 - 1, 2 * 4**109)
        assert rep.verdict == "insecure"

    def test_small_h_secure(self):
        rep = ps.chor_rivest_quantum_audit(109, 2)
        assert rep.quantum_secure and rep.break_probability_bound is None

    @given(st.integers(2, 60), st.integers(1, 40))
    def test_secure_iff_ratio_above_threshold(self, p, h):
        rep = ps.chor_rivest_quantum_audit(p, h, budget=0)
        assert rep.quantum_secure == (rep.quantum_ratio > rep.quantum_threshold)
        assert rep.quantum_threshold == 2**p


class TestZr:
    @pytest.mark.parametrize("n, r, secure", [(10, 512, True), (10, 1024, False), (10, 2048, False)])
    def test_boundary(self, n, r, secure):
        assert ps.knapsack_zr_audit(n, r).secure is secure

    @given(st.integers(1, 80), st.integers(2, 2**90))
    def test_matches_cross_multiplication(self, n, r):
        assert ps.knapsack_zr_audit(n, r).secure == (4**n > r * 2**n)

    def test_invalid(self):
        with pytest.raises(ValueError):
            ps.knapsack_zr_audit(0, 5)
