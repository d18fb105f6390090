from fractions import Fraction

import numpy as np
import pytest

from fusionlab import (
    MomentSequence,
    NumericalError,
    ParameterError,
    admissibility,
    build_tlj_ainf,
    evaluate_polynomial,
    hankel_triple,
    l1_range_check,
    monomial_coefficients,
    moments,
    multiplier_from_measure,
    phi_point,
    plancherel_density,
    plancherel_pair,
    reduced_norm,
    regular_multiplier,
    table_multiplier,
    to_polynomial,
    trivial_multiplier,
    universal_norm,
)

from oracles import V_frac, catalan, first_l1_violation, plancherel_mp


@pytest.fixture(scope="module")
def tlj5():
    return build_tlj_ainf(5)


class TestPointMultipliers:
    def test_values_exact(self, tlj5):
        phi = phi_point(tlj5, 3)
        assert phi(0) == 1
        assert phi(2) == Fraction(V_frac(2, 3), 11)
        assert phi.claimed_cp

    def test_endpoint_is_trivial(self, tlj5):
        phi = phi_point(tlj5, 5)
        assert all(phi(n) == 1 for n in range(10))

    def test_accepts_lambda(self):
        assert phi_point(Fraction(9, 2), 0)(1) == Fraction(-1, Fraction(7, 2))

    def test_outside_not_claimed(self, tlj5):
        assert not phi_point(tlj5, 6).claimed_cp
        assert not phi_point(tlj5, -0.1).claimed_cp

    def test_float_t(self, tlj5):
        assert isinstance(phi_point(tlj5, 2.5)(3), float)


class TestMoments:
    def test_monomial_coefficients(self):
        assert monomial_coefficients(0) == (1,)
        assert monomial_coefficients(1) == (1, 1)
        assert monomial_coefficients(2) == (2, 3, 1)
        assert monomial_coefficients(3) == (5, 9, 5, 1)

    def test_catalan_for_regular(self, tlj5):
        seq = moments(tlj5, regular_multiplier(tlj5), 12)
        assert seq.values == tuple(catalan(k) for k in range(13))
        assert seq.exact and all(e == 0 for e in seq.errors)

    def test_point_moments_are_powers(self, tlj5):
        seq = moments(tlj5, phi_point(tlj5, 3), 8)
        assert seq.values == tuple(3**k for k in range(9))

    def test_trivial_gives_lambda_powers(self, tlj5):
        seq = moments(tlj5, trivial_multiplier(tlj5), 6)
        assert seq.values == tuple(5**k for k in range(7))

    def test_float_error_bounds(self, tlj5):
        seq = moments(tlj5, phi_point(tlj5, 2.5), 10)
        assert not seq.exact
        for k, (v, e) in enumerate(zip(seq.values, seq.errors)):
            assert abs(v - 2.5**k) <= max(e, 1e-300)
            assert e > 0

    def test_measure_moments(self, tlj5):
        phi = multiplier_from_measure(tlj5, [(1, Fraction(1, 2)), (4, Fraction(1, 2))])
        seq = moments(tlj5, phi, 5)
        assert seq.values == tuple(Fraction(1 + 4**k, 2) for k in range(6))

    def test_hankel_shapes(self, tlj5):
        seq = moments(tlj5, regular_multiplier(tlj5), 9)
        H = hankel_triple(seq, 4)
        assert len(H.H0) == 5 and len(H.H1) == 5
        assert H.H0[1][2] == catalan(3)
        assert H.H2[0][0] == 5 * catalan(0) - catalan(1)

    def test_hankel_needs_enough_moments(self, tlj5):
        seq = moments(tlj5, regular_multiplier(tlj5), 6)
        with pytest.raises(ParameterError):
            hankel_triple(seq, 3)


class TestAdmissibility:
    def test_spec_example(self, tlj5):
        v = admissibility(tlj5, phi_point(tlj5, Fraction(11, 2)), 8)
        assert v.status == "Rejected" and v.level == 0 and v.exact
        assert v.witness["eigenvalue"] == pytest.approx(-0.5)
        assert v.witness["matrix"] == "H2"

    def test_negative_point(self, tlj5):
        v = admissibility(tlj5, phi_point(tlj5, Fraction(-1, 2)), 8)
        assert v.status == "Rejected" and v.level == 0 and v.witness["matrix"] == "H1"

    def test_regular_exact_admissible(self, tlj5):
        v = admissibility(tlj5, regular_multiplier(tlj5), 12)
        assert v.status == "Admissible" and v.level == 12 and v.exact
        assert bool(v)

    def test_measure_admissible(self, tlj5):
        phi = multiplier_from_measure(tlj5, [(0, Fraction(1, 3)), (Fraction(7, 2), Fraction(2, 3))])
        assert admissibility(tlj5, phi, 10).status == "Admissible"

    def test_float_inside(self, tlj5):
        assert admissibility(tlj5, phi_point(tlj5, 4.7), 12).status == "Admissible"

    def test_float_near_zero_not_rejected(self, tlj5):
        assert admissibility(tlj5, phi_point(tlj5, 0.3), 12).status in ("Admissible", "Inconclusive")

    def test_higher_level_rejection(self, tlj5):
        # phi(H_1) inside range but phi(H_2) pushed too far: fails at a positive level
        phi = table_multiplier(tlj5, {0: 1, 1: Fraction(1, 2), 2: -1})
        v = admissibility(tlj5, phi, 6)
        assert v.status == "Rejected" and v.level >= 1

    def test_accepts_moment_sequence(self, tlj5):
        seq = MomentSequence(5, tuple(4**k for k in range(10)))
        assert admissibility(5, seq, 4).status == "Admissible"

    def test_to_dict(self, tlj5):
        d = admissibility(tlj5, phi_point(tlj5, 6), 4).to_dict()
        assert set(d) >= {"status", "level", "exact", "witness", "tolerance"}

    def test_negative_level(self, tlj5):
        with pytest.raises(ParameterError):
            admissibility(tlj5, regular_multiplier(tlj5), -1)


class TestL1Range:
    @pytest.mark.parametrize("t", ["-1.2", "5.1", "-1", "0", "3", "5", "-1.05", "5.01"])
    def test_against_oracle(self, tlj5, t):
        assert l1_range_check(tlj5, Fraction(t), 200) == first_l1_violation(5, Fraction(t), 200)

    def test_other_lambda(self):
        ring = build_tlj_ainf(Fraction(9, 2))
        for t in ("-1.1", "4.6", "2"):
            assert l1_range_check(ring, Fraction(t), 100) == first_l1_violation(Fraction(9, 2), Fraction(t), 100)


class TestPlancherel:
    @pytest.mark.parametrize("n,m", [(0, 0), (1, 0), (2, 2), (4, 1), (5, 5), (3, 6)])
    def test_against_mpmath(self, n, m):
        assert plancherel_pair(n, m) == pytest.approx(float(plancherel_mp(n, m)), abs=1e-9)

    def test_density_mass(self):
        from scipy import integrate

        mass, _ = integrate.quad(plancherel_density, 0, 4)
        assert mass == pytest.approx(1.0, abs=1e-8)

    def test_impossible_tolerance(self):
        with pytest.raises(NumericalError):
            plancherel_pair(40, 40, tol=1e-30)

    def test_negative_index(self):
        with pytest.raises(ParameterError):
            plancherel_pair(-1, 0)


class TestNorms:
    def test_generator(self, tlj5):
        X = tlj5.generator()
        assert to_polynomial(X) == [0, 1]
        assert reduced_norm(X) == 4
        assert universal_norm(X) == 5

    def test_dimension_is_universal_norm(self, tlj5):
        for n in range(6):
            assert universal_norm(tlj5.delta(n)) == tlj5.dim(n)

    def test_reduced_norm_of_h2(self, tlj5):
        assert reduced_norm(tlj5.delta(2)) == 5

    def test_interior_maximum(self, tlj5):
        # V_2 - V_1 + 1 = t^2 - 4t + 3: |.| on [0, 4] is 3 at both ends and 1 at t = 2
        x = tlj5.element({2: 1, 1: -1, 0: 1})
        assert to_polynomial(x) == [3, -4, 1]
        assert reduced_norm(x) == 3
        # brute-force check against a dense grid
        y = tlj5.element({3: 1})
        grid = np.linspace(0, 4, 20001)
        brute = np.max(np.abs(evaluate_polynomial(y, grid)))
        assert float(reduced_norm(y)) == pytest.approx(brute, rel=1e-7)

    def test_complex_coefficients(self, tlj5):
        x = tlj5.element({0: 1j, 1: 1})
        grid = np.linspace(0, 5, 50001)
        brute = np.max(np.abs(evaluate_polynomial(x, grid)))
        assert float(universal_norm(x)) == pytest.approx(brute, rel=1e-7)
