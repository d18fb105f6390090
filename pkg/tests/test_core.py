from fractions import Fraction

import numpy as np
import pytest

from fusionlab import (
    FusionOutcome,
    LabelError,
    RingMismatchError,
    TLJRing,
    ValidationError,
    V_coefficients,
    build_group_ring,
    build_tlj_ainf,
    chebyshev_V,
    chebyshev_V_all,
    chebyshev_V_closed,
    check_invariants,
)

from oracles import V_frac, V_mp


class TestChebyshev:
    def test_first_values(self):
        assert [chebyshev_V(n, 5) for n in range(6)] == [1, 4, 11, 29, 76, 199]
        assert [chebyshev_V(n, 4) for n in range(5)] == [1, 3, 5, 7, 9]

    def test_exact_types_preserved(self):
        v = chebyshev_V(7, Fraction(9, 2))
        assert isinstance(v, Fraction)
        assert v == V_frac(7, Fraction(9, 2))

    @pytest.mark.parametrize("t", [-3.5, -1.0, -0.25, 0.0, 0.3, 1.7, 2.0, 3.99, 4.0, 4.01, 5.0, 7.5])
    def test_closed_form_against_mpmath(self, t):
        for n in range(0, 25):
            ref = float(V_mp(n, t))
            assert chebyshev_V_closed(n, t) == pytest.approx(ref, rel=1e-11, abs=1e-11)
            assert chebyshev_V(n, t) == pytest.approx(ref, rel=1e-10, abs=1e-10)

    def test_vectorized(self):
        grid = np.linspace(-1, 6, 9)
        table = chebyshev_V_all(6, grid)
        for n in range(7):
            np.testing.assert_allclose(table[n], [chebyshev_V(n, t) for t in grid])

    def test_coefficients(self):
        # V_2 = t^2 - 3t + 1
        assert V_coefficients(2) == (1, -3, 1)
        for n in range(8):
            c = V_coefficients(n)
            assert sum(ci * 3**i for i, ci in enumerate(c)) == chebyshev_V(n, 3)

    def test_negative_index(self):
        with pytest.raises(ValueError):
            chebyshev_V(-1, 2)


class TestElements:
    def setup_method(self):
        self.ring = build_tlj_ainf(5)

    def test_arithmetic(self):
        r = self.ring
        X = r.generator()
        assert X * X == r.element({0: 2, 1: 3, 2: 1})
        assert (X - r.delta(0)) ** 2 == r.element({0: 1, 1: 1, 2: 1})
        assert 2 * X == X + X
        assert (X / 2)[1] == Fraction(1, 2)
        assert X - X == r.element({})
        assert not (X - X)

    def test_star_conjugates_coefficients(self):
        Z = build_group_ring("Z")
        x = Z.element({1: 1j, -2: 3})
        s = x.star()
        assert s[-1] == -1j and s[2] == 3

    def test_ring_mismatch(self):
        other = build_tlj_ainf(5)
        with pytest.raises(RingMismatchError):
            self.ring.generator() + other.generator()

    def test_bad_labels(self):
        with pytest.raises(LabelError):
            self.ring.delta(-1)
        with pytest.raises(LabelError):
            self.ring.fuse("a", 1)
        with pytest.raises(LabelError):
            self.ring.dim(True)

    def test_outcome_mapping(self):
        out = self.ring.fuse(2, 3)
        assert isinstance(out, FusionOutcome)
        assert list(out) == [1, 2, 3, 4, 5]
        assert out[3] == 1 and out.get(7, 0) == 0
        assert self.ring.mult(0, 2, 2) == 1 and self.ring.mult(0, 2, 3) == 0

    def test_fusion_dimension(self):
        r = self.ring
        for a in range(5):
            for b in range(5):
                assert sum(m * r.dim(c) for c, m in r.fuse(a, b).items()) == r.dim(a) * r.dim(b)


class _BrokenDim(TLJRing):
    def _dim(self, n):
        return super()._dim(n) + (1 if n == 3 else 0)


class _BrokenFusion(TLJRing):
    def _fuse(self, m, n):
        out = super()._fuse(m, n)
        if (m, n) == (1, 2):
            out = dict(out)
            out[1] = 2
        return out


class TestInvariantSuite:
    def test_passes_on_tlj(self):
        summary = check_invariants(build_tlj_ainf(Fraction(9, 2)), 4)
        assert isinstance(summary, dict)

    def test_dimension_failure_has_witness(self):
        with pytest.raises(ValidationError) as info:
            check_invariants(_BrokenDim(5), 4)
        assert info.value.witness is not None

    def test_fusion_failure(self):
        with pytest.raises(ValidationError):
            check_invariants(_BrokenFusion(5), 4)

    def test_sampling_is_deterministic(self):
        ring = build_group_ring("free", k=2)
        a = check_invariants(ring, 4, pair_budget=50, triple_budget=20, seed=3)
        b = check_invariants(ring, 4, pair_budget=50, triple_budget=20, seed=3)
        assert a == b
