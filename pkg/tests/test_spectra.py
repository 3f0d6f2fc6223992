import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reservoir_stability import (
    ReservoirParams,
    SpectrumSnapshot,
    eigenspectrum,
    init_network,
    jacobian_closed,
    jacobian_unrolled,
    phi_prime,
    snapshot,
    spectra_distance,
)


def brute_force_hausdorff(a, b):
    d_ab = max(min(abs(x - y) for y in b) for x in a)
    d_ba = max(min(abs(x - y) for y in a) for x in b)
    return max(d_ab, d_ba)


class TestPhiPrime:
    def test_at_zero(self):
        assert phi_prime(np.array([0.0]))[0] == 1.0

    def test_saturation(self):
        assert phi_prime(np.array([20.0]))[0] < 1e-16
        assert phi_prime(np.array([-20.0]))[0] < 1e-16

    def test_at_one(self):
        expected = 1.0 - np.tanh(1.0) ** 2  # ~0.419974
        assert phi_prime(np.array([1.0]))[0] == pytest.approx(expected, abs=1e-12)
        assert phi_prime(np.array([1.0]))[0] == pytest.approx(0.419974, abs=1e-6)

    def test_range(self):
        x = np.linspace(-5, 5, 101)
        d = phi_prime(x)
        assert np.all(d > 0.0)
        assert np.all(d <= 1.0)


class TestJacobians:
    def test_scalar_expansion(self):
        # N=1: J = -1 + w + b*c at x = x_unroll = 0
        j = jacobian_unrolled(
            np.array([[0.4]]), np.array([0.8]), np.array([0.5]),
            np.zeros(1), np.zeros(1),
        )
        assert j[0, 0] == pytest.approx(-1 + 0.4 + 0.8 * 0.5)

    def test_zero_readout_drops_feedback_term(self):
        rng = np.random.default_rng(0)
        w = rng.normal(0, 0.3, (4, 4))
        w_fb = rng.uniform(-1, 1, 4)
        x = rng.normal(0, 0.5, 4)
        j = jacobian_unrolled(w, w_fb, np.zeros(4), x, rng.normal(0, 1, 4))
        expected = -np.eye(4) + w * phi_prime(x)
        np.testing.assert_allclose(j, expected, atol=1e-15)

    def test_unrolled_reduces_to_closed_at_same_state(self):
        rng = np.random.default_rng(1)
        w = rng.normal(0, 0.3, (5, 5))
        w_fb = rng.uniform(-1, 1, 5)
        w_out = rng.normal(0, 0.2, 5)
        x = rng.normal(0, 0.5, 5)
        j_unrolled = jacobian_unrolled(w, w_fb, w_out, x, x)
        j_closed = jacobian_closed(w, w_fb, w_out, x)
        np.testing.assert_array_equal(j_unrolled, j_closed)

    def test_closed_all_zero_weights(self):
        j = jacobian_closed(np.zeros((3, 3)), np.zeros(3), np.zeros(3), np.zeros(3))
        np.testing.assert_array_equal(j, -np.eye(3))

    def test_closed_diagonal_w_at_origin(self):
        w = np.diag([0.3, -0.2])
        j = jacobian_closed(w, np.zeros(2), np.zeros(2), np.zeros(2))
        np.testing.assert_allclose(j, -np.eye(2) + w)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            jacobian_unrolled(np.zeros((2, 2)), np.zeros(2), np.zeros(3),
                              np.zeros(2), np.zeros(2))


class TestEigenspectrum:
    def test_diagonal(self):
        ev = sorted(eigenspectrum(np.diag([0.3, -0.5])).real)
        assert ev == pytest.approx([-0.5, 0.3])

    def test_rotation_matrix(self):
        ev = eigenspectrum(np.array([[0.0, 1.0], [-1.0, 0.0]]))
        assert sorted(ev.imag) == pytest.approx([-1.0, 1.0])
        np.testing.assert_allclose(ev.real, 0.0, atol=1e-12)

    def test_trace_and_determinant(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            m = rng.normal(0, 1, (4, 4))
            ev = eigenspectrum(m)
            assert ev.sum().real == pytest.approx(np.trace(m), abs=1e-8)
            assert abs(ev.sum().imag) <= 1e-8
            assert np.prod(ev) == pytest.approx(np.linalg.det(m), abs=1e-8)

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1), n=st.integers(2, 8))
    def test_trace_det_property(self, seed, n):
        m = np.random.default_rng(seed).normal(0, 1, (n, n))
        ev = eigenspectrum(m)
        assert ev.sum().real == pytest.approx(np.trace(m), abs=1e-8)
        assert abs(complex(np.prod(ev)) - np.linalg.det(m)) <= 1e-6

    def test_rejects_nonsquare_and_nonfinite(self):
        with pytest.raises(ValueError):
            eigenspectrum(np.zeros((2, 3)))
        with pytest.raises(ValueError):
            eigenspectrum(np.array([[np.inf, 0.0], [0.0, 1.0]]))


class TestSnapshot:
    def test_zero_weights(self):
        weights, state = init_network(ReservoirParams(n=4, g=0.0, fb_scale=0.0, seed=0))
        snap = snapshot(weights, state.x, state.x, step=3)
        np.testing.assert_allclose(snap.eigenvalues, -1.0, atol=1e-15)
        assert snap.radius == pytest.approx(0.0, abs=1e-15)
        assert snap.step == 3

    def test_untrained_radius_tracks_gain(self):
        weights, state = init_network(ReservoirParams(n=1000, g=1.5, seed=0))
        snap = snapshot(weights, state.x, state.x, step=0)
        assert snap.radius == pytest.approx(1.176, abs=0.2)

    def test_radius_matches_unshifted_oracle(self):
        rng = np.random.default_rng(3)
        weights, state = init_network(ReservoirParams(n=12, g=1.2, seed=3))
        weights.w_out = rng.normal(0, 0.2, 12)
        x_unroll = rng.normal(0, 0.5, 12)
        snap = snapshot(weights, state.x, x_unroll, step=1)
        m = weights.w * phi_prime(state.x) + np.outer(
            weights.w_fb, weights.w_out * phi_prime(x_unroll)
        )
        oracle = float(np.max(np.abs(np.linalg.eigvals(m))))
        assert snap.radius == pytest.approx(oracle, abs=1e-10)
        assert snap.radius == pytest.approx(
            float(np.max(np.abs(snap.eigenvalues + 1.0))), abs=1e-12
        )

    @settings(max_examples=15, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1))
    def test_conjugate_symmetry(self, seed):
        rng = np.random.default_rng(seed)
        weights, state = init_network(ReservoirParams(n=9, g=1.4, seed=seed))
        weights.w_out = rng.normal(0, 0.3, 9)
        snap = snapshot(weights, state.x, rng.normal(0, 0.5, 9), step=0)
        ev = snap.eigenvalues
        for lam in ev[np.abs(ev.imag) > 0]:
            assert np.min(np.abs(ev - lam.conjugate())) <= 1e-8

    def test_closed_vs_unrolled_spectra_identical_at_same_state(self):
        rng = np.random.default_rng(11)
        weights, state = init_network(ReservoirParams(n=10, g=1.1, seed=11))
        weights.w_out = rng.normal(0, 0.2, 10)
        j = jacobian_closed(weights.w, weights.w_fb, weights.w_out, state.x)
        ev_closed = np.sort_complex(eigenspectrum(j))
        snap = snapshot(weights, state.x, state.x, step=0)
        ev_unrolled = np.sort_complex(snap.eigenvalues)
        np.testing.assert_allclose(ev_unrolled, ev_closed, atol=1e-10)


class TestSpectraDistance:
    def make(self, values):
        ev = np.asarray(values, dtype=complex)
        return SpectrumSnapshot(step=0, eigenvalues=ev,
                                radius=float(np.max(np.abs(ev + 1))),
                                max_real=float(np.max(ev.real)))

    def test_identical_snapshots(self):
        a = self.make([0.1 + 0.2j, -0.3])
        assert spectra_distance(a, a) == 0.0

    def test_single_point(self):
        assert spectra_distance(self.make([0.0]), self.make([3.0 + 4.0j])) == 5.0

    def test_epsilon_perturbation(self):
        eps = 1e-3
        a = self.make([0.0, 1.0])
        b = self.make([0.0, 1.0 + eps * 1j])
        assert spectra_distance(a, b) == pytest.approx(eps)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(5)
        va = rng.normal(0, 1, 7) + 1j * rng.normal(0, 1, 7)
        vb = rng.normal(0, 1, 7) + 1j * rng.normal(0, 1, 7)
        a, b = self.make(va), self.make(vb)
        assert spectra_distance(a, b) == pytest.approx(
            brute_force_hausdorff(va, vb), abs=1e-12
        )
        assert spectra_distance(a, b) == spectra_distance(b, a)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            spectra_distance(self.make([0.0]), self.make([0.0, 1.0]))
