import numpy as np
import pytest

from embedsim import (
    Decomposition,
    MixedState,
    PureState,
    RoofConfig,
    ShotPlan,
    concurrence,
    concurrence_spec,
    convex_roof_estimate,
    decomposition_from_isometry,
    efficiency_check,
    eigendecomposition_start,
    roof_objective,
    werner_state,
    wootters_oracle,
)
from embedsim.convexroof import _coordinate_descent

from conftest import random_product_state, random_state

BELL = PureState(np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2))


def random_rank2_state(rng, n=2):
    a = rng.normal(size=(1 << n, 2)) + 1j * rng.normal(size=(1 << n, 2))
    m = a @ a.conj().T
    return MixedState(m / np.trace(m).real)


class TestDecomposition:
    def test_probability_validation(self):
        with pytest.raises(ValueError):
            Decomposition(((0.4, BELL), (0.4, BELL)))
        with pytest.raises(ValueError):
            Decomposition(((1.2, BELL), (-0.2, BELL)))

    def test_density_matrix(self):
        d = Decomposition(((1.0, BELL),))
        np.testing.assert_allclose(
            d.density_matrix(), np.outer(BELL.amplitudes, BELL.amplitudes.conj())
        )


class TestEigendecompositionStart:
    def test_pure_state(self):
        rho = MixedState.from_pure(BELL)
        d = eigendecomposition_start(rho)
        assert d.size == 1
        assert d.members[0][0] == pytest.approx(1.0)

    def test_maximally_mixed(self):
        rho = MixedState(np.eye(4) / 4)
        d = eigendecomposition_start(rho)
        assert d.size == 4
        for p, _ in d.members:
            assert p == pytest.approx(0.25)

    def test_rank2_reconstruction(self, rng):
        rho = random_rank2_state(rng)
        d = eigendecomposition_start(rho)
        assert d.size == 2
        assert np.linalg.norm(d.density_matrix() - rho.matrix) < 1e-10


class TestDecompositionFromIsometry:
    def test_identity_recovers_eigendecomposition(self, rng):
        rho = random_rank2_state(rng)
        d_eig = eigendecomposition_start(rho)
        d_iso = decomposition_from_isometry(rho, np.eye(2))
        for (p1, s1), (p2, s2) in zip(d_eig.members, d_iso.members):
            assert p1 == pytest.approx(p2)
            # states may differ by a global phase
            assert abs(np.vdot(s1.amplitudes, s2.amplitudes)) == pytest.approx(1.0)

    def test_rotation_reconstructs(self):
        # Bell-diagonal rank-2 mixture
        phi_minus = np.array([1.0, 0.0, 0.0, -1.0]) / np.sqrt(2)
        rho = MixedState(
            0.6 * np.outer(BELL.amplitudes, BELL.amplitudes.conj())
            + 0.4 * np.outer(phi_minus, phi_minus.conj())
        )
        c, s = np.cos(np.pi / 4), np.sin(np.pi / 4)
        w = np.array([[c, -s], [s, c]])
        d = decomposition_from_isometry(rho, w)
        assert np.linalg.norm(d.density_matrix() - rho.matrix) < 1e-10

    def test_tall_isometry(self, rng):
        rho = random_rank2_state(rng)
        z = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
        w, _ = np.linalg.qr(z)
        d = decomposition_from_isometry(rho, w)
        assert d.size <= 3
        assert np.linalg.norm(d.density_matrix() - rho.matrix) < 1e-10

    def test_non_isometry_rejected(self, rng):
        rho = random_rank2_state(rng)
        with pytest.raises(ValueError):
            decomposition_from_isometry(rho, np.ones((3, 2)))


class TestRoofObjective:
    def test_pure_state_single_member(self, rng):
        psi = random_state(rng, 2)
        d = Decomposition(((1.0, psi),))
        assert roof_objective(d, concurrence_spec()) == pytest.approx(
            concurrence(psi).value, abs=1e-10
        )

    def test_product_mixture_is_zero(self, rng):
        members = tuple((0.25, random_product_state(rng, 2)) for _ in range(4))
        d = Decomposition(members)
        assert roof_objective(d, concurrence_spec()) < 1e-10

    def test_eigendecomposition_upper_bounds_oracle(self):
        rho = werner_state(0.9)
        d = eigendecomposition_start(rho)
        assert roof_objective(d, concurrence_spec()) >= wootters_oracle(rho) - 1e-9

    def test_shot_injected_objective_is_deterministic(self, rng):
        d = Decomposition(((1.0, BELL),))
        plan = ShotPlan(2000, 3)
        a = roof_objective(d, concurrence_spec(), shots=plan)
        b = roof_objective(d, concurrence_spec(), shots=plan)
        assert a == b
        assert a == pytest.approx(1.0, abs=0.1)


class TestWoottersOracle:
    def test_bell_projector(self):
        assert wootters_oracle(MixedState.from_pure(BELL)) == pytest.approx(1.0)

    def test_maximally_mixed(self):
        assert wootters_oracle(MixedState(np.eye(4) / 4)) == pytest.approx(0.0)

    def test_werner_two_thirds(self):
        assert wootters_oracle(werner_state(2 / 3)) == pytest.approx(0.5, abs=1e-12)

    def test_matches_pure_concurrence(self, rng):
        for _ in range(10):
            psi = random_state(rng, 2)
            # non-Hermitian eigensolve limits the oracle to ~sqrt eps accuracy
            assert wootters_oracle(MixedState.from_pure(psi)) == pytest.approx(
                concurrence(psi).value, abs=1e-6
            )


class TestConvexRoofEstimate:
    CFG = RoofConfig(restarts=4, seed=7)

    def test_pure_state(self, rng):
        psi = random_state(rng, 2)
        res = convex_roof_estimate(MixedState.from_pure(psi), concurrence_spec(), self.CFG)
        assert res.value == pytest.approx(concurrence(psi).value, abs=1e-6)

    @pytest.mark.parametrize("p", [0.5, 0.8, 1.0])
    def test_werner_matches_oracle(self, p):
        rho = werner_state(p)
        res = convex_roof_estimate(rho, concurrence_spec(), self.CFG)
        assert res.value == pytest.approx(max(0.0, (3 * p - 1) / 2), abs=1e-3)

    def test_random_rank2_instances(self, rng):
        for _ in range(5):
            rho = random_rank2_state(rng)
            res = convex_roof_estimate(rho, concurrence_spec(), self.CFG)
            oracle = wootters_oracle(rho)
            assert res.value == pytest.approx(oracle, abs=1e-3)
            assert res.value >= oracle - 1e-9

    def test_separable_mixture_detected(self, rng):
        members = tuple((1 / 3, random_product_state(rng, 2)) for _ in range(3))
        rho = MixedState.from_ensemble(members)
        res = convex_roof_estimate(rho, concurrence_spec(), self.CFG)
        assert res.value < 1e-2

    def test_monotone_descent_history(self):
        res = convex_roof_estimate(werner_state(0.8), concurrence_spec(), self.CFG)
        diffs = np.diff(res.history)
        assert np.all(diffs <= 1e-15)

    def test_determinism(self):
        rho = werner_state(0.6)
        cfg = RoofConfig(restarts=2, seed=11)
        a = convex_roof_estimate(rho, concurrence_spec(), cfg)
        b = convex_roof_estimate(rho, concurrence_spec(), cfg)
        assert a.value == b.value
        assert a.history == b.history

    def test_result_decomposition_reconstructs(self):
        rho = werner_state(0.8)
        res = convex_roof_estimate(rho, concurrence_spec(), self.CFG)
        assert res.decomposition.reconstructs(rho)


class TestCoordinateDescent:
    def test_quadratic_bowl(self):
        f = lambda x: float(np.sum((x - 1.0) ** 2))
        x, fx, history, converged, _ = _coordinate_descent(
            f, np.zeros(3), 200, 1e-8
        )
        assert fx < 1e-10
        assert converged
        assert np.all(np.diff(history) <= 1e-15)


class TestEfficiencyCheck:
    def test_small_system_not_efficient(self):
        assert efficiency_check(2, 50, 2, 2) is False

    def test_large_system_efficient(self):
        assert efficiency_check(2, 100, 2, 6) is True

    def test_boundary_excluded(self):
        assert efficiency_check(1, 1, 15, 2) is False

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            efficiency_check(0, 1, 1, 1)


def test_werner_state_validation():
    with pytest.raises(ValueError):
        werner_state(1.5)
