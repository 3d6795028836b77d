import numpy as np
import pytest

from embedsim import (
    PauliString,
    PureState,
    ShotPlan,
    combine_estimates,
    concurrence_spec,
    embed_state,
    evaluate_monotone,
    expand_to_observables,
    expectation,
    sample_expectation,
    sample_monotone,
    three_tangle_spec,
)
from embedsim.pauli import PauliSum

from conftest import random_state

BELL = PureState(np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2))
GHZ = PureState(np.array([1, 0, 0, 0, 0, 0, 0, 1]) / np.sqrt(2))


def test_shot_plan_validation():
    with pytest.raises(ValueError):
        ShotPlan(0, 1)
    with pytest.raises(ValueError):
        ShotPlan(10, -1)


def test_eigenstate_is_deterministic():
    s = np.array([1.0, 0.0])
    for shots in (1, 10, 1000):
        est = sample_expectation(s, PauliString("Z"), ShotPlan(shots, 0))
        assert est == 1.0


def test_zero_expectation_concentrates():
    plus = np.array([1.0, 1.0]) / np.sqrt(2)
    bad = 0
    for seed in range(100):
        est = sample_expectation(plus, PauliString("Z"), ShotPlan(10**6, seed))
        if abs(est) >= 5e-3:
            bad += 1
    assert bad <= 2  # ~0.999 per-seed success probability


def test_fixed_seed_reproducible():
    psi = random_state(np.random.default_rng(7), 2)
    a = sample_expectation(psi, PauliString("XX"), ShotPlan(1000, 42))
    b = sample_expectation(psi, PauliString("XX"), ShotPlan(1000, 42))
    assert a == b


def test_unbiasedness():
    psi = random_state(np.random.default_rng(3), 2)
    p = PauliString("XY")
    exact = expectation(psi, PauliSum.from_terms([(1.0, p.symbols)]))
    shots = 256
    estimates = [
        sample_expectation(psi, p, ShotPlan(shots, seed)) for seed in range(10**4)
    ]
    mean = np.mean(estimates)
    stderr = np.std(estimates) / np.sqrt(len(estimates))
    assert abs(mean - exact) < 3 * stderr + 1e-12


def test_sample_monotone_bell():
    est, per_obs = sample_monotone(embed_state(BELL), concurrence_spec(), ShotPlan(10**5, 11))
    assert est == pytest.approx(1.0, abs=0.02)
    assert len(per_obs) == 2


def test_sample_monotone_ghz_tangle():
    est, per_obs = sample_monotone(embed_state(GHZ), three_tangle_spec(), ShotPlan(10**5, 5))
    assert est == pytest.approx(1.0, abs=0.05)
    assert len(per_obs) == 6


def test_noiseless_limit_equals_embedded_value(rng):
    for spec, n in ((concurrence_spec(), 2), (three_tangle_spec(), 3)):
        for _ in range(10):
            tilde = embed_state(random_state(rng, n))
            exact = [expectation(tilde, o) for o in expand_to_observables(spec)]
            combined = combine_estimates(spec, exact)
            embedded = evaluate_monotone(tilde, spec, "embedded").value
            assert combined == pytest.approx(embedded, abs=1e-12)


def test_determinism_bit_identical():
    tilde = embed_state(BELL)
    plan = ShotPlan(5000, 123)
    a = sample_monotone(tilde, concurrence_spec(), plan)
    b = sample_monotone(tilde, concurrence_spec(), plan)
    assert a == b


def test_convergence_rate():
    # Partially entangled state: both observables carry first-order shot
    # noise, so the estimate sits in the 1/sqrt(S) regime.
    theta = np.pi / 8
    v = np.zeros(4, dtype=complex)
    v[0], v[3] = np.cos(theta), np.sin(theta)
    tilde = embed_state(PureState(v))
    spec = concurrence_spec()
    exact = abs(np.sin(2 * theta))
    shots_grid = [10**3, 10**4, 10**5]
    rms = []
    for shots in shots_grid:
        errors = [
            sample_monotone(tilde, spec, ShotPlan(shots, seed))[0] - exact
            for seed in range(100)
        ]
        rms.append(np.sqrt(np.mean(np.square(errors))))
    slope = np.polyfit(np.log(shots_grid), np.log(rms), 1)[0]
    assert slope == pytest.approx(-0.5, abs=0.1)


def test_arity_mismatch_rejected():
    with pytest.raises(ValueError):
        sample_monotone(embed_state(BELL), three_tangle_spec(), ShotPlan(10, 0))


def test_combine_estimates_length_check():
    with pytest.raises(ValueError):
        combine_estimates(concurrence_spec(), [1.0])
