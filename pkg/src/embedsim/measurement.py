"""Finite-shot emulation of the enlarged-space observable measurements.

Every expanded observable is a single Pauli string, i.e. a +/-1 valued
measurement; an estimate is the mean of S simulated outcomes. Observables
draw from independent generators derived deterministically from the plan
seed, so results do not depend on evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embedding import EnlargedState
from .errors import NumericalIntegrityError
from .monotones import MonotoneSpec, _expansion, expand_to_observables
from .pauli import PauliString, PauliSum, expectation


@dataclass(frozen=True)
class ShotPlan:
    shots: int
    seed: int

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


def _rng_for(plan: ShotPlan, index: int) -> np.random.Generator:
    # Independent stream per observable: SeedSequence(entropy, spawn_key)
    # is the documented mixing function.
    return np.random.default_rng(
        np.random.SeedSequence(entropy=plan.seed, spawn_key=(index,))
    )


def sample_expectation(s, p: PauliString, plan: ShotPlan, index: int = 0) -> float:
    """Mean of S simulated +/-1 outcomes with p(+1) = (1 + <P>)/2."""
    exact = expectation(s, PauliSum.from_terms([(1.0, p)]))
    p_plus = (1.0 + exact) / 2.0
    if p_plus < -1e-10 or p_plus > 1.0 + 1e-10:
        raise NumericalIntegrityError(
            f"outcome probability {p_plus} outside [0, 1]: observable not +/-1 valued"
        )
    p_plus = min(max(p_plus, 0.0), 1.0)
    successes = _rng_for(plan, index).binomial(plan.shots, p_plus)
    return 2.0 * successes / plan.shots - 1.0


def combine_estimates(spec: MonotoneSpec, per_observable: list[float]) -> float:
    """Contract raw per-observable estimates (ordered as expand_to_observables)
    into the monotone scalar. Feeding exact expectations recovers the
    noiseless embedded value."""
    observables = expand_to_observables(spec)
    if len(per_observable) != len(observables):
        raise ValueError(
            f"expected {len(observables)} estimates, got {len(per_observable)}"
        )
    # Observables come in (Z(x)O, X(x)O) pairs keyed by the payload label.
    pair_of: dict[str, complex] = {}
    for i in range(0, len(observables), 2):
        (_, string), = observables[i].terms
        label = string.symbols[1:]
        pair_of[label] = per_observable[i] - 1j * per_observable[i + 1]
    total = 0.0 + 0.0j
    for sign, ops in _expansion(spec):
        prod = 1.0 + 0.0j
        for op in ops:
            prod *= pair_of[op]
        total += sign * prod
    return float(abs(total))


def sample_monotone(
    tilde: EnlargedState, spec: MonotoneSpec, plan: ShotPlan
) -> tuple[float, tuple[float, ...]]:
    """Shot-sampled monotone estimate plus the raw per-observable estimates."""
    if tilde.n != spec.n_qubits:
        raise ValueError(
            f"state simulates {tilde.n} qubits, spec expects {spec.n_qubits}"
        )
    observables = expand_to_observables(spec)
    estimates = []
    for i, obs in enumerate(observables):
        (coeff, string), = obs.terms
        assert coeff == 1.0, "expanded observables are single unit-weight strings"
        estimates.append(sample_expectation(tilde, string, plan, index=i))
    return combine_estimates(spec, estimates), tuple(estimates)
