"""Enlarged-space ("embedding") simulation of antilinear entanglement
monotones: real-space encoding of complex qubit dynamics, few-observable
monotone evaluation, finite-shot sampling, and convex-roof estimation for
mixed states."""

from .convexroof import (
    Decomposition,
    RoofConfig,
    RoofResult,
    convex_roof_estimate,
    decomposition_from_isometry,
    efficiency_check,
    eigendecomposition_start,
    roof_objective,
    werner_state,
    wootters_oracle,
)
from .embedding import (
    EmbeddedHamiltonian,
    EnlargedState,
    conjugation_gate,
    embed_hamiltonian,
    embed_observable,
    embed_state,
    split_hamiltonian,
    unembed_state,
    unembedding_matrix,
)
from .errors import CapacityError, ConfigError, DimensionError, NumericalIntegrityError
from .evolution import (
    EvolutionPlan,
    evolve,
    evolve_enlarged,
    evolve_exact,
    evolve_trotter,
    reality_residual,
)
from .measurement import ShotPlan, combine_estimates, sample_expectation, sample_monotone
from .monotones import (
    GTensor,
    MonotoneSpec,
    MonotoneValue,
    antilinear_expectation_direct,
    antilinear_expectation_embedded,
    concurrence,
    concurrence_spec,
    evaluate_monotone,
    expand_to_observables,
    n_qubit_monotone,
    n_qubit_spec,
    second_order_spec,
    second_order_two_qubit_monotone,
    three_tangle,
    three_tangle_spec,
    tomography_baseline,
)
from .pauli import (
    MixedState,
    PauliString,
    PauliSum,
    PureState,
    apply_pauli_sum,
    dense_matrix,
    expectation,
    y_parity,
)

__version__ = "0.1.0"
