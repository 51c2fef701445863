"""Bell-operator set for multi-qubit pure states: construction,
settings optimization, entanglement classification, and campaigns."""

from .qcore import (
    ObservableAngles,
    State,
    Tolerances,
    avg_bipartition_entropy,
    expectation,
    observable_from_angles,
    partial_trace,
    pauli,
    tangle,
    tensor,
)
from .states import Bipartition, CanonicalParams, biseparable, canonical_state, ggz, sample_canonical
from .inequalities import (
    InequalitySpec,
    build_operator,
    bound_identity_check,
    classical_bound,
    enumerate_specs,
    quantum_bound,
    spec_from_alias,
)
from .optimizer import OptimizerConfig, ViolationResult, effective_bloch, grid_oracle, seesaw_maximize
from .classify import Classification, classify, classify_state, violation_profile
from .campaign import run_filter_campaign, run_ggz_sweep, run_nqubit_ggz_check

__all__ = [
    "ObservableAngles",
    "State",
    "Tolerances",
    "avg_bipartition_entropy",
    "expectation",
    "observable_from_angles",
    "partial_trace",
    "pauli",
    "tangle",
    "tensor",
    "Bipartition",
    "CanonicalParams",
    "biseparable",
    "canonical_state",
    "ggz",
    "sample_canonical",
    "InequalitySpec",
    "build_operator",
    "bound_identity_check",
    "classical_bound",
    "enumerate_specs",
    "quantum_bound",
    "spec_from_alias",
    "OptimizerConfig",
    "ViolationResult",
    "effective_bloch",
    "grid_oracle",
    "seesaw_maximize",
    "Classification",
    "classify",
    "classify_state",
    "violation_profile",
    "run_filter_campaign",
    "run_ggz_sweep",
    "run_nqubit_ggz_check",
]

__version__ = "0.1.0"
