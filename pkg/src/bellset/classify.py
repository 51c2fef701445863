"""Entanglement-class verdict from the six-inequality violation profile.

No violation -> separable. Exactly two equal violations whose pair shares
a single-measurement party -> biseparable, with that party as the lone
qubit. Anything else -> genuine (conjectured criterion: every genuinely
entangled pure state shows some violation within the set).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Optional

from .qcore import State
from .inequalities import CLASSICAL_BOUND, enumerate_specs
from .optimizer import OptimizerConfig, seesaw_maximize

SEPARABLE = "separable"
BISEPARABLE = "biseparable"
GENUINE = "genuine"

DEFAULT_EQ_TOL = 1e-5
DEFAULT_VIOL_TOL = 1e-7

ALIASES = ("ineq1", "ineq2", "ineq3", "ineq4", "ineq5", "ineq6")

# the two inequalities whose single-measurement party is the lone qubit
# embed a CHSH form on the entangled pair
PAIR_TO_LONE: dict[frozenset, int] = {
    frozenset({"ineq1", "ineq3"}): 1,
    frozenset({"ineq2", "ineq6"}): 2,
    frozenset({"ineq4", "ineq5"}): 3,
}


class AmbiguousProfile(Exception):
    """Exactly two violations, but the pair matches no lone-qubit pattern."""


@dataclass(frozen=True)
class Classification:
    label: str
    lone: Optional[int]
    profile: dict[str, float]
    eq_tol: float
    viol_tol: float

    def to_json(self) -> str:
        doc = {
            "label": self.label
            if self.label != GENUINE
            else "genuine (conjectured criterion, Prop. 4)",
            "profile": {k: self.profile[k] for k in ALIASES},
            "tolerances": {"eq_tol": self.eq_tol, "viol_tol": self.viol_tol},
        }
        if self.lone is not None:
            doc["lone"] = self.lone
        return json.dumps(doc, indent=2)


def violation_profile(
    s: State, cfg: OptimizerConfig = OptimizerConfig()
) -> dict[str, float]:
    """Optimized expectation of each of the six operators for the state."""
    return {spec.alias: seesaw_maximize(s, spec, cfg).value for spec in enumerate_specs(3)}


def classify(
    profile: Mapping[str, float],
    eq_tol: float = DEFAULT_EQ_TOL,
    viol_tol: float = DEFAULT_VIOL_TOL,
) -> Classification:
    prof = {a: float(profile[a]) for a in ALIASES}
    violated = [a for a in ALIASES if prof[a] > CLASSICAL_BOUND + viol_tol]
    if not violated:
        return Classification(SEPARABLE, None, prof, eq_tol, viol_tol)
    if len(violated) == 2 and abs(prof[violated[0]] - prof[violated[1]]) <= eq_tol:
        lone = PAIR_TO_LONE.get(frozenset(violated))
        if lone is None:
            raise AmbiguousProfile(
                f"two equal violations {violated} match no lone-qubit pattern"
            )
        return Classification(BISEPARABLE, lone, prof, eq_tol, viol_tol)
    return Classification(GENUINE, None, prof, eq_tol, viol_tol)


def classify_state(
    s: State,
    cfg: OptimizerConfig = OptimizerConfig(),
    eq_tol: float = DEFAULT_EQ_TOL,
    viol_tol: float = DEFAULT_VIOL_TOL,
) -> Classification:
    return classify(violation_profile(s, cfg), eq_tol, viol_tol)
