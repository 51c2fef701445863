"""Bell operator families with one single-measurement party (odd n) or
all-correlation structure (even n), their bounds, and the square identity
behind the 2*sqrt(2) quantum bound.

Each operator is a sum of two tensor-product terms; the pm party carries
(O1 + O2) in the first term and (O1 - O2) in the second. In the odd family
the single party's lone observable sits in the plus term when pm is the
last party and in the minus term otherwise, which reproduces the printed
three-qubit set exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from .qcore import ObservableAngles, identity2, observable_from_angles, tensor

ODD = "odd_family"
EVEN = "even_family"

CLASSICAL_BOUND = 2.0
QUANTUM_BOUND = 2.0 * np.sqrt(2.0)

# n=3 aliases ineq1..ineq6 as (single_party, pm_party)
ALIAS_PAIRS: tuple[tuple[int, int], ...] = (
    (1, 3),
    (2, 3),
    (1, 2),
    (3, 2),
    (3, 1),
    (2, 1),
)


class ArityMismatch(ValueError):
    pass


@dataclass(frozen=True)
class InequalitySpec:
    n: int
    kind: Literal["odd_family", "even_family"]
    single_party: Optional[int]
    pm_party: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least two qubits")
        if not (1 <= self.pm_party <= self.n):
            raise ValueError(f"pm_party {self.pm_party} outside 1..{self.n}")
        if self.kind == ODD:
            if self.single_party is None or not (1 <= self.single_party <= self.n):
                raise ValueError("odd family needs a single_party in 1..n")
            if self.single_party == self.pm_party:
                raise ValueError("single_party must differ from pm_party")
        elif self.kind == EVEN:
            if self.n % 2 != 0:
                raise ValueError("even family requires even n")
            if self.single_party is not None:
                raise ValueError("even family has no single_party")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def single_in_plus(self) -> bool:
        """Whether the single party's observable multiplies the plus term."""
        return self.kind == ODD and self.pm_party == self.n

    @property
    def id(self) -> str:
        if self.kind == ODD:
            return f"odd:n{self.n}:s{self.single_party}:p{self.pm_party}"
        return f"even:n{self.n}:p{self.pm_party}"

    @property
    def alias(self) -> Optional[str]:
        if self.n == 3 and self.kind == ODD:
            pair = (self.single_party, self.pm_party)
            return f"ineq{ALIAS_PAIRS.index(pair) + 1}"
        return None

    def n_observables(self) -> int:
        return 2 * self.n - 1 if self.kind == ODD else 2 * self.n

    def settings_arity(self) -> tuple[int, ...]:
        """Number of observables per party, in party order."""
        return tuple(
            1 if (self.kind == ODD and p == self.single_party) else 2
            for p in range(1, self.n + 1)
        )


def spec_from_alias(alias: str) -> InequalitySpec:
    if alias.startswith("ineq"):
        k = int(alias[4:])
        if 1 <= k <= 6:
            s, p = ALIAS_PAIRS[k - 1]
            return InequalitySpec(3, ODD, s, p)
    raise ValueError(f"unknown alias {alias!r}")


def spec_from_id(text: str) -> InequalitySpec:
    parts = text.split(":")
    if parts[0] == "odd":
        return InequalitySpec(int(parts[1][1:]), ODD, int(parts[2][1:]), int(parts[3][1:]))
    if parts[0] == "even":
        return InequalitySpec(int(parts[1][1:]), EVEN, None, int(parts[2][1:]))
    raise ValueError(f"unknown spec id {text!r}")


def enumerate_specs(n: int) -> list[InequalitySpec]:
    """All family members: n(n-1) ordered (single, pm) pairs for odd n,
    n choices of pm party for even n."""
    if n < 2:
        raise ValueError("need at least two qubits")
    if n % 2 == 0:
        return [InequalitySpec(n, EVEN, None, p) for p in range(1, n + 1)]
    if n == 3:
        return [InequalitySpec(3, ODD, s, p) for s, p in ALIAS_PAIRS]
    return [
        InequalitySpec(n, ODD, s, p)
        for s in range(1, n + 1)
        for p in range(1, n + 1)
        if s != p
    ]


# per-term factor descriptors: ("pm", sign) | ("slot", j) | ("id",)
TermLayout = list[tuple]


def term_layouts(spec: InequalitySpec) -> tuple[TermLayout, TermLayout]:
    """Factor layout of the plus and minus term, per party in order."""
    plus: TermLayout = []
    minus: TermLayout = []
    for p in range(1, spec.n + 1):
        if p == spec.pm_party:
            plus.append(("pm", +1))
            minus.append(("pm", -1))
        elif spec.kind == ODD and p == spec.single_party:
            if spec.single_in_plus:
                plus.append(("slot", 0))
                minus.append(("id",))
            else:
                plus.append(("id",))
                minus.append(("slot", 0))
        else:
            plus.append(("slot", 0))
            minus.append(("slot", 1))
    return plus, minus


Settings = Sequence[Sequence[ObservableAngles]]


def validate_settings(spec: InequalitySpec, ms: Settings) -> None:
    arity = spec.settings_arity()
    if len(ms) != spec.n or tuple(len(obs) for obs in ms) != arity:
        raise ArityMismatch(
            f"settings arity {[len(o) for o in ms]} does not match {arity} for {spec.id}"
        )


def settings_to_matrices(ms: Settings) -> list[list[np.ndarray]]:
    return [[observable_from_angles(a) for a in party] for party in ms]


def _term_matrix(layout: TermLayout, mats: Sequence[Sequence[np.ndarray]]) -> np.ndarray:
    factors = []
    for party, factor in enumerate(layout):
        if factor[0] == "pm":
            factors.append(mats[party][0] + factor[1] * mats[party][1])
        elif factor[0] == "slot":
            factors.append(mats[party][factor[1]])
        else:
            factors.append(identity2())
    return tensor(factors)


def build_terms_matrices(
    spec: InequalitySpec, mats: Sequence[Sequence[np.ndarray]]
) -> tuple[np.ndarray, np.ndarray]:
    plus, minus = term_layouts(spec)
    return _term_matrix(plus, mats), _term_matrix(minus, mats)


def build_operator_matrices(
    spec: InequalitySpec, mats: Sequence[Sequence[np.ndarray]]
) -> np.ndarray:
    p, m = build_terms_matrices(spec, mats)
    return p + m


def build_terms(spec: InequalitySpec, ms: Settings) -> tuple[np.ndarray, np.ndarray]:
    validate_settings(spec, ms)
    return build_terms_matrices(spec, settings_to_matrices(ms))


def build_operator(spec: InequalitySpec, ms: Settings) -> np.ndarray:
    """The Bell operator as an explicit 2^n x 2^n Hermitian matrix."""
    p, m = build_terms(spec, ms)
    return p + m


def classical_bound(spec: InequalitySpec) -> float:
    return CLASSICAL_BOUND


def quantum_bound(spec: InequalitySpec) -> float:
    return QUANTUM_BOUND


def bound_identity_check(ms: Settings) -> float:
    """Max entrywise deviation of B3^2 from 4I + A (x) [B2,B1] (x) [C1,C2]
    for the first inequality (single=1, pm=3). Zero up to roundoff for all
    settings; the commutator ordering follows from expanding the square."""
    spec = InequalitySpec(3, ODD, 1, 3)
    validate_settings(spec, ms)
    mats = settings_to_matrices(ms)
    b3 = build_operator_matrices(spec, mats)
    a1 = mats[0][0]
    b1, b2 = mats[1]
    c1, c2 = mats[2]
    comm_b = b2 @ b1 - b1 @ b2
    comm_c = c1 @ c2 - c2 @ c1
    rhs = 4.0 * np.eye(8) + tensor([a1, comm_b, comm_c])
    return float(np.max(np.abs(b3 @ b3 - rhs)))
