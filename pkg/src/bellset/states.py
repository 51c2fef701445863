"""Constructors and samplers for the analyzed state families.

Families: n-qubit generalized GHZ, three-qubit biseparable, and the
five-term canonical form of a general pure three-qubit state together
with its degenerate zero-parameter subclasses.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable

import numpy as np

from .qcore import State

# numeric stand-in for the strict "!= 0" constraints on the canonical
# parameters; sampled states are kept this far from the excluded boundary
MIN_LAMBDA = 1e-4

# the ten admissible zero-masks: the unconstrained class plus nine
# degenerate classes (subsets of {1,2,3,4} that keep l2+l4 and l3+l4 nonzero)
ALLOWED_MASKS: tuple[FrozenSet[int], ...] = tuple(
    frozenset(m)
    for m in (
        (),
        (1,),
        (2,),
        (3,),
        (4,),
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 3),
        (1, 2, 3),
    )
)


class AlphaOutOfRange(ValueError):
    pass


class ConstraintViolation(ValueError):
    pass


class InvalidMask(ValueError):
    pass


@dataclass(frozen=True)
class CanonicalParams:
    """Parameters (l0..l4, phi) of the canonical three-qubit form."""

    lambdas: tuple[float, float, float, float, float]
    phi: float

    def __post_init__(self):
        ls = tuple(float(x) for x in self.lambdas)
        if len(ls) != 5:
            raise ConstraintViolation("need exactly five lambda values")
        if any(x < 0 for x in ls):
            raise ConstraintViolation("lambda values must be nonnegative")
        total = sum(x * x for x in ls)
        if abs(total - 1.0) > 1e-12:
            raise ConstraintViolation(f"sum lambda_i^2 = {total}, want 1")
        if ls[0] < MIN_LAMBDA:
            raise ConstraintViolation("lambda_0 must be nonzero")
        if ls[2] + ls[4] < MIN_LAMBDA:
            raise ConstraintViolation("lambda_2 + lambda_4 must be nonzero")
        if ls[3] + ls[4] < MIN_LAMBDA:
            raise ConstraintViolation("lambda_3 + lambda_4 must be nonzero")
        if not (0.0 <= self.phi <= np.pi):
            raise ConstraintViolation(f"phi={self.phi} outside [0, pi]")
        object.__setattr__(self, "lambdas", ls)


@dataclass(frozen=True)
class Bipartition:
    """Identifies the unentangled qubit of a biseparable three-qubit state."""

    lone: int

    def __post_init__(self):
        if self.lone not in (1, 2, 3):
            raise ValueError(f"lone qubit must be 1, 2 or 3, got {self.lone}")


def ggz(n: int, alpha: float) -> State:
    """Generalized GHZ state alpha|0..0> + sqrt(1-alpha^2)|1..1>."""
    if n < 2:
        raise ValueError("GGHZ needs at least two qubits")
    if not (0.0 <= alpha <= 1.0):
        raise AlphaOutOfRange(f"alpha={alpha} outside [0, 1]")
    beta = np.sqrt(max(0.0, 1.0 - alpha * alpha))
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = alpha
    amps[-1] = beta
    return State(n, amps)


def biseparable(lone: Bipartition | int, a: float) -> State:
    """Product of |0> on the lone qubit with a|00> + sqrt(1-a^2)|11> on the pair."""
    lone_q = lone.lone if isinstance(lone, Bipartition) else Bipartition(lone).lone
    if not (0.0 < a < 1.0):
        raise AlphaOutOfRange(f"a={a} must lie strictly inside (0, 1)")
    b = np.sqrt(1.0 - a * a)
    amps = np.zeros(8, dtype=complex)
    pair = [q for q in (1, 2, 3) if q != lone_q]
    lo, hi = 0, 0
    for q in pair:
        hi |= 1 << (3 - q)
    amps[lo] = a
    amps[hi] = b
    return State(3, amps)


def canonical_state(p: CanonicalParams) -> State:
    """l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>."""
    l0, l1, l2, l3, l4 = p.lambdas
    amps = np.zeros(8, dtype=complex)
    amps[0b000] = l0
    amps[0b100] = l1 * np.exp(1j * p.phi)
    amps[0b101] = l2
    amps[0b110] = l3
    amps[0b111] = l4
    amps /= np.linalg.norm(amps)
    return State(3, amps)


def _check_mask(zero_mask: Iterable[int]) -> FrozenSet[int]:
    mask = frozenset(int(i) for i in zero_mask)
    if not mask <= {1, 2, 3, 4}:
        raise InvalidMask(f"mask {sorted(mask)} may only name lambda_1..lambda_4")
    if {2, 4} <= mask:
        raise InvalidMask("mask would force lambda_2 + lambda_4 = 0")
    if {3, 4} <= mask:
        raise InvalidMask("mask would force lambda_3 + lambda_4 = 0")
    assert mask in ALLOWED_MASKS
    return mask


def sample_canonical(rng_seed: int, zero_mask: Iterable[int] = ()) -> CanonicalParams:
    """Deterministic random canonical parameters.

    Non-masked lambdas are |N(0,1)| draws renormalized to the unit sphere
    (uniform on its positive orthant); phi is uniform on [0, pi]. Draws that
    land within MIN_LAMBDA of an excluded boundary are rejected and redrawn.
    """
    mask = _check_mask(zero_mask)
    rng = np.random.default_rng(rng_seed)
    free = [i for i in range(5) if i not in mask]
    while True:
        ls = np.zeros(5)
        ls[free] = np.abs(rng.standard_normal(len(free)))
        nrm = np.linalg.norm(ls)
        if nrm == 0:
            continue
        ls /= nrm
        if ls[0] < MIN_LAMBDA:
            continue
        if ls[2] + ls[4] < MIN_LAMBDA or ls[3] + ls[4] < MIN_LAMBDA:
            continue
        phi = float(rng.uniform(0.0, np.pi))
        return CanonicalParams(tuple(float(x) for x in ls), phi)
