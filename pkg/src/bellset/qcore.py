"""Dense complex linear algebra for small multi-qubit systems.

Qubit 1 is the leftmost tensor factor everywhere. All functions are pure;
states and angle records are immutable after construction.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class AngleOutOfRange(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class InvalidQubitSet(ValueError):
    pass


class NotNormalized(ValueError):
    pass


@dataclass(frozen=True)
class Tolerances:
    """Central numeric tolerances. Defaults are tight on purpose: the
    underlying identities are exact, so slack would only hide bugs."""

    hermitian: float = 1e-12
    norm: float = 1e-12
    imag: float = 1e-10
    psd: float = 1e-10


TOL = Tolerances()

_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)
_I2 = np.eye(2, dtype=complex)

# order matters: index 0 is identity, 1..3 are x, y, z
PAULI_STACK = np.stack([_I2, _SX, _SY, _SZ])


def identity2() -> np.ndarray:
    return _I2.copy()


def pauli(axis: str) -> np.ndarray:
    """2x2 Pauli matrix for axis in {'x','y','z'}."""
    try:
        return {"x": _SX, "y": _SY, "z": _SZ}[axis].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}")


@dataclass(frozen=True)
class ObservableAngles:
    """Bloch direction (theta, phi) of a dichotomic +-1 observable."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= np.pi):
            raise AngleOutOfRange(f"theta={self.theta} outside [0, pi]")
        if not (0.0 <= self.phi < 2 * np.pi):
            raise AngleOutOfRange(f"phi={self.phi} outside [0, 2*pi)")

    def bloch(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.array(
            [st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)]
        )


def observable_from_angles(a: ObservableAngles) -> np.ndarray:
    """n.sigma for the unit Bloch vector given by (theta, phi)."""
    nx, ny, nz = a.bloch()
    return nx * _SX + ny * _SY + nz * _SZ


def angles_from_bloch(v: Sequence[float]) -> ObservableAngles:
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("zero Bloch vector has no direction")
    v = v / norm
    theta = float(np.arccos(np.clip(v[2], -1.0, 1.0)))
    phi = float(np.arctan2(v[1], v[0])) % (2 * np.pi)
    if phi >= 2 * np.pi:  # tiny negative atan2 results wrap to exactly 2*pi
        phi = 0.0
    return ObservableAngles(theta, phi)


@dataclass(frozen=True)
class State:
    """Normalized pure state of n qubits, amplitudes in computational basis."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1).copy()
        if self.n < 1:
            raise ValueError("need at least one qubit")
        if amps.size != 2**self.n:
            raise DimensionMismatch(
                f"{amps.size} amplitudes for n={self.n} (want {2**self.n})"
            )
        nrm = float(np.sum(np.abs(amps) ** 2))
        if abs(nrm - 1.0) > TOL.norm:
            raise NotNormalized(f"sum |a_i|^2 = {nrm}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
            }
        )

    @staticmethod
    def from_json(text: str) -> "State":
        doc = json.loads(text)
        amps = np.array([complex(re, im) for re, im in doc["amplitudes"]])
        return State(int(doc["n"]), amps)


def tensor(ms: Iterable[np.ndarray]) -> np.ndarray:
    """Kronecker product of the given matrices, in order."""
    ms = list(ms)
    if not ms:
        raise ValueError("empty tensor product")
    out = ms[0]
    for m in ms[1:]:
        out = np.kron(out, m)
    return out


def is_hermitian(m: np.ndarray, tol: float = TOL.hermitian) -> bool:
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def expectation(s: State, m: np.ndarray) -> float:
    """<s|M|s> for Hermitian M; asserts the imaginary part is negligible."""
    if m.shape != (2**s.n, 2**s.n):
        raise DimensionMismatch(f"operator {m.shape} vs state dim {2**s.n}")
    val = complex(np.vdot(s.amplitudes, m @ s.amplitudes))
    if abs(val.imag) > TOL.imag:
        raise ValueError(f"expectation has imaginary part {val.imag}")
    return val.real


def partial_trace(s: State, keep: Iterable[int]) -> np.ndarray:
    """Reduced density matrix on the kept qubits (1-based indices)."""
    keep = sorted(set(keep))
    if not keep or any(q < 1 or q > s.n for q in keep) or len(keep) == s.n:
        raise InvalidQubitSet(f"keep={keep} must be a nonempty proper subset of 1..{s.n}")
    psi = s.amplitudes.reshape((2,) * s.n)
    keep0 = [q - 1 for q in keep]
    drop0 = [q for q in range(s.n) if q not in keep0]
    psi = np.transpose(psi, keep0 + drop0).reshape(2 ** len(keep0), 2 ** len(drop0))
    return psi @ psi.conj().T


def vn_entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy in bits; 0 log 0 := 0."""
    evals = np.linalg.eigvalsh(rho)
    evals = evals[evals > 1e-15]
    return float(-np.sum(evals * np.log2(evals)))


def avg_bipartition_entropy(s: State) -> float:
    """Mean entanglement entropy over the three 1-vs-2 cuts of a 3-qubit state."""
    if s.n != 3:
        raise DimensionMismatch("average bipartition entropy is defined for n=3")
    return float(np.mean([vn_entropy(partial_trace(s, {q})) for q in (1, 2, 3)]))


def tangle(alpha: float, beta: float) -> float:
    """C^2 = 4 a^2 b^2 for a GGHZ state a|0..0> + b|1..1>."""
    if alpha < 0 or beta < 0:
        raise NotNormalized("alpha and beta must be nonnegative")
    if abs(alpha**2 + beta**2 - 1.0) > 1e-10:
        raise NotNormalized(f"alpha^2 + beta^2 = {alpha**2 + beta**2}")
    return 4.0 * alpha**2 * beta**2


def correlation_tensor(s: State) -> np.ndarray:
    """Full Pauli correlation tensor T[a1..an] = <sigma_a1 x ... x sigma_an>,
    with index 0 = identity. Shape (4,)*n, real."""
    n = s.n
    psi = s.amplitudes.reshape((2,) * n)
    rho = np.tensordot(psi, psi.conj(), axes=0)  # ket axes 0..n-1, bra axes n..2n-1
    # contract one qubit at a time: Tr(rho sigma) pairs ket index i with sigma[:, j, i]
    for q in range(n):
        # after q steps: leading q axes of size 4, then ket axes, then bra axes
        ket_ax = q
        bra_ax = n
        rho = np.tensordot(rho, PAULI_STACK, axes=([ket_ax, bra_ax], [2, 1]))
        # move the new Pauli axis (last) into position q
        rho = np.moveaxis(rho, -1, q)
    if np.max(np.abs(rho.imag)) > 1e-10:
        raise ValueError("correlation tensor has nonreal entries")
    return rho.real


def permute_qubits(s: State, perm: Sequence[int]) -> State:
    """Relabel qubits: new qubit i is old qubit perm[i] (1-based)."""
    if sorted(perm) != list(range(1, s.n + 1)):
        raise InvalidQubitSet(f"not a permutation of 1..{s.n}: {perm}")
    psi = s.amplitudes.reshape((2,) * s.n)
    psi = np.transpose(psi, [p - 1 for p in perm]).reshape(-1)
    return State(s.n, psi)
