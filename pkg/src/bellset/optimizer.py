"""Maximization of Bell-operator expectations over measurement settings.

The see-saw exploits that the expectation is affine in each observable's
Bloch vector: with every other observable fixed, expectation = c + m . n,
so the optimal update is n = m/|m| in closed form. Restarts run batched.
A coarse grid search over the non-pm observables (with the pm pair solved
in closed form) provides an independent lower-bound oracle.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .qcore import (
    ObservableAngles,
    State,
    angles_from_bloch,
    correlation_tensor,
    expectation,
    pauli,
)
from .inequalities import (
    ODD,
    QUANTUM_BOUND,
    InequalitySpec,
    Settings,
    build_operator_matrices,
    settings_to_matrices,
    term_layouts,
    validate_settings,
)


class ResolutionTooCoarse(ValueError):
    pass


class NonConvergenceWarning(UserWarning):
    pass


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 20
    max_sweeps: int = 500
    convergence_eps: float = 1e-10
    rng_seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be >= 1")
        if self.convergence_eps <= 0:
            raise ValueError("convergence_eps must be positive")


@dataclass(frozen=True)
class ViolationResult:
    value: float
    settings: tuple[tuple[ObservableAngles, ...], ...]
    sweeps_used: int
    restart_index: int
    converged: bool


def _ext_vec(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Extended Pauli coefficient vector (identity, x, y, z) of n.sigma."""
    st = np.sin(theta)
    return np.stack(
        [np.zeros_like(theta), st * np.cos(phi), st * np.sin(phi), np.cos(theta)],
        axis=-1,
    )


_ID_VEC = np.array([1.0, 0.0, 0.0, 0.0])

_LETTERS = "abcdefghij"


def _obs_index(spec: InequalitySpec) -> list[tuple[int, int]]:
    """Flat (party, slot) order of all observables, party-major."""
    out = []
    for party, arity in enumerate(spec.settings_arity()):
        for slot in range(arity):
            out.append((party, slot))
    return out


def _party_slots(spec: InequalitySpec) -> dict[int, dict[int, int]]:
    """party -> slot -> flat observable index."""
    table: dict[int, dict[int, int]] = {}
    for k, (party, slot) in enumerate(_obs_index(spec)):
        table.setdefault(party, {})[slot] = k
    return table


def _term_party_vec(factor, party, slots, V):
    """Batched (R, 4) coefficient vector of one party's factor in a term."""
    if factor[0] == "pm":
        return V[:, slots[party][0]] + factor[1] * V[:, slots[party][1]]
    if factor[0] == "slot":
        return V[:, slots[party][factor[1]]]
    return np.broadcast_to(_ID_VEC, (V.shape[0], 4))


def _objective_batch(T: np.ndarray, spec: InequalitySpec, V: np.ndarray) -> np.ndarray:
    """Expectation per restart; V has shape (R, n_obs, 4)."""
    slots = _party_slots(spec)
    n = spec.n
    total = np.zeros(V.shape[0])
    for layout in term_layouts(spec):
        lhs = [_LETTERS[:n]]
        ops = [T]
        for party, factor in enumerate(layout):
            lhs.append("r" + _LETTERS[party])
            ops.append(_term_party_vec(factor, party, slots, V))
        total += np.einsum(",".join(lhs) + "->r", *ops, optimize=True)
    return total


def _update_decomposition(T, spec, V, party, slot):
    """(c, m) per restart: expectation = c + m . n for the target observable."""
    slots = _party_slots(spec)
    n = spec.n
    R = V.shape[0]
    c = np.zeros(R)
    m = np.zeros((R, 3))
    for layout in term_layouts(spec):
        lhs = [_LETTERS[:n]]
        ops = [T]
        for q, factor in enumerate(layout):
            if q == party:
                continue
            lhs.append("r" + _LETTERS[q])
            ops.append(_term_party_vec(factor, q, slots, V))
        w = np.einsum(",".join(lhs) + "->r" + _LETTERS[party], *ops, optimize=True)
        factor = layout[party]
        if factor[0] == "id":
            c += w[:, 0]
        elif factor[0] == "slot":
            if factor[1] == slot:
                m += w[:, 1:]
            else:
                c += np.einsum("rk,rk->r", w, V[:, slots[party][factor[1]]])
        else:  # pm: vector is V0 + sign * V1
            sign = factor[1]
            if slot == 0:
                c += sign * np.einsum("rk,rk->r", w, V[:, slots[party][1]])
                m += w[:, 1:]
            else:
                c += np.einsum("rk,rk->r", w, V[:, slots[party][0]])
                m += sign * w[:, 1:]
    return c, m


def seesaw_maximize(
    s: State,
    spec: InequalitySpec,
    cfg: OptimizerConfig = OptimizerConfig(),
    early_exit_threshold: float | None = None,
) -> ViolationResult:
    """Best expectation over measurement settings via multi-start see-saw.

    Each restart cycles through the observables, replacing each by its
    closed-form optimum, until the per-sweep improvement drops below
    convergence_eps. Deterministic in (state, spec, cfg). When
    early_exit_threshold is set, the search stops as soon as any restart
    exceeds it (used by campaigns that only need a violation witness).
    """
    if s.n != spec.n:
        raise ValueError(f"state has {s.n} qubits, spec wants {spec.n}")
    T = correlation_tensor(s)
    obs = _obs_index(spec)
    R = cfg.restarts
    rng = np.random.default_rng(cfg.rng_seed)
    theta = np.arccos(rng.uniform(-1.0, 1.0, size=(R, len(obs))))
    phi = rng.uniform(0.0, 2.0 * np.pi, size=(R, len(obs)))
    V = _ext_vec(theta, phi)  # (R, n_obs, 4)

    values = _objective_batch(T, spec, V)
    active = np.ones(R, dtype=bool)
    sweeps_at_convergence = np.full(R, cfg.max_sweeps, dtype=int)
    final_improvement = np.full(R, np.inf)
    sweeps_run = 0
    exited_early = False
    for sweep in range(1, cfg.max_sweeps + 1):
        prev = values.copy()
        for k, (party, slot) in enumerate(obs):
            c, m = _update_decomposition(T, spec, V, party, slot)
            norm = np.linalg.norm(m, axis=1)
            ok = active & (norm > 1e-15)
            newdir = np.zeros((R, 4))
            newdir[ok, 1:] = m[ok] / norm[ok, None]
            V[ok, k] = newdir[ok]
            values[active] = c[active] + np.where(
                norm[active] > 1e-15,
                norm[active],
                np.einsum("rk,rk->r", m[active], V[active, k][:, 1:]),
            )
        sweeps_run = sweep
        improvement = values - prev
        newly_done = active & (improvement < cfg.convergence_eps)
        sweeps_at_convergence[newly_done] = sweep
        final_improvement[active] = improvement[active]
        active &= ~newly_done
        if not active.any():
            break
        if early_exit_threshold is not None and values.max() > early_exit_threshold:
            exited_early = True
            break

    best = int(np.argmax(values))
    converged = not active[best]
    if not exited_early and active[best] and final_improvement[best] > 100 * cfg.convergence_eps:
        warnings.warn(
            f"see-saw restart {best} still improving by {final_improvement[best]:.3e} "
            f"after {cfg.max_sweeps} sweeps",
            NonConvergenceWarning,
        )
    settings = _vectors_to_settings(spec, V[best])
    sweeps_used = int(sweeps_at_convergence[best]) if converged else sweeps_run
    return ViolationResult(
        value=float(values[best]),
        settings=settings,
        sweeps_used=sweeps_used,
        restart_index=best,
        converged=converged,
    )


def _vectors_to_settings(spec, vecs) -> tuple[tuple[ObservableAngles, ...], ...]:
    out = []
    k = 0
    for arity in spec.settings_arity():
        party = []
        for _ in range(arity):
            party.append(angles_from_bloch(vecs[k][1:]))
            k += 1
        out.append(tuple(party))
    return tuple(out)


def effective_bloch(
    s: State, spec: InequalitySpec, ms: Settings, party: int, slot: int
) -> np.ndarray:
    """Linear coefficient vector m of one observable: expectation = c + m . n.

    Computed from explicit matrices by substituting sigma_x, sigma_y, sigma_z
    and the zero matrix for the chosen observable; independent of the
    contraction path used inside the see-saw. party is 1-based.
    """
    validate_settings(spec, ms)
    mats = settings_to_matrices(ms)

    def value(sub: np.ndarray) -> float:
        repl = [list(row) for row in mats]
        repl[party - 1][slot] = sub
        return expectation(s, build_operator_matrices(spec, repl))

    c = value(np.zeros((2, 2), dtype=complex))
    return np.array([value(pauli(ax)) - c for ax in "xyz"])


def constant_offset(
    s: State, spec: InequalitySpec, ms: Settings, party: int, slot: int
) -> float:
    """The c of expectation = c + m . n for the chosen observable."""
    validate_settings(spec, ms)
    mats = [list(row) for row in settings_to_matrices(ms)]
    mats[party - 1][slot] = np.zeros((2, 2), dtype=complex)
    return expectation(s, build_operator_matrices(spec, mats))


def _direction_grid(steps: int) -> np.ndarray:
    thetas = np.linspace(0.0, np.pi, steps)
    phis = np.linspace(0.0, 2.0 * np.pi, steps, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    return _ext_vec(tt.ravel(), pp.ravel())  # (steps^2, 4)


def grid_oracle(s: State, spec: InequalitySpec, resolution: int = 12) -> float:
    """Certified lower bound on the settings maximum, independent of see-saw.

    Enumerates a (theta, phi) grid for every observable except the pm pair,
    which is maximized exactly: with fixed coefficient vectors u (plus term)
    and v (minus term), the optimum over the two pm directions is
    |u + v| + |u - v|.
    """
    if spec.n != 3 or spec.kind != ODD:
        raise ValueError("grid oracle supports the three-qubit odd family only")
    if resolution < 4:
        raise ResolutionTooCoarse(f"need at least 4 steps per angle, got {resolution}")
    if s.n != 3:
        raise ValueError("state must have three qubits")
    T = correlation_tensor(s)
    E = _direction_grid(resolution)
    G = E.shape[0]

    # grid axes: one per non-pm observable, ordered (party, slot)
    axes = [
        (party, slot)
        for party, arity in enumerate(spec.settings_arity())
        for slot in range(arity)
        if party != spec.pm_party - 1
    ]
    axis_letter = {ps: "uvw"[i] for i, ps in enumerate(axes)}

    def term_coeffs(layout) -> tuple[np.ndarray, str]:
        """Pauli coefficient array over this term's grid axes; returns the
        array (grid axes..., 3) and its axis letters."""
        lhs = [_LETTERS[:3]]
        ops = [T]
        out_axes = ""
        for party, factor in enumerate(layout):
            if factor[0] == "pm":
                continue  # stays open
            if factor[0] == "id":
                lhs.append(_LETTERS[party])
                ops.append(_ID_VEC)
            else:
                letter = axis_letter[(party, factor[1])]
                lhs.append(letter + _LETTERS[party])
                ops.append(E)
                out_axes += letter
        pm_letter = _LETTERS[spec.pm_party - 1]
        arr = np.einsum(
            ",".join(lhs) + "->" + out_axes + pm_letter, *ops, optimize=True
        )
        return arr[..., 1:], out_axes

    plus, minus = term_layouts(spec)
    u, u_axes = term_coeffs(plus)
    v, v_axes = term_coeffs(minus)

    all_axes = "".join(l for l in "uvw" if l in u_axes + v_axes)
    uu = np.einsum(f"{u_axes}k,{u_axes}k->{u_axes}", u, u)
    vv = np.einsum(f"{v_axes}k,{v_axes}k->{v_axes}", v, v)
    uv = np.einsum(f"{u_axes}k,{v_axes}k->{all_axes}", u, v)

    def expand(arr, axes):
        shape = tuple(G if l in axes else 1 for l in all_axes)
        return arr.reshape(shape)

    pp = expand(uu, u_axes) + expand(vv, v_axes) + 2.0 * uv
    mm = pp - 4.0 * uv
    np.clip(pp, 0.0, None, out=pp)
    np.clip(mm, 0.0, None, out=mm)
    best = float(np.max(np.sqrt(pp) + np.sqrt(mm)))
    return min(best, QUANTUM_BOUND)  # guard roundoff just above the bound
