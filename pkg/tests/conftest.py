import numpy as np
import pytest

from bellset.qcore import ObservableAngles


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_angles(rng: np.random.Generator) -> ObservableAngles:
    """Direction uniform on the sphere."""
    return ObservableAngles(
        float(np.arccos(rng.uniform(-1.0, 1.0))),
        float(rng.uniform(0.0, 2.0 * np.pi)),
    )


def random_settings(rng: np.random.Generator, spec):
    return [
        tuple(random_angles(rng) for _ in range(arity))
        for arity in spec.settings_arity()
    ]


def random_state(rng: np.random.Generator, n: int):
    from bellset.qcore import State

    amps = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return State(n, amps / np.linalg.norm(amps))


def random_product_state(rng: np.random.Generator, n: int = 3):
    from bellset.qcore import State

    amps = np.array([1.0 + 0j])
    for _ in range(n):
        q = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        amps = np.kron(amps, q / np.linalg.norm(q))
    return State(n, amps)
