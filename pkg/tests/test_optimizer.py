import numpy as np
import pytest

from bellset.qcore import expectation
from bellset.states import Bipartition, biseparable, ggz, sample_canonical, canonical_state
from bellset.inequalities import (
    build_operator,
    enumerate_specs,
    spec_from_alias,
)
from bellset.optimizer import (
    OptimizerConfig,
    ResolutionTooCoarse,
    constant_offset,
    effective_bloch,
    grid_oracle,
    seesaw_maximize,
)
from conftest import random_angles, random_product_state, random_settings, random_state

SQRT8 = 2 * np.sqrt(2)
FAST = OptimizerConfig(restarts=5, max_sweeps=200)


def test_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(restarts=0)
    with pytest.raises(ValueError):
        OptimizerConfig(max_sweeps=0)
    with pytest.raises(ValueError):
        OptimizerConfig(convergence_eps=0.0)


def test_effective_bloch_linearity(rng):
    # reconstructed value c + m.n must reproduce the true expectation
    for spec in enumerate_specs(3)[:3]:
        s = random_state(rng, 3)
        ms = random_settings(rng, spec)
        for party, arity in enumerate(spec.settings_arity(), start=1):
            for slot in range(arity):
                m = effective_bloch(s, spec, ms, party, slot)
                c = constant_offset(s, spec, ms, party, slot)
                for _ in range(5):
                    a = random_angles(rng)
                    repl = [list(row) for row in ms]
                    repl[party - 1][slot] = a
                    repl = [tuple(row) for row in repl]
                    got = expectation(s, build_operator(spec, repl))
                    want = c + m @ a.bloch()
                    assert got == pytest.approx(want, abs=1e-10)


def test_seesaw_ghz():
    ghz = ggz(3, 1 / np.sqrt(2))
    for spec in enumerate_specs(3):
        res = seesaw_maximize(ghz, spec, FAST)
        assert res.value == pytest.approx(SQRT8, abs=1e-9)
        assert res.converged
        # settings returned actually achieve the reported value
        achieved = expectation(ghz, build_operator(spec, res.settings))
        assert achieved == pytest.approx(res.value, abs=1e-9)


def test_seesaw_product_state():
    zero = ggz(3, 1.0)
    for spec in enumerate_specs(3):
        res = seesaw_maximize(zero, spec, FAST)
        assert res.value == pytest.approx(2.0, abs=1e-9)


@pytest.mark.parametrize("alpha_sq", [0.1, 0.25, 0.5, 0.7])
def test_seesaw_gghz_closed_form(alpha_sq):
    want = 2 * np.sqrt(1 + 4 * alpha_sq * (1 - alpha_sq))
    state = ggz(3, np.sqrt(alpha_sq))
    for spec in enumerate_specs(3):
        res = seesaw_maximize(state, spec, FAST)
        assert res.value == pytest.approx(want, abs=1e-6)
    if alpha_sq == 0.25:
        assert want == pytest.approx(2 * np.sqrt(1.75))
        assert want == pytest.approx(2.6457513, abs=1e-6)


def test_seesaw_biseparable_pattern():
    a = 1 / np.sqrt(2)
    s = biseparable(Bipartition(1), a)
    want = {"ineq1": SQRT8, "ineq3": SQRT8}
    for spec in enumerate_specs(3):
        res = seesaw_maximize(s, spec, FAST)
        assert res.value == pytest.approx(want.get(spec.alias, 2.0), abs=1e-6)


def test_seesaw_deterministic(rng):
    s = random_state(rng, 3)
    spec = spec_from_alias("ineq4")
    a = seesaw_maximize(s, spec, FAST)
    b = seesaw_maximize(s, spec, FAST)
    assert a == b


def test_seesaw_never_exceeds_quantum_bound(rng):
    for _ in range(10):
        s = random_state(rng, 3)
        for spec in enumerate_specs(3)[:2]:
            assert seesaw_maximize(s, spec, FAST).value <= SQRT8 + 1e-9


@pytest.mark.filterwarnings("ignore::bellset.optimizer.NonConvergenceWarning")
def test_seesaw_monotone_in_sweeps(rng):
    # each sweep is a coordinate-ascent step, so more sweeps can only help
    s = random_state(rng, 3)
    spec = spec_from_alias("ineq2")
    prev = -np.inf
    for sweeps in (1, 2, 5, 50):
        val = seesaw_maximize(s, spec, OptimizerConfig(restarts=4, max_sweeps=sweeps)).value
        assert val >= prev - 1e-12
        prev = val


def test_seesaw_n_mismatch():
    with pytest.raises(ValueError):
        seesaw_maximize(ggz(4, 0.5), spec_from_alias("ineq1"))


def test_grid_oracle_examples():
    ghz = ggz(3, 1 / np.sqrt(2))
    val = grid_oracle(ghz, spec_from_alias("ineq4"), resolution=12)
    assert 2.7 <= val <= SQRT8 + 1e-12
    # finer grid only improves the bound
    finer = grid_oracle(ghz, spec_from_alias("ineq4"), resolution=20)
    assert finer >= val - 1e-12


def test_grid_oracle_errors():
    ghz = ggz(3, 1 / np.sqrt(2))
    with pytest.raises(ResolutionTooCoarse):
        grid_oracle(ghz, spec_from_alias("ineq1"), resolution=3)
    from bellset.inequalities import EVEN, InequalitySpec

    with pytest.raises(ValueError):
        grid_oracle(ggz(4, 0.5), InequalitySpec(4, EVEN, None, 1))


@pytest.mark.filterwarnings("ignore::bellset.optimizer.NonConvergenceWarning")
def test_seesaw_dominates_grid_oracle(rng):
    # the oracle is a lower bound, so the see-saw must match or beat it
    for i in range(5):
        s = canonical_state(sample_canonical(500 + i))
        for spec in enumerate_specs(3)[::2]:
            lo = grid_oracle(s, spec, resolution=8)
            hi = seesaw_maximize(s, spec, FAST).value
            assert hi >= lo - 1e-9


def test_early_exit_reports_witness():
    ghz = ggz(3, 1 / np.sqrt(2))
    res = seesaw_maximize(ghz, spec_from_alias("ineq1"), FAST, early_exit_threshold=2.1)
    assert res.value > 2.1
    achieved = expectation(ghz, build_operator(spec_from_alias("ineq1"), res.settings))
    assert achieved == pytest.approx(res.value, abs=1e-9)


def test_product_states_stay_classical(rng):
    for _ in range(10):
        s = random_product_state(rng)
        val = seesaw_maximize(s, spec_from_alias("ineq3"), FAST).value
        assert val <= 2.0 + 1e-7
