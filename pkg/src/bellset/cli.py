"""Command-line entry point.

Subcommands: classify, sweep, campaign, nqubit, bound-check. All runs are
seeded and deterministic; identical configurations produce byte-identical
outputs. Exit codes: 0 ok, 2 bad input, 3 numerical invariant breach,
4 optimizer non-convergence reported.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import campaign as camp
from .classify import DEFAULT_EQ_TOL, DEFAULT_VIOL_TOL, classify, violation_profile
from .inequalities import (
    ODD,
    QUANTUM_BOUND,
    InequalitySpec,
    build_operator,
    bound_identity_check,
    enumerate_specs,
)
from .optimizer import NonConvergenceWarning, OptimizerConfig
from .qcore import NotNormalized, ObservableAngles, State
from .states import AlphaOutOfRange, Bipartition, CanonicalParams, biseparable, canonical_state, ggz

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_NONCONVERGENCE = 4

FULL_SCALE_STATES = 25_000
FULL_SCALE_CLASS_STATES = 5_000

DEGENERATE_MASKS = (
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


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    seed: int = 42
    states: int = 2000
    class_states: int = 500
    restarts: int = OptimizerConfig.restarts
    points: int = 99
    samples: int = 500
    out: str = "results"
    scale_full: bool = False
    tol_viol: float = DEFAULT_VIOL_TOL
    tol_eq: float = DEFAULT_EQ_TOL

    @classmethod
    def keys(cls) -> set[str]:
        return {f.name for f in fields(cls)}


def _load_config_file(path: str) -> dict:
    values: dict = {}
    known = RunConfig.keys()
    casts = {f.name: f.type for f in fields(RunConfig)}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in known:
            raise InputError(f"{path}:{lineno}: unknown config key {key!r}")
        kind = casts[key]
        if kind == "bool":
            values[key] = val.strip().lower() in ("1", "true", "yes")
        elif kind == "int":
            values[key] = int(val)
        elif kind == "float":
            values[key] = float(val)
        else:
            values[key] = val.strip()
    return values


def _merge_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        for key, val in _load_config_file(args.config).items():
            setattr(cfg, key, val)
    for f in fields(RunConfig):
        cli_val = getattr(args, f.name, None)
        if cli_val is not None:
            setattr(cfg, f.name, cli_val)
    return cfg


def parse_state_descriptor(text: str) -> State:
    """ggz:{n}:{alpha} | bisep:{lone}:{a} | canon:l0:l1:l2:l3:l4:phi | file:{path}"""
    parts = text.split(":")
    try:
        if parts[0] == "ggz" and len(parts) == 3:
            return ggz(int(parts[1]), float(parts[2]))
        if parts[0] == "bisep" and len(parts) == 3:
            return biseparable(Bipartition(int(parts[1])), float(parts[2]))
        if parts[0] == "canon" and len(parts) == 7:
            ls = tuple(float(x) for x in parts[1:6])
            return canonical_state(CanonicalParams(ls, float(parts[6])))
        if parts[0] == "file" and len(parts) >= 2:
            return State.from_json(Path(":".join(parts[1:])).read_text())
    except (ValueError, OSError, KeyError) as exc:
        if isinstance(exc, NotNormalized):
            raise
        raise InputError(f"malformed state descriptor {text!r}: {exc}") from exc
    raise InputError(f"unrecognized state descriptor {text!r}")


def _check_finite(numbers) -> None:
    for x in numbers:
        if not math.isfinite(x):
            raise ArithmeticError(f"non-finite value {x} in output")


def _optimizer_config(cfg: RunConfig) -> OptimizerConfig:
    return OptimizerConfig(restarts=cfg.restarts, rng_seed=cfg.seed)


def cmd_classify(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    try:
        state = parse_state_descriptor(args.state)
    except (NotNormalized,) as exc:
        print(f"error: state not normalized: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NonConvergenceWarning)
        profile = violation_profile(state, _optimizer_config(cfg))
    _check_finite(profile.values())
    verdict = classify(profile, eq_tol=cfg.tol_eq, viol_tol=cfg.tol_viol)
    print(verdict.to_json())
    if any(issubclass(w.category, NonConvergenceWarning) for w in caught):
        return EXIT_NONCONVERGENCE
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    rows = camp.run_ggz_sweep(cfg.points, _optimizer_config(cfg), out_dir=Path(cfg.out))
    for r in rows:
        _check_finite((r.alpha_sq, r.entropy, r.max_violation, r.closed_form))
    worst = max(abs(r.max_violation - r.closed_form) for r in rows)
    print(
        json.dumps(
            {"points": len(rows), "max_closed_form_gap": worst, "out": str(Path(cfg.out) / "sweep.csv")}
        )
    )
    if worst > 1e-4:
        print("error: sweep deviates from the closed form", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_campaign(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    n_states = FULL_SCALE_STATES if cfg.scale_full else cfg.states
    n_class = FULL_SCALE_CLASS_STATES if cfg.scale_full else cfg.class_states
    out_root = Path(cfg.out)
    opt_cfg = OptimizerConfig(
        restarts=min(cfg.restarts, camp.CAMPAIGN_CFG.restarts), rng_seed=0
    )
    summary = {}
    runs = [("all_free", ())] + [
        ("zero_" + "".join(str(i) for i in mask), mask) for mask in DEGENERATE_MASKS
    ]
    for name, mask in runs:
        count = n_states if not mask else n_class
        reports = camp.run_filter_campaign(
            count,
            seed=cfg.seed,
            mask=mask,
            cfg=opt_cfg,
            viol_tol=cfg.tol_viol,
            out_dir=out_root / name,
        )
        summary[name] = {
            "stages": [[r.stage, r.tested, r.survivors] for r in reports],
            "final_survivors": reports[-1].survivors,
        }
    total_left = sum(v["final_survivors"] for v in summary.values())
    print(json.dumps({"classes": summary, "total_final_survivors": total_left}, indent=2))
    return EXIT_OK if total_left == 0 else EXIT_NUMERIC


def cmd_nqubit(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    alphas = [float(x) for x in args.alphas.split(",")]
    rows = camp.run_nqubit_ggz_check(
        args.n, alphas, _optimizer_config(cfg), out_dir=Path(cfg.out)
    )
    for r in rows:
        _check_finite((r.alpha_sq, r.entropy, r.max_violation, r.closed_form))
    worst = max(abs(r.max_violation - r.closed_form) for r in rows)
    print(json.dumps({"n": args.n, "rows": len(rows), "max_closed_form_gap": worst}))
    return EXIT_OK if worst <= 1e-4 else EXIT_NUMERIC


def _random_settings(rng: np.random.Generator, spec: InequalitySpec):
    out = []
    for arity in spec.settings_arity():
        out.append(
            tuple(
                ObservableAngles(
                    float(np.arccos(rng.uniform(-1.0, 1.0))),
                    float(rng.uniform(0.0, 2.0 * np.pi)),
                )
                for _ in range(arity)
            )
        )
    return out


def cmd_bound_check(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    rng = np.random.default_rng(cfg.seed)
    spec1 = InequalitySpec(3, ODD, 1, 3)
    max_dev = 0.0
    settings_pool = [_random_settings(rng, spec1) for _ in range(cfg.samples)]
    for ms in settings_pool:
        max_dev = max(max_dev, bound_identity_check(ms))
    max_radius = 0.0
    for n in (3, 4, 5):
        for spec in enumerate_specs(n):
            rng_n = np.random.default_rng(cfg.seed + n)
            for _ in range(cfg.samples):
                ms = _random_settings(rng_n, spec)
                op = build_operator(spec, ms)
                radius = float(np.max(np.abs(np.linalg.eigvalsh(op))))
                max_radius = max(max_radius, radius)
    _check_finite((max_dev, max_radius))
    print(
        json.dumps(
            {
                "samples": cfg.samples,
                "max_square_identity_deviation": max_dev,
                "max_spectral_radius": max_radius,
                "quantum_bound": QUANTUM_BOUND,
            }
        )
    )
    ok = max_dev < 1e-10 and max_radius <= QUANTUM_BOUND + 1e-9
    return EXIT_OK if ok else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellset",
        description="Three-qubit Bell operator set: optimization, classification, campaigns",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("--config", help="key=value config file; flags override it")
        p.add_argument("--seed", type=int)
        p.add_argument("--restarts", type=int)
        p.add_argument("--out")
        p.add_argument("--tol-viol", dest="tol_viol", type=float)
        p.add_argument("--tol-eq", dest="tol_eq", type=float)

    p = sub.add_parser("classify", help="classify a pure three-qubit state")
    p.add_argument("state", help="ggz:{n}:{alpha} | bisep:{lone}:{a} | canon:... | file:{path}")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="GGHZ entropy/violation sweep over alpha^2")
    p.add_argument("--points", type=int)
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("campaign", help="sequential-filter study over random canonical states")
    p.add_argument("--states", type=int)
    p.add_argument("--class-states", dest="class_states", type=int)
    p.add_argument("--scale-full", dest="scale_full", action="store_const", const=True)
    common(p)
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("nqubit", help="n-qubit GGHZ closed-form check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alphas", default="0.3162,0.5477,0.7071")
    common(p)
    p.set_defaults(func=cmd_nqubit)

    p = sub.add_parser("bound-check", help="square identity and spectral bound check")
    p.add_argument("--samples", type=int)
    common(p)
    p.set_defaults(func=cmd_bound_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AlphaOutOfRange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotNormalized as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
