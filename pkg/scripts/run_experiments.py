#!/usr/bin/env python3
"""Run the full experiment battery and collect results under one directory.

Produces:
  results/sweep/sweep.csv            entropy vs optimized violation for GGHZ
  results/campaign/*/                sequential-filter study per state class
  results/nqubit/nqubit_{n}.csv      n-qubit GGHZ closed-form checks
  results/bound_check.json           square identity and spectral bound audit

Pass --scale-full to run the campaign at its full state counts (slow).
"""
import argparse
import json
import sys
from pathlib import Path

from bellset.cli import main as bellset_main


def run(argv: list[str]) -> None:
    print("+ bellset " + " ".join(argv), file=sys.stderr)
    code = bellset_main(argv)
    if code != 0:
        raise SystemExit(f"step failed with exit code {code}: {argv}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--scale-full", action="store_true")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    seed = str(args.seed)

    run(["sweep", "--points", "99", "--seed", seed, "--out", str(out / "sweep")])

    campaign = ["campaign", "--seed", seed, "--out", str(out / "campaign")]
    if args.scale_full:
        campaign.append("--scale-full")
    run(campaign)

    for n in (4, 5, 6):
        run(
            [
                "nqubit",
                "--n",
                str(n),
                "--alphas",
                "0.31622776601683794,0.5477225575051661,0.7071067811865476",
                "--seed",
                seed,
                "--out",
                str(out / "nqubit"),
            ]
        )

    # bound-check prints its JSON summary to stdout; keep a copy on disk
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = bellset_main(["bound-check", "--samples", "500", "--seed", seed])
    (out / "bound_check.json").write_text(buf.getvalue())
    print(buf.getvalue(), end="")
    if code != 0:
        raise SystemExit(f"bound-check failed with exit code {code}")

    print(json.dumps({"done": True, "out": str(out)}))


if __name__ == "__main__":
    main()
