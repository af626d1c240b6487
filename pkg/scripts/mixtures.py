"""Normalized detector along the GHZ/W, W/|111> and GHZ/|111> mixtures."""

import argparse
from pathlib import Path

from starwitness.sweep import emit_csv, run_mixture_family
from starwitness.witness import QuadratureSpec

FAMILIES = ("GHZ_W", "W_111", "GHZ_111")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    ap.add_argument("--steps", type=int, default=21)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for family in FAMILIES:
        header, rows = run_mixture_family(family, args.steps, QuadratureSpec.replication(1))
        emit_csv(rows, header, args.out / f"mixture_{family}.csv")
        print(f"{family}: I1/I1_GHZ from {rows[0][1]:.4f} (p=0) to {rows[-1][1]:.4f} (p=1)")


if __name__ == "__main__":
    main()
