"""Run every sweep config in configs/ and write one CSV per config.

    python3 scripts/figure_data.py [--out data] [--workers 4] [configs/x_profile.yaml ...]
"""

import argparse
import logging
from pathlib import Path

import yaml

from starwitness.sweep import SweepSpec, emit_csv, run_sweep

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("configs", nargs="*", type=Path)
    ap.add_argument("--out", type=Path, default=ROOT / "data")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    args.out.mkdir(parents=True, exist_ok=True)
    for path in args.configs or sorted((ROOT / "configs").glob("*.yaml")):
        spec = SweepSpec.from_mapping(yaml.safe_load(path.read_text()))
        header, rows = run_sweep(spec, workers=args.workers)
        target = args.out / f"{path.stem}.csv"
        emit_csv(rows, header, target)
        logging.info("%s: %d rows -> %s", path.name, len(rows), target)


if __name__ == "__main__":
    main()
