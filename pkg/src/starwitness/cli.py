"""Command line front end.

    starwitness sweep    --config sweep.yaml [--out data.csv]
    starwitness mixture  --family GHZ_W [--steps 21]
    starwitness witness  --state W --longitudes 4
    starwitness witness  --c 2 --x 1 --kT 0.01
    starwitness spectrum --c 1 --x 1
    starwitness state    --c 2 --x 1 --kT 0.01 [--full]

Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np
import yaml

from .errors import ConfigurationError, OutputError, StarWitnessError
from .negativity import tripartite_negativity
from .qubits import named_state
from .spinstar import SpinStarParams, ground_state_label, peripheral_state, thermal_state
from .sweep import (
    SweepSpec,
    emit_csv,
    parse_grid,
    replicate_paper,
    run_mixture_family,
    run_sweep,
    spectrum_dump,
)
from .witness import QuadratureSpec, SlotPattern, i_n_detector, i_n_normalized

log = logging.getLogger("starwitness")


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OutputError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise ConfigurationError(f"config {path} is not valid YAML/JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigurationError(f"config {path} must hold a mapping at top level")
    return cfg


def _quad_from_args(args, n_longitudes: int) -> QuadratureSpec:
    if args.replicate_paper:
        return QuadratureSpec.replication(n_longitudes)
    n_theta, n_eta = parse_grid(args.grid) if args.grid else (15, 15)
    return QuadratureSpec(n_longitudes, n_theta, n_eta, args.rule)


def _params_from_args(args) -> SpinStarParams:
    w = args.omega0
    return SpinStarParams(c=args.c * w, x=args.x, kT=args.kT * w, omega0=w)


def _write(header, rows, out) -> None:
    if out in (None, "-"):
        emit_csv(rows, header, sys.stdout)
    else:
        emit_csv(rows, header, out)
        log.info("wrote %d rows to %s", len(rows), out)


def cmd_sweep(args) -> None:
    cfg = _load_config(args.config)
    spec = SweepSpec.from_mapping(cfg)
    if args.grid:
        n_theta, n_eta = parse_grid(args.grid)
        spec = replace(spec, n_theta=n_theta, n_eta=n_eta)
    if args.replicate_paper:
        spec = replicate_paper(spec)
    header, rows = run_sweep(spec, workers=args.workers)
    _write(header, rows, args.out)


def cmd_mixture(args) -> None:
    quad = _quad_from_args(args, 1)
    header, rows = run_mixture_family(args.family, args.steps, quad, workers=args.workers)
    _write(header, rows, args.out)


def cmd_witness(args) -> None:
    quad = _quad_from_args(args, args.longitudes)
    pattern = SlotPattern.parse(args.pattern)
    if args.state:
        rho = named_state(args.state).projector()
        source = {"state": args.state}
    else:
        if args.c is None:
            raise ConfigurationError("witness needs either --state or --c/--x/--kT")
        p = _params_from_args(args)
        rho = peripheral_state(p)
        source = {"c_over_omega0": args.c, "x": args.x, "kT_over_omega0": args.kT,
                  "ground_label": "/".join(ground_state_label(p))}
    result = {
        **source,
        "pattern": str(pattern),
        "n_longitudes": quad.n_longitudes,
        "grid": f"{quad.n_theta}x{quad.n_eta}",
        "rule": quad.rule,
        "I_N": i_n_detector(rho, quad, pattern),
        "I_N_normalized": i_n_normalized(rho, quad, pattern),
        "tripartite_negativity": tripartite_negativity(rho),
    }
    _emit_json(result, args.out)


def cmd_spectrum(args) -> None:
    header, rows, deviation = spectrum_dump(_params_from_args(args))
    _write(header, rows, args.out)
    print(f"max |E_analytic - E_numeric| = {deviation:.3e}", file=sys.stderr)


def cmd_state(args) -> None:
    p = _params_from_args(args)
    rho = thermal_state(p) if args.full else peripheral_state(p)
    m = rho.matrix
    _emit_json({
        "c_over_omega0": args.c, "x": args.x, "kT_over_omega0": args.kT,
        "num_qubits": rho.num_qubits,
        "order": "spin0 spin1 spin2 spin3" if args.full else "spin1 spin2 spin3",
        "real": np.real(m).tolist(),
        "imag": np.imag(m).tolist(),
    }, args.out)


def _emit_json(obj, out) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OutputError(f"cannot write {out}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--grid", help="theta x eta quadrature grid, e.g. 15x15")
    common.add_argument("--rule", default="midpoint", choices=("midpoint", "trapezoid"))
    common.add_argument("--replicate-paper", action="store_true",
                        help="lock the quadrature to 15x15 midpoint (N = 1 and 4)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--c", type=float, help="coupling in units of omega0")
    params.add_argument("--x", type=float, default=1.0, help="inhomogeneity c2/c")
    params.add_argument("--kT", type=float, default=0.01, help="temperature in units of omega0")
    params.add_argument("--omega0", type=float, default=1.0)

    parser = argparse.ArgumentParser(prog="starwitness", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", parents=[common], help="run a configured parameter sweep")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("mixture", parents=[common], help="detector along a mixture family")
    p.add_argument("--family", default="GHZ_W", choices=("GHZ_W", "W_111", "GHZ_111"))
    p.add_argument("--steps", type=int, default=21)
    p.set_defaults(func=cmd_mixture)

    p = sub.add_parser("witness", parents=[common, params], help="single-point detector values")
    p.add_argument("--state", choices=("GHZ", "W", "Wtilde", "sigmaGHZ"))
    p.add_argument("--longitudes", type=int, default=1)
    p.add_argument("--pattern", default="AAABBB")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("spectrum", parents=[common, params], help="closed-form vs numerical spectrum")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("state", parents=[common, params], help="dump the peripheral (or full) thermal state")
    p.add_argument("--full", action="store_true", help="emit the four-spin thermal state")
    p.set_defaults(func=cmd_state)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if getattr(args, "c", None) is None and args.command in ("spectrum", "state"):
        parser.error("--c is required")
    try:
        args.func(args)
    except StarWitnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
