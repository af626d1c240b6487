"""Parameter sweeps that regenerate figure data, plus CSV emission.

Every sweep is a list of independent grid points. Points may be farmed out
to a process pool; results are gathered in row-major order of the axes
(first axis outermost), so serial and parallel runs give identical rows.
All energies are multiples of omega0.
"""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np

from .errors import AnalyticDomainError, ConfigurationError, OutputError
from .linalg import hermitian_eigen
from .negativity import tripartite_negativity
from .qubits import named_state
from .spinstar import (
    SpinStarParams,
    analytic_eigensystem,
    analytic_energies,
    ground_state_label,
    hamiltonian,
    peripheral_state,
)
from .witness import (
    QuadratureSpec,
    SlotPattern,
    c_surface,
    i_n_detector,
    i_n_normalized,
    mixture_family,
)

MODES = {
    "homogeneous_kT_c": ("kT_over_omega0", "c_over_omega0"),
    "inhomogeneous_kT_x": ("kT_over_omega0", "x"),
    "c_profile_lowT": ("c_over_omega0",),
    "x_profile_lowT": ("x",),
    "c_surface": ("theta", "eta"),
    "mixture_family": ("p",),
}
SPIN_OUTPUTS = ("i1", "i4", "i1_normalized", "i4_normalized", "negativity", "ground_label")
MIXTURE_FAMILIES = ("GHZ_W", "W_111", "GHZ_111")
FIXED_KEYS = ("omega0", "c_over_omega0", "x", "kT_over_omega0")


@dataclass(frozen=True)
class Axis:
    name: str
    min: float
    max: float
    steps: int

    def values(self) -> np.ndarray:
        i = np.arange(self.steps)
        return self.min + i * (self.max - self.min) / (self.steps - 1)


@dataclass(frozen=True)
class SweepSpec:
    mode: str
    axes: tuple[Axis, ...]
    fixed: Mapping[str, float] = field(default_factory=dict)
    outputs: tuple[str, ...] = ("i1_normalized", "negativity")
    n_theta: int = 15
    n_eta: int = 15
    rule: str = "midpoint"
    family: str = "GHZ_W"
    state: str = "GHZ"
    pattern: str = "AAABBB"
    phi: float = 0.0
    xi: float = 0.0

    def quad(self, n_longitudes: int) -> QuadratureSpec:
        return QuadratureSpec(n_longitudes, self.n_theta, self.n_eta, self.rule)

    def fixed_value(self, key: str, default: float | None = None) -> float:
        value = self.fixed.get(key, default)
        if value is None:
            raise ConfigurationError(f"fixed.{key} is required for mode {self.mode}")
        return float(value)

    def header(self) -> list[str]:
        return [a.name for a in self.axes] + list(self.outputs)

    def validate(self) -> "SweepSpec":
        if self.mode not in MODES:
            raise ConfigurationError(f"mode: unknown mode {self.mode!r}; choose from {sorted(MODES)}")
        expected = MODES[self.mode]
        names = tuple(a.name for a in self.axes)
        if names != expected:
            raise ConfigurationError(f"axes: mode {self.mode} sweeps {expected}, got {names}")
        for a in self.axes:
            if a.steps < 2:
                raise ConfigurationError(f"axes.{a.name}.steps must be >= 2, got {a.steps}")
            if not a.min < a.max:
                raise ConfigurationError(f"axes.{a.name}: range must be ordered, got [{a.min}, {a.max}]")
            if a.name == "kT_over_omega0" and a.min <= 0:
                raise ConfigurationError(f"axes.{a.name}.min must be > 0, got {a.min}")
            if a.name in ("c_over_omega0",) and a.min <= 0:
                raise ConfigurationError(f"axes.{a.name}.min must be > 0, got {a.min}")
            if a.name == "x" and a.min < 0:
                raise ConfigurationError(f"axes.x.min must be >= 0, got {a.min}")
            if a.name == "p" and (a.min < 0 or a.max > 1):
                raise ConfigurationError(f"axes.p must lie in [0, 1], got [{a.min}, {a.max}]")
        for key in self.fixed:
            if key not in FIXED_KEYS:
                raise ConfigurationError(f"fixed.{key}: unknown parameter; choose from {FIXED_KEYS}")
        if self.fixed.get("kT_over_omega0", 1.0) <= 0:
            raise ConfigurationError("fixed.kT_over_omega0 must be > 0")
        if self.fixed.get("omega0", 1.0) <= 0:
            raise ConfigurationError("fixed.omega0 must be > 0")
        if self.mode == "c_surface":
            if tuple(self.outputs) != ("c",):
                raise ConfigurationError("outputs: c_surface produces the single column 'c'")
            SlotPattern.parse(self.pattern)
            named_state(self.state)
        elif self.mode == "mixture_family":
            if self.family not in MIXTURE_FAMILIES:
                raise ConfigurationError(f"family: unknown family {self.family!r}")
            bad = [o for o in self.outputs if o not in ("i1_normalized", "i4_normalized", "i1", "i4")]
            if bad:
                raise ConfigurationError(f"outputs: {bad} not available for mixture_family")
        else:
            bad = [o for o in self.outputs if o not in SPIN_OUTPUTS]
            if bad or not self.outputs:
                raise ConfigurationError(f"outputs: {bad or 'none'} invalid; choose from {SPIN_OUTPUTS}")
            for key in set(FIXED_KEYS[1:]) - set(MODES[self.mode]):
                if key == "x":
                    continue
                self.fixed_value(key)
        QuadratureSpec(1, self.n_theta, self.n_eta, self.rule)
        return self

    @classmethod
    def from_mapping(cls, cfg: Mapping[str, Any]) -> "SweepSpec":
        """Build from a parsed config file (``axes`` maps name -> [min, max, steps])."""
        cfg = dict(cfg)
        axes_cfg = cfg.pop("axes", {}) or {}
        try:
            axes = tuple(Axis(name, float(v[0]), float(v[1]), int(v[2])) for name, v in axes_cfg.items())
        except (TypeError, ValueError, IndexError) as exc:
            raise ConfigurationError(f"axes: each entry must be [min, max, steps] ({exc})") from None
        if "grid" in cfg:
            cfg["n_theta"], cfg["n_eta"] = parse_grid(cfg.pop("grid"))
        if "outputs" in cfg:
            cfg["outputs"] = tuple(cfg["outputs"])
        cfg["fixed"] = dict(cfg.get("fixed") or {})
        known = set(cls.__dataclass_fields__) - {"axes"}
        unknown = set(cfg) - known
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        if "mode" not in cfg:
            raise ConfigurationError("mode: missing")
        return cls(axes=axes, **cfg)


def parse_grid(text) -> tuple[int, int]:
    try:
        a, b = str(text).lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise ConfigurationError(f"grid must look like 15x15, got {text!r}") from None


def replicate_paper(spec: SweepSpec) -> SweepSpec:
    """Lock the witness quadrature to the 15x15 midpoint rule."""
    return replace(spec, n_theta=15, n_eta=15, rule="midpoint")


def _spin_params(spec: SweepSpec, point: Mapping[str, float]) -> SpinStarParams:
    w = spec.fixed_value("omega0", 1.0)
    merged = {**spec.fixed, **point}
    return SpinStarParams(
        c=float(merged["c_over_omega0"]) * w,
        x=float(merged.get("x", 1.0)),
        kT=float(merged["kT_over_omega0"]) * w,
        omega0=w,
    )


def _evaluate_point(spec: SweepSpec, point: dict[str, float]) -> list:
    values = list(point.values())
    if spec.mode == "mixture_family":
        rho = mixture_family(spec.family, float(np.clip(point["p"], 0.0, 1.0)))
        return values + [_detector(o, rho, spec) for o in spec.outputs]
    p = _spin_params(spec, point)
    rho = peripheral_state(p)
    out = []
    for o in spec.outputs:
        if o == "negativity":
            out.append(tripartite_negativity(rho))
        elif o == "ground_label":
            out.append("/".join(ground_state_label(p)))
        else:
            out.append(_detector(o, rho, spec))
    return values + out


def _detector(name: str, rho, spec: SweepSpec) -> float:
    n = int(name[1])
    quad = spec.quad(n)
    if name.endswith("_normalized"):
        return i_n_normalized(rho, quad)
    return i_n_detector(rho, quad)


def _points(spec: SweepSpec) -> list[dict[str, float]]:
    grids = [a.values() for a in spec.axes]
    names = [a.name for a in spec.axes]
    return [dict(zip(names, map(float, combo))) for combo in itertools.product(*grids)]


def _surface_rows(spec: SweepSpec) -> list[list]:
    thetas, etas = (a.values() for a in spec.axes)
    surf = c_surface(named_state(spec.state).projector(), SlotPattern.parse(spec.pattern),
                     thetas, etas, spec.phi, spec.xi)
    return [[float(t), float(e), float(surf[i, j])]
            for i, t in enumerate(thetas) for j, e in enumerate(etas)]


def run_sweep(spec: SweepSpec, workers: int = 1) -> tuple[list[str], list[list]]:
    """Evaluate every grid point of ``spec``; returns (header, rows)."""
    spec.validate()
    if spec.mode == "c_surface":
        return spec.header(), _surface_rows(spec)
    points = _points(spec)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_point, itertools.repeat(spec), points, chunksize=8))
    else:
        rows = [_evaluate_point(spec, pt) for pt in points]
    return spec.header(), rows


def run_mixture_family(family: str, p_steps: int = 21, quad: QuadratureSpec | None = None,
                       workers: int = 1) -> tuple[list[str], list[list]]:
    """I^(N)/I^(N)_GHZ for N = 1 and 4 along one of the three mixture families."""
    quad = quad or QuadratureSpec.replication(1)
    spec = SweepSpec(
        mode="mixture_family",
        axes=(Axis("p", 0.0, 1.0, p_steps),),
        outputs=("i1_normalized", "i4_normalized"),
        n_theta=quad.n_theta, n_eta=quad.n_eta, rule=quad.rule, family=family,
    )
    return run_sweep(spec, workers)


def _format(value) -> str:
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def emit_csv(rows: Sequence[Sequence], header: Sequence[str], destination) -> None:
    """Write ``rows`` as CSV (17 significant digits, LF endings, header first).

    ``destination`` is a path or an open text stream.
    """
    width = len(header)
    for k, row in enumerate(rows):
        if len(row) != width:
            raise ConfigurationError(f"row {k} has {len(row)} fields, header has {width}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format(v) for v in row])
    if hasattr(destination, "write"):
        destination.write(buf.getvalue())
        return
    path = Path(destination)
    try:
        path.write_text(buf.getvalue(), encoding="utf-8", newline="")
    except OSError as exc:
        raise OutputError(f"cannot write CSV to {path}: {exc}") from exc


def read_csv(source) -> tuple[list[str], list[list]]:
    """Inverse of ``emit_csv``: numeric fields become floats, others stay strings."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise OutputError(f"cannot read CSV from {source}: {exc}") from exc
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    rows = []
    for raw in reader:
        row = []
        for field_ in raw:
            try:
                row.append(float(field_))
            except ValueError:
                row.append(field_)
        rows.append(row)
    return header, rows


SPECTRUM_BASIS = tuple(format(i, "04b") for i in range(16))


def spectrum_dump(p: SpinStarParams) -> tuple[list[str], list[list], float]:
    """Closed-form eigenpairs next to the Jacobi spectrum.

    Returns (header, rows, max |E_analytic - E_numeric|). Rows are sorted by
    energy; the amplitude columns hold the real parts (all closed-form
    vectors are real). Outside the closed-form domain the numerical vectors
    are emitted and the label column reads ``numeric``.
    """
    numeric = hermitian_eigen(hamiltonian(p))
    header = ["label", "energy_analytic", "energy_numeric"] + [f"a_{b}" for b in SPECTRUM_BASIS]
    try:
        system = analytic_eigensystem(p)
    except AnalyticDomainError:
        energies = analytic_energies(p)
        analytic = np.sort(np.array(list(energies.values())))
        rows = [["numeric", float(analytic[k]), float(numeric.values[k])]
                + [float(v) for v in numeric.vectors[:, k].real] for k in range(16)]
        return header, rows, float(np.max(np.abs(analytic - numeric.values)))
    order = np.argsort(system.energies, kind="stable")
    rows = []
    for rank, i in enumerate(order):
        amps = system.states[i].amplitudes.real
        rows.append([system.labels[i], float(system.energies[i]), float(numeric.values[rank])]
                    + [float(v) for v in amps])
    deviation = float(np.max(np.abs(system.energies[order] - numeric.values)))
    return header, rows, deviation
