r"""Parameter sweeps: config parsing, grid evaluation, CSV/JSON emission.

A sweep walks the cartesian product of a few declared axes (filling
factor, temperature, hysteresis branch, emitter geometry), evaluates
the requested observable at every grid point, and renders the result
as a flat table. Two scenarios are supported:

* ``percolation-composite``: the half-space is a metal/dielectric
  mixture whose permittivity comes from the self-consistent mixing
  rule at the sweep wavelength; the filling factor ``f`` is an axis.
* ``vo2``: the half-space is a thermochromic film described by a
  hysteresis table; temperature ``T_K`` and the ``branch`` label are
  axes.

Every row also carries the free-space reference ratio, computed with
``eps = 1`` through the same integration path, so the pipeline stays
checkable against the vacuum closed form end to end.

Tables serialize to CSV (17 significant digits, deterministic bytes)
and JSON; both round-trip through the matching readers without loss.
A grid point whose solver or quadrature fails is flagged in the
``status`` column together with the best available estimate; it never
aborts the rest of the sweep.
"""

from __future__ import annotations

import csv
import importlib.metadata
import importlib.resources
import itertools
import json
import math
import os
import platform
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy

from .hysteresis import read_table
from .materials import BruggemanError, bruggeman_effective, load_material
from .quadrature import QuadratureConfig, QuadratureError
from .rates import angular_frequency, collective_rates, decoherence_rates

__all__ = [
    "Axis",
    "SweepConfig",
    "SweepConfigError",
    "SweepTable",
    "load_config",
    "config_to_dict",
    "validate_config",
    "run_sweep",
    "emit_csv",
    "emit_json",
    "read_csv",
    "read_json",
    "resolve_data_source",
    "write_metadata",
]

SCENARIOS = ("percolation-composite", "vo2")
OBSERVABLES = ("decoherence", "collective")
AXIS_NAMES = ("f", "T_K", "x_over_lambda", "z_over_lambda", "branch")
BRANCHES = ("cooling", "heating")

WORKERS_ENV = "CRITRATES_WORKERS"

_CONFIG_KEYS = {"scenario", "observable", "lambda0_um", "axes", "materials",
                "quadrature", "workers", "output"}
_MATERIAL_KEYS = {"host", "inclusion", "depolarization", "table"}
_QUADRATURE_KEYS = {"rel_tol", "abs_tol", "max_subdivisions"}
_AXIS_KEYS = {"name", "values", "linspace"}

# Output column blocks appended after the axis columns.
_DEC_OUTPUTS = ("local", "nonlocal", "ratio", "free_ratio",
                "local_error", "nonlocal_error", "evaluations", "status")
_COLL_OUTPUTS = ("incoherent", "coherent", "ratio", "free_ratio",
                 "incoherent_error", "coherent_error", "evaluations", "status")


class SweepConfigError(ValueError):
    """Raised for a config that violates the sweep schema."""


@dataclass(frozen=True)
class Axis:
    """One swept quantity: its name and the ordered values it takes."""

    name: str
    values: tuple


@dataclass(frozen=True)
class SweepConfig:
    """Full description of one sweep.

    Material entries are file paths or ``builtin:<name>`` tokens
    resolved against the data files shipped with the package. The
    ``percolation-composite`` scenario uses ``host``, ``inclusion``
    and ``depolarization``; the ``vo2`` scenario uses ``table``.
    """

    scenario: str
    observable: str
    axes: tuple
    lambda0_um: float = 450.0
    host: str = "builtin:polystyrene_lorentz"
    inclusion: str = "builtin:gold_drude"
    depolarization: float = 1.0 / 3.0
    table: str = "builtin:vo2_synthetic"
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    workers: int | None = None
    output: str | None = None


@dataclass(frozen=True)
class SweepTable:
    """Flat result table: axis columns first, then the output block."""

    columns: tuple
    rows: tuple
    axes: tuple

    @property
    def flagged(self):
        """Rows whose status is anything but ``ok``."""
        return tuple(row for row in self.rows if row[-1] != "ok")

    def column(self, name):
        """All values of one column as a list."""
        index = self.columns.index(name)
        return [row[index] for row in self.rows]


def _coerce_axis(name, values):
    if name == "branch":
        return tuple(str(v) for v in values)
    return tuple(float(v) for v in values)


def _axis_from_spec(spec):
    if not isinstance(spec, dict):
        raise SweepConfigError(f"axis entries must be objects, got {spec!r}")
    unknown = set(spec) - _AXIS_KEYS
    if unknown:
        raise SweepConfigError(f"unknown axis keys {sorted(unknown)}")
    name = spec.get("name")
    if name not in AXIS_NAMES:
        raise SweepConfigError(
            f"axis name {name!r} not one of {list(AXIS_NAMES)}")
    if ("values" in spec) == ("linspace" in spec):
        raise SweepConfigError(
            f"axis {name!r} needs exactly one of 'values' or 'linspace'")
    if "values" in spec:
        raw = spec["values"]
        if not isinstance(raw, (list, tuple)) or not raw:
            raise SweepConfigError(f"axis {name!r} values must be a "
                                   "non-empty list")
        return Axis(name, _coerce_axis(name, raw))
    lo, hi, num = spec["linspace"]
    num = int(num)
    if num < 1:
        raise SweepConfigError(f"axis {name!r} linspace needs >= 1 points")
    grid = np.linspace(float(lo), float(hi), num)
    return Axis(name, _coerce_axis(name, grid))


def load_config(source):
    """Build a validated :class:`SweepConfig` from JSON or a dict.

    ``source`` is a file path or an already parsed mapping. Unknown
    keys are rejected so configuration typos fail loudly.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as handle:
            data = json.load(handle)
    else:
        data = dict(source)
    if not isinstance(data, dict):
        raise SweepConfigError("config root must be a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise SweepConfigError(f"unknown config keys {sorted(unknown)}")

    materials = data.get("materials", {})
    if not isinstance(materials, dict):
        raise SweepConfigError("'materials' must be an object")
    unknown = set(materials) - _MATERIAL_KEYS
    if unknown:
        raise SweepConfigError(f"unknown material keys {sorted(unknown)}")

    quad = data.get("quadrature", {})
    if not isinstance(quad, dict):
        raise SweepConfigError("'quadrature' must be an object")
    unknown = set(quad) - _QUADRATURE_KEYS
    if unknown:
        raise SweepConfigError(f"unknown quadrature keys {sorted(unknown)}")
    defaults = QuadratureConfig()
    quadrature = QuadratureConfig(
        rel_tol=float(quad.get("rel_tol", defaults.rel_tol)),
        abs_tol=float(quad.get("abs_tol", defaults.abs_tol)),
        max_subdivisions=int(quad.get("max_subdivisions",
                                      defaults.max_subdivisions)))

    axes_spec = data.get("axes")
    if not isinstance(axes_spec, (list, tuple)) or not axes_spec:
        raise SweepConfigError("'axes' must be a non-empty list")
    axes = tuple(_axis_from_spec(spec) for spec in axes_spec)

    workers = data.get("workers")
    config = SweepConfig(
        scenario=data.get("scenario", ""),
        observable=data.get("observable", ""),
        axes=axes,
        lambda0_um=float(data.get("lambda0_um", 450.0)),
        host=str(materials.get("host", SweepConfig.host)),
        inclusion=str(materials.get("inclusion", SweepConfig.inclusion)),
        depolarization=float(materials.get("depolarization",
                                           SweepConfig.depolarization)),
        table=str(materials.get("table", SweepConfig.table)),
        quadrature=quadrature,
        workers=None if workers is None else int(workers),
        output=None if data.get("output") is None else str(data["output"]))
    validate_config(config)
    return config


def config_to_dict(config):
    """Canonical JSON-ready echo of a config, axes fully expanded."""
    return {
        "scenario": config.scenario,
        "observable": config.observable,
        "lambda0_um": config.lambda0_um,
        "axes": [{"name": axis.name, "values": list(axis.values)}
                 for axis in config.axes],
        "materials": {
            "host": config.host,
            "inclusion": config.inclusion,
            "depolarization": config.depolarization,
            "table": config.table,
        },
        "quadrature": {
            "rel_tol": config.quadrature.rel_tol,
            "abs_tol": config.quadrature.abs_tol,
            "max_subdivisions": config.quadrature.max_subdivisions,
        },
        "workers": config.workers,
        "output": config.output,
    }


def validate_config(config):
    """Raise :class:`SweepConfigError` listing every schema violation."""
    problems = []
    if config.scenario not in SCENARIOS:
        problems.append(f"scenario {config.scenario!r} not one of "
                        f"{list(SCENARIOS)}")
    if config.observable not in OBSERVABLES:
        problems.append(f"observable {config.observable!r} not one of "
                        f"{list(OBSERVABLES)}")
    if not config.lambda0_um > 0:
        problems.append("lambda0_um must be positive")
    if not 0 < config.depolarization < 1:
        problems.append("depolarization must lie in (0, 1)")
    if config.workers is not None and config.workers < 1:
        problems.append("workers must be >= 1")
    quad = config.quadrature
    if not (quad.rel_tol > 0 and quad.abs_tol > 0
            and quad.max_subdivisions >= 1):
        problems.append("quadrature tolerances must be positive")

    if not config.axes:
        problems.append("at least one axis is required")
    names = [axis.name for axis in config.axes]
    if len(names) != len(set(names)):
        problems.append("axis names must be unique")
    for axis in config.axes:
        if axis.name not in AXIS_NAMES:
            problems.append(f"axis name {axis.name!r} not one of "
                            f"{list(AXIS_NAMES)}")
            continue
        if not axis.values:
            problems.append(f"axis {axis.name!r} has no values")
        if axis.name == "f" and any(not 0 <= v <= 1 for v in axis.values):
            problems.append("f values must lie in [0, 1]")
        if axis.name == "z_over_lambda" and any(not v > 0
                                                for v in axis.values):
            problems.append("z values must be positive")
        if axis.name == "x_over_lambda" and any(v < 0 for v in axis.values):
            problems.append("x values must be nonnegative")
        if axis.name == "branch" and any(v not in BRANCHES
                                         for v in axis.values):
            problems.append(f"branch values must be among {list(BRANCHES)}")

    # Scenario-specific axis requirements; both observables need the
    # emitter geometry.
    required = {"x_over_lambda", "z_over_lambda"}
    forbidden = set()
    if config.scenario == "percolation-composite":
        required.add("f")
        forbidden = {"T_K", "branch"}
    elif config.scenario == "vo2":
        required |= {"T_K", "branch"}
        forbidden = {"f"}
    missing = required - set(names)
    if missing and config.scenario in SCENARIOS:
        problems.append(f"scenario {config.scenario!r} requires axes "
                        f"{sorted(missing)}")
    extra = forbidden & set(names)
    if extra:
        problems.append(f"scenario {config.scenario!r} does not accept axes "
                        f"{sorted(extra)}")

    if problems:
        raise SweepConfigError("; ".join(problems))
    return config


def resolve_data_source(token):
    """Map a ``builtin:<name>`` token or plain path to a readable path."""
    text = str(token)
    if not text.startswith("builtin:"):
        path = Path(text)
        if not path.is_file():
            raise FileNotFoundError(f"material file not found: {path}")
        return path
    name = text.split(":", 1)[1]
    root = importlib.resources.files("critrates") / "data"
    for suffix in (".json", ".csv"):
        candidate = root / (name + suffix)
        if candidate.is_file():
            # Shipped data lives on the filesystem for every supported
            # install layout, so the traversable is a real path.
            return Path(str(candidate))
    raise SweepConfigError(f"unknown builtin data set {name!r}")


class _Evaluator:
    """Per-grid-point evaluation, picklable for process pools.

    Loads material data eagerly so a missing file fails before any
    worker starts, then maps one axis-value tuple to one table row.
    """

    def __init__(self, config):
        validate_config(config)
        self.observable = config.observable
        self.names = tuple(axis.name for axis in config.axes)
        self.quadrature = config.quadrature
        omega = angular_frequency(config.lambda0_um)
        if config.scenario == "percolation-composite":
            self.eps_host = load_material(
                resolve_data_source(config.host)).permittivity(omega)
            self.eps_inclusion = load_material(
                resolve_data_source(config.inclusion)).permittivity(omega)
            self.depolarization = config.depolarization
            self.table = None
        else:
            self.table = read_table(resolve_data_source(config.table))

    def _permittivity(self, point):
        if self.table is None:
            return bruggeman_effective(self.eps_host, self.eps_inclusion,
                                       point["f"], self.depolarization)
        return self.table.effective_permittivity(point["T_K"],
                                                 point["branch"])

    def __call__(self, values):
        point = dict(zip(self.names, values))
        x = point["x_over_lambda"]
        z = point["z_over_lambda"]
        compute = (decoherence_rates if self.observable == "decoherence"
                   else collective_rates)
        # eps = 1 goes through the identical integration path; its
        # reflection coefficients vanish so the cost is negligible.
        free = compute(1.0, x, z, self.quadrature)
        try:
            eps = self._permittivity(point)
            rates = compute(eps, x, z, self.quadrature)
        except BruggemanError as exc:
            return values + (None,) * 6 + (f"failed: {exc}",)
        except QuadratureError as exc:
            best = exc.result
            estimate = (f"{best.value.real:.9g}{best.value.imag:+.9g}j "
                        f"within {best.error:.3g}")
            return values + (None,) * 6 + (
                f"failed: {exc}; best estimate {estimate}",)
        evaluations = int(rates.evaluations + free.evaluations)
        if self.observable == "decoherence":
            outputs = (float(rates.local_rate), float(rates.nonlocal_rate),
                       float(rates.ratio), float(free.ratio),
                       float(rates.local_error), float(rates.nonlocal_error))
        else:
            outputs = (float(rates.incoherent), float(rates.coherent),
                       float(rates.ratio), float(free.ratio),
                       float(rates.incoherent_error),
                       float(rates.coherent_error))
        return values + outputs + (evaluations, "ok")


def _resolve_workers(explicit, config):
    if explicit is not None:
        count = int(explicit)
    elif config.workers is not None:
        count = config.workers
    elif os.environ.get(WORKERS_ENV):
        try:
            count = int(os.environ[WORKERS_ENV])
        except ValueError:
            raise SweepConfigError(
                f"{WORKERS_ENV} must be an integer, got "
                f"{os.environ[WORKERS_ENV]!r}") from None
    else:
        count = os.cpu_count() or 1
    if count < 1:
        raise SweepConfigError("worker count must be >= 1")
    return count


def run_sweep(config, workers=None, max_rows=None):
    """Evaluate a sweep and return its :class:`SweepTable`.

    Rows follow the cartesian product of the axes in declaration
    order, so the output order is deterministic and independent of
    the worker count. ``workers`` overrides the config; otherwise the
    ``CRITRATES_WORKERS`` environment variable, then the available
    parallelism, decide. ``max_rows`` thins the grid by a uniform
    stride, a convenience for quick interactive runs.

    Grid points whose solver or quadrature fails are flagged in the
    ``status`` column and carry empty numeric cells; they do not
    abort the sweep.
    """
    evaluator = _Evaluator(config)
    points = list(itertools.product(*(axis.values for axis in config.axes)))
    if max_rows is not None and len(points) > max_rows:
        stride = math.ceil(len(points) / max_rows)
        points = points[::stride]
    count = _resolve_workers(workers, config)
    if count > 1 and len(points) > 1:
        chunk = max(1, len(points) // (count * 8))
        with ProcessPoolExecutor(max_workers=count) as pool:
            rows = list(pool.map(evaluator, points, chunksize=chunk))
    else:
        rows = [evaluator(point) for point in points]
    outputs = (_DEC_OUTPUTS if config.observable == "decoherence"
               else _COLL_OUTPUTS)
    return SweepTable(columns=evaluator.names + outputs, rows=tuple(rows),
                      axes=evaluator.names)


def _format_cell(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _parse_cell(name, text):
    if text == "":
        return None
    if name in ("status", "branch"):
        return text
    if name == "evaluations":
        return int(text)
    return float(text)


def emit_csv(table, path):
    """Write a table as CSV with lossless float formatting."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([_format_cell(value) for value in row])


def read_csv(path):
    """Read a table written by :func:`emit_csv` back, losslessly."""
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        columns = tuple(header)
        rows = tuple(
            tuple(_parse_cell(name, text)
                  for name, text in zip(columns, record))
            for record in reader)
    axes = _leading_axes(columns)
    return SweepTable(columns=columns, rows=rows, axes=axes)


def emit_json(table, path):
    """Write a table as JSON, rows as an array of objects."""
    payload = {
        "columns": list(table.columns),
        "rows": [dict(zip(table.columns, row)) for row in table.rows],
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=1)
        handle.write("\n")


def read_json(path):
    """Read a table written by :func:`emit_json` back, losslessly."""
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    columns = tuple(payload["columns"])
    rows = tuple(
        tuple(record[name] for name in columns)
        for record in payload["rows"])
    return SweepTable(columns=columns, rows=rows,
                      axes=_leading_axes(columns))


def _leading_axes(columns):
    axes = []
    for name in columns:
        if name not in AXIS_NAMES:
            break
        axes.append(name)
    return tuple(axes)


def write_metadata(data_path, config, table, wall_time_s):
    """Write the provenance sidecar next to a data file.

    The sidecar (``<data_path>.meta.json``) carries the config echo,
    library versions and the wall time; the data file itself stays
    free of anything run-dependent so identical configs yield
    identical bytes.
    """
    try:
        version = importlib.metadata.version("critrates")
    except importlib.metadata.PackageNotFoundError:
        version = "unknown"
    meta = {
        "config": config_to_dict(config),
        "rows": len(table.rows),
        "flagged_rows": len(table.flagged),
        "wall_time_s": wall_time_s,
        "versions": {
            "critrates": version,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
        },
    }
    sidecar = Path(str(data_path) + ".meta.json")
    with open(sidecar, "w", encoding="utf-8") as handle:
        json.dump(meta, handle, indent=1)
        handle.write("\n")
    return sidecar
