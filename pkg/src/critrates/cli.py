"""Command line front end: single evaluations, sweeps, config checks.

Subcommands:

* ``permittivity``: evaluate a material model, the composite mixing
  rule, or a hysteresis-table state point.
* ``decoherence`` / ``collective``: one rate evaluation at a given
  geometry, with the medium given directly (``--epsilon``), through
  the composite (``--fill``), or through the hysteresis table
  (``--temperature --branch``).
* ``sweep``: run a preset or a JSON config, write the CSV and its
  provenance sidecar. Exit status is 0 only when no row was flagged.
* ``validate-config``: schema-check a config without running it.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace

from .hysteresis import read_table
from .materials import bruggeman_effective, load_material
from .presets import PRESET_NAMES, preset_config
from .quadrature import QuadratureConfig
from .rates import angular_frequency, collective_rates, decoherence_rates
from .sweep import (SweepConfig, SweepConfigError, config_to_dict, emit_csv,
                    emit_json, load_config, resolve_data_source, run_sweep,
                    write_metadata)

__all__ = ["main"]


def _add_medium_flags(parser):
    group = parser.add_argument_group("medium selection (pick one route)")
    group.add_argument("--epsilon", metavar="C",
                       help="half-space permittivity as a complex literal, "
                            "e.g. '9+0.5j' or '-7e5+2.8e6j'")
    group.add_argument("--fill", type=float, metavar="F",
                       help="composite filling factor in [0, 1]")
    group.add_argument("--temperature", type=float, metavar="T_K",
                       help="hysteresis-table temperature in kelvin")
    group.add_argument("--branch", choices=("cooling", "heating"),
                       help="hysteresis branch, required with --temperature")
    group.add_argument("--host", default=SweepConfig.host,
                       help="host material (path or builtin:<name>)")
    group.add_argument("--inclusion", default=SweepConfig.inclusion,
                       help="inclusion material (path or builtin:<name>)")
    group.add_argument("--depolarization", type=float,
                       default=SweepConfig.depolarization,
                       help="inclusion depolarization factor (default 1/3)")
    group.add_argument("--table", default=SweepConfig.table,
                       help="hysteresis table (path or builtin:<name>)")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="critrates",
        description="Decoherence and collective emission rates for "
                    "emitters near critical composite media.")
    sub = parser.add_subparsers(dest="command", required=True)

    perm = sub.add_parser(
        "permittivity",
        help="evaluate a material, the composite, or a table state point")
    perm.add_argument("--material", metavar="SRC",
                      help="single material model (path or builtin:<name>)")
    _add_medium_flags(perm)
    perm.add_argument("--lambda0-um", type=float, default=450.0,
                      help="vacuum wavelength in micrometers (default 450)")
    perm.add_argument("--json", action="store_true",
                      help="machine-readable output")
    perm.set_defaults(handler=_cmd_permittivity)

    for name, blurb in (("decoherence",
                         "dephasing rates of a delocalized emitter"),
                        ("collective",
                         "collective emission rates of two emitters")):
        cmd = sub.add_parser(name, help=blurb)
        cmd.add_argument("--x", type=float, required=True,
                         help="lateral separation in wavelength units")
        cmd.add_argument("--z", type=float, required=True,
                         help="height above the surface in wavelength units")
        _add_medium_flags(cmd)
        cmd.add_argument("--lambda0-um", type=float, default=450.0,
                         help="vacuum wavelength in micrometers "
                              "(default 450)")
        cmd.add_argument("--rel-tol", type=float,
                         help="quadrature relative tolerance override")
        cmd.add_argument("--json", action="store_true",
                         help="machine-readable output")
        cmd.set_defaults(handler=_cmd_rates, observable=name)

    sweep = sub.add_parser("sweep", help="run a grid sweep to CSV")
    source = sweep.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=PRESET_NAMES,
                        help="built-in figure preset")
    source.add_argument("--config", metavar="FILE",
                        help="sweep config JSON file")
    sweep.add_argument("--out", metavar="PATH",
                       help="output CSV path (overrides the config)")
    sweep.add_argument("--json-out", metavar="PATH",
                       help="also write the table as JSON")
    sweep.add_argument("--workers", type=int,
                       help="worker process count (default: all cores)")
    sweep.add_argument("--rel-tol", type=float,
                       help="quadrature relative tolerance override")
    sweep.add_argument("--lambda0-um", type=float,
                       help="vacuum wavelength override in micrometers")
    sweep.add_argument("--max-rows", type=int,
                       help="thin the grid to at most this many rows")
    sweep.set_defaults(handler=_cmd_sweep)

    check = sub.add_parser("validate-config",
                           help="schema-check a sweep config")
    check.add_argument("config", help="sweep config JSON file")
    check.add_argument("--json", action="store_true",
                       help="echo the resolved config as JSON")
    check.set_defaults(handler=_cmd_validate)

    return parser


def _jsonable(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


def _print_result(values, as_json):
    if as_json:
        print(json.dumps({k: _jsonable(v) for k, v in values.items()},
                         indent=1))
        return
    width = max(len(k) for k in values)
    for key, value in values.items():
        if isinstance(value, complex):
            text = f"{value.real:.10g} {value.imag:+.10g}j"
        elif isinstance(value, float):
            text = f"{value:.10g}"
        else:
            text = str(value)
        print(f"{key:<{width}}  {text}")


def _medium_epsilon(args, omega):
    routes = [name for name in ("epsilon", "fill", "temperature")
              if getattr(args, name) is not None]
    if len(routes) != 1:
        raise SweepConfigError(
            "pick exactly one medium route: --epsilon, --fill, or "
            "--temperature with --branch")
    if args.epsilon is not None:
        return complex(args.epsilon.replace(" ", "")), {"medium": "direct"}
    if args.fill is not None:
        host = load_material(
            resolve_data_source(args.host)).permittivity(omega)
        inclusion = load_material(
            resolve_data_source(args.inclusion)).permittivity(omega)
        eps = bruggeman_effective(host, inclusion, args.fill,
                                  args.depolarization)
        return complex(eps), {"medium": "composite", "fill": args.fill,
                              "depolarization": args.depolarization,
                              "epsilon_host": complex(host),
                              "epsilon_inclusion": complex(inclusion)}
    if args.branch is None:
        raise SweepConfigError("--temperature requires --branch")
    table = read_table(resolve_data_source(args.table))
    eps = table.effective_permittivity(args.temperature, args.branch)
    return complex(eps), {"medium": "hysteresis-table",
                 "temperature_K": args.temperature, "branch": args.branch,
                 "fill": table.fill(args.temperature, args.branch)}


def _cmd_permittivity(args):
    omega = angular_frequency(args.lambda0_um)
    out = {"lambda0_um": args.lambda0_um,
           "angular_frequency_rad_s": omega}
    if args.material is not None:
        eps = load_material(
            resolve_data_source(args.material)).permittivity(omega)
        out["medium"] = "material"
        out["epsilon"] = complex(eps)
    else:
        eps, extra = _medium_epsilon(args, omega)
        out.update(extra)
        out["epsilon"] = eps
    _print_result(out, args.json)
    return 0


def _cmd_rates(args):
    omega = angular_frequency(args.lambda0_um)
    eps, extra = _medium_epsilon(args, omega)
    quadrature = QuadratureConfig()
    if args.rel_tol is not None:
        quadrature = replace(quadrature, rel_tol=args.rel_tol)
    out = {"x_over_lambda": args.x, "z_over_lambda": args.z}
    out.update(extra)
    out["epsilon"] = eps
    if args.observable == "decoherence":
        rates = decoherence_rates(eps, args.x, args.z, quadrature)
        out.update({"local": rates.local_rate,
                    "nonlocal": rates.nonlocal_rate,
                    "ratio": rates.ratio,
                    "local_error": rates.local_error,
                    "nonlocal_error": rates.nonlocal_error})
    else:
        rates = collective_rates(eps, args.x, args.z, quadrature)
        out.update({"incoherent": rates.incoherent,
                    "coherent": rates.coherent,
                    "ratio": rates.ratio,
                    "incoherent_error": rates.incoherent_error,
                    "coherent_error": rates.coherent_error})
    out["evaluations"] = rates.evaluations
    _print_result(out, args.json)
    return 0


def _cmd_sweep(args):
    config = (preset_config(args.preset) if args.preset
              else load_config(args.config))
    if args.rel_tol is not None:
        config = replace(config, quadrature=replace(config.quadrature,
                                                    rel_tol=args.rel_tol))
    if args.lambda0_um is not None:
        config = replace(config, lambda0_um=args.lambda0_um)
    if args.out is not None:
        config = replace(config, output=args.out)
    if config.output is None:
        raise SweepConfigError(
            "no output path: set 'output' in the config or pass --out")
    start = time.perf_counter()
    table = run_sweep(config, workers=args.workers, max_rows=args.max_rows)
    wall = time.perf_counter() - start
    emit_csv(table, config.output)
    write_metadata(config.output, config, table, wall)
    if args.json_out is not None:
        emit_json(table, args.json_out)
    flagged = len(table.flagged)
    print(f"wrote {len(table.rows)} rows to {config.output} "
          f"({flagged} flagged) in {wall:.1f} s")
    return 0 if flagged == 0 else 1


def _cmd_validate(args):
    config = load_config(args.config)
    points = 1
    for axis in config.axes:
        points *= len(axis.values)
    if args.json:
        print(json.dumps(config_to_dict(config), indent=1))
    print(f"ok: {config.scenario} {config.observable} sweep, "
          f"{len(config.axes)} axes, {points} grid points")
    return 0


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (SweepConfigError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
