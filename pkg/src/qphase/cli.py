"""Batch command-line interface.

Subcommands mirror the library entry points: ``hvar`` runs independent
strategies (covariant / adaptive / restricted adaptive), ``eci-hvar`` runs
the two-step confidence-interval scheme, ``ent-hvar`` evaluates the analytic
joint-measurement curve, ``bad-ci`` tabulates bad confidence intervals per
adaptive step count, and ``bounds`` writes the analytic reference curves.

Options may also come from a config file of ``key=value`` lines (keys named
after scenario fields, vectors as comma-separated triples); explicit flags
override file values.  Exit codes: 0 success, 2 configuration error,
3 simulation error, 4 I/O error.
"""

import argparse
import math
import sys

from .errors import ConfigError, DegenerateProbe, EstimationError, InvalidVector
from .estimators import CircularInterval
from .harness import (
    ScenarioConfig,
    count_bad_cis,
    emit_bad_ci_csv,
    emit_csv,
    emit_reference_curves,
    run_scenario,
)

_DEFAULTS = {
    "theta": math.pi,
    "a": "1,0,0",
    "n": "0,0,1",
    "probes": "1,2,4,8,16,32,64,128",
    "boot": 2000,
    "seed": 0,
    "clevel": 0.99,
    "margin": math.pi / 4,
    "g0": 0.0,
    "steps": "0,4,8,16,32,48",
    "workers": 1,
}

# config-file key -> CLI option name
_CONFIG_KEYS = {
    "theta_true": "theta",
    "a": "a",
    "n": "n",
    "strategy": "strategy",
    "probe_counts": "probes",
    "n_boot": "boot",
    "master_seed": "seed",
    "c_level": "clevel",
    "half_width": "margin",
    "g0": "g0",
    "restricted_domain": "domain",
    "aqse_steps": "steps",
    "workers": "workers",
}


def _parse_triple(text):
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 3:
        raise ConfigError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"bad vector {text!r}: {exc}") from exc


def _parse_int_list(text):
    try:
        return tuple(int(p) for p in str(text).split(","))
    except ValueError as exc:
        raise ConfigError(f"bad integer list {text!r}: {exc}") from exc


def _parse_domain(text):
    if text is None:
        return None
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 2:
        raise ConfigError(f"expected 'lo,hi' for the domain, got {text!r}")
    lo, hi = (float(p) for p in parts)
    if not hi > lo:
        raise ConfigError(f"domain needs hi > lo, got {text!r}")
    return CircularInterval(center=0.5 * (lo + hi), half_width=0.5 * (hi - lo))


def _read_config(path):
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            values[_CONFIG_KEYS[key]] = value
    return values


def _resolve(args, name, cast=None):
    """CLI flag if given, else config-file value, else built-in default."""
    value = getattr(args, name.replace("-", "_"), None)
    if value is None:
        value = getattr(args, "_config", {}).get(name)
    if value is None:
        value = _DEFAULTS.get(name)
    if value is not None and cast is not None:
        return cast(value)
    return value


def _add_common(parser, probe=True, seed=True, out=True):
    if probe:
        parser.add_argument("--a", help=f"probe Bloch vector x,y,z (default: {_DEFAULTS['a']})")
        parser.add_argument("--n", help=f"rotation axis x,y,z (default: {_DEFAULTS['n']})")
    if seed:
        parser.add_argument(
            "--seed", type=int, help=f"master RNG seed (default: {_DEFAULTS['seed']})"
        )
    parser.add_argument(
        "--workers",
        type=int,
        help=f"thread chunks for repetitions; results do not depend on it (default: {_DEFAULTS['workers']})",
    )
    parser.add_argument("--config", help="key=value file; explicit flags override it")
    parser.add_argument(
        "--timings", action="store_true", help="record wall seconds in the CSV (off by default: keeps output byte-reproducible)"
    )
    if out:
        parser.add_argument("--out", required=True, help="output CSV path")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qphase",
        description="Monte Carlo comparison of qubit phase-estimation strategies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_hvar = sub.add_parser(
        "hvar", help="Holevo variance of an independent estimation strategy"
    )
    p_hvar.add_argument(
        "--strategy",
        required=True,
        choices=["covariant", "aqse", "restricted-aqse"],
        help="estimation strategy",
    )
    p_hvar.add_argument(
        "--theta", type=float, help=f"true phase in radians (default: {_DEFAULTS['theta']:.6f})"
    )
    p_hvar.add_argument(
        "--probes", help=f"comma-separated probe counts (default: {_DEFAULTS['probes']})"
    )
    p_hvar.add_argument(
        "--boot", type=int, help=f"bootstrap repetitions per point (default: {_DEFAULTS['boot']})"
    )
    p_hvar.add_argument(
        "--g0", type=float, help=f"initial POVM orientation (default: {_DEFAULTS['g0']})"
    )
    p_hvar.add_argument(
        "--domain",
        help="restriction arc lo,hi in radians for restricted-aqse "
        "(default: half-turn arc centered on the true phase)",
    )
    _add_common(p_hvar)

    p_eci = sub.add_parser(
        "eci-hvar", help="Holevo variance of the two-step confidence-interval scheme"
    )
    p_eci.add_argument(
        "--theta", type=float, help=f"true phase in radians (default: {_DEFAULTS['theta']:.6f})"
    )
    p_eci.add_argument(
        "--probes", help=f"comma-separated probe counts (default: {_DEFAULTS['probes']})"
    )
    p_eci.add_argument(
        "--boot", type=int, help=f"bootstrap repetitions per point (default: {_DEFAULTS['boot']})"
    )
    p_eci.add_argument(
        "--clevel", type=float, help=f"confidence level in (0, 1] (default: {_DEFAULTS['clevel']})"
    )
    p_eci.add_argument(
        "--margin", type=float, help=f"target CI half-width in radians (default: {_DEFAULTS['margin']:.6f})"
    )
    p_eci.add_argument(
        "--fixed-center",
        action="store_true",
        help="keep the CI center where stage one put it (default: recenter on the MLE)",
    )
    _add_common(p_eci)

    p_ent = sub.add_parser(
        "ent-hvar", help="analytic Holevo variance of the optimal joint measurement"
    )
    p_ent.add_argument(
        "--probes", help=f"comma-separated probe counts (default: {_DEFAULTS['probes']})"
    )
    _add_common(p_ent, seed=False)

    p_bad = sub.add_parser(
        "bad-ci", help="count bad confidence intervals per adaptive step count"
    )
    p_bad.add_argument(
        "--steps", help=f"comma-separated adaptive step counts (default: {_DEFAULTS['steps']})"
    )
    p_bad.add_argument(
        "--theta", type=float, help=f"true phase in radians (default: {_DEFAULTS['theta']:.6f})"
    )
    p_bad.add_argument(
        "--boot", type=int, help=f"bootstrap repetitions per point (default: {_DEFAULTS['boot']})"
    )
    p_bad.add_argument(
        "--clevel", type=float, help=f"confidence level in (0, 1] (default: {_DEFAULTS['clevel']})"
    )
    p_bad.add_argument(
        "--margin", type=float, help=f"target CI half-width in radians (default: {_DEFAULTS['margin']:.6f})"
    )
    _add_common(p_bad)

    p_bounds = sub.add_parser("bounds", help="analytic reference curves as CSV")
    p_bounds.add_argument(
        "--probes", help=f"comma-separated probe counts (default: {_DEFAULTS['probes']})"
    )
    p_bounds.add_argument(
        "--clevel", type=float, help=f"confidence level in (0, 1] (default: {_DEFAULTS['clevel']})"
    )
    p_bounds.add_argument(
        "--margin", type=float, help=f"target CI half-width in radians (default: {_DEFAULTS['margin']:.6f})"
    )
    _add_common(p_bounds, seed=False)
    return parser


def _scenario_from_args(args, strategy):
    return ScenarioConfig(
        a=_parse_triple(_resolve(args, "a")),
        n=_parse_triple(_resolve(args, "n")),
        theta_true=_resolve(args, "theta", float),
        strategy=strategy,
        probe_counts=_parse_int_list(_resolve(args, "probes")),
        n_boot=_resolve(args, "boot", int),
        c_level=_resolve(args, "clevel", float),
        half_width=_resolve(args, "margin", float),
        restricted_domain=_parse_domain(getattr(args, "domain", None) or getattr(args, "_config", {}).get("domain")),
        g0=_resolve(args, "g0", float),
        master_seed=_resolve(args, "seed", int),
    )


def _run(args) -> None:
    args._config = _read_config(args.config) if getattr(args, "config", None) else {}
    workers = _resolve(args, "workers", int)
    timing = bool(getattr(args, "timings", False))

    if args.command == "hvar":
        strategy = args.strategy.replace("-", "_")
        cfg = _scenario_from_args(args, strategy)
        emit_csv(run_scenario(cfg, workers=workers, record_timing=timing), args.out)
    elif args.command == "eci-hvar":
        strategy = "two_step_fixed_center" if args.fixed_center else "two_step"
        cfg = _scenario_from_args(args, strategy)
        emit_csv(run_scenario(cfg, workers=workers, record_timing=timing), args.out)
    elif args.command == "ent-hvar":
        cfg = ScenarioConfig(
            a=_parse_triple(_resolve(args, "a")),
            n=_parse_triple(_resolve(args, "n")),
            theta_true=0.0,
            strategy="entangled",
            probe_counts=_parse_int_list(_resolve(args, "probes")),
        )
        emit_csv(run_scenario(cfg, record_timing=timing), args.out)
    elif args.command == "bad-ci":
        cfg = _scenario_from_args(args, "two_step")
        steps = _parse_int_list(_resolve(args, "steps"))
        emit_bad_ci_csv(count_bad_cis(cfg, steps, workers=workers), cfg.n_boot, args.out)
    elif args.command == "bounds":
        cfg = _scenario_from_args(args, "two_step")
        emit_reference_curves(cfg, args.out)
    else:  # pragma: no cover - argparse enforces the choices
        raise ConfigError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _run(args)
    except (ConfigError, InvalidVector, DegenerateProbe, ValueError) as exc:
        print(f"qphase: configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"qphase: I/O error: {exc}", file=sys.stderr)
        return 4
    except EstimationError as exc:
        print(f"qphase: simulation error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
