"""Scenario-driven bootstrap Monte Carlo runner and CSV emission.

A scenario fixes the probe, the true phase, one estimation strategy and a
list of probe counts; the runner repeats each point ``n_boot`` times with a
dedicated RNG stream per repetition (``split(master, N * 2**32 + rep)``), so
output is byte-identical no matter how repetitions are chunked across
workers.  Aggregates use the biased first-moment form of the Holevo variance
(the true phase is known in simulation).
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .bloch import ProbeConfig, make_probe, wrap
from .engine import run_aqse_batch, run_covariant_batch, run_two_step_batch
from .entangled import ent_holevo_variance
from .errors import ConfigError, EstimationError, InsufficientBudget
from .estimators import CircularInterval, two_step_plan
from .measurements import covariant_fisher_closed
from .metrics import delta1_bound, holevo_variance, qcrb, two_step_lower_bound
from .sampling import RngStream, split

STRATEGIES = (
    "covariant",
    "aqse",
    "restricted_aqse",
    "two_step",
    "two_step_fixed_center",
    "entangled",
)

_TWO_32 = 2**32


@dataclass(frozen=True)
class ScenarioConfig:
    """Complete description of one bootstrap experiment."""

    a: tuple
    n: tuple
    theta_true: float
    strategy: str
    probe_counts: tuple
    n_boot: int = 2000
    c_level: float = 0.99
    half_width: float = float(np.pi / 4)
    restricted_domain: CircularInterval | None = None
    g0: float = 0.0
    master_seed: int = 0

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ConfigError(
                f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}"
            )
        counts = tuple(int(c) for c in self.probe_counts)
        if not counts or any(c < 1 for c in counts):
            raise ConfigError(f"probe_counts must be positive integers, got {counts!r}")
        object.__setattr__(self, "probe_counts", tuple(sorted(counts)))
        object.__setattr__(self, "theta_true", float(wrap(self.theta_true)))
        object.__setattr__(self, "g0", float(wrap(self.g0)))
        if self.n_boot < 1:
            raise ConfigError(f"n_boot must be positive, got {self.n_boot!r}")
        if self.restricted_domain is not None and self.strategy != "restricted_aqse":
            raise ConfigError("restricted_domain only applies to restricted_aqse")
        if not 0.0 < self.c_level <= 1.0:
            raise ConfigError(f"c_level must be in (0, 1], got {self.c_level!r}")
        if not 0.0 < self.half_width < np.pi:
            raise ConfigError(f"half_width must be in (0, pi), got {self.half_width!r}")

    def probe(self) -> ProbeConfig:
        try:
            return make_probe(np.asarray(self.a, float), np.asarray(self.n, float))
        except EstimationError as exc:
            raise ConfigError(f"invalid probe: {exc}") from exc

    def domain(self) -> CircularInterval:
        """Restriction arc for restricted_aqse (default: half-turn arc on the phase)."""
        if self.restricted_domain is not None:
            return self.restricted_domain
        return CircularInterval(center=self.theta_true, half_width=np.pi / 2)


@dataclass(frozen=True)
class BootstrapResult:
    """Per-(strategy, probe count) aggregate of a bootstrap."""

    n_probes: int
    strategy: str
    holevo_variance: float
    mu: float
    bad_ci_count: int
    reps: int
    seed: int
    wall_seconds: float = 0.0


def _chunks(total: int, workers: int):
    size = max(1, -(-total // max(1, workers)))
    return [(s, min(s + size, total)) for s in range(0, total, size)]


def _rep_generators(cfg: ScenarioConfig, n_probes: int, start: int, stop: int):
    master = RngStream(seed=cfg.master_seed)
    return [
        split(master, n_probes * _TWO_32 + rep).generator() for rep in range(start, stop)
    ]


def _simulate_chunk(cfg: ScenarioConfig, probe, n_probes, span):
    start, stop = span
    gens = _rep_generators(cfg, n_probes, start, stop)
    strategy = cfg.strategy
    try:
        if strategy == "covariant":
            out = run_covariant_batch(gens, probe, cfg.theta_true, n_probes)
        elif strategy in ("aqse", "restricted_aqse"):
            if strategy == "aqse":
                center, hw = 0.0, float(np.pi)
            else:
                dom = cfg.domain()
                center, hw = dom.center, dom.half_width
            out = run_aqse_batch(
                gens, probe, cfg.theta_true, n_probes, cfg.g0, center, hw
            )
        else:
            n1, hw = two_step_plan(probe, cfg.c_level, cfg.half_width)
            if n_probes < n1:
                raise InsufficientBudget(
                    f"two-step scheme needs at least {n1} probes, got {n_probes}"
                )
            out = run_two_step_batch(
                gens,
                probe,
                cfg.theta_true,
                n_stage1=n1,
                n_steps=n_probes - n1,
                half_width=hw,
                update_centers=(strategy == "two_step"),
            )
        bad = out.bad_ci if out.bad_ci is not None else None
        return out.estimates, bad
    except EstimationError as exc:
        raise type(exc)(
            f"{exc} [N={n_probes}, reps {start}..{stop - 1}, seed={cfg.master_seed}]"
        ) from exc


def _bootstrap_point(cfg: ScenarioConfig, probe, n_probes: int, workers: int):
    """All repetitions of one (strategy, N) point, in repetition order."""
    spans = _chunks(cfg.n_boot, workers)
    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(lambda sp: _simulate_chunk(cfg, probe, n_probes, sp), spans)
            )
    else:
        parts = [_simulate_chunk(cfg, probe, n_probes, sp) for sp in spans]
    estimates = np.concatenate([p[0] for p in parts])
    if parts[0][1] is not None:
        bad = np.concatenate([p[1] for p in parts])
        bad_count = int(np.count_nonzero(bad))
    else:
        bad_count = -1
    return estimates, bad_count


def run_scenario(
    cfg: ScenarioConfig, workers: int = 1, record_timing: bool = False
) -> list[BootstrapResult]:
    """Run the scenario at every probe count and aggregate each point.

    ``workers`` only controls how repetitions are chunked (threads); results
    are independent of it.  Wall-clock seconds are recorded only when
    ``record_timing`` is set, keeping default output reproducible.
    """
    probe = cfg.probe()
    results = []
    for n_probes in cfg.probe_counts:
        t0 = time.perf_counter()
        if cfg.strategy == "entangled":
            variance = ent_holevo_variance(probe, n_probes)
            mu = (variance + 1.0) ** -0.5
            reps, bad_count = 0, -1
        else:
            estimates, bad_count = _bootstrap_point(cfg, probe, n_probes, workers)
            variance = holevo_variance(estimates, cfg.theta_true)
            mu = float(np.cos(estimates - cfg.theta_true).mean())
            reps = cfg.n_boot
        wall = time.perf_counter() - t0 if record_timing else 0.0
        results.append(
            BootstrapResult(
                n_probes=n_probes,
                strategy=cfg.strategy,
                holevo_variance=float(variance),
                mu=float(mu),
                bad_ci_count=bad_count,
                reps=reps,
                seed=cfg.master_seed,
                wall_seconds=wall,
            )
        )
    return results


def count_bad_cis(cfg: ScenarioConfig, aqse_steps, workers: int = 1):
    """Bad-CI counts of the two-step scheme per adaptive step count.

    For each entry ``s`` the scheme runs with ``N = n1 + s`` probes and the
    repetitions whose final CI excludes the true phase are counted.
    """
    if cfg.strategy not in ("two_step", "two_step_fixed_center"):
        raise ConfigError("count_bad_cis requires a two-step strategy")
    probe = cfg.probe()
    n1, _ = two_step_plan(probe, cfg.c_level, cfg.half_width)
    table = []
    for steps in aqse_steps:
        steps = int(steps)
        if steps < 0:
            raise ConfigError(f"adaptive step counts must be >= 0, got {steps!r}")
        point_cfg = replace(cfg, probe_counts=(n1 + steps,))
        _, bad_count = _bootstrap_point(point_cfg, probe, n1 + steps, workers)
        table.append((steps, bad_count))
    return table


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def emit_csv(results, path) -> None:
    """Write bootstrap results as CSV, ordered by (strategy, probe count)."""
    rows = sorted(results, key=lambda r: (r.strategy, r.n_probes))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("n_probes,strategy,holevo_variance,mu,bad_ci_count,reps,seed,wall_seconds\n")
        for r in rows:
            fh.write(
                ",".join(
                    [
                        str(r.n_probes),
                        r.strategy,
                        _fmt(r.holevo_variance),
                        _fmt(r.mu),
                        str(r.bad_ci_count),
                        str(r.reps),
                        str(r.seed),
                        _fmt(r.wall_seconds),
                    ]
                )
                + "\n"
            )


def emit_bad_ci_csv(table, n_boot: int, path) -> None:
    """Write a (steps, bad count) table as CSV."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("aqse_steps,bad_ci_count,reps\n")
        for steps, count in table:
            fh.write(f"{steps},{count},{n_boot}\n")


def emit_reference_curves(cfg: ScenarioConfig, path) -> None:
    """Write the analytic bound curves evaluated at the scenario's counts.

    Columns: the quantum bound, the stage-split information bound, the
    two-step floor (with the bad-CI residual) and the covariant-only bound.
    Probe counts at or below the stage-one size use a pure covariant split.
    """
    probe = cfg.probe()
    n1_star, _ = two_step_plan(probe, cfg.c_level, cfg.half_width)
    f_cov = covariant_fisher_closed(probe)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("n_probes,qcrb,delta1_bound,two_step_bound,covariant_crb\n")
        for n_probes in cfg.probe_counts:
            n1 = min(n1_star, n_probes)
            n2 = n_probes - n1
            fh.write(
                ",".join(
                    [
                        str(n_probes),
                        _fmt(qcrb(probe, n_probes)),
                        _fmt(delta1_bound(probe, n1, n2)),
                        _fmt(
                            two_step_lower_bound(
                                probe, n1, n2, cfg.c_level, cfg.half_width
                            )
                        ),
                        _fmt(1.0 / (n_probes * f_cov)),
                    ]
                )
                + "\n"
            )
