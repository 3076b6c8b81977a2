"""Acceptance suite: the end-to-end numerical targets of the toolkit.

Each test prints one ``[PASS]``/``[FAIL]`` line (run with ``-s`` to see them
all).  Monte Carlo checks use frozen seeds, so outcomes are reproducible.

Four checks encode targets that the implemented estimation dynamics
measurably do not exhibit; they are kept as stated rather than loosened, so
they fail, and the comment above each explains the measured behavior.  All
other checks pass.
"""

import time

import numpy as np
import pytest

from qphase import (
    ScenarioConfig,
    circular_distance,
    count_bad_cis,
    count_local_maxima,
    covariant_density,
    covariant_fisher_closed,
    covariant_log_likelihood,
    covariant_score,
    ent_holevo_variance,
    fisher_by_quadrature,
    holevo_variance,
    make_probe,
    min_sample_size,
    run_scenario,
    sample_covariant,
    two_outcome_log_likelihood,
)
from qphase.estimators import CircularInterval
from qphase.metrics import delta1_bound
from qphase.sampling import RngStream, split

PERP = dict(a=(1.0, 0.0, 0.0), n=(0.0, 0.0, 1.0))  # a.n = 0,   F = 1
TILT = dict(a=(np.sqrt(3) / 2, 0.0, 0.5), n=(0.0, 0.0, 1.0))  # a.n = 0.5, F = 0.75

PROBE_PERP = make_probe(**PERP)
PROBE_TILT = make_probe(**TILT)


def _report(name, ok, detail=""):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


def _holevo_point(strategy, probe_kw, n_probes, seed, n_boot=2000, timed=False):
    cfg = ScenarioConfig(
        **probe_kw,
        theta_true=np.pi,
        strategy=strategy,
        probe_counts=(n_probes,),
        n_boot=n_boot,
        master_seed=seed,
    )
    t0 = time.perf_counter()
    result = run_scenario(cfg, workers=2)[0]
    elapsed = time.perf_counter() - t0
    return (result, elapsed) if timed else result


@pytest.fixture(scope="module")
def restricted_128():
    """Restricted adaptive runs at 128 probes for both probe settings."""
    out = {}
    t0 = time.perf_counter()
    out[1.0] = _holevo_point("restricted_aqse", PERP, 128, seed=1101)
    out[0.75] = _holevo_point("restricted_aqse", TILT, 128, seed=1102)
    out["elapsed"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="module")
def aqse_128():
    return _holevo_point("aqse", PERP, 128, seed=1103)


@pytest.fixture(scope="module")
def two_step_128():
    return _holevo_point("two_step", PERP, 128, seed=1104)


def test_criterion_01_covariant_fisher_closed_form():
    """Quadrature Fisher information matches 1 - sqrt(1 - F) to 1e-7."""
    t0 = time.perf_counter()
    worst = 0.0
    for f in (0.25, 0.5, 0.75, 1.0):
        probe = make_probe((np.sqrt(f), 0, 0), (0, 0, 1))
        value = fisher_by_quadrature(
            lambda that, theta, p=probe: covariant_density(p, theta, that),
            0.7,
            score=lambda that, theta, p=probe: covariant_score(p, theta, that),
        )
        worst = max(worst, abs(value - covariant_fisher_closed(probe)))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-7 and elapsed < 1.0
    _report("criterion 1", ok, f"max |quad - closed| = {worst:.2e}, {elapsed:.2f}s")
    assert worst < 1e-7
    assert elapsed < 1.0


def test_criterion_02_stage_one_sample_sizes():
    """Minimum covariant sample sizes at 99% confidence, margin pi/4."""
    n_perp = min_sample_size(2.58, 1.0, np.pi / 4)
    n_tilt = min_sample_size(2.58, 0.5, np.pi / 4)
    ok = (n_perp, n_tilt) == (11, 22)
    _report("criterion 2", ok, f"sample sizes = {n_perp}, {n_tilt} (want 11, 22)")
    assert (n_perp, n_tilt) == (11, 22)


def test_criterion_03_covariant_single_shot_variance():
    """1e5 covariant draws at full information: Holevo variance ~ 3."""
    t0 = time.perf_counter()
    draws = sample_covariant(split(RngStream(7), 0), PROBE_PERP, 2.0, size=100_000)
    v = holevo_variance(draws)
    # delta-method error of the variance through the moment magnitude
    mu = abs(np.exp(1j * draws).mean())
    arg = np.angle(np.exp(1j * draws).mean())
    sigma_mu = np.std(np.cos(draws - arg)) / np.sqrt(draws.size)
    sigma_v = 2.0 * mu**-3 * sigma_mu
    elapsed = time.perf_counter() - t0
    ok = abs(v - 3.0) < 3 * sigma_v and elapsed < 5.0
    _report("criterion 3", ok, f"V = {v:.4f} (3 +- {3 * sigma_v:.4f}), {elapsed:.2f}s")
    assert abs(v - 3.0) < 3 * sigma_v
    assert elapsed < 5.0


def test_criterion_04a_joint_measurement_single_copy():
    v = ent_holevo_variance(PROBE_PERP, 1)
    _report("criterion 4a", abs(v - 3.0) < 1e-12, f"V(1) = {v!r}")
    assert v == pytest.approx(3.0, abs=1e-12)


def test_criterion_04b_joint_measurement_monotone():
    values = np.array([ent_holevo_variance(PROBE_PERP, n) for n in range(1, 257)])
    ok = bool(np.all(np.diff(values) <= 1e-12))
    _report("criterion 4b", ok, "non-increasing over 1..256")
    assert ok


def test_criterion_04c_joint_measurement_quadratic_scaling():
    # Measured behavior: with binomial spectral weights of a product probe,
    # the variance scales as ~1/n (it saturates the per-copy quantum bound),
    # so n^2 * V grows like n + 1/2 instead of staying non-increasing.
    values = np.array([ent_holevo_variance(PROBE_PERP, n) for n in range(8, 257)])
    scaled = np.arange(8, 257) ** 2 * values
    ok = bool(np.all(np.diff(scaled) <= 1e-9 * scaled[:-1]))
    _report(
        "criterion 4c", ok,
        f"n^2 V at n = 8, 64, 256: {scaled[0]:.2f}, {scaled[56]:.2f}, {scaled[-1]:.2f}"
        " (want non-increasing)",
    )
    assert ok


def test_criterion_05_restricted_adaptive_saturates_bound(restricted_128):
    msgs, ok = [], True
    for f in (1.0, 0.75):
        nfv = restricted_128[f].holevo_variance * 128 * f
        msgs.append(f"F={f}: N F V = {nfv:.3f}")
        ok &= 0.95 <= nfv <= 1.30
    elapsed = restricted_128["elapsed"]
    ok &= elapsed < 120.0
    _report("criterion 5", ok, ", ".join(msgs) + f" (want [0.95, 1.30]), {elapsed:.0f}s")
    for f in (1.0, 0.75):
        assert 0.95 <= restricted_128[f].holevo_variance * 128 * f <= 1.30
    assert elapsed < 120.0


def test_criterion_06_unrestricted_adaptive_penalty(restricted_128, aqse_128):
    # Measured behavior: the adaptive scheme re-maximizes the full joint
    # likelihood globally each step, which tracks the correct mode; the
    # unrestricted variant then matches the restricted one to within a few
    # percent instead of paying the expected non-identifiability penalty.
    v_unres = aqse_128.holevo_variance
    v_res = restricted_128[1.0].holevo_variance
    ratio = v_unres / v_res
    ok = v_unres >= 1.5 * v_res
    _report("criterion 6", ok, f"unrestricted/restricted = {ratio:.3f} (want >= 1.5)")
    assert v_unres >= 1.5 * v_res


@pytest.fixture(scope="module")
def bad_ci_tables():
    tables = {}
    t0 = time.perf_counter()
    for key, probe_kw, seed in (("perp", PERP, 1105), ("tilt", TILT, 1106)):
        cfg = ScenarioConfig(
            **probe_kw, theta_true=np.pi, strategy="two_step", probe_counts=(11,),
            n_boot=2000, master_seed=seed,
        )
        tables[key] = dict(count_bad_cis(cfg, [0, 48], workers=2))
    tables["elapsed"] = time.perf_counter() - t0
    return tables


def test_criterion_07a_bad_interval_rate_perpendicular(bad_ci_tables):
    # Measured behavior: the stage-one maximum-likelihood estimate from 11
    # draws of the full-information covariant density has heavier tails than
    # the asymptotic-normal interval assumes; its miss rate is ~4%, above
    # this band.  (22 draws at F = 0.75 do land inside, see 7b.)
    frac = bad_ci_tables["perp"][0] / 2000
    ok = 0.004 <= frac <= 0.025
    _report("criterion 7a", ok, f"a.n=0 step-0 bad fraction = {frac:.4f} (want [0.004, 0.025])")
    assert 0.004 <= frac <= 0.025


def test_criterion_07b_bad_interval_rate_tilted(bad_ci_tables):
    frac = bad_ci_tables["tilt"][0] / 2000
    ok = 0.004 <= frac <= 0.025
    _report("criterion 7b", ok, f"a.n=0.5 step-0 bad fraction = {frac:.4f} (want [0.004, 0.025])")
    assert 0.004 <= frac <= 0.025


def test_criterion_07c_recentering_recovers_bad_intervals(bad_ci_tables):
    ok = True
    msgs = []
    for key in ("perp", "tilt"):
        c0, c48 = bad_ci_tables[key][0], bad_ci_tables[key][48]
        msgs.append(f"{key}: {c0} -> {c48}")
        ok &= c48 < c0
    elapsed = bad_ci_tables["elapsed"]
    ok &= elapsed < 180.0
    _report("criterion 7c", ok, ", ".join(msgs) + f", {elapsed:.0f}s")
    for key in ("perp", "tilt"):
        assert bad_ci_tables[key][48] < bad_ci_tables[key][0]
    assert elapsed < 180.0


def test_criterion_08a_two_step_approaches_information_bound():
    result = _holevo_point("two_step", PERP, 256, seed=1107)
    bound = delta1_bound(PROBE_PERP, 11, 245)
    ok = result.holevo_variance <= 1.5 * bound
    _report(
        "criterion 8a", ok,
        f"V = {result.holevo_variance:.5f} <= 1.5 x {bound:.5f} = {1.5 * bound:.5f}",
    )
    assert result.holevo_variance <= 1.5 * bound


def test_criterion_08b_fixed_center_divergence():
    # Most bad intervals cost the fixed-center variant only the small
    # overshoot beyond the margin (its restricted MLE settles on the edge
    # nearest the truth); the bulk of the gap comes from the ~1e-3 of
    # stage-one estimates that land near the antipode and stay there.
    update = _holevo_point("two_step", PERP, 512, seed=1108)
    fixed = _holevo_point("two_step_fixed_center", PERP, 512, seed=1109)
    ratio = fixed.holevo_variance / update.holevo_variance
    ok = fixed.holevo_variance >= 3.0 * update.holevo_variance
    _report("criterion 8b", ok, f"fixed/update = {ratio:.2f} (want >= 3)")
    assert fixed.holevo_variance >= 3.0 * update.holevo_variance


def test_criterion_09_strategy_ordering(restricted_128, aqse_128, two_step_128):
    # Measured behavior: the unrestricted adaptive scheme saturates the
    # bound here (see criterion 6), so its variance offers no headroom, and
    # roughly one two-step repetition in several thousand starts from an
    # antipodal stage-one estimate and never recovers, lifting the two-step
    # variance a hair above the 10% slack over the adaptive one.
    v_ent = ent_holevo_variance(PROBE_PERP, 128)
    v_res = restricted_128[1.0].holevo_variance
    v_two = two_step_128.holevo_variance
    v_aqse = aqse_128.holevo_variance
    chain = [("joint", v_ent), ("restricted", v_res), ("two-step", v_two), ("adaptive", v_aqse)]
    ok = all(a[1] <= 1.1 * b[1] for a, b in zip(chain, chain[1:]))
    detail = " <= ".join(f"{name} {v:.5f}" for name, v in chain)
    _report("criterion 9", ok, detail + " (10% one-sided slack)")
    for (_, va), (_, vb) in zip(chain, chain[1:]):
        assert va <= 1.1 * vb


def test_criterion_10_identifiability_diagnostic():
    loglik = two_outcome_log_likelihood(32, 64, 1.5, 0.75)
    n_modes = count_local_maxima(loglik, CircularInterval.full(), 0.5)

    master = RngStream(1110)
    hits = 0
    for i in range(100):
        draws = sample_covariant(split(master, i), PROBE_PERP, 2.0, size=64)
        ll = covariant_log_likelihood(draws, 1.0)
        hits += count_local_maxima(ll, CircularInterval.full(), 0.5) == 1
    ok = n_modes == 2 and hits >= 95
    _report("criterion 10", ok, f"balanced two-outcome modes = {n_modes}, unimodal covariant runs = {hits}/100")
    assert n_modes == 2
    assert hits >= 95


def test_criterion_11_byte_identical_output(tmp_path):
    from qphase.cli import main

    args = [
        "eci-hvar", "--theta", "3.0", "--probes", "12,16", "--boot", "50",
        "--seed", "1111",
    ]
    out1, out2 = tmp_path / "w1.csv", tmp_path / "w2.csv"
    assert main(args + ["--workers", "1", "--out", str(out1)]) == 0
    assert main(args + ["--workers", "3", "--out", str(out2)]) == 0
    same = out1.read_bytes() == out2.read_bytes()
    _report("criterion 11", same, "single- vs multi-worker CSV byte-identical")
    assert same
