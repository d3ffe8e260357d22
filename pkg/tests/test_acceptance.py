"""Full acceptance gate, one test per shipped guarantee.

Each test prints one pass/fail line under pytest -v. The suite redraws
everything at fixed seeds; expect a few minutes of runtime, dominated by
the convergence experiments in criterion 7.
"""

import itertools
import json
import subprocess
import sys
import time

import numpy as np
from scipy.integrate import quad

from htmix.cli import main as cli_main
from htmix.distributions import (
    METHODS,
    DistSpec,
    analytic_cf,
    analytic_lst,
    sample,
)
from htmix.identities import registry, run_grid
from htmix.limits import run_lemma14, run_thm6, run_thm7, run_thm8
from htmix.special import (
    InversionCdf,
    cdf_by_inversion,
    mittag_leffler,
    ml_density,
    stable_ratio_density,
)
from htmix.streams import RandomStream
from htmix.verification import (
    ecf_distance,
    hill_tail_index,
    ks_one_sample,
    ks_two_sample,
    ks_two_sample_threshold,
    lst_distance,
)

SEED = 1729


def test_criterion_1_identity_suite():
    """All 26 identity cases pass on their canonical grids at the 1% level."""
    t0 = time.time()
    failures = []
    for case in registry():
        reports = run_grid(case, seed=SEED, q=0.01)
        assert len(reports) >= 3
        for report in reports:
            if not report.verdict:
                failures.append((case.id, report.params))
    elapsed = time.time() - t0
    assert not failures, f"identity failures: {failures}"
    assert elapsed < 600, f"identity suite took {elapsed:.0f}s"


def test_criterion_2_laplace_transform_oracles():
    """One-sided stable and (generalized) Mittag-Leffler empirical Laplace
    transforms match their closed forms within 1.5/sqrt(n) at n=10^6."""
    n = 1_000_000
    envelope = 1.5 / np.sqrt(n)
    specs = []
    for delta in (0.3, 0.5, 0.8):
        specs.append(DistSpec("stable", {"alpha": delta, "theta": "one_sided"}))
        specs.append(DistSpec("mittag_leffler", {"delta": delta}))
        for nu in (0.5, 1.0, 2.5):
            specs.append(
                DistSpec("gen_mittag_leffler", {"delta": delta, "nu": nu})
            )
    for sub, spec in enumerate(specs):
        batch = sample(spec, n, RandomStream(SEED, sub))
        dist = lst_distance(batch.values, analytic_lst(spec))
        assert dist < envelope, f"{spec.describe()}: {dist:.5f}"


def test_criterion_3_characteristic_function_oracles():
    """Every applicable sampling route for the generalized Linnik family
    matches its characteristic function within 4/sqrt(n) at n=10^6."""
    n = 1_000_000
    envelope = 4.0 / np.sqrt(n)
    sub = 100
    for alpha, nu in ((0.8, 0.5), (1.5, 2.0), (2.0, 1.0), (2.0, 3.0)):
        for method in METHODS["gen_linnik"]:
            if method == "linnik_z" and nu > 1:
                continue
            spec = DistSpec("gen_linnik", {"alpha": alpha, "nu": nu}, method)
            batch = sample(spec, n, RandomStream(SEED, sub))
            sub += 1
            dist = ecf_distance(batch.values, analytic_cf(spec))
            assert dist < envelope, f"{spec.describe()}: {dist:.5f}"


def test_criterion_4_cross_method_agreement():
    """All sampling routes of each multi-route family agree pairwise."""
    n = 200_000
    points = {
        "mittag_leffler": {"delta": 0.7},
        "linnik": {"alpha": 1.5},
        "gen_linnik": {"alpha": 1.5, "nu": 0.8},
    }
    threshold = ks_two_sample_threshold(n, n, 0.01)
    sub = 200
    for family, params in points.items():
        batches = {}
        for method in METHODS[family]:
            spec = DistSpec(family, params, method)
            batches[method] = sample(spec, n, RandomStream(SEED, sub)).values
            sub += 1
        for m1, m2 in itertools.combinations(batches, 2):
            stat = ks_two_sample(batches[m1], batches[m2])
            assert stat < threshold, f"{family} {m1} vs {m2}: {stat:.5f}"


def test_criterion_5_inversion_consistency():
    """The inversion CDF hits the Laplace closed form and tracks a large
    generalized Linnik sample."""
    assert abs(cdf_by_inversion(2.0, 1.0, 1.0) - 0.8160602794) < 1e-4
    n = 1_000_000
    batch = sample(
        DistSpec("gen_linnik", {"alpha": 1.5, "nu": 2.0}),
        n,
        RandomStream(SEED, 500),
    )
    x = batch.values
    cdf = InversionCdf(1.5, 2.0, max(float(np.abs(x).max()), 2.5))
    stat = ks_one_sample(x, cdf)
    assert stat < 0.005, f"one-sample KS {stat:.5f}"


def test_criterion_6_special_function_accuracy():
    """Function-level anchors: series value, density mass, involution."""
    assert abs(mittag_leffler(0.5, -1.0) - 0.4275835761) < 1e-9
    for delta in (0.3, 0.5, 0.7, 0.9, 1.0):
        mass = 0.0
        for lo, hi in ((0.0, 1.0), (1.0, 30.0), (30.0, np.inf)):
            val, _ = quad(lambda x: ml_density(delta, x), lo, hi, limit=200)
            mass += val
        assert abs(mass - 1.0) < 1e-6, f"delta={delta}: mass {mass!r}"
    for delta in (0.2, 0.5, 0.8):
        for x in (0.1, 0.7, 1.0, 3.5, 20.0):
            lhs = stable_ratio_density(delta, x)
            rhs = stable_ratio_density(delta, 1.0 / x) / x**2
            assert abs(lhs - rhs) < 1e-10


def test_criterion_7_limit_lab():
    """Random-sum experiments converge to their targets, the scaled count
    law converges, and the fixed-index control stays away."""
    t0 = time.time()
    n_grid = (100, 1000, 10000)
    reps = 100_000
    for alpha, nu in ((2.0, 1.0), (1.5, 2.0)):
        for runner in (run_thm6, run_thm7, run_thm8):
            report = runner(alpha, nu, n_grid, reps, SEED)
            assert report.verdict, (
                f"{report.theorem} at ({alpha}, {nu}): "
                f"{[r.ks for r in report.rows]}"
            )
    count_report = run_lemma14(2.0, (0.1, 0.01, 0.001), reps, SEED)
    assert count_report.verdict
    assert count_report.rows[-1].ks < 0.01

    control = run_thm7(1.5, 2.0, n_grid, reps, SEED, control="fixed-index")
    assert control.flags_nonconvergence
    assert control.rows[-1].ks > 0.05
    assert control.verdict, (
        f"control: ks_normal {control.rows[-1].ks_normal:.4f}, "
        f"ks {control.rows[-1].ks:.4f}"
    )
    elapsed = time.time() - t0
    assert elapsed < 1200, f"limit lab took {elapsed:.0f}s"


def test_criterion_8_tail_index():
    """The Hill estimate recovers the Mittag-Leffler tail exponent."""
    batch = sample(
        DistSpec("mittag_leffler", {"delta": 0.5}),
        1_000_000,
        RandomStream(SEED, 600),
    )
    estimate = hill_tail_index(batch.values)
    assert abs(estimate - 0.5) < 0.05, f"hill estimate {estimate:.4f}"


def test_criterion_9_cli_determinism(tmp_path):
    """Repeating any command with identical flags is byte-identical."""
    # Console entry, twice, including the sidecar.
    outs = []
    for tag in ("a", "b"):
        out = tmp_path / f"sample_{tag}.csv"
        res = subprocess.run(
            [
                sys.executable, "-m", "htmix.cli", "sample",
                "--dist", "gen-linnik", "--alpha", "1.5", "--nu", "2",
                "--n", "500", "--seed", "42", "--out", str(out),
            ],
            capture_output=True,
        )
        assert res.returncode == 0, res.stderr
        outs.append(out)
    assert outs[0].read_bytes() == outs[1].read_bytes()
    a_meta = (tmp_path / "sample_a.csv.json").read_bytes()
    b_meta = (tmp_path / "sample_b.csv.json").read_bytes()
    assert a_meta == b_meta
    assert json.loads(a_meta)["seed"] == 42

    # In-process entry for the remaining commands.
    pairs = [
        ["eval", "--fn", "ml-cdf", "--delta", "0.6", "--grid", "0:5:0.25"],
        ["verify", "--identity", "I09", "--delta", "0.5", "--n", "20000",
         "--seed", "7"],
        ["limit", "--theorem", "lemma14", "--nu", "1", "--p-grid",
         "0.01,0.001", "--reps", "20000", "--seed", "3", "--format", "json"],
        ["list"],
    ]
    for i, argv in enumerate(pairs):
        first = tmp_path / f"cmd{i}_a.out"
        second = tmp_path / f"cmd{i}_b.out"
        assert cli_main(argv + ["--out", str(first)]) == 0
        assert cli_main(argv + ["--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
