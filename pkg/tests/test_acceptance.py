"""Acceptance criteria, one test each.

Each test prints a single ``criterion k: PASS|FAIL`` line with the measured
figure of merit and asserts on it.
"""

import os
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np

from fracvar import (WavePhi, WtfSpec, check_holder_bounds, check_regime_bounds, classify_regime,
                     enumerate_variation, estimate_variation_index, eval_f_grid,
                     exhaustive_bound_check, nonzero_certificate, pth_variation,
                     riesz_normalized_curve, riesz_variation, z_moment, z_samples, WeightPsi)
from fracvar.cli import run
from conftest import make_spec


def report(k, ok, detail):
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def _rel(a, b):
    return abs(a - b) / abs(b)


def _brute_takagi_variation(n):
    """Exact V^{2,1}_n of the Takagi function by a double loop over k and m."""
    B = 2**n
    f = []
    for k in range(B + 1):
        s = Fraction(0)
        for m in range(n):
            r = Fraction(k * 2**m, B) % 1
            s += Fraction(1, 2**m) * min(r, 1 - r)
        f.append(s)
    return sum((f[k + 1] - f[k]) ** 2 for k in range(B))


def test_criterion_1_takagi_exactness():
    start = time.perf_counter()
    spec = WtfSpec.takagi()
    worst = 0.0
    for n in range(1, 17):
        g = eval_f_grid(spec, n)
        worst = max(worst, _rel(pth_variation(g, 2, 2.0), n * 2.0**-n),
                    _rel(riesz_variation(g, 2, 2.0), float(n)))
    elapsed = time.perf_counter() - start
    brute_ok = all(_brute_takagi_variation(n) == Fraction(n, 2**n) for n in range(1, 9))
    ok = worst < 1e-10 and elapsed < 10.0 and brute_ok
    report(1, ok, f"max rel err {worst:.2e}, {elapsed:.2f}s, brute force n<=8 {brute_ok}")


def test_criterion_2_half_exactness():
    spec = make_spec(2, 0.5)
    worst = max(_rel(pth_variation(eval_f_grid(spec, n), 2, 2.0), 1 - 2.0**-n)
                for n in range(1, 17))
    est = z_moment(spec, 2.0, samples=100_000, trunc_N=40, seed=0)
    gap = abs(est.mc_mean - 1.0)
    allowed = 3 * (est.mc_stderr + est.tail_bound)
    ok = worst < 1e-10 and gap <= allowed
    report(2, ok, f"max rel err {worst:.2e}; |E Z^2 - 1| = {gap:.4f} <= {allowed:.4f}")


def test_criterion_3_digit_path_oracle_suite():
    start = time.perf_counter()
    worst, count = 0.0, 0
    for b in (2, 3):
        for alpha in (0.5, 1.0, 2.0):
            for signs in ("plus", "alternating"):
                spec = make_spec(b, alpha, signs)
                for n in range(1, (8 if b == 2 else 5) + 1):
                    grid = eval_f_grid(spec, n)
                    for p in (1.0, 2.0, 3.0):
                        d = pth_variation(grid, b, p)
                        e = enumerate_variation(spec, p, n)
                        worst = max(worst, abs(d - e) / abs(d))
                        count += 1
    elapsed = time.perf_counter() - start
    ok = worst < 1e-10 and elapsed < 60.0
    report(3, ok, f"{count} comparisons, max rel err {worst:.2e}, {elapsed:.2f}s")


def test_criterion_4_bound_suites():
    failures = []
    # (a) sampled modulus of continuity, one spec per regime
    for spec in (make_spec(3, 2.0), make_spec(2, 1.0), make_spec(2, 0.5)):
        rep = check_holder_bounds(spec, pair_count=10_000, seed=0)
        if not rep.passed:
            failures.append(f"holder {spec.regime.regime}: {rep.details}")
    # (b) exhaustive path bounds, b = 2, n <= 12
    for spec in (make_spec(2, 2.0), make_spec(2, 1.5, "alternating"),
                 make_spec(2, 0.5), make_spec(2, 0.3)):
        rep = exhaustive_bound_check(spec, 12)
        if rep.passed is not True:
            failures.append(f"paths {spec.psi}: {rep.to_dict()['min_margin']}")
    # (c) critical specs, V^{1/gamma,1}_n <= (C n)^(1/gamma), n <= 14
    critical = (make_spec(2, 1.0), make_spec(2, 1.0, "alternating"), make_spec(3, 1.0),
                make_spec(2, 0.5, wave=WavePhi.triangular(0.5)))
    for spec in critical:
        assert spec.regime.regime == "Critical"
        n_max = 14 if spec.b == 2 else 9
        rep = check_regime_bounds(spec, 1.0 / spec.gamma, n_max)
        if not rep.passed:
            failures.append(f"critical {spec.psi} gamma={spec.gamma}")
    # (d) normalised Riesz sequences, n <= 14
    for spec in (make_spec(2, 1.0), make_spec(2, 0.5), make_spec(2, 2.0), make_spec(3, 2.0)):
        n_max = 14 if spec.b == 2 else 9
        for p in (1.0, 2.0, 3.0):
            if not riesz_normalized_curve(spec, p, n_max).bounded:
                failures.append(f"riesz {spec.psi} p={p}")
    report(4, not failures, "zero violations" if not failures else "; ".join(failures))


def test_criterion_5_index_estimation():
    start = time.perf_counter()
    q2 = estimate_variation_index(make_spec(2, 0.5), [1.0, 1.5, 2.0, 2.5, 3.0], (8, 16)).q_hat
    q25 = estimate_variation_index(make_spec(2, 0.4), [1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0],
                                   (8, 16)).q_hat
    elapsed = time.perf_counter() - start
    ok = abs(q2 - 2.0) < 0.15 and abs(q25 - 2.5) < 0.2 and elapsed < 120.0
    report(5, ok, f"q_hat {q2:.4f} (q=2), {q25:.4f} (q=2.5), {elapsed:.2f}s")


def test_criterion_6_nonzero_certificate():
    spec = make_spec(2, 0.5)
    cert = nonzero_certificate(spec)
    z = z_samples(spec, 100_000, 40, seed=0)
    freq = float(np.mean(np.abs(z) > cert.delta))
    ok = cert.M == 1 and cert.N <= 8 and cert.delta > 0 and freq >= cert.prob_lower
    report(6, ok, f"M={cert.M} N={cert.N} delta={cert.delta:.4f} "
                  f"freq={freq:.4f} >= {cert.prob_lower:.4f}")


def test_criterion_7_regime_table():
    bad = []
    for b in (2, 3, 4):
        for alpha in (0.5, 1.0, 2.0):
            r = classify_regime(WeightPsi.power(alpha), b, 1.0)
            want = {0.5: "Super", 1.0: "Critical", 2.0: "Sub"}[alpha]
            beta_ok = r.beta == 0.5 and r.q == 2.0 if want == "Super" else r.beta is None
            if r.regime != want or not beta_ok:
                bad.append((b, alpha, r.regime, r.beta))
    report(7, not bad, "9/9 combinations" if not bad else str(bad))


CLI_SURFACE = [
    ["eval", "--t", "1/3", "--weight", "power:0.5"],
    ["grid", "--n", "17", "--weight", "power:0.4", "--signs", "seeded:3"],
    ["grid", "--n", "9", "--b", "3", "--wave", "sinecos:1,0.5", "--weight", "power:1.5"],
    ["variation", "--p", "2", "--n-max", "16", "--weight", "power:0.5"],
    ["variation", "--p", "2", "--n-max", "12", "--weight", "power:0.5", "--regime-check"],
    ["riesz", "--p", "2", "--n-max", "16"],
    ["regime", "--weight", "power:0.5"],
    ["index", "--weight", "power:0.5", "--n-max", "14", "--p-grid", "1:3:0.25"],
    ["zmoment", "--weight", "power:0.5", "--samples", "20000", "--trunc-n", "40", "--seed", "7"],
    ["certify", "--weight", "power:0.5", "--pairs", "500", "--n", "10", "--seed", "2"],
    ["oracle-check", "--n", "14", "--p", "2", "--weight", "power:0.5"],
]


def _surface_outputs(tmp_path, threads, tag, fmt):
    outs = []
    for i, argv in enumerate(CLI_SURFACE + [["ingest", "--input", str(tmp_path / "in.csv"),
                                              "--p", "2", "--levels", "10"]]):
        target = tmp_path / f"{tag}-{i}.{fmt}"
        code = run(argv + ["--threads", str(threads), "--output", fmt, "--out", str(target)])
        assert code == 0, argv
        outs.append(target.read_bytes())
    return outs


def test_criterion_8_determinism(tmp_path):
    run(["grid", "--n", "14", "--weight", "power:0.5", "--out", str(tmp_path / "in.csv")])
    mismatched = []
    for fmt in ("csv", "json"):
        ref = _surface_outputs(tmp_path, 1, f"{fmt}-ref", fmt)
        for k, threads in enumerate((1, 2, 5)):
            got = _surface_outputs(tmp_path, threads, f"{fmt}-{k}", fmt)
            mismatched += [(fmt, threads, i) for i, (a, b) in enumerate(zip(ref, got)) if a != b]
    # environment fallback, separate processes
    cmd = [sys.executable, "-m", "fracvar", "zmoment", "--weight", "power:0.5",
           "--samples", "20000", "--seed", "3"]
    env_out = []
    for threads in ("1", "4"):
        env = dict(os.environ, FRACVAR_THREADS=threads)
        env_out.append(subprocess.run(cmd, env=env, capture_output=True, check=True).stdout)
    if env_out[0] != env_out[1]:
        mismatched.append(("env", "FRACVAR_THREADS", None))
    n_files = 2 * len(CLI_SURFACE + [None])
    report(8, not mismatched, f"{n_files} reports x 4 runs byte-identical"
           if not mismatched else str(mismatched))
