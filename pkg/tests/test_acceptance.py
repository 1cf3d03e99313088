"""Acceptance gate: one test per criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.
"""

import json
import math
import os
import subprocess
import sys
import time

import numpy as np

from genfrac.functions import (
    Const,
    ExpPoly,
    Monomial,
    SinPos,
    TestFunction,
    generate_ratio_pair,
)
from genfrac.inequalities import (
    CheckConfig,
    SuiteConfig,
    check_scalar_lemmas,
    check_t8,
    check_t9,
    check_t14,
    check_t15,
    run_suite,
)
from genfrac.operator_core import (
    ClassicalKind,
    OperatorParams,
    evaluate,
    evaluate_classical,
)
from genfrac.oracle import sweep

NEG_INF = float("-inf")


def _verdict(criterion: int, ok: bool, detail: str) -> None:
    print("ACCEPTANCE %d: %s (%s)" % (criterion, "PASS" if ok else "FAIL", detail))
    assert ok, "criterion %d failed: %s" % (criterion, detail)


def test_criterion_1_oracle_equivalence():
    start = time.monotonic()
    worst, results = sweep(x=1.5)
    elapsed = time.monotonic() - start
    ok = worst <= 1e-8 and len(results) == 540 and elapsed <= 60.0
    _verdict(1, ok, "540 points, max rel err %.3e, %.1f s" % (worst, elapsed))


def test_criterion_2_reduction_consistency():
    functions = [
        TestFunction(Const(1.3), (0.0, 10.0)),
        TestFunction(Monomial(2.0), (0.0, 10.0)),
        TestFunction(ExpPoly((0.1, 0.4, -0.2)), (0.0, 10.0)),
        TestFunction(SinPos(2.5, 0.7, 0.5, 1.5), (0.0, 10.0)),
    ]
    x = 1.5
    worst = 0.0

    cases = []
    for a in (0.0, 0.4):
        alpha = 0.8
        cases.append((
            OperatorParams(alpha=alpha, beta=alpha, rho=1.0, eta=0.0, kappa=0.0, lower=a),
            lambda f, a=a, alpha=alpha: evaluate_classical(
                ClassicalKind.RIEMANN_LIOUVILLE, alpha, f, (a,), x
            ),
        ))
        alpha, rho = 0.6, 2.0
        cases.append((
            OperatorParams(alpha=alpha, beta=alpha, rho=rho, eta=0.0, kappa=0.0, lower=a),
            lambda f, a=a, alpha=alpha, rho=rho: evaluate_classical(
                ClassicalKind.KATUGAMPOLA, alpha, f, (a,), x, rho=rho
            ),
        ))
        alpha, sigma, eta = 0.6, 2.0, 0.5
        cases.append((
            OperatorParams(
                alpha=alpha, beta=0.0, rho=sigma, eta=eta,
                kappa=-sigma * (alpha + eta), lower=a,
            ),
            lambda f, a=a, alpha=alpha, sigma=sigma, eta=eta: evaluate_classical(
                ClassicalKind.ERDELYI_KOBER, alpha, f, (a,), x, sigma=sigma, eta=eta
            ),
        ))
    for params, direct in cases:
        for f in functions:
            v1 = evaluate(params, f, x).value
            v2 = direct(f).value
            worst = max(worst, abs(v1 - v2) / abs(v2))
    ok_finite = worst <= 1e-8

    # truncated infinite-interval forms agree within their reported bounds
    decaying = TestFunction(ExpPoly((0.0, 0.0, -0.5)), (NEG_INF, 5.0))
    p_inf = OperatorParams(alpha=0.5, beta=1.0, rho=1.0, eta=0.0, kappa=0.0, lower=NEG_INF)
    gen = evaluate(p_inf, decaying, 1.0)
    weyl = evaluate_classical(ClassicalKind.WEYL, 0.5, decaying, (NEG_INF,), 1.0,
                              truncation_start=1.7)
    weyl_default = evaluate_classical(ClassicalKind.WEYL, 0.5, decaying, (NEG_INF,), 1.0)
    liou = evaluate_classical(ClassicalKind.LIOUVILLE, 0.5, decaying, (NEG_INF,), 1.0)
    budget = 10.0 * (gen.error_estimate + weyl.error_estimate)
    ok_trunc = abs(gen.value - weyl.value) <= budget and liou.value == weyl_default.value

    _verdict(2, ok_finite and ok_trunc,
             "finite forms max rel err %.3e, truncated gap %.3e <= %.3e"
             % (worst, abs(gen.value - weyl.value), budget))


def test_criterion_3_log_kernel_limit():
    alpha, x = 0.7, math.e
    f = TestFunction(Monomial(1.0), (1.0, 3.0))
    direct = evaluate_classical(ClassicalKind.HADAMARD, alpha, f, (1.0,), x).value
    diffs = []
    for rho in (1e-2, 1e-3, 1e-4):
        p = OperatorParams(alpha=alpha, beta=alpha, rho=rho, eta=0.0, kappa=0.0, lower=1.0)
        diffs.append(abs(evaluate(p, f, x).value - direct) / abs(direct))
    ok = diffs[0] > diffs[1] > diffs[2] and diffs[2] <= 1e-3
    _verdict(3, ok, "rel diffs %.3e > %.3e > %.3e, final <= 1e-3" % tuple(diffs))


def test_criterion_4_inequality_suite():
    start = time.monotonic()
    cfg = SuiteConfig(trials=1000, seed=20240811)
    report = run_suite(cfg, timestamp="acceptance")
    elapsed = time.monotonic() - start
    total = len(report.records)
    ok = (
        report.total_failures == 0
        and not report.inconclusive_over_threshold(0.01)
        and total == 8 * 1000
        and elapsed <= 600.0
    )
    _verdict(4, ok, "%d trials, %d failures, %d inconclusive, %.1f s"
             % (total, report.total_failures, report.total_inconclusive, elapsed))


def test_criterion_5_equality_tightness():
    from genfrac.inequalities import c1, c2, c6

    ok = (
        abs(c1(1.0, 1.0) - 1.0) == 0.0
        and abs(c2(1.0, 1.0) - 2.0) == 0.0
        and abs(c6(1.0, 1.0) - 0.25) == 0.0
    )
    worst = 0.0
    params = OperatorParams(alpha=0.5, beta=0.5, rho=1.0, eta=0.0, kappa=0.0)
    for seed in (1, 2, 3):
        pair = generate_ratio_pair(seed, 1.0, 1.0, (0.0, 1.0))
        cfg = CheckConfig(p=2.0)
        for check in (check_t8, check_t9, check_t15):
            chk = check(pair, params, 1.0, cfg)
            rel = abs(chk.lhs - chk.rhs) / abs(chk.rhs)
            worst = max(worst, rel)
            ok = ok and chk.satisfied and rel <= 1e-10
        chk = check_t14(pair, params, 1.0, cfg)
        rel = max(abs(chk.lhs - chk.mid) / abs(chk.mid),
                  abs(chk.mid - chk.rhs) / abs(chk.rhs))
        worst = max(worst, rel)
        ok = ok and chk.satisfied and rel <= 1e-10
    _verdict(5, ok, "worst equality-case relative margin %.3e" % worst)


def test_criterion_6_scalar_lemma_fuzz():
    rng = np.random.default_rng(987654321)
    n = 100_000
    young_fail = 0
    for a, b, p in zip(
        rng.uniform(0.0, 10.0, n), rng.uniform(0.0, 10.0, n), rng.uniform(1.0001, 5.0, n)
    ):
        if not check_scalar_lemmas(float(p), float(a), float(b)):
            young_fail += 1
    pm_fail = 0
    for a, b, r in zip(
        rng.uniform(0.0, 10.0, n), rng.uniform(0.0, 10.0, n), rng.uniform(1.0001, 5.0, n)
    ):
        if not check_scalar_lemmas(float(r), float(a), float(b)):
            pm_fail += 1
    ok = young_fail == 0 and pm_fail == 0
    _verdict(6, ok, "%d + %d triples, %d violations" % (n, n, young_fail + pm_fail))


def test_criterion_7_report_determinism():
    def run(threads: str, path: str):
        env = dict(os.environ, GENFRAC_THREADS=threads)
        proc = subprocess.run(
            [sys.executable, "-m", "genfrac.cli", "verify", "--theorem", "all",
             "--trials", "50", "--seed", "123", "--p", "2", "--m", "0.5", "--M", "2",
             "--json", path],
            env=env, capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        payload = json.loads(open(path).read())
        payload["metadata"].pop("timestamp")
        return json.dumps(payload, sort_keys=True)

    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        first = run("1", os.path.join(tmp, "a.json"))
        second = run("4", os.path.join(tmp, "b.json"))
    ok = first == second
    _verdict(7, ok, "byte-identical JSON modulo timestamp across thread caps 1 and 4")
