"""Exit criteria. Each test prints one PASS/FAIL line; run with ``pytest tests/test_acceptance.py -v``."""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from frozenasm import cli
from frozenasm.asm_enum import asm_count, g_poly, refined_count, verify_properties
from frozenasm.asymptotics import (
    Y_CRITICAL,
    arctic_point,
    boundary_cdf,
    ellipse_residual,
    scaled_s,
    tw_f2,
    tw_f2_nystrom,
)
from frozenasm.conjecture import conjecture_count, matrix_entry_contour, matrix_entry_sum
from frozenasm.frozen_oracle import brute_force_frozen, count_frozen
from frozenasm.golden import golden_table, golden_value
from frozenasm.mir import mir_count
from frozenasm.verify import run_verify


@pytest.fixture
def report(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
        return ok
    return emit


def test_c01_golden_small_table(report):
    t0 = time.perf_counter()
    result = run_verify(12)
    code = cli.main(["verify", "--n-max", "12"])
    elapsed = time.perf_counter() - t0
    cells = {(c.n, c.s): c for c in result.cells}
    agree = all(
        cells[key].values.get("oracle") == cells[key].values["conjecture"] == value
        for key, value in golden_table("small").items()
    )
    ok = code == 0 and result.passed and agree and elapsed < 300
    report("C1 table n<=12, oracle = conjecture = table", ok,
           f"{len(golden_table('small'))} values, verify exit {code}, {elapsed:.1f}s")
    assert ok


def test_c02_golden_large_table_by_conjecture(report):
    t0 = time.perf_counter()
    bad = [(n, s) for (n, s), v in golden_table("large").items() if conjecture_count(n, s) != v]
    elapsed = time.perf_counter() - t0
    ok = not bad and conjecture_count(20, 10) == 16779127803917965290000
    report("C2 table n=13..20 by determinant formula", ok,
           f"{len(golden_table('large'))} values, mismatches {bad}, {elapsed:.1f}s")
    assert ok


def _oracle_vs_golden(n_values):
    bad = []
    for n in n_values:
        for s in range(1, n + 1):
            if count_frozen(n, s) != golden_value(n, s):
                bad.append((n, s))
    return bad


def test_c03_oracle_at_scale(report):
    t0 = time.perf_counter()
    bad = _oracle_vs_golden(range(2, 15))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 1800
    report("C3 oracle = table for n<=14, all s", ok, f"mismatches {bad}, {elapsed:.1f}s")
    assert ok


@pytest.mark.slow
def test_c03_oracle_slow_n15_16(report):
    t0 = time.perf_counter()
    bad = _oracle_vs_golden((15, 16))
    report("C3 (slow) oracle = table for n=15,16", not bad,
           f"mismatches {bad}, {time.perf_counter() - t0:.1f}s")
    assert not bad


def test_c04_route_equivalence(report):
    bad = [
        (n, s, i, j)
        for n in range(1, 13)
        for s in range(1, n // 2 + 1)
        for i in range(1, s + 1)
        for j in range(1, s + 1)
        if matrix_entry_contour(n, s, i, j) != matrix_entry_sum(n, s, i, j)
    ]
    report("C4 contour route = sum route, n<=12, s<=n/2", not bad, f"mismatches {bad[:5]}")
    assert not bad


def test_c05_property_suite(report):
    failures = []
    count = 0
    for n in range(1, 21):
        checks = verify_properties(n, conjecture_count)
        count += len(checks)
        failures += [c.line() for c in checks if not c.passed]
    assert conjecture_count(10, 5) == 184041 == 429**2
    odd5 = {c.name: c for c in verify_properties(5, conjecture_count)}["odd-size-sum"]
    ok = not failures and odd5.expected == 102
    report("C5 identities up to n=20 on determinant values", ok,
           f"{count} checks, failures {failures[:3]}")
    assert ok


def test_c06_mir_agreement(report):
    t0 = time.perf_counter()
    bad = [(n, s) for n in range(2, 9) for s in range(1, min(n, 4) + 1)
           if mir_count(n, s) != golden_value(n, s)]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 120
    report("C6 constant-term route = table, n<=8, s<=4", ok, f"mismatches {bad}, {elapsed:.1f}s")
    assert ok


def test_c07_brute_force_agreement(report):
    t0 = time.perf_counter()
    bad = [(n, s) for n in range(1, 5) for s in range(n + 1)
           if brute_force_frozen(n, s) != count_frozen(n, s)]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 600
    report("C7 brute force = oracle, n<=4, all s", ok, f"mismatches {bad}, {elapsed:.2f}s")
    assert ok


def test_c08_generating_function(report):
    bad = [
        n for n in range(1, 51)
        if g_poly(n).to_list(0, n - 1)
        != [Fraction(refined_count(n, r), asm_count(n)) for r in range(1, n + 1)]
    ]
    report("C8 g_n coefficients = A_{n,r}/A_n, n<=50", not bad, f"mismatches {bad}")
    assert not bad


def test_c09_arctic_curve(report):
    worst = max(abs(ellipse_residual(p.x, p.y))
                for p in map(arctic_point, np.logspace(0, 6, 100)))
    p = arctic_point(2.0)
    diag = max(abs(p.x - p.y), abs(p.x - (1 - math.sqrt(3) / 2)), abs(Y_CRITICAL - (1 - math.sqrt(3) / 2)))
    ok = worst < 1e-12 and diag < 1e-12
    report("C9 arctic residual < 1e-12, diagonal = 1 - sqrt(3)/2", ok,
           f"max residual {worst:.2e}, diagonal error {diag:.2e}")
    assert ok


def test_c10_boundary_cdf_consistency(report):
    worst = 0.0
    for n in range(1, 15):
        for s in range(1, n + 1):
            exact = Fraction(golden_value(n, s) if n >= 2 else count_frozen(n, s), asm_count(n))
            worst = max(worst, abs(boundary_cdf(n, s) - float(exact)))
    ok = worst < 1e-10
    report("C10 boundary CDF = B/A_n within 1e-10, n<=14", ok, f"max error {worst:.2e}")
    assert ok


def test_c11a_tw_monotone(report):
    sig = np.linspace(-6, 6, 100)
    vals = [tw_f2(float(x)) for x in sig]
    monotone = all(b >= a for a, b in zip(vals, vals[1:]))
    ok = monotone and vals[0] < 1e-6 and 1 - vals[-1] < 1e-10
    report("C11a F2 non-decreasing on [-6, 6]", ok,
           f"monotone={monotone}, F2(-6)={vals[0]:.3e}, 1-F2(6)={1 - vals[-1]:.3e}")
    assert ok


def test_c11b_tw_right_tail(report):
    tail = 1 - tw_f2(5.0)
    asym = math.exp(-(4 / 3) * 5**1.5) / (16 * math.pi * 5**1.5)
    rel = abs(tail - asym) / asym
    ok = rel <= 0.10
    report("C11b 1-F2(5) within 10% of leading tail asymptotic", ok,
           f"1-F2(5)={tail:.6e}, asymptotic={asym:.6e}, relative gap {rel:.4f}")
    assert ok


def test_c11c_tw_node_doubling(report):
    changes = [abs(tw_f2_nystrom(0.0, 2 * m) - tw_f2_nystrom(0.0, m)) for m in (32, 64)]
    ok = max(changes) < 1e-8
    report("C11c node doubling moves F2(0) by < 1e-8", ok,
           f"32->64: {changes[0]:.2e}, 64->128: {changes[1]:.2e}")
    assert ok


def test_c12_convergence_probe(report):
    t0 = time.perf_counter()
    rows = []
    ok = True
    for sigma in (-1.0, 0.0, 1.0):
        f2 = tw_f2(sigma)
        gaps = {n: abs(boundary_cdf(n, scaled_s(n, sigma)) - f2) for n in (50, 200)}
        ok = ok and gaps[200] < gaps[50]
        rows.append(f"sigma={sigma:+.0f}: {gaps[50]:.4g} -> {gaps[200]:.4g}")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1200
    report("C12 gap to F2 smaller at n=200 than n=50", ok, f"{'; '.join(rows)}; {elapsed:.0f}s")
    assert ok
