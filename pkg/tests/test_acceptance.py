"""Acceptance criteria 1-10.

Each test times itself against its runtime bound and adds one PASS/FAIL line
to the "acceptance criteria" section of the pytest terminal summary.
"""
import json
import random
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
import sympy

from conftest import ACCEPTANCE_LINES, invalid, quadratic, sl2
from hochstar import blocksolve
from hochstar.blocksolve import delta_matrix, delta_pinv, is_moore_penrose, pinv, pinv_tikhonov
from hochstar.cochain import Cochain, apply, delta
from hochstar.errors import InvalidPoisson
from hochstar.multiindex import indices_up_to
from hochstar.poly import Poly, random_poly, xderiv
from hochstar.starprod import PoissonStructure, associator, build, jacobi_residual, pi1
from hochstar.verify import (
    check_u_formula,
    closed_form_pi2_block,
    distinct_index_blocks,
    moyal_pi,
    pinv_oracle,
    x_antisym3,
    x_sym2,
)

REPORTS = Path(__file__).resolve().parent.parent / "reports"


def record(number, title, ok, elapsed, bound, detail=""):
    within = elapsed < bound
    status = "PASS" if ok and within else "FAIL"
    line = f"[{status}] {number:>2}. {title} ({elapsed:.2f}s, limit {bound:g}s)"
    if detail:
        line += f": {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok and within


def structures():
    return [PoissonStructure.moyal(), PoissonStructure.so3(), PoissonStructure.heisenberg()]


def test_01_first_order_cochain():
    t0 = time.perf_counter()
    rng = random.Random(1)
    ok = True
    for ps in structures():
        n = ps.n
        p = pi1(ps)
        for _ in range(10):
            f, g = random_poly(rng, n, 3), random_poly(rng, n, 3)
            direct = Poly.zero(n)
            for a in range(n):
                for b in range(n):
                    ea = tuple(int(m == a) for m in range(n))
                    eb = tuple(int(m == b) for m in range(n))
                    direct = direct + xderiv(f, ea) * ps(a, b) * xderiv(g, eb)
            ok &= apply(p, [f, g]) == direct.scale(Fraction(1, 2))
    elapsed = time.perf_counter() - t0
    assert record(1, "Pi^1 = 1/2 X^a f omega_ab X^b g for Moyal, so(3), Heisenberg",
                  ok, elapsed, 1.0)


def test_02_second_order_closed_form_so3():
    t0 = time.perf_counter()
    ps = PoissonStructure.so3()
    built = distinct_index_blocks(build(ps, 2).pi(2))
    closed = closed_form_pi2_block(ps)
    ok = built == closed
    elapsed = time.perf_counter() - t0
    detail = ("exact equality; both sides vanish for so(3)" if ok and built.is_zero()
              else f"built {len(built)} terms, closed form {len(closed)} terms")
    assert record(2, "so(3) Pi^2 e_i+e_j+e_k block equals the phi_ijk closed form",
                  ok, elapsed, 30.0, detail)


@pytest.mark.parametrize("factory", [sl2, quadratic], ids=["sl2", "quadratic"])
def test_02b_closed_form_scale_on_nonvanishing_blocks(factory):
    """Supplementary: where the e_i+e_j+e_k block is nonzero, built = 2 x closed form."""
    t0 = time.perf_counter()
    ps = factory()
    built = distinct_index_blocks(build(ps, 2).pi(2))
    closed = closed_form_pi2_block(ps)
    ok = not built.is_zero() and built == closed * 2 and built != closed
    elapsed = time.perf_counter() - t0
    record("2b", f"{factory.__name__}: built Pi^2 block is exactly twice the phi_ijk closed form",
           ok, elapsed, 30.0, "closed form needs prefactor 1/12, not 1/24")
    assert ok


def test_03_pseudoinverse_of_antisymmetric_trivector():
    t0 = time.perf_counter()
    n, l = 3, (1, 1, 1)
    src, dst = blocksolve.block_basis(3, l), blocksolve.block_basis(2, l)
    expected = (x_sym2(1, 2, 0, n) - x_sym2(0, 1, 2, n)) * Fraction(1, 3)
    vec = [None] * len(src)
    for key, c in x_antisym3(0, 1, 2, n).terms.items():
        vec[src.index[key]] = c
    ok = delta_pinv(2, l) == pinv_oracle(delta_matrix(2, l))
    got = blocksolve.vector_to_cochain(delta_pinv(2, l).apply(vec), dst, n)
    ok &= got == expected
    elapsed = time.perf_counter() - t0
    assert record(3, "delta+ X^{ijk} = 1/3 (X^{jk,i} - X^{ij,k}), oracle agrees",
                  ok, elapsed, 1.0)


def test_04_associativity():
    t0 = time.perf_counter()
    detail = []
    ok = True
    for ps, K in ((PoissonStructure.moyal(), 3), (PoissonStructure.so3(), 2),
                  (PoissonStructure.so3(), 3)):
        sp = build(ps, K)
        rng = random.Random(20240 + K)
        bad = 0
        for _ in range(20):
            f, g, h = (random_poly(rng, ps.n, 3) for _ in range(3))
            bad += any(associator(sp, f, g, h))
        ok &= bad == 0
        detail.append(f"n={ps.n} K={K}: {20 - bad}/20")
    elapsed = time.perf_counter() - t0
    assert record(4, "associator vanishes through order K on 20 random triples",
                  ok, elapsed, 300.0, ", ".join(detail))


def test_05_moore_penrose_suite():
    t0 = time.perf_counter()
    count = 0
    failures = []
    for n in (1, 2, 3):
        for l in indices_up_to(n, 5):
            for tilde in (True, False):
                for p in (1, 2):
                    d, dp = delta_matrix(p, l, tilde), delta_pinv(p, l, tilde)
                    count += 1
                    if not is_moore_penrose(d, dp):
                        failures.append(("MP", p, l, tilde))
                    nxt = delta_pinv(p + 1, l, tilde) if p == 1 else delta_pinv(p - 1, l, tilde)
                    prod = dp @ nxt if p == 1 else nxt @ dp
                    if not prod.is_zero():
                        failures.append(("nilpotency", p, l, tilde))
    elapsed = time.perf_counter() - t0
    assert record(5, "Moore-Penrose identities and delta+ delta+ = 0",
                  not failures, elapsed, 120.0,
                  f"{count} blocks" + (f", first failure {failures[0]}" if failures else ""))


def test_06_tikhonov_convergence():
    t0 = time.perf_counter()
    rng = random.Random(6)
    candidates = [(p, l) for n in (1, 2, 3) for l in indices_up_to(n, 4) for p in (1, 2)
                  if not delta_matrix(p, l, False).is_zero()]
    chosen = rng.sample(candidates, 50)
    worst, ok = 0.0, True
    for p, l in chosen:
        m = delta_matrix(p, l, False)
        exact = pinv(m).to_numpy()
        errs = [np.abs(pinv_tikhonov(m, a) - exact).max() for a in (1e-1, 1e-2, 1e-3, 1e-4)]
        ok &= errs[0] > errs[1] > errs[2]
        ok &= errs[3] < 1e-6
        worst = max(worst, errs[3])
    elapsed = time.perf_counter() - t0
    assert record(6, "Tikhonov route converges to the exact pseudoinverse",
                  ok, elapsed, 60.0, f"50 blocks, worst error at alpha=1e-4: {worst:.1e}")


def _rank_dim(p, l, n):
    """dim H^p_l from sympy ranks of column images under cochain.delta."""
    def rank_of(q):
        src, dst = blocksolve.block_basis(q, l), blocksolve.block_basis(q + 1, l)
        if not len(src) or not len(dst):
            return 0
        cols = [[delta(Cochain.basis(k, n)).coefficient(t).constant_term() for t in dst.tuples]
                for k in src.tuples]
        return sympy.Matrix(cols).rank()
    return len(blocksolve.block_basis(p, l)) - rank_of(p) - (rank_of(p - 1) if p else 0)


def test_07_cohomology_dimensions():
    t0 = time.perf_counter()
    n = 3
    e = [tuple(int(m == i) for m in range(n)) for i in range(n)]
    cases = []
    for i in range(n):
        cases.append((1, e[i], 1))
        cases.append((2, tuple(2 * x for x in e[i]), 0))
        for j in range(i + 1, n):
            cases.append((2, tuple(a + b for a, b in zip(e[i], e[j])), 1))
    cases.append((3, (1, 1, 1), 1))
    ok = all(blocksolve.cohomology_dim(p, l) == want == _rank_dim(p, l, n)
             for p, l, want in cases)
    elapsed = time.perf_counter() - t0
    assert record(7, "tilde cohomology: H^1_{e_i}=1, H^2_{e_i+e_j}=1, H^2_{2e_i}=0, H^3_{e_i+e_j+e_k}=1",
                  ok, elapsed, 60.0, f"{len(cases)} blocks, sympy rank cross-check")


def test_08_moyal_cocycle_comparison():
    t0 = time.perf_counter()
    ps = PoissonStructure.moyal()
    sp = build(ps, 3)
    results = {}
    for k in (2, 3):
        results[k] = delta(moyal_pi(k, ps.matrix()) - sp.pi(k))
    ok = all(r.is_zero() for r in results.values())
    elapsed = time.perf_counter() - t0
    detail = ", ".join(f"k={k}: " + ("0" if r.is_zero() else f"{len(r)} nonzero terms")
                       for k, r in results.items())
    if not ok:
        detail += (" (the zero gauge makes Pi^2 differ from Moyal by a coboundary,"
                   " which shifts Omega^3; see test_verify for the gauge-aligned comparison)")
    assert record(8, "delta(Moyal Pi^k - built Pi^k) = 0 for k = 2, 3 under the zero gauge",
                  ok, elapsed, 60.0, detail)


def test_09_u_formula_adjudication():
    t0 = time.perf_counter()
    reports = [check_u_formula(n, [l for l in indices_up_to(n, 5) if any(l)]) for n in (1, 2, 3)]
    winners = {r.data["winner"] for r in reports}
    ok = all(r.passed for r in reports) and len(winners) == 1 and None not in winners
    REPORTS.mkdir(exist_ok=True)
    artifact = {
        "criterion": "u-formula",
        "passed": ok,
        "winner": winners.pop() if len(winners) == 1 else None,
        "reports": [r.to_json() for r in reports],
    }
    (REPORTS / "u_formula_report.json").write_text(json.dumps(artifact, indent=2) + "\n")
    elapsed = time.perf_counter() - t0
    assert record(9, "exactly one sign of u works on every degree |l| <= 5",
                  ok, elapsed, 60.0,
                  f"winner {reports[0].data['winning_factor']}, report in reports/u_formula_report.json")


def test_10_jacobi_gate():
    t0 = time.perf_counter()
    res = jacobi_residual(invalid())
    ok = bool(res.get((0, 1, 2)))
    try:
        build(invalid(), 2)
        ok = False
    except InvalidPoisson as exc:
        ok &= (0, 1, 2) in exc.residuals
    ok &= all(not jacobi_residual(ps) for ps in structures())
    elapsed = time.perf_counter() - t0
    assert record(10, "invalid bivector rejected at (1,2,3); Moyal, so(3), Heisenberg accepted",
                  ok, elapsed, 1.0, f"residual {res.get((0, 1, 2))}")
