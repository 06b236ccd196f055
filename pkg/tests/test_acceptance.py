"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run under pytest (lines appear in the ``-v`` log) or directly with
``python3 tests/test_acceptance.py``.  Tolerances are fixed; a failing
criterion is reported as failing, never relaxed.
"""

import math
import os
import sys
import tempfile
import time

import numpy as np
import pytest

from cocyclelab.cli import main as cli_main
from cocyclelab.corpus import conformal, random_corpus, rot07
from cocyclelab.families import FamilySpec, craig_simon, scan, verify_winding
from cocyclelab.limitlaws import (clt_experiment, ldt_experiment, variance_empirical,
                                  variance_gl)
from cocyclelab.linalg2 import PI
from cocyclelab.lyapunov import (direct_rank_one_norm, l1_furstenberg, l1_induced,
                                 l1_monte_carlo, l1_series, reference_l1,
                                 telescoped_rank_one_norm)
from cocyclelab.model import CocycleSpec, Word, find_null_words
from cocyclelab.stationary import (Observable, apply_Q, apply_Qn, check_diagram, grid,
                                   markov_tail, stationary_measure)

LOG2 = math.log(2.0)
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
_CORPUS = []


def corpus():
    if not _CORPUS:
        _CORPUS.extend(random_corpus(10))
    return _CORPUS


def emit(n, ok, detail, capsys=None):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return line


# -- 1 ---------------------------------------------------------------------------

def criterion_1():
    spec = conformal()
    half = 0.5 * LOG2
    s = l1_series(spec, 40)
    f = l1_furstenberg(spec, stationary_measure(spec, 40))
    v = variance_gl(spec).sigma2
    gaps = (abs(s.value - half), abs(f.value - s.value), abs(v - 0.25 * LOG2 ** 2))
    ok = all(g <= 1e-9 for g in gaps)
    return ok, "series/furstenberg/variance gaps " + ", ".join(f"{g:.1e}" for g in gaps)


# -- 2 ---------------------------------------------------------------------------

def criterion_2():
    worst, bad = 0.0, []
    for spec in corpus():
        s = l1_series(spec, 25)
        f = l1_furstenberg(spec, stationary_measure(spec, 25))
        allowed = 1e-8 + s.tail_slack + f.tail_slack
        gap = abs(s.value - f.value)
        worst = max(worst, gap / allowed)
        if not gap <= allowed:
            bad.append(spec.name)
    return not bad, f"{len(corpus())} specs, worst gap/allowed {worst:.3f}, failing {bad}"


# -- 3 ---------------------------------------------------------------------------

def criterion_3():
    bad, worst, slowest = [], 0.0, 0.0
    for spec in corpus():
        ref = l1_series(spec, 30)
        t0 = time.perf_counter()
        mc = l1_monte_carlo(spec, 2000, 2000, seed=11, threads=4)
        ind = l1_induced(spec, 5000, seed=11, threads=4)
        slowest = max(slowest, time.perf_counter() - t0)
        for est in (mc, ind):
            se = math.sqrt(est.std_error ** 2 + ref.tail_slack ** 2)
            z = abs(est.value - ref.value) / se
            worst = max(worst, z)
            if not z <= 3.0:
                bad.append((spec.name, est.method))
    ok = not bad and slowest <= 30.0
    return ok, f"worst |z| {worst:.2f}, slowest spec {slowest:.1f} s, failing {bad}"


# -- 4 ---------------------------------------------------------------------------

def criterion_4():
    worst_b = 0.0
    bern = [rot07(), conformal()] + [s for s in corpus() if not s.is_markov]
    for spec in bern:
        q = spec.q0
        for N in range(21):
            m = stationary_measure(spec, N)
            worst_b = max(worst_b, abs(m.covered_mass - (1 - (1 - q) ** (N + 1))))
    worst_m, mono = 0.0, True
    markov = [CocycleSpec.markov([np.diag([1.0, 0.0]), np.array([[0.8, -0.6], [0.6, 0.8]])],
                                 [[0.9, 0.2], [0.1, 0.8]], [1])]
    markov += [s for s in corpus() if s.is_markov]
    for spec in markov:
        prev = np.zeros(spec.k)
        for N in range(13):
            mass = stationary_measure(spec, N).symbol_masses()
            mono &= bool(np.all(mass >= prev - 1e-15) and np.all(mass <= spec.stat + 1e-15))
            worst_m = max(worst_m, float(np.max(np.abs(spec.stat - mass - markov_tail(spec, N)))))
            prev = mass
    ok = worst_b <= 1e-12 and worst_m <= 1e-10 and mono
    return ok, f"bernoulli gap {worst_b:.1e}, markov deficit gap {worst_m:.1e}, monotone {mono}"


# -- 5 ---------------------------------------------------------------------------

def _qinv_iterate(spec, phi, n):
    """``Q_inv^n phi`` by nesting single applications of the invertible part."""
    cur = phi
    for _ in range(n):
        cur = Observable(lambda s, t, f=cur: apply_Q(spec, f, t, part="inv"))
    return cur


def criterion_5():
    th = grid(128)
    one = Observable.constant(1.0)
    bern = [rot07(), conformal()] + [s for s in corpus() if not s.is_markov]
    worst_1 = 0.0
    for spec in bern:
        for n in range(9):
            val = np.max(np.abs(_qinv_iterate(spec, one, n)(0, th)))
            worst_1 = max(worst_1, abs(val - (1 - spec.q0) ** n))
    rs = np.random.default_rng(55)
    worst_c, worst_d = 0.0, 0.0
    for i in range(50):
        spec = bern[i % len(bern)]
        a, b, c, d = rs.normal(size=4)
        phi = Observable(lambda s, t, a=a, b=b, c=c, d=d:
                         a * np.cos(2 * t) + b * np.sin(2 * t) * s + c * np.cos(4 * t + d))
        sup = phi.sup_norm(spec)
        for n in (1, 2, 3, 4):
            diff = apply_Qn(spec, phi, n, th, method="brute") - _qinv_iterate(spec, phi, n)(0, th)
            worst_c = max(worst_c, float(np.ptp(diff)) / sup)
        worst_d = max(worst_d, check_diagram(spec, phi, th))
    ok = worst_1 <= 1e-12 and worst_c <= 1e-10 and worst_d <= 1e-12
    return ok, (f"|Q_inv^n 1| gap {worst_1:.1e}, decomposition spread {worst_c:.1e}, "
                f"diagram gap {worst_d:.1e}")


# -- 6 ---------------------------------------------------------------------------

def criterion_6():
    expect = {-1.0: Word((1, 2, 2, 1)), 0.0: Word((1, 2, 1)), 1.0: Word((1, 2, 2, 1))}
    ok, notes = True, []
    for t, w in expect.items():
        spec = craig_simon(0.0, t)
        nulls = find_null_words(spec, 4)
        s = l1_series(spec, 20)
        good = bool(nulls) and nulls[0] == w and s.is_neg_inf and s.neg_inf_witness == w
        ok &= good
        notes.append(f"t={t:g}:{nulls[0] if nulls else None}")
    rows = scan(FamilySpec(kind="craig_simon", a=0.0), np.linspace(-2.5, 2.5, 501), null_len=4)
    flagged = [r.t for r in rows if r.structural]
    hit = (len(flagged) == 3 and all(abs(a - b) <= 1e-12 for a, b in zip(flagged, sorted(expect))))
    hit &= all(r.estimate.is_neg_inf == r.structural for r in rows)
    ok &= hit
    return ok, f"{' '.join(notes)}; scan flags {[round(t, 12) for t in flagged]} of 501"


# -- 7 ---------------------------------------------------------------------------

def criterion_7():
    ok, notes = True, []
    for spec in (conformal(), rot07()):
        t0 = time.perf_counter()
        ref = reference_l1(spec).value
        rep = ldt_experiment(spec, ref, 0.05, [100, 200, 400, 800, 1600], 4000, seed=2024)
        dt = time.perf_counter() - t0
        good = rep.passed and not rep.vacuous and dt <= 60.0
        good &= rep.frequencies[-1] < rep.frequencies[0]
        ok &= good
        notes.append(f"{spec.name} freqs {[round(f, 4) for f in rep.frequencies]} "
                     f"c0 {rep.c0:.3f} ({dt:.1f} s)")
    return ok, "; ".join(notes)


# -- 8 ---------------------------------------------------------------------------

def criterion_8():
    ok, notes = True, []
    for spec in (conformal(), rot07()):
        ref = reference_l1(spec).value
        rep = clt_experiment(spec, 1000, 2000, seed=2024, L1_ref=ref)
        neg = clt_experiment(spec, 1000, 2000, seed=2024, L1_ref=ref, sigma_scale=0.5)
        gl = variance_gl(spec).sigma2
        emp = variance_empirical(spec, 1000, 2000, ref, seed=2025).sigma2
        rel = abs(gl - emp) / gl
        good = rep.ks <= 0.05 and neg.ks > 0.1 and rel <= 0.15
        ok &= good
        notes.append(f"{spec.name} KS {rep.ks:.4f} control {neg.ks:.3f} var gap {100 * rel:.1f}%")
    return ok, "; ".join(notes)


# -- 9 ---------------------------------------------------------------------------

def criterion_9():
    rs = np.random.default_rng(909)
    worst, worst_cos = 0.0, 1.0
    for _ in range(1000):
        n = int(rs.integers(1, 16))
        us = rs.normal(size=(n + 1, 2))
        ranges = us / np.linalg.norm(us, axis=1)[:, None]
        rows = rs.normal(size=(n, 2))
        mats = [np.outer(r, v) for r, v in zip(ranges[1:], rows)]
        d = direct_rank_one_norm(mats, ranges[0])
        t = telescoped_rank_one_norm(mats, ranges[0], ranges[1:])
        err = abs(t - d) / d
        if err > worst:
            # smallest |cos| between a row and the incoming range sets the conditioning
            cos = np.abs(np.einsum("ij,ij->i", rows, ranges[:-1])) / np.linalg.norm(rows, axis=1)
            worst, worst_cos = err, float(cos.min())
    return worst <= 1e-12, (f"1000 sequences, worst relative error {worst:.1e} "
                            f"(that draw has min |cos| {worst_cos:.1e})")


# -- 10 --------------------------------------------------------------------------

def criterion_10():
    fam = FamilySpec(rot07(), "rotation")
    tg = np.linspace(-PI, PI, 64)
    xg = PI * np.arange(64) / 64
    rep = verify_winding(fam, tg, xg, check_fd=True)
    cs = verify_winding(FamilySpec(kind="craig_simon", a=0.0), np.linspace(-2.5, 2.5, 64), xg)
    e2 = abs(cs.witness_point.theta - PI / 2) <= 1e-12
    ok = rep.passed and rep.c0_hat > 0 and rep.fd_gap <= 1e-6 and not cs.passed and e2
    return ok, (f"rotation c0_hat {rep.c0_hat:.4f} fd gap {rep.fd_gap:.1e}; craig_simon "
                f"c0_hat {cs.c0_hat:g} witness theta {cs.witness_point.theta:.6f}")


# -- 11 --------------------------------------------------------------------------

CLI_RUNS = [(c, "rot07.ini") for c in
            ("validate", "l1", "measure", "ldt", "clt", "variance", "nullwords", "diagnose")]
CLI_RUNS += [("l1", "markov2.ini"), ("scan", "rotation.ini"), ("scan", "craig_simon.ini")]


def criterion_11():
    diffs, count = [], 0
    with tempfile.TemporaryDirectory() as tmp:
        for cmd, cfg in CLI_RUNS:
            label = f"{os.path.splitext(cfg)[0]}"
            for th in ("1", "8"):
                code = cli_main([cmd, "--config", os.path.join(ROOT, "configs", cfg),
                                 "--out", os.path.join(tmp, th), "--label", label,
                                 "--threads", th])
                if code not in (0, 1):
                    diffs.append(f"{cmd}:{cfg} exit {code}")
        names = sorted(os.listdir(os.path.join(tmp, "1")))
        if names != sorted(os.listdir(os.path.join(tmp, "8"))):
            diffs.append("file sets differ")
        for name in names:
            count += 1
            with open(os.path.join(tmp, "1", name), "rb") as a, \
                    open(os.path.join(tmp, "8", name), "rb") as b:
                if a.read() != b.read():
                    diffs.append(name)
    return not diffs, f"{count} files compared at --threads 1 vs 8, differing {diffs}"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 12)}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    t0 = time.perf_counter()
    ok, detail = CRITERIA[n]()
    line = emit(n, ok, f"{detail} [{time.perf_counter() - t0:.1f} s]", capsys)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for n, fn in CRITERIA.items():
        t0 = time.perf_counter()
        ok, detail = fn()
        emit(n, ok, f"{detail} [{time.perf_counter() - t0:.1f} s]")
        failed += not ok
    sys.exit(1 if failed else 0)
