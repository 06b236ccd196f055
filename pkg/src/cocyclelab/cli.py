"""Command-line frontend: ``cocyclelab <command> --config FILE``.

Every command writes ``<command>-<label>.json`` and/or ``.csv`` into the
output directory.  Exit codes: 0 success, 1 a PASS/FAIL check failed, 2 usage
or validation error.  Timing goes to stderr only, so output files are a pure
function of the config, the seed and the build.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import __version__
from .config import ConfigError, RunConfig, load_config
from .errors import BudgetExceeded, CocycleError, DegenerateVariance, DomainError
from .families import SCAN_COLUMNS, iterated_winding, scan, verify_winding
from .limitlaws import clt_experiment, ldt_experiment, variance_empirical, variance_gl
from .lyapunov import (burn_in, l1_furstenberg, l1_induced, l1_monte_carlo, l1_series,
                       reference_l1, series_depth, verify_null_word)
from .model import (certify_null_free, cocycle_constant, find_null_words,
                    near_kernel_arcs, require_valid, validate)
from .serialize import dumps_csv, dumps_json, write_text
from .stationary import (Observable, check_stationarity, ergodicity_decay, grid,
                         merge_atoms, perturb_largest, stationary_measure)

COMMANDS = ("validate", "l1", "measure", "ldt", "clt", "variance", "scan", "nullwords", "diagnose")


class UsageError(Exception):
    pass


@dataclass
class Outcome:
    results: dict
    columns: tuple = ()
    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)      # (name, passed, detail)
    warnings: list = field(default_factory=list)
    invalid: bool = False                           # validation failed: exit 2

    def check(self, name, passed, detail=""):
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})


def _gap_ok(a, b, allowed):
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= allowed


# -- commands -----------------------------------------------------------------

def cmd_validate(cfg: RunConfig, seed: int, threads) -> Outcome:
    spec = cfg.cocycle()
    rep = validate(spec)
    out = Outcome({"spec": spec.describe(), "validation": rep.to_dict(),
                   "advisories": rep.advisories},
                  ("check", "passed", "advisory", "detail"),
                  [(c.name, c.passed, c.advisory, c.detail) for c in rep.checks])
    out.invalid = not rep.ok
    return out


def cmd_l1(cfg: RunConfig, seed: int, threads) -> Outcome:
    spec = require_valid(cfg.cocycle())
    r = cfg.run
    depth = r["depth"]
    est = {"series": l1_series(spec, depth)}
    est["furstenberg"] = l1_furstenberg(spec, stationary_measure(spec, r["measure_depth"] or depth))
    if r["mc_n"] > 0 and r["mc_samples"] > 0:
        est["mc_direct"] = l1_monte_carlo(spec, r["mc_n"], r["mc_samples"], seed, threads)
    if r["blocks"] > 0:
        est["mc_induced"] = l1_induced(spec, r["blocks"], seed, threads)
    s = est["series"]
    out = Outcome({"estimates": {k: v.to_dict() for k, v in est.items()}},
                  ("method", "value", "error", "upper_tail_bound", "lower_tail_bound",
                   "std_error", "status", "witness", "gap_to_series"))
    for k, e in est.items():
        gap = e.value - s.value if math.isfinite(e.value) and math.isfinite(s.value) else math.nan
        out.rows.append((k, e.value, e.error, e.upper_tail_bound, e.lower_tail_bound,
                         e.std_error, e.status, e.neg_inf_witness, gap))
    f = est["furstenberg"]
    out.check("series_vs_furstenberg",
              _gap_ok(s.value, f.value, 1e-8 + s.tail_slack + f.tail_slack),
              "|series - furstenberg| <= 1e-8 + tail slack")
    for k in ("mc_direct", "mc_induced"):
        if k in est:
            e = est[k]
            comb = math.sqrt(e.std_error ** 2 + s.tail_slack ** 2)
            out.check(f"{k}_vs_series", _gap_ok(e.value, s.value, 3 * comb),
                      "within 3 combined standard errors")
    pairs = {}
    names = list(est)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            va, vb = est[a].value, est[b].value
            pairs[f"{a}-{b}"] = va - vb if math.isfinite(va) and math.isfinite(vb) else (
                0.0 if va == vb else math.nan)
    out.results["pairwise_gaps"] = pairs
    q0 = float(spec.q0)
    covered = sum(p["mass"] for p in s.profile)
    out.results["series_coverage"] = covered / q0 if q0 > 0 else 0.0
    if q0 > 0 and covered / q0 < 0.999:
        out.warnings.append(f"series depth {depth} covers only {covered / q0:.4g} of the renewal mass")
    if any(e.lower_heuristic and e.lower_tail_bound != 0 for e in est.values()):
        out.warnings.append("series/furstenberg lower tail bounds are heuristic")
    for k, e in est.items():
        if e.status == "suspected_neg_inf":
            out.warnings.append(f"{k}: suspected -inf (witness {e.neg_inf_witness} not verified)")
    return out


def _test_observables():
    return [Observable.of_angle(np.cos, 1.0, "cos"),
            Observable.of_angle(lambda t: np.cos(2 * t), 1.0, "cos2"),
            Observable.of_angle(lambda t: np.sin(2 * t), 1.0, "sin2"),
            Observable.of_angle(lambda t: np.cos(6 * t) * np.sin(t), 1.0, "cos6_sin"),
            Observable.constant(1.0)]


def cmd_measure(cfg: RunConfig, seed: int, threads) -> Outcome:
    spec = require_valid(cfg.cocycle())
    r = cfg.run
    depth = r["measure_depth"] if r["measure_depth"] is not None else series_depth(spec)
    m = stationary_measure(spec, depth)
    merged = merge_atoms(m, r["merge_tol"])
    obs = _test_observables()
    rep = check_stationarity(spec, m, obs)
    neg = check_stationarity(spec, perturb_largest(m), obs)
    sym = spec.sing[0] if spec.is_markov else None
    decay = ergodicity_decay(spec, obs[1], 0.0, math.pi / 2, r["decay_n"], symbol=sym)
    out = Outcome({"depth": depth, "atoms": len(m), "merged_atoms": len(merged),
                   "covered_mass": m.covered_mass, "tail_mass": m.tail_mass,
                   "symbol_masses": m.symbol_masses() if spec.is_markov else None,
                   "symbol_tail": m.symbol_tail,
                   "stationarity": [vars(x) for x in rep.rows],
                   "negative_control": {"passed": neg.passed,
                                        "rows": [vars(x) for x in neg.rows]},
                   "decay": {"n": decay.n, "gap": decay.gap, "C": decay.C, "a": decay.a}},
                  ("symbol", "theta", "weight", "witness"), list(merged.rows()))
    out.check("stationarity", rep.passed, "|int Q phi - int phi| <= 2 ||phi|| tail")
    out.check("mass_identity", abs(m.covered_mass + m.tail_mass - 1.0) <= 1e-12,
              "covered + tail = 1")
    if neg.passed:
        out.warnings.append("perturbed-weight negative control was not detected")
    return out


def cmd_ldt(cfg: RunConfig, seed: int, threads) -> Outcome:
    spec = require_valid(cfg.cocycle())
    r = cfg.run
    ref = reference_l1(spec)
    rep = ldt_experiment(spec, ref.value, r["epsilon"], r["schedule"], r["ldt_samples"],
                         seed, threads)
    out = Outcome({"ldt": rep.to_dict(), "L1_ref_estimate": ref.to_dict()},
                  ("n", "n_cuberoot", "frequency", "wilson_lo", "wilson_hi", "log_frequency",
                   "count", "samples"), list(rep.rows()))
    out.check("ldt_properties", rep.passed, "monotone (one Wilson inversion), decayed, c0 > 0")
    return out


def _sigmas(spec, cfg, seed, threads, L1):
    r = cfg.run
    res = {}
    if not spec.is_markov:
        res["gordin_livsic"] = variance_gl(spec, N_trunc=r["n_trunc"])
    res["empirical"] = variance_empirical(spec, r["n"], r["samples"], L1, seed + 1, threads)
    return res


def cmd_clt(cfg: RunConfig, seed: int, threads) -> Outcome:
    spec = require_valid(cfg.cocycle())
    r = cfg.run
    L1 = reference_l1(spec).value
    src = r["sigma_source"]
    try:
        src = float(src)
    except ValueError:
        pass
    note = None
    if src == "gordin_livsic" and spec.is_markov:
        src = "empirical"
        note = "Gordin-Livsic variance is Bernoulli-only; sigma taken from an empirical batch"
    rep = clt_experiment(spec, r["n"], r["samples"], src, seed, L1, r["mode"],
                         r["ks_threshold"], threads=threads, N_trunc=r["n_trunc"])
    sig = _sigmas(spec, cfg, seed, threads, L1)
    out = Outcome({"clt": rep.to_dict(),
                   "sigma2": {k: float(v.sigma2) for k, v in sig.items()}})
    if len(sig) == 2:
        g, e = sig["gordin_livsic"].sigma2, sig["empirical"].sigma2
        out.results["sigma2_relative_gap"] = abs(g - e) / g if g > 0 else math.inf
    z = np.sort(rep.values)
    ecdf = np.arange(1, z.size + 1) / z.size
    out.columns = ("z", "ecdf", "normal_cdf")
    out.rows = list(zip(z.tolist(), ecdf.tolist(), stats.norm.cdf(z).tolist()))
    if note:
        out.warnings.append(note)
    out.check("ks", rep.passed, f"KS <= {rep.ks_threshold}")
    return out


def cmd_variance(cfg: RunConfig, seed: int, threads) -> Outcome:
    spec = require_valid(cfg.cocycle())
    L1 = reference_l1(spec).value
    sig = _sigmas(spec, cfg, seed, threads, L1)
    out = Outcome({k: v.to_dict() if hasattr(v, "to_dict") else vars(v) for k, v in sig.items()},
                  ("source", "n_trunc", "sigma2", "std_error"))
    if "gordin_livsic" in sig:
        for N in (20.0, 40.0, 80.0):
            v = sig["gordin_livsic"] if N == cfg.run["n_trunc"] else variance_gl(spec, N_trunc=N)
            out.rows.append(("gordin_livsic", N, v.sigma2, ""))
        g, e = sig["gordin_livsic"].sigma2, sig["empirical"].sigma2
        gap = abs(g - e) / g if g > 0 else math.inf
        out.results["relative_gap"] = gap
        out.check("gl_vs_empirical", gap <= 0.15, "relative gap <= 15%")
        out.warnings.extend(sig["gordin_livsic"].warnings)
    else:
        out.warnings.append("Gordin-Livsic variance is implemented for Bernoulli specs only")
    e = sig["empirical"]
    out.rows.append(("empirical", "", e.sigma2, e.std_error))
    return out


def cmd_scan(cfg: RunConfig, seed: int, threads) -> Outcome:
    fam = cfg.family
    if fam is None:
        raise UsageError("scan needs a [family] section")
    fp = cfg.family_params
    if fp["grid"] is not None:
        tg = np.asarray(fp["grid"], dtype=float)
    else:
        if fp["points"] < 1:
            raise UsageError("family 'points' must be >= 1")
        tg = np.linspace(fam.t_lo, fam.t_hi, fp["points"])
    if tg.size == 0:
        raise UsageError("empty parameter grid")
    params = {"depth": fp["depth"], "n": fp["n"], "samples": fp["samples"]}
    rows = scan(fam, tg, fp["method"], params, fp["null_len"], seed, threads)
    wt, wx = fp["winding_t_points"], fp["winding_x_points"]
    t_w = np.linspace(fam.t_lo, fam.t_hi, wt)
    x_w = math.pi * np.arange(wx) / wx
    wind = verify_winding(fam, t_w, x_w, n0=fp["n0"], check_fd=fp["check_fd"] and fp["n0"] == 1)
    res = {"kind": fam.kind, "winding": wind.to_dict(),
           "singular_constant": fam.singular_constant(tg),
           "structural_points": [r.t for r in rows if r.structural],
           "neg_inf_points": [r.t for r in rows if r.estimate is not None and r.estimate.is_neg_inf],
           "failed_points": [r.t for r in rows if r.error]}
    out = Outcome(res, SCAN_COLUMNS, [r.record() for r in rows])
    if fam.kind == "rotation":
        res["c1_hat"] = iterated_winding(fam, np.linspace(fam.t_lo, fam.t_hi, 9), x_w[::8], 3)
        out.check("winding", wind.passed, "c0_hat > 0")
    elif not wind.passed:
        out.warnings.append(f"positive winding fails pointwise: speed {wind.c0_hat:g} at "
                            f"theta={wind.witness_point.theta:.6g}")
    if res["failed_points"]:
        out.warnings.append(f"{len(res['failed_points'])} scan points failed")
    out.check("scan_points", not res["failed_points"], "every grid point produced an estimate")
    return out


def cmd_nullwords(cfg: RunConfig, seed: int, threads) -> Outcome:
    spec = require_valid(cfg.cocycle())
    r = cfg.run
    found = find_null_words(spec, r["null_max_len"])
    res = {"max_len": r["null_max_len"], "null_words": found}
    if not found:
        cert = certify_null_free(spec, r["certify_len"])
        res["certificate"] = vars(cert)
    rows = [(w, len(w) - 1, verify_null_word(spec, w)) for w in found]
    return Outcome(res, ("word", "multiplied_letters", "verified"), rows)


def cmd_diagnose(cfg: RunConfig, seed: int, threads) -> Outcome:
    spec = cfg.cocycle()
    rep = validate(spec)
    res = {"spec": spec.describe(), "validation": rep.to_dict()}
    out = Outcome(res, ("letter", "class", "singular", "norm", "min_singular",
                        "range_theta", "kernel_theta", "stationary_weight"))
    if not rep.ok:
        out.invalid = True
        return out
    r = cfg.run
    depth = series_depth(spec)
    res.update({"q0": spec.q0, "stationary": spec.stat, "cocycle_constant": cocycle_constant(spec),
                "burn_in": burn_in(spec), "series_depth_1e-12": depth,
                "short_null_words": find_null_words(spec, min(r["null_max_len"], 4))})
    try:
        arcs = near_kernel_arcs(spec, r["kernel_eps"])
        res["near_kernel_arcs"] = {"eps": r["kernel_eps"], "arcs": arcs.arcs,
                                   "total_length": arcs.total_length, "C": arcs.C}
    except ValueError as exc:
        out.warnings.append(f"near-kernel arcs: {exc}")
    for i in range(spec.k):
        sing = bool(spec.sing_mask[i])
        out.rows.append((i + 1, spec.classes[i].value, sing, spec.letter_norms[i],
                         spec.min_singular[i], spec.range_theta[i] if sing else "",
                         spec.kernel_theta[i] if sing else "", spec.stat[i]))
    return out


HANDLERS = {"validate": cmd_validate, "l1": cmd_l1, "measure": cmd_measure, "ldt": cmd_ldt,
            "clt": cmd_clt, "variance": cmd_variance, "scan": cmd_scan,
            "nullwords": cmd_nullwords, "diagnose": cmd_diagnose}


# -- driver ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="run configuration file")
    common.add_argument("--out", help="output directory (default: [run] out)")
    common.add_argument("--seed", type=int, help="master seed, overrides [run] seed")
    common.add_argument("--threads", type=int, help="worker threads (default: all cores)")
    common.add_argument("--format", choices=("csv", "json", "both"), help="output formats")
    common.add_argument("--label", help="fixed output label instead of a timestamp")
    p = argparse.ArgumentParser(prog="cocyclelab",
                                description="Lyapunov exponents of mixed singular 2x2 cocycles.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=HANDLERS[name].__doc__ or name)
    return p


def write_outputs(command, cfg, seed, outcome: Outcome, out_dir, fmt, label) -> list:
    os.makedirs(out_dir, exist_ok=True)
    stem = os.path.join(out_dir, f"{command}-{label}")
    paths = []
    if fmt in ("json", "both"):
        doc = {"command": command, "version": __version__, "config": cfg.text, "seed": seed,
               "results": outcome.results, "checks": outcome.checks,
               "warnings": outcome.warnings,
               "passed": all(c["passed"] for c in outcome.checks) and not outcome.invalid}
        write_text(stem + ".json", dumps_json(doc))
        paths.append(stem + ".json")
    if fmt in ("csv", "both") and outcome.columns:
        write_text(stem + ".csv", dumps_csv(outcome.columns, outcome.rows))
        paths.append(stem + ".csv")
    return paths


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        cfg = load_config(args.config)
        seed = args.seed if args.seed is not None else cfg.seed
        if not 0 <= seed < 2 ** 64:
            raise UsageError("seed must be an unsigned 64-bit integer")
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be >= 1")
        outcome = HANDLERS[args.command](cfg, seed, args.threads)
    except (ConfigError, UsageError) as exc:
        print(f"cocyclelab: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, DegenerateVariance, BudgetExceeded) as exc:
        print(f"cocyclelab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except CocycleError as exc:
        # validation failures (SpecError, PrimitivityError, ...)
        print(f"cocyclelab: invalid spec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    fmt = args.format or cfg.run["format"]
    out_dir = args.out or cfg.run["out"]
    label = args.label or cfg.run["label"] or time.strftime("%Y%m%dT%H%M%S")
    paths = write_outputs(args.command, cfg, seed, outcome, out_dir, fmt, label)
    for c in outcome.checks:
        print(f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}: {c['detail']}")
    for w in outcome.warnings:
        print(f"warning: {w}", file=sys.stderr)
    for path in paths:
        print(path)
    print(f"[{args.command}] {time.perf_counter() - t0:.2f} s", file=sys.stderr)
    if outcome.invalid:
        for c in outcome.results.get("validation", {}).get("checks", []):
            if not c["passed"] and not c["advisory"]:
                print(f"invalid: {c['name']}: {c['detail']}", file=sys.stderr)
        return 2
    return 0 if all(c["passed"] for c in outcome.checks) else 1
