"""Sweep engines behind the command line: verify, identities, bench.

``run_verify`` sweeps prime-power fields, compares every formula trace
against the exact point count, and assembles a report whose JSON form is
byte-identical across runs for a fixed (config, seed): records are flat
dicts with a fixed key order, generation order is deterministic, and no
wall-clock data is included unless timing fields are requested.

q = 9 is special-cased: all its records are informational (status "info")
and never count toward pass/fail; the x-shape formula is still evaluated
there so the empirical outcome is on record.  Characteristic-3 fields other
than q = 9 get a skip record for the short-curve mod-4 route, which would
divide by 9 h^2 = 0.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .characters import check_orthogonality, unit_roots
from .charsums import (
    _gauss_dft,
    _gauss_direct,
    gauss_sum_table,
    jacobi_sum_matrix,
    theta_expansion_residual,
)
from .curves import (
    CurveSpec,
    is_singular,
    trace_e1,
    trace_e2,
    trace_naive,
    trace_short_quartic,
    trace_short_sextic,
)
from .errors import NotApplicable, PrecisionFailure
from .fields import DEFAULT_MAX_Q, Field, build_field, factorize, prime_powers

METHOD_ORDER = ("thm_3_1", "thm_1_1", "thm_3_2", "thm_1_2")
MOD6_METHODS = ("thm_3_1", "thm_1_1")
MOD4_METHODS = ("thm_3_2", "thm_1_2")

RECORD_FIELDS = ("q", "p", "e", "method", "shape", "coeffs", "aux", "status",
                 "reason", "trace_formula", "trace_naive", "raw_re", "raw_im",
                 "residual_to_integer", "imag_residual", "agree")

_THEOREM_FN = {
    "thm_3_1": trace_e1,
    "thm_3_2": trace_e2,
    "thm_1_1": trace_short_sextic,
    "thm_1_2": trace_short_quartic,
}
_CURVE_FOR = {
    "thm_3_1": CurveSpec.e1,
    "thm_3_2": CurveSpec.e2,
    "thm_1_1": CurveSpec.short,
    "thm_1_2": CurveSpec.short,
}
_COEFF_NAMES = {
    "thm_3_1": ("c", "d"),
    "thm_3_2": ("f", "g"),
    "thm_1_1": ("a", "b"),
    "thm_1_2": ("a", "b"),
}


@dataclass
class VerifyConfig:
    q_min: int = 5
    q_max: int = 100
    congruence: str = "both"  # mod6 | mod4 | both
    theorems: tuple[str, ...] = ()  # empty means all theorems of the congruence
    sampling: str = "auto"  # exhaustive | random | auto
    samples: int = 200
    seed: int | None = None
    exhaustive_limit: int = 49  # under "auto", q at most this is enumerated fully
    jobs: int = 1
    timing: bool = False
    max_residual: float = 1e-4  # report-level bound on |raw - round(raw)|
    max_imag_coeff: float = 1e-6  # bound on |Im raw| as a multiple of q

    def resolved_theorems(self) -> tuple[str, ...]:
        base = {"mod6": MOD6_METHODS, "mod4": MOD4_METHODS,
                "both": METHOD_ORDER}[self.congruence]
        if not self.theorems:
            return tuple(base)
        return tuple(m for m in METHOD_ORDER if m in self.theorems)

    def validate(self) -> None:
        if self.congruence not in ("mod6", "mod4", "both"):
            raise ValueError(f"congruence must be mod6, mod4, or both: {self.congruence!r}")
        if self.sampling not in ("exhaustive", "random", "auto"):
            raise ValueError(f"sampling must be exhaustive, random, or auto: {self.sampling!r}")
        if not 5 <= self.q_min <= self.q_max:
            raise ValueError(f"need 5 <= q_min <= q_max, got [{self.q_min}, {self.q_max}]")
        if self.q_max > DEFAULT_MAX_Q:
            raise ValueError(f"q_max exceeds the field size bound {DEFAULT_MAX_Q}")
        if self.samples < 1 or self.jobs < 1:
            raise ValueError("samples and jobs must be positive")
        if self.max_residual <= 0 or self.max_imag_coeff <= 0:
            raise ValueError("tolerance overrides must be positive")
        for m in self.theorems:
            if m not in METHOD_ORDER:
                raise ValueError(f"unknown theorem token {m!r}")
        allowed = set({"mod6": MOD6_METHODS, "mod4": MOD4_METHODS,
                       "both": METHOD_ORDER}[self.congruence])
        for m in self.theorems:
            if m not in allowed:
                raise ValueError(f"{m} does not belong to congruence class {self.congruence}")
        if self._will_sample() and self.seed is None:
            raise ValueError("random sampling requires an explicit --seed")

    def _will_sample(self) -> bool:
        if self.sampling == "exhaustive":
            return False
        if self.sampling == "random":
            return True
        return self.q_max > self.exhaustive_limit


def expected_field_count(q_min: int, q_max: int, congruences: tuple[int, ...]) -> int:
    """Count odd prime powers in range by per-integer factoring.

    Deliberately independent of ``prime_powers`` (no sieve, no power loop)
    so sweep coverage is checked against a second opinion.
    """
    count = 0
    for num in range(max(q_min, 5), q_max + 1):
        fac = factorize(num)
        if len(fac) != 1:
            continue
        if 2 in fac:
            continue
        if congruences and not any(num % m == 1 for m in congruences):
            continue
        count += 1
    return count


# ---------------------------------------------------------------------------
# case generation


def _batched_naive(field: Field, base: np.ndarray, consts: np.ndarray) -> np.ndarray:
    """Naive traces for the family rhs(x) = base(x) + const, one per const."""
    signs = field.quadratic_signs()[field.vec_add(base[None, :], consts[:, None])]
    return -signs.sum(axis=1, dtype=np.int64)


def _exhaustive_cases(field: Field, method: str) -> list[tuple[int, int, int]]:
    """All precondition-satisfying (u, v, naive_trace) for the method, in order."""
    q = field.q
    xs = field.elements()
    fi = field.from_int
    out: list[tuple[int, int, int]] = []
    if method == "thm_3_1":
        cubes = field.vec_pow(xs, 3)
        squares = field.vec_pow(xs, 2)
        for c in range(1, q):
            base = field.vec_add(cubes, field.vec_mul(c, squares))
            d_sing = field.neg(field.div(field.mul(fi(4), field.pow(c, 3)), fi(27)))
            ds = np.array([d for d in range(1, q) if d != d_sing], dtype=np.int64)
            traces = _batched_naive(field, base, ds)
            out.extend((c, int(d), int(t)) for d, t in zip(ds, traces))
    elif method == "thm_3_2":
        cubes = field.vec_pow(xs, 3)
        squares = field.vec_pow(xs, 2)
        signs_table = field.quadratic_signs()
        for f in range(1, q):
            base = field.vec_add(cubes, field.vec_mul(f, squares))
            g_sing = field.div(field.pow(f, 2), fi(4))
            gs = np.array([g for g in range(1, q) if g != g_sing], dtype=np.int64)
            rhs = field.vec_add(base[None, :], field.vec_mul(gs[:, None], xs[None, :]))
            traces = -signs_table[rhs].sum(axis=1, dtype=np.int64)
            out.extend((f, int(g), int(t)) for g, t in zip(gs, traces))
    elif method == "thm_1_1":
        cubes = field.vec_pow(xs, 3)
        for a in range(1, q):
            if not field.sqrt(field.neg(field.div(a, fi(3)))):
                continue
            bad = set(field.sqrt(field.neg(field.div(field.mul(fi(4), field.pow(a, 3)), fi(27)))))
            base = field.vec_add(cubes, field.vec_mul(a, xs))
            bs = np.array([b for b in range(q) if b not in bad], dtype=np.int64)
            traces = _batched_naive(field, base, bs)
            out.extend((a, int(b), int(t)) for b, t in zip(bs, traces))
    elif method == "thm_1_2":
        cubes = field.vec_pow(xs, 3)
        for a in range(q):
            base = field.vec_add(cubes, field.vec_mul(a, xs))
            roots_exist = set(int(v) for v in field.vec_neg(base[1:]))  # b with a root x != 0
            if a == 0:
                bad = {0}
            else:
                bad = set(field.sqrt(field.neg(field.div(field.mul(fi(4), field.pow(a, 3)), fi(27)))))
            bs = np.array([b for b in range(q) if b in roots_exist and b not in bad],
                          dtype=np.int64)
            if bs.size == 0:
                continue
            traces = _batched_naive(field, base, bs)
            out.extend((a, int(b), int(t)) for b, t in zip(bs, traces))
    else:
        raise ValueError(f"unknown method {method!r}")
    return out


def _random_cases(field: Field, method: str, rng: random.Random,
                  samples: int) -> tuple[list[tuple[int, int, None]], int]:
    """Uniform coefficient draws, rejecting inapplicable or singular combos."""
    q = field.q
    fi = field.from_int
    out: list[tuple[int, int, None]] = []
    rejections = 0
    attempts_cap = 4000 * samples
    attempts = 0
    while len(out) < samples:
        attempts += 1
        if attempts > attempts_cap:
            raise RuntimeError(f"sampling for {method} at q={q} rejected too often")
        if method == "thm_3_1":
            u, v = rng.randrange(1, q), rng.randrange(1, q)
            ok = v != field.neg(field.div(field.mul(fi(4), field.pow(u, 3)), fi(27)))
        elif method == "thm_3_2":
            u, v = rng.randrange(1, q), rng.randrange(1, q)
            ok = v != field.div(field.pow(u, 2), fi(4))
        elif method == "thm_1_1":
            u, v = rng.randrange(1, q), rng.randrange(q)
            ok = bool(field.sqrt(field.neg(field.div(u, fi(3))))) and \
                field.add(field.mul(fi(4), field.pow(u, 3)),
                          field.mul(fi(27), field.pow(v, 2))) != 0
        elif method == "thm_1_2":
            u, v = rng.randrange(q), rng.randrange(q)
            ok = any(r != 0 for r in field.cubic_roots(u, v)) and \
                field.add(field.mul(fi(4), field.pow(u, 3)),
                          field.mul(fi(27), field.pow(v, 2))) != 0
        else:
            raise ValueError(f"unknown method {method!r}")
        if ok:
            out.append((u, v, None))
        else:
            rejections += 1
    return out, rejections


# ---------------------------------------------------------------------------
# verify


def _blank_record(field: Field, method: str) -> dict:
    return {"q": field.q, "p": field.p, "e": field.e, "method": method,
            "shape": "e1" if method == "thm_3_1" else "e2" if method == "thm_3_2" else "short",
            "coeffs": "", "aux": "", "status": "", "reason": "",
            "trace_formula": None, "trace_naive": None, "raw_re": None,
            "raw_im": None, "residual_to_integer": None, "imag_residual": None,
            "agree": None}


def _case_record(field: Field, method: str, u: int, v: int, naive: int | None,
                 informational: bool, config: VerifyConfig) -> dict:
    rec = _blank_record(field, method)
    names = _COEFF_NAMES[method]
    rec["coeffs"] = f"{names[0]}={field.format_element(u)} {names[1]}={field.format_element(v)}"
    if naive is None:
        naive = trace_naive(field, _CURVE_FOR[method](u, v)).trace
    rec["trace_naive"] = naive
    start = time.perf_counter() if config.timing else 0.0
    try:
        rep = _THEOREM_FN[method](field, u, v)
    except PrecisionFailure as exc:
        rec["status"] = "info" if informational else "fail"
        rec["reason"] = f"precision_failure: {exc}"
        return rec
    except NotApplicable as exc:
        rec["status"] = "skip"
        rec["reason"] = exc.reason
        return rec
    finally:
        if config.timing:
            rec["elapsed_ms"] = round((time.perf_counter() - start) * 1000.0, 4)
    rec["trace_formula"] = rep.trace
    rec["raw_re"] = rep.raw.real
    rec["raw_im"] = rep.raw.imag
    rec["residual_to_integer"] = rep.residual_to_integer
    rec["imag_residual"] = rep.imag_residual
    for key in ("k", "h"):
        if key in rep.auxiliary:
            rec["aux"] = f"{key}={rep.auxiliary[key]}"
    agree = rep.trace == naive
    rec["agree"] = agree
    if not agree:
        rec["reason"] = "trace_mismatch"
    elif rep.residual_to_integer >= config.max_residual or \
            rep.imag_residual >= config.max_imag_coeff * field.q:
        agree = False
        rec["reason"] = "residual_too_large"
    rec["status"] = "info" if informational else ("pass" if agree else "fail")
    return rec


def _sweep_field(p: int, e: int, q: int, methods: tuple[str, ...],
                 config: VerifyConfig) -> tuple[list[dict], int]:
    field = build_field(p, e)
    records: list[dict] = []
    rejections = 0
    informational = q == 9
    for method in METHOD_ORDER:
        if method not in methods:
            continue
        if method in MOD6_METHODS and q % 6 != 1:
            continue
        if method in MOD4_METHODS and q % 4 != 1:
            continue
        if method == "thm_1_2" and q == 9:
            rec = _blank_record(field, method)
            rec["status"], rec["reason"] = "info", "excluded_q"
            if config.timing:
                rec["elapsed_ms"] = None
            records.append(rec)
            continue
        if method == "thm_1_2" and field.p == 3:
            rec = _blank_record(field, method)
            rec["status"], rec["reason"] = "skip", "characteristic_three"
            if config.timing:
                rec["elapsed_ms"] = None
            records.append(rec)
            continue
        exhaustive = config.sampling == "exhaustive" or (
            config.sampling == "auto" and q <= config.exhaustive_limit)
        if exhaustive:
            cases: list = _exhaustive_cases(field, method)
        else:
            rng = random.Random(f"{config.seed}:{q}:{method}")
            cases, rej = _random_cases(field, method, rng, config.samples)
            rejections += rej
        for u, v, naive in cases:
            records.append(_case_record(field, method, u, v, naive,
                                        informational, config))
    return records, rejections


def run_verify(config: VerifyConfig) -> dict:
    config.validate()
    methods = config.resolved_theorems()
    by_q: dict[int, tuple[int, int]] = {}
    congruences: list[int] = []
    if any(m in MOD6_METHODS for m in methods):
        congruences.append(6)
        for p, e, q in prime_powers(config.q_min, config.q_max, 6):
            by_q[q] = (p, e)
    if any(m in MOD4_METHODS for m in methods):
        congruences.append(4)
        for p, e, q in prime_powers(config.q_min, config.q_max, 4):
            by_q[q] = (p, e)
    tasks = [(p, e, q) for q, (p, e) in sorted(by_q.items())]

    results: dict[int, tuple[list[dict], int]] = {}
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            futures = {q: pool.submit(_sweep_field, p, e, q, methods, config)
                       for p, e, q in tasks}
            results = {q: fut.result() for q, fut in futures.items()}
    else:
        for p, e, q in tasks:
            results[q] = _sweep_field(p, e, q, methods, config)

    records: list[dict] = []
    rejections = 0
    for q, (recs, rej) in sorted(results.items()):
        records.extend(recs)
        rejections += rej

    tallies = {"pass": 0, "fail": 0, "skip": 0, "info": 0}
    skip_reasons: dict[str, int] = {}
    max_resid = 0.0
    max_imag = 0.0
    for rec in records:
        tallies[rec["status"]] += 1
        if rec["status"] == "skip":
            skip_reasons[rec["reason"]] = skip_reasons.get(rec["reason"], 0) + 1
        if rec["residual_to_integer"] is not None:
            max_resid = max(max_resid, rec["residual_to_integer"])
            max_imag = max(max_imag, rec["imag_residual"])

    expected = expected_field_count(config.q_min, config.q_max, tuple(congruences))
    visited = len({rec["q"] for rec in records})
    summary = {
        "cases": len(records),
        "passed": tallies["pass"],
        "failed": tallies["fail"],
        "skipped": tallies["skip"],
        "info": tallies["info"],
        "skip_reasons": dict(sorted(skip_reasons.items())),
        "fields_visited": visited,
        "fields_expected": expected,
        "coverage_ok": visited == expected,
        "sampling_rejections": rejections,
        "max_residual_to_integer": max_resid,
        "max_imag_residual": max_imag,
    }
    report = {
        "command": "verify",
        "version": __version__,
        "config": asdict(config),
        "records": records,
        "summary": summary,
    }
    report["config"]["theorems"] = list(methods)
    return report


def verify_passed(report: dict) -> bool:
    return report["summary"]["failed"] == 0 and report["summary"]["coverage_ok"]


# ---------------------------------------------------------------------------
# identities


def _suite_record(field: Field, suite: str, residuals: np.ndarray, tol: float) -> dict:
    residuals = np.asarray(residuals, dtype=np.float64)
    return {"q": field.q, "p": field.p, "e": field.e, "suite": suite,
            "cases": int(residuals.size),
            "failures": int((residuals >= tol).sum()),
            "max_residual": float(residuals.max()) if residuals.size else 0.0,
            "tolerance": tol}


def _gauss_binomial_suite(field: Field) -> np.ndarray:
    """Residuals of the binomial factorization for every pair m != n mod q-1.

    The binomial side comes from the all-pairs direct Jacobi matrix, the
    Gauss side from the cached table, so the two sides stay independent.
    """
    n = field.q - 1
    q = field.q
    g = gauss_sum_table(field).values
    jac = jacobi_sum_matrix(field)
    idx = np.arange(n, dtype=np.int64)
    signs = np.where(idx % 2 == 0, 1.0, -1.0)
    binom = signs[None, :] / q * jac[:, (-idx) % n]
    lhs = g[:, None] * g[(-idx) % n][None, :]
    rhs = q * binom * g[(idx[:, None] - idx[None, :]) % n] * signs[None, :]
    resid = np.abs(lhs - rhs)
    offdiag = idx[:, None] != idx[None, :]
    return resid[offdiag]


def _davenport_hasse_suite(field: Field, m: int) -> np.ndarray:
    n = field.q - 1
    g = gauss_sum_table(field).values
    step = n // m
    psi = np.arange(n, dtype=np.int64)
    lhs = np.ones(n, dtype=np.complex128)
    for j in range(m):
        lhs = lhs * g[(psi + j * step) % n]
    unit_const = np.prod(g[(np.arange(m) * step) % n])
    m_to_minus_m = field.inv(field.pow(field.from_int(m), m))
    chi_vals = unit_roots(field)[psi * field.dlog(m_to_minus_m) % n]
    rhs = -g[m * psi % n] * chi_vals * unit_const
    return np.abs(lhs - rhs)


def identity_suites_for_field(field: Field) -> list[dict]:
    q = field.q
    n = q - 1
    recs = []
    for kind in ("char_sum_over_x", "char_sum_over_n", "delta_identity"):
        params = range(n) if kind == "char_sum_over_x" else range(q)
        residuals = np.array([check_orthogonality(field, kind, t) for t in params])
        recs.append(_suite_record(field, kind, residuals, 1e-9 * q))
    theta = np.array([theta_expansion_residual(field, alpha) for alpha in range(1, q)])
    recs.append(_suite_record(field, "theta_expansion", theta, 1e-8 * q))
    g = gauss_sum_table(field).values
    idx = np.arange(1, n, dtype=np.int64)
    signs = np.where(idx % 2 == 0, 1.0, -1.0)
    inverse = np.abs(g[idx] * g[(-idx) % n] - q * signs)
    recs.append(_suite_record(field, "gauss_inverse", inverse, 1e-8 * q))
    for m in (2, 3):
        if n % m == 0:
            recs.append(_suite_record(field, f"davenport_hasse_m{m}",
                                      _davenport_hasse_suite(field, m),
                                      1e-8 * q ** (m / 2)))
    recs.append(_suite_record(field, "gauss_binomial", _gauss_binomial_suite(field), 1e-8 * q))
    return recs


def run_identities(q_min: int = 5, q_max: int = 200) -> dict:
    if not 5 <= q_min <= q_max:
        raise ValueError(f"need 5 <= q_min <= q_max, got [{q_min}, {q_max}]")
    if q_max > DEFAULT_MAX_Q:
        raise ValueError(f"q_max exceeds the field size bound {DEFAULT_MAX_Q}")
    records: list[dict] = []
    fields_run = 0
    for p, e, q in prime_powers(q_min, q_max):
        field = build_field(p, e)
        records.extend(identity_suites_for_field(field))
        fields_run += 1
    summary = {
        "fields": fields_run,
        "fields_expected": expected_field_count(q_min, q_max, ()),
        "suites": len(records),
        "cases": sum(r["cases"] for r in records),
        "failures": sum(r["failures"] for r in records),
        "worst_margin": max((r["max_residual"] / r["tolerance"] for r in records),
                            default=0.0),
    }
    summary["coverage_ok"] = summary["fields"] == summary["fields_expected"]
    return {"command": "identities", "version": __version__,
            "config": {"q_min": q_min, "q_max": q_max},
            "records": records, "summary": summary}


def identities_passed(report: dict) -> bool:
    return report["summary"]["failures"] == 0 and report["summary"]["coverage_ok"]


# ---------------------------------------------------------------------------
# bench


def resolve_bench_q(q: int) -> tuple[int, int, int]:
    """Smallest odd prime power >= max(q, 5), as (p, e, q)."""
    num = max(q, 5)
    while True:
        fac = factorize(num)
        if len(fac) == 1 and 2 not in fac:
            p, e = next(iter(fac.items()))
            return p, e, num
        num += 1


def _best_of(fn, reps: int) -> float:
    best = float("inf")
    for _ in range(reps):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best * 1000.0


def _first_valid_e1(field: Field) -> tuple[int, int]:
    for c in range(1, field.q):
        for d in range(1, field.q):
            if not is_singular(field, CurveSpec.e1(c, d)):
                return c, d
    raise RuntimeError("no nonsingular curve found")


def _first_valid_e2(field: Field) -> tuple[int, int]:
    for f in range(1, field.q):
        for g in range(1, field.q):
            if not is_singular(field, CurveSpec.e2(f, g)):
                return f, g
    raise RuntimeError("no nonsingular curve found")


LADDER = (67, 127, 257, 509, 1021, 2053, 4099, 8191)


def run_bench(q: int = 10009, reps: int = 3) -> dict:
    if reps < 1:
        raise ValueError("reps must be positive")
    p, e, q = resolve_bench_q(q)
    ladder = sorted({lq for lq in LADDER if lq < q} | {q})
    table = []
    for lq in ladder:
        lp, le, lq = resolve_bench_q(lq)
        field = build_field(lp, le)
        t_direct = _best_of(lambda: _gauss_direct(field), reps)
        t_dft = _best_of(lambda: _gauss_dft(field), reps)
        table.append({"q": lq, "direct_ms": round(t_direct, 3),
                      "dft_ms": round(t_dft, 3),
                      "speedup": round(t_direct / t_dft, 2) if t_dft else float("inf")})
    crossover = next((row["q"] for row in table if row["dft_ms"] < row["direct_ms"]), None)

    start = time.perf_counter()
    field = build_field(p, e)
    build_ms = (time.perf_counter() - start) * 1000.0
    start = time.perf_counter()
    gauss_sum_table(field)
    gauss_ms = (time.perf_counter() - start) * 1000.0
    trace_times = {}
    if q % 6 == 1:
        c, d = _first_valid_e1(field)
        first = _best_of(lambda: trace_e1(field, c, d), 1)
        warm = _best_of(lambda: trace_e1(field, c, d), reps)
        naive = _best_of(lambda: trace_naive(field, CurveSpec.e1(c, d)), reps)
        trace_times["mod6"] = {"coeffs": f"c={c} d={d}", "first_ms": round(first, 3),
                               "warm_ms": round(warm, 3), "naive_ms": round(naive, 3)}
    if q % 4 == 1:
        f2, g2 = _first_valid_e2(field)
        first = _best_of(lambda: trace_e2(field, f2, g2), 1)
        warm = _best_of(lambda: trace_e2(field, f2, g2), reps)
        naive = _best_of(lambda: trace_naive(field, CurveSpec.e2(f2, g2)), reps)
        trace_times["mod4"] = {"coeffs": f"f={f2} g={g2}", "first_ms": round(first, 3),
                               "warm_ms": round(warm, 3), "naive_ms": round(naive, 3)}
    return {"command": "bench", "version": __version__,
            "config": {"q": q, "p": p, "e": e, "reps": reps},
            "crossover_table": table,
            "crossover_q": crossover,
            "field_build_ms": round(build_ms, 3),
            "gauss_table_ms": round(gauss_ms, 3),
            "trace_times": trace_times}


# ---------------------------------------------------------------------------
# serialization


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def report_to_csv(report: dict) -> str:
    records = report.get("records", [])
    if not records:
        return ""
    fieldnames = list(records[0].keys())
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        row = {}
        for key in fieldnames:
            val = rec.get(key)
            if val is None:
                row[key] = ""
            elif isinstance(val, bool):
                row[key] = "true" if val else "false"
            else:
                row[key] = val
        writer.writerow(row)
    return buf.getvalue()


def report_to_text(report: dict) -> str:
    lines = []
    cmd = report.get("command", "?")
    if cmd == "verify":
        s = report["summary"]
        lines.append(f"verify: {s['cases']} cases over {s['fields_visited']} fields "
                     f"(expected {s['fields_expected']})")
        lines.append(f"  passed={s['passed']} failed={s['failed']} "
                     f"skipped={s['skipped']} info={s['info']}")
        if s["skip_reasons"]:
            lines.append("  skip reasons: " +
                         ", ".join(f"{k}={v}" for k, v in s["skip_reasons"].items()))
        lines.append(f"  max residual to integer: {s['max_residual_to_integer']:.3e}")
        lines.append(f"  max imaginary residual:  {s['max_imag_residual']:.3e}")
        lines.append(f"  sampling rejections: {s['sampling_rejections']}")
        shown = 0
        for rec in report["records"]:
            if rec["status"] == "fail" and shown < 20:
                lines.append(f"  FAIL q={rec['q']} {rec['method']} {rec['coeffs']}: "
                             f"formula={rec['trace_formula']} naive={rec['trace_naive']} "
                             f"{rec['reason']}")
                shown += 1
        verdict = "OK" if verify_passed(report) else "FAILED"
        lines.append(f"result: {verdict}")
    elif cmd == "identities":
        s = report["summary"]
        lines.append(f"identities: {s['cases']} cases in {s['suites']} suites over "
                     f"{s['fields']} fields (expected {s['fields_expected']})")
        for rec in report["records"]:
            if rec["failures"]:
                lines.append(f"  FAIL q={rec['q']} {rec['suite']}: "
                             f"{rec['failures']}/{rec['cases']} over tolerance "
                             f"(max {rec['max_residual']:.3e} vs {rec['tolerance']:.3e})")
        lines.append(f"  worst residual/tolerance margin: {s['worst_margin']:.3e}")
        verdict = "OK" if identities_passed(report) else "FAILED"
        lines.append(f"result: {verdict}")
    elif cmd == "bench":
        cfg = report["config"]
        lines.append(f"bench at q={cfg['q']} (p={cfg['p']}, e={cfg['e']}), "
                     f"best of {cfg['reps']}")
        lines.append(f"  field build: {report['field_build_ms']} ms, "
                     f"gauss table: {report['gauss_table_ms']} ms")
        lines.append(f"  {'q':>8} {'direct ms':>12} {'dft ms':>10} {'speedup':>9}")
        for row in report["crossover_table"]:
            lines.append(f"  {row['q']:>8} {row['direct_ms']:>12} "
                         f"{row['dft_ms']:>10} {row['speedup']:>9}")
        lines.append(f"  empirical crossover: q = {report['crossover_q']}")
        for name, times in report["trace_times"].items():
            lines.append(f"  {name} trace ({times['coeffs']}): "
                         f"first {times['first_ms']} ms, warm {times['warm_ms']} ms, "
                         f"naive {times['naive_ms']} ms")
    else:
        lines.append(json.dumps(report, indent=2))
    return "\n".join(lines) + "\n"


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return report_to_json(report)
    if fmt == "csv":
        return report_to_csv(report)
    if fmt == "text":
        return report_to_text(report)
    raise ValueError(f"unknown format {fmt!r}")


def write_report(text: str, output: str | None) -> None:
    """Write to the path (resolved against FFHYPER_OUTPUT_DIR if relative)."""
    if output is None:
        print(text, end="")
        return
    base = os.environ.get("FFHYPER_OUTPUT_DIR")
    if base and not os.path.isabs(output):
        output = os.path.join(base, output)
    with open(output, "w") as handle:
        handle.write(text)
