"""Verification campaigns: exact quantities vs asymptotic predictions.

Each campaign produces a CampaignReport whose rendered output (CSV or JSON)
is byte-deterministic for a fixed config, so repeated runs can be diffed.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import asymptotics, moments, schur
from .config import CampaignConfig, ConfigError, config_echo
from .partitions import Partition, almost_staircase, staircase
from .weights import WeightSpectrum, perturb, profile, realize

CAMPAIGN_NAMES = ("verify-t17", "verify-identities", "compare-p28", "verify-pp1", "moments")

CONDITIONING_FLAG_THRESHOLD = 10.0


@dataclass
class CampaignReport:
    campaign: str
    config: dict
    columns: list[str]
    rows: list[dict]
    summary: dict
    passed: bool

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ConfigError(f"unknown output format {fmt!r}")

    def to_json(self) -> str:
        payload = {
            "campaign": self.campaign,
            "config": self.config,
            "columns": self.columns,
            "rows": self.rows,
            "summary": self.summary,
            "passed": self.passed,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("# campaign: " + self.campaign + "\r\n")
        buf.write("# config: " + json.dumps(self.config, sort_keys=True) + "\r\n")
        buf.write("# summary: " + json.dumps(self.summary, sort_keys=True) + "\r\n")
        buf.write("# passed: " + ("true" if self.passed else "false") + "\r\n")
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_csv_cell(row.get(c)) for c in self.columns])
        return buf.getvalue()


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.15g}"
    return str(value)


def _require(config: CampaignConfig, *fields: str) -> None:
    missing = [f for f in fields if getattr(config, f) in (None, ())]
    if missing:
        raise ConfigError(f"missing config fields: {missing}")


def _exact_perturbations(config: CampaignConfig) -> tuple[Fraction, ...]:
    """Exact campaigns evaluate Schur values over the rationals, so the
    perturbed entries must be positive rationals."""
    out = []
    for i, u in enumerate(config.perturbations):
        if not isinstance(u, Fraction):
            raise ConfigError(
                f"perturbations[{i}]={u} is complex; exact campaigns require "
                f"real positive rational perturbations"
            )
        if u <= 0:
            raise ConfigError(f"perturbations[{i}]={u} must be positive")
        out.append(u)
    return tuple(out)


def _lambda1(alpha1: Fraction, N: int) -> int:
    return math.floor(alpha1 * N)


def _splice_check(lam1: int, m: int, N: int) -> None:
    floor_part = (m - 1) * (N - 2) if N >= 2 else 0
    if lam1 < floor_part:
        raise ConfigError(
            f"lambda1={lam1} at N={N} is below the staircase tail {floor_part}; "
            f"the spliced partition is invalid (raise alpha1)"
        )


def _ladder_row(config: CampaignConfig, N: int) -> dict:
    """Exact quantities shared by the convergence campaigns at one N."""
    spectrum = config.spectrum
    m = config.m
    us = _exact_perturbations(config)
    X = realize(spectrum, N)
    W = perturb(X, us)
    lam1 = _lambda1(config.alpha1, N)
    _splice_check(lam1, m, N)
    lam = almost_staircase(m, N, (lam1,))
    s1, s2, s3 = schur.ratio_factors(lam, W.entries, X.entries, m)
    n_float = float(N)
    log_s1 = schur.log_fraction(s1) / n_float
    log_s3 = schur.log_fraction(s3) / n_float
    exact = schur.log_fraction(s1 * s2 * s3) / n_float
    limit = asymptotics.theorem_limit(spectrum, m, X.entries[: config.k], us)
    y = (lam1 + N - 1) / (m * N)
    saddle = None
    if y > 1:
        saddle = asymptotics.steepest_value(profile(spectrum, m), lam1, N, m)
    return {
        "N": N,
        "lambda1": lam1,
        "y": y,
        "exact_log_ratio": exact,
        "limit_value": limit.real,
        "abs_error": abs(exact - limit.real),
        "log_ratio_w": log_s1,
        "log_ratio_x": log_s3,
        "cancellation_residual": log_s1 + log_s3,
        "saddle_estimate": saddle,
    }


def _ladder_rows(config: CampaignConfig, jobs: int) -> list[dict]:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_ladder_row, [config] * len(config.N_list), config.N_list))
    return [_ladder_row(config, N) for N in config.N_list]


def _non_increasing(values: list[float]) -> bool:
    return all(values[i + 1] <= values[i] + 1e-15 for i in range(len(values) - 1))


def verify_t17(config: CampaignConfig, jobs: int = 1) -> CampaignReport:
    """Exact (1/N) log ratio per N against its N->infinity limit."""
    _require(config, "spectrum", "alpha1", "N_list")
    rows = _ladder_rows(config, jobs)
    out_rows = [
        {
            "N": r["N"],
            "lambda1": r["lambda1"],
            "exact_log_ratio": r["exact_log_ratio"],
            "limit_value": r["limit_value"],
            "abs_error": r["abs_error"],
            "saddle_estimate": r["saddle_estimate"],
            "cancellation_residual": r["cancellation_residual"],
        }
        for r in rows
    ]
    errors = [r["abs_error"] for r in out_rows]
    finite = all(math.isfinite(e) for e in errors)
    monotone = _non_increasing(errors)
    return CampaignReport(
        campaign="verify-t17",
        config=config_echo(config),
        columns=[
            "N", "lambda1", "exact_log_ratio", "limit_value", "abs_error",
            "saddle_estimate", "cancellation_residual",
        ],
        rows=out_rows,
        summary={
            "errors_finite": finite,
            "error_non_increasing": monotone,
            "final_error": errors[-1],
        },
        passed=finite and monotone,
    )


def verify_pp1(config: CampaignConfig, jobs: int = 1) -> CampaignReport:
    """Cancellation of the perturbed and unperturbed one-row log ratios."""
    _require(config, "spectrum", "alpha1", "N_list")
    rows = _ladder_rows(config, jobs)
    out_rows = [
        {
            "N": r["N"],
            "lambda1": r["lambda1"],
            "residual": r["cancellation_residual"],
            "abs_residual": abs(r["cancellation_residual"]),
        }
        for r in rows
    ]
    residuals = [r["abs_residual"] for r in out_rows]
    finite = all(math.isfinite(v) for v in residuals)
    monotone = _non_increasing(residuals)
    return CampaignReport(
        campaign="verify-pp1",
        config=config_echo(config),
        columns=["N", "lambda1", "residual", "abs_residual"],
        rows=out_rows,
        summary={
            "residuals_finite": finite,
            "residual_non_increasing": monotone,
            "final_abs_residual": residuals[-1],
        },
        passed=finite and monotone,
    )


def compare_p28(config: CampaignConfig, jobs: int = 1) -> CampaignReport:
    """Exact perturbed-side log ratio against the steepest-descent value."""
    _require(config, "spectrum", "alpha1", "N_list")
    out_rows = []
    for N in config.N_list:
        lam1 = _lambda1(config.alpha1, N)
        y = (lam1 + N - 1) / (config.m * N)
        if y <= 1:
            out_rows.append(
                {
                    "N": N, "lambda1": lam1, "y": y, "exact_value": None,
                    "saddle_estimate": None, "abs_diff": None,
                    "status": "skipped", "reason": f"y={y:.6g} <= 1, outside the solver domain",
                }
            )
            continue
        out_rows.append({"N": N, "lambda1": lam1, "y": y, "status": "pending"})
    ladder_ns = [r["N"] for r in out_rows if r["status"] == "pending"]
    sub = CampaignConfig(
        spectrum=config.spectrum, m=config.m, alpha1=config.alpha1, k=config.k,
        perturbations=config.perturbations, N_list=tuple(ladder_ns), seed=config.seed,
    )
    computed = {r["N"]: r for r in _ladder_rows(sub, jobs)} if ladder_ns else {}
    for row in out_rows:
        if row["status"] != "pending":
            continue
        r = computed[row["N"]]
        diff = abs(r["log_ratio_w"] - r["saddle_estimate"])
        row.update(
            {
                "exact_value": r["log_ratio_w"],
                "saddle_estimate": r["saddle_estimate"],
                "abs_diff": diff,
                "status": "ok",
                "reason": None,
            }
        )
    diffs = [r["abs_diff"] for r in out_rows if r["status"] == "ok"]
    finite = all(math.isfinite(d) for d in diffs)
    decayed = len(diffs) < 2 or diffs[-1] <= diffs[0]
    return CampaignReport(
        campaign="compare-p28",
        config=config_echo(config),
        columns=[
            "N", "lambda1", "y", "exact_value", "saddle_estimate",
            "abs_diff", "status", "reason",
        ],
        rows=out_rows,
        summary={
            "computed_rows": len(diffs),
            "skipped_rows": len(out_rows) - len(diffs),
            "diffs_finite": finite,
            "diff_decayed": decayed,
        },
        passed=bool(diffs) and finite and decayed,
    )


def _random_distinct_rationals(rng: random.Random, count: int) -> tuple[Fraction, ...]:
    out: set[Fraction] = set()
    while len(out) < count:
        out.add(Fraction(rng.randint(1, 40), rng.randint(1, 8)))
    return tuple(sorted(out, reverse=True))


def _partitions_up_to(max_weight: int, max_parts: int):
    """All partitions with at most max_parts parts and weight <= max_weight."""

    def rec(remaining: int, parts_left: int, cap: int, prefix: tuple[int, ...]):
        yield prefix
        if parts_left == 0:
            return
        for first in range(min(remaining, cap), 0, -1):
            yield from rec(remaining - first, parts_left - 1, first, prefix + (first,))

    yield from rec(max_weight, max_parts, max_weight, ())


def verify_identities(config: CampaignConfig, jobs: int = 1) -> CampaignReport:
    """Exact-equality suites tying the independent evaluation routes together."""
    rng = random.Random(config.seed)
    suites: list[dict] = []

    def run_suite(name: str, cases) -> None:
        failures = 0
        count = 0
        for lhs, rhs in cases:
            count += 1
            if lhs != rhs:
                failures += 1
        suites.append(
            {"identity": name, "cases": count, "failures": failures, "passed": failures == 0}
        )

    def bialternant_vs_ssyt():
        for N in (2, 3, 4):
            for shape in _partitions_up_to(6, N):
                lam = Partition(shape + (0,) * (N - len(shape)))
                for _ in range(2):
                    X = _random_distinct_rationals(rng, N)
                    yield schur.schur_bialternant(lam, X), schur.schur_ssyt(lam, X)

    def staircase_vs_product():
        for m in (1, 2, 3):
            for N in range(2, 7):
                for _ in range(3):
                    X = _random_distinct_rationals(rng, N)
                    yield (
                        schur.schur_bialternant(staircase(m, N), X),
                        schur.staircase_product(m, X),
                    )

    def onerow_vs_division():
        for m in (1, 2, 3):
            for N in range(2, 7):
                for _ in range(3):
                    W = _random_distinct_rationals(rng, N)
                    lam1 = (m - 1) * (N - 1) + rng.randint(0, 5)
                    lam = almost_staircase(m, N, (lam1,))
                    direct = schur.schur_bialternant(lam, W) / schur.staircase_product(m, W)
                    yield schur.ratio_onerow(lam1, m, W), direct
                    yield schur.ratio_general(lam, m, W, l=1), direct
                    yield schur.ratio_onerow_confluent(lam1, m, W), direct

    def general_l2_vs_division():
        for m in (1, 2, 3):
            for N in range(3, 6):
                for _ in range(3):
                    W = _random_distinct_rationals(rng, N)
                    base = staircase(m, N)
                    head2 = base[1] + rng.randint(1, 4)
                    head1 = max(head2, base[0]) + rng.randint(0, 4)
                    lam = almost_staircase(m, N, (head1, head2))
                    direct = schur.schur_bialternant(lam, W) / schur.staircase_product(m, W)
                    yield schur.ratio_general(lam, m, W, l=2), direct

    def confluent_vs_ssyt():
        for entries in ((1, 1), (2, 2, 1), (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))):
            N = len(entries)
            for shape in _partitions_up_to(4, N):
                lam = Partition(shape + (0,) * (N - len(shape)))
                yield schur.schur_confluent(lam, entries), schur.schur_ssyt(lam, entries)

    run_suite("bialternant_vs_ssyt", bialternant_vs_ssyt())
    run_suite("staircase_vs_product", staircase_vs_product())
    run_suite("onerow_vs_division", onerow_vs_division())
    run_suite("general_l2_vs_division", general_l2_vs_division())
    run_suite("confluent_vs_ssyt", confluent_vs_ssyt())

    passed = all(s["passed"] for s in suites)
    return CampaignReport(
        campaign="verify-identities",
        config=config_echo(config),
        columns=["identity", "cases", "failures", "passed"],
        rows=suites,
        summary={
            "total_cases": sum(s["cases"] for s in suites),
            "total_failures": sum(s["failures"] for s in suites),
        },
        passed=passed,
    )


def _moment_problem(config: CampaignConfig) -> moments.MomentProblem:
    _require(config, "spectrum", "moments")
    params = config.moments
    n = config.spectrum.n
    active = {i for i in params.i2 if 1 <= i <= n}
    if active != set(params.y_weights):
        raise ConfigError(
            f"moments.y_weights keys {sorted(params.y_weights)} must match I2 "
            f"within 1..n, which is {sorted(active)}"
        )
    return moments.MomentProblem(
        values=tuple(float(v) for v in config.spectrum.values),
        kappa=float(params.kappa),
        m=config.m,
        y_weights={i: float(y) for i, y in params.y_weights.items()},
    )


def run_moments(config: CampaignConfig, jobs: int = 1) -> CampaignReport:
    """Moments of the limiting measure with a residue-oracle cross-check."""
    problem = _moment_problem(config)
    try:
        contour = moments.default_contour(problem)
    except ValueError as exc:
        hi = max(problem.values)
        lo = min(problem.values)
        center = complex((hi + lo) / 2)
        reach = [abs(s - center) for s in moments.excluded_singularities(problem)]
        suggestion = (
            f"no circle around {center.real:.6g} can work"
            if reach and min(reach) <= max(abs(x - center) for x in problem.values)
            else f"try radius near {((max(abs(x - center) for x in problem.values)) + (min(reach) if reach else 2 * hi)) / 2:.6g}"
        )
        raise ConfigError(f"contour validation failed: {exc}; {suggestion}") from exc

    rows = []
    for p in range(config.moments.p_max + 1):
        quad = moments.moment_quadrature(problem, p, contour)
        res = moments.moment_residues(problem, p)
        rows.append(
            {
                "p": p,
                "quadrature": quad,
                "residue_sum": res,
                "abs_discrepancy": abs(quad - res),
            }
        )
    mass_ok = abs(rows[0]["quadrature"] - 1.0) <= 1e-8
    max_disc = max(r["abs_discrepancy"] for r in rows)
    conditioning = 1.0 / (1.0 - problem.kappa)
    return CampaignReport(
        campaign="moments",
        config=config_echo(config),
        columns=["p", "quadrature", "residue_sum", "abs_discrepancy"],
        rows=rows,
        summary={
            "contour_center": contour.center.real,
            "contour_radius": contour.radius,
            "mass_ok": mass_ok,
            "max_discrepancy": max_disc,
            "conditioning_factor": conditioning,
            "ill_conditioned": conditioning > CONDITIONING_FLAG_THRESHOLD,
        },
        passed=mass_ok and max_disc <= 1e-8,
    )


_RUNNERS = {
    "verify-t17": verify_t17,
    "verify-identities": verify_identities,
    "compare-p28": compare_p28,
    "verify-pp1": verify_pp1,
    "moments": run_moments,
}


def run_campaign(name: str, config: CampaignConfig, jobs: int = 1) -> CampaignReport:
    if name not in _RUNNERS:
        raise ConfigError(f"unknown campaign {name!r}; choose from {list(_RUNNERS)}")
    if jobs < 1:
        raise ConfigError(f"jobs must be >= 1, got {jobs}")
    return _RUNNERS[name](config, jobs=jobs)
