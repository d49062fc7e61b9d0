"""Config-driven scaling studies and verification suites.

A scaling run measures, for each dyadic level j,

    R(j) = mixed_norm({t -> half_wave(littlewood_paley(f, j), t) : t in E_j}, q)
           / lp_norm(f, p)

for an extremizer family f and a per-level time set E_j, then fits
log2 R(j) against j and compares the slope to the exact predicted exponent
s_i(p, q) of the matching regime.  The three stock runs:

* radial focusing with the single time E_j = {1 + L 2^{-j}}   -> s1,
* Knapp plate with a Cantor time set (#E_j ~ 2^{j alpha})     -> s2,
* annulus with a Cantor time set                              -> s3.

The verify_* suites certify the non-run properties: marginal-sum divergence,
multiplier coefficient decay, Whitney coverage/orthogonality, and the
bilinear cap necessity magnitudes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .caps import necessary_q_bounds, pair_product_statistic
from .exponents import PQPoint, s_exponents
from .extremizers import annulus, knapp, radial_focusing
from .grid import (
    Field,
    GridSpec,
    half_wave,
    littlewood_paley,
    lp_norm,
    mixed_norm,
    multiplier_coeff_decay,
    random_field,
    sector_project,
)
from .sets import TimeSet, build_cantor, cantor_spec_from_stages, discretize, marginal_sum
from .whitney import check_coverage, separation_band, whitney

_RUN_FAMILIES = {
    "radial_focusing": "s1",
    "knapp": "s2",
    "annulus": "s3",
}


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError(f"exact rational required, got float {value!r} (pass a string like '5/2')")
    return Fraction(str(value))


@dataclass(frozen=True)
class RunConfig:
    family: str
    p: Fraction
    q: Fraction
    alpha: Fraction = Fraction(1)
    set_kind: str = "cantor"  # "cantor" | "single_time"
    j_min: int = 4
    j_max: int = 7
    n: int = 2048
    period: float = 8.0
    time_L: float = 16.0
    tolerance: float = 0.15
    seed: int = 0
    label: str = ""

    def __post_init__(self):
        if self.family not in _RUN_FAMILIES:
            raise ValueError(f"family must be one of {sorted(_RUN_FAMILIES)}, got {self.family!r}")
        if self.set_kind not in ("cantor", "single_time"):
            raise ValueError(f"set_kind must be 'cantor' or 'single_time', got {self.set_kind!r}")
        object.__setattr__(self, "p", _as_fraction(self.p))
        object.__setattr__(self, "q", _as_fraction(self.q))
        object.__setattr__(self, "alpha", _as_fraction(self.alpha))
        if not 0.0 < self.tolerance < 0.5:
            raise ValueError(f"tolerance must lie in (0, 0.5), got {self.tolerance}")
        if self.j_max - self.j_min + 1 < 3:
            raise ValueError("need at least three levels to fit a slope")
        grid = GridSpec(self.n, self.period)
        if 2.0 ** (self.j_max + 2) > grid.nyquist:
            raise ValueError(
                f"j_max={self.j_max} violates the alias guard on n={self.n} "
                f"(max admissible {grid.max_band_j(4.0)})"
            )
        if self.set_kind == "single_time" and not 0.0 < self.time_L * 2.0**-self.j_min <= 1.0:
            raise ValueError("single-time offset L 2^{-j_min} must land in (1, 2]")

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "p": str(self.p),
            "q": str(self.q),
            "alpha": str(self.alpha),
            "set_kind": self.set_kind,
            "j_min": self.j_min,
            "j_max": self.j_max,
            "n": self.n,
            "period": self.period,
            "time_L": self.time_L,
            "tolerance": self.tolerance,
            "seed": self.seed,
            "label": self.label,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RunConfig":
        known = {f: data[f] for f in cls.__dataclass_fields__ if f in data}
        extra = set(data) - set(cls.__dataclass_fields__)
        if extra:
            raise ValueError(f"unknown RunConfig fields: {sorted(extra)}")
        return cls(**known)


@dataclass(frozen=True)
class ScalingRun:
    config: RunConfig
    time_sets: tuple[tuple[int, int], ...]  # (j, #E_j)
    measured: tuple[tuple[int, float], ...]  # (j, log2 R(j))
    fitted_slope: float
    intercept: float
    residual: float
    predicted: Fraction
    verdict: str
    monotone: bool


def fit_exponent(samples) -> tuple[float, float, float]:
    """Least-squares line through (j, y); returns (slope, intercept, RMS residual)."""
    pts = [(float(j), float(y)) for j, y in samples]
    if len(pts) < 3:
        raise ValueError(f"need >= 3 samples to fit, got {len(pts)}")
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = float(np.sqrt(np.mean((ys - (slope * xs + intercept)) ** 2)))
    return float(slope), float(intercept), resid


def predicted_exponent(config: RunConfig) -> Fraction:
    point = PQPoint(1 / config.p, 1 / config.q)
    s = s_exponents(point, d=2, alpha=config.alpha)
    return getattr(s, _RUN_FAMILIES[config.family])


def _time_set(config: RunConfig, j: int) -> TimeSet:
    if config.set_kind == "single_time":
        return TimeSet.from_points([1.0 + config.time_L * 2.0**-j])
    ts = build_cantor(config.alpha, j, L=config.time_L)
    return discretize(ts, 2.0**-j)


def _build_family(config: RunConfig, grid: GridSpec, j: int) -> Field:
    if config.family == "radial_focusing":
        return radial_focusing(grid, j)
    if config.family == "knapp":
        return knapp(grid, j)
    return annulus(grid, j)


def run_scaling(config: RunConfig) -> ScalingRun:
    grid = GridSpec(config.n, config.period)
    measured = []
    set_sizes = []
    for j in range(config.j_min, config.j_max + 1):
        f = _build_family(config, grid, j)
        E = _time_set(config, j)
        pf = littlewood_paley(f, j)
        num = mixed_norm({t: half_wave(pf, t) for t in E.points}, config.q)
        den = lp_norm(f, config.p)
        measured.append((j, math.log2(num / den)))
        set_sizes.append((j, len(E.points)))
    slope, intercept, resid = fit_exponent(measured)
    predicted = predicted_exponent(config)
    monotone = all(b >= a for (_, a), (_, b) in zip(measured, measured[1:]))
    if resid > 0.25:
        verdict = "inconclusive"
    elif slope < float(predicted) - config.tolerance:
        verdict = "lower_bound_violated"
    elif slope > float(predicted) + config.tolerance:
        verdict = "inconclusive"
    else:
        verdict = "consistent"
    return ScalingRun(
        config=config,
        time_sets=tuple(set_sizes),
        measured=tuple(measured),
        fitted_slope=slope,
        intercept=intercept,
        residual=resid,
        predicted=predicted,
        verdict=verdict,
        monotone=monotone,
    )


# --- verification suites ------------------------------------------------------


@dataclass(frozen=True)
class MarginalReport:
    alpha: Fraction
    entries: tuple[tuple[int, float, float], ...]  # (k, ratio to k 2^k, sum / 2^k)
    passed: bool


def verify_marginal_divergence(alpha, k_range=range(2, 13)) -> MarginalReport:
    """Certify sum_{t in E} |t-1|^{-alpha} ~ k 2^k: ratio in [1/4, 4] and the
    logarithmic factor visible as strict growth of sum/2^k."""
    a = _as_fraction(alpha)
    ks = sorted(k_range)
    if not ks or ks[0] < 2 or ks[-1] > 16:
        raise ValueError(f"k_range must lie within [2, 16], got {ks}")
    entries = []
    ok = True
    prev = -math.inf
    for k in ks:
        ms = marginal_sum(cantor_spec_from_stages(a, k))
        per2k = ms.value / 2.0**k
        entries.append((k, ms.ratio, per2k))
        ok = ok and (0.25 <= ms.ratio <= 4.0) and (per2k > prev)
        prev = per2k
    return MarginalReport(alpha=a, entries=tuple(entries), passed=ok)


@dataclass(frozen=True)
class DecayReport:
    order: int
    certified_c: float
    c_values: tuple[tuple[int, float, float], ...]  # (j, dt, C_M)
    coeff_sums: tuple[float, ...]
    passed: bool


def verify_locally_constant(j_range=range(3, 9), M: int = 8) -> DecayReport:
    """Sweep multiplier_coeff_decay over j and dt in {0, 2^{-j-1}, 2^{-j}};
    certify a single C_M with factor-4 stability across the sweep."""
    rows = []
    sums = []
    for j in j_range:
        for frac in (0.0, 0.5, 1.0):
            tab = multiplier_coeff_decay(j, frac * 2.0**-j, M=M)
            rows.append((j, frac * 2.0**-j, tab.c_m))
            sums.append(tab.coeff_sum)
    cs = [r[2] for r in rows]
    stable = max(cs) <= 4.0 * min(cs) and max(sums) <= 4.0 * min(sums)
    return DecayReport(
        order=M,
        certified_c=max(cs),
        c_values=tuple(rows),
        coeff_sums=tuple(sums),
        passed=stable,
    )


@dataclass(frozen=True)
class WhitneyReport:
    nu_max: int
    coverage_exact: bool
    band: tuple[float, float]
    partition_defect: float
    orthogonality_defect: float
    passed: bool


def verify_whitney(nu_max: int = 8, seed: int = 0) -> WhitneyReport:
    dec = whitney(nu_max, (0.0, 0.25))
    cov = check_coverage(dec)
    band = separation_band(dec)
    expect = (dec.base_length, 2.0 * dec.base_length)
    band_ok = abs(band[0] - expect[0]) < 1e-9 and abs(band[1] - expect[1]) < 1e-9

    # angular windows on a band-limited field: a full partition reassembles the
    # field, and alternating (margin-disjoint) windows are L^2-orthogonal
    grid = GridSpec(256, 8.0)
    f = random_field(grid, seed=seed, band_j=4)
    arcs = [(-math.pi + 2 * math.pi * k / 8, -math.pi + 2 * math.pi * (k + 1) / 8) for k in range(8)]
    parts = [sector_project(f, arc, 0.1) for arc in arcs]
    total = parts[0]
    for part in parts[1:]:
        total = Field(grid, total.values + part.values, "physical")
    partition_defect = lp_norm(Field(grid, total.values - f.values, "physical"), 2) / lp_norm(f, 2)

    evens = [parts[k] for k in range(0, 8, 2)]
    sum_field = evens[0]
    for part in evens[1:]:
        sum_field = Field(grid, sum_field.values + part.values, "physical")
    lhs = lp_norm(sum_field, 2) ** 2
    rhs = sum(lp_norm(part, 2) ** 2 for part in evens)
    orth_defect = abs(lhs - rhs) / rhs

    passed = cov and band_ok and partition_defect <= 1e-8 and orth_defect <= 1e-8
    return WhitneyReport(
        nu_max=nu_max,
        coverage_exact=cov,
        band=band,
        partition_defect=float(partition_defect),
        orthogonality_defect=float(orth_defect),
        passed=passed,
    )


@dataclass(frozen=True)
class NecessityReport:
    alpha: Fraction
    angular_exponent: float
    squashed_exponent: float
    angular_q: Fraction
    squashed_q: Fraction
    statistics: tuple[tuple[str, float, float], ...]  # (kind, delta, statistic)
    passed: bool


def _fractal_times(alpha: Fraction, delta: float, c: float) -> list[float]:
    """Cantor-structured time samples inside the coherence window |t| <= c/delta^2.

    Scale-matched construction: stage points of the L = 2 Cantor set at level
    j = ceil(log2 delta^{-2}), mapped to 2^j (t - 1) in [2, 2^j]; the window
    keeps the small end.  Midpoint offset +1/2 stays inside each covering
    interval.  Thinned deterministically to at most 12 samples.
    """
    j = math.ceil(math.log2(delta**-2))
    ts = build_cantor(alpha, j, L=2.0)
    starts = sorted(2.0**j * (t - 1.0) for t in ts.points)
    window = [s + 0.5 for s in starts if s + 0.5 <= c / delta**2]
    if len(window) > 12:
        idx = np.linspace(0, len(window) - 1, 12).round().astype(int)
        window = [window[i] for i in sorted(set(idx))]
    return [0.0] + window


def verify_bilinear_necessity(
    delta_range=(1 / 8, 1 / 16, 1 / 32), alpha=Fraction(1, 2), c: float = 0.25, mesh: int = 96
) -> NecessityReport:
    """Fit the delta-scaling of the cap-pair product magnitudes (targets d-1 = 1
    and d+1 = 3) with the time variable running over fractal samples, and report
    the exact q-thresholds the two families force."""
    a = _as_fraction(alpha)
    deltas = sorted(delta_range, reverse=True)
    if len(deltas) < 3:
        raise ValueError("need at least three deltas to fit")
    stats = []
    slopes = {}
    for kind in ("angular", "squashed"):
        ys = []
        for d in deltas:
            s = pair_product_statistic(d, kind, c=c, mesh=mesh, times=_fractal_times(a, d, c))
            stats.append((kind, d, s))
            ys.append(math.log2(s))
        slope, _, _ = fit_exponent(list(zip(np.log2(deltas), ys)))
        slopes[kind] = slope
    q_ang, q_sq = necessary_q_bounds(a, d=2)
    passed = abs(slopes["angular"] - 1.0) <= 0.2 and abs(slopes["squashed"] - 3.0) <= 0.2
    return NecessityReport(
        alpha=a,
        angular_exponent=slopes["angular"],
        squashed_exponent=slopes["squashed"],
        angular_q=q_ang,
        squashed_q=q_sq,
        statistics=tuple(stats),
        passed=passed,
    )


# --- persistence --------------------------------------------------------------


def run_to_json(run: ScalingRun) -> dict:
    return {
        "config": run.config.to_json(),
        "time_sets": [list(x) for x in run.time_sets],
        "measured": [[j, y] for j, y in run.measured],
        "fitted_slope": run.fitted_slope,
        "intercept": run.intercept,
        "residual": run.residual,
        "predicted": str(run.predicted),
        "verdict": run.verdict,
        "monotone": run.monotone,
    }


def run_from_json(data: dict) -> ScalingRun:
    try:
        return ScalingRun(
            config=RunConfig.from_json(data["config"]),
            time_sets=tuple((int(j), int(m)) for j, m in data["time_sets"]),
            measured=tuple((int(j), float(y)) for j, y in data["measured"]),
            fitted_slope=float(data["fitted_slope"]),
            intercept=float(data["intercept"]),
            residual=float(data["residual"]),
            predicted=Fraction(data["predicted"]),
            verdict=str(data["verdict"]),
            monotone=bool(data["monotone"]),
        )
    except KeyError as exc:
        raise ValueError(f"scaling-run document missing field {exc}") from exc


def measured_csv(run: ScalingRun) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["j", "log2_ratio", "set_size"])
    sizes = dict(run.time_sets)
    for j, y in run.measured:
        writer.writerow([j, f"{y:.12g}", sizes[j]])
    return buf.getvalue()


def persist(run: ScalingRun, out_dir) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = run.config.label or f"{run.config.family}_{run.config.p}_{run.config.q}".replace("/", "over")
    json_path = out / f"{stem}.json"
    csv_path = out / f"{stem}.csv"
    json_path.write_text(json.dumps(run_to_json(run), indent=2) + "\n")
    csv_path.write_text(measured_csv(run))
    return json_path, csv_path


def load(path) -> ScalingRun:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return run_from_json(data)
