"""Exact and Monte Carlo trace moments.

For jointly Gaussian diagonal processes the joint moment of matrix entries
is a sum over pairings of products of pairwise covariances (Wick/Isserlis).
Summing it over all consistent index sequences gives ``(1/n) E tr X_n^k``
exactly, which the Monte Carlo estimates are checked against.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from ergodic_wigner.diag_process import ProcessSpec
from ergodic_wigner.ensemble import EnsembleConfig, build_matrix, trial_seed
from ergodic_wigner.errors import DomainError, ResourceError, UnsupportedOracleError
from ergodic_wigner.partitions import (
    ENUMERATION_BUDGET,
    Partition,
    PairPartition,
    enumerate_pair_partitions,
    gaps_of,
    iter_consistent_chunks,
    star_mask,
)
from ergodic_wigner.spectra import eigenvalues, esd_moment, semicircle_moment

Label = tuple[int, int]


def normalize_label(label: Label) -> Label:
    p, q = label
    return (p, q) if p <= q else (q, p)


@dataclass(frozen=True)
class EntryCovariance:
    """Covariance between entries a(p, q) and a(p', q').

    Entries on different diagonals are independent; on a common diagonal
    ``r = q - p`` the covariance is the process covariance at the positional
    shift ``|p' - p|``.
    """

    spec: ProcessSpec
    overrides: Mapping[int, ProcessSpec] = field(default_factory=dict)

    @classmethod
    def for_ensemble(cls, config: EnsembleConfig) -> EntryCovariance:
        return cls(config.default_spec, dict(config.per_offset_overrides))

    def spec_for(self, offset: int) -> ProcessSpec:
        return self.overrides.get(offset, self.spec)

    def __call__(self, a: Label, b: Label) -> float:
        (p, q), (p2, q2) = normalize_label(a), normalize_label(b)
        if q - p != q2 - p2:
            return 0.0
        return float(self.spec_for(q - p).covariance(abs(p2 - p)))

    def require_gaussian(self, offsets) -> None:
        for r in set(offsets):
            spec = self.spec_for(r)
            if not spec.is_gaussian:
                raise UnsupportedOracleError(
                    f"{spec} on offset {r} is not jointly Gaussian; use the Monte Carlo estimate"
                )


def _hafnian(c: np.ndarray, idx: tuple[int, ...]) -> float:
    if not idx:
        return 1.0
    first, rest = idx[0], idx[1:]
    total = 0.0
    for pos, j in enumerate(rest):
        w = c[first, j]
        if w != 0.0:
            total += w * _hafnian(c, rest[:pos] + rest[pos + 1 :])
    return total


def wick_product_expectation(labels: Sequence[Label], cov: EntryCovariance) -> float:
    """E[a(P_1) ... a(P_k)] for jointly Gaussian mean-zero entries."""
    labels = [normalize_label(lab) for lab in labels]
    cov.require_gaussian(q - p for p, q in labels)
    k = len(labels)
    if k % 2:
        return 0.0
    c = np.array([[cov(a, b) for b in labels] for a in labels]) if k else np.zeros((0, 0))
    return _hafnian(c, tuple(range(k)))


def _wick_rows(points: np.ndarray, spec: ProcessSpec, pairings) -> np.ndarray:
    """Wick expectation for every consistent sequence (row of points)."""
    nxt = np.roll(points, -1, axis=1)
    lo = np.minimum(points, nxt)
    r = np.abs(nxt - points)
    k = points.shape[1]
    cov = {}
    for i in range(k):
        for j in range(i + 1, k):
            same = r[:, i] == r[:, j]
            cov[i, j] = np.where(same, spec.covariance(np.abs(lo[:, i] - lo[:, j])), 0.0)
    out = np.zeros(len(points))
    for pp in pairings:
        term = np.ones(len(points))
        for a, b in pp.blocks:
            term *= cov[a - 1, b - 1]
        out += term
    return out


def _gaussian_setup(n: int, k: int, spec: ProcessSpec):
    if n < 1 or k < 0:
        raise DomainError("need n >= 1 and k >= 0")
    if not spec.is_gaussian:
        raise UnsupportedOracleError(f"{spec} is not jointly Gaussian; use the Monte Carlo estimate")
    return enumerate_pair_partitions(k) if k and k % 2 == 0 else []


def expected_trace_moment(n: int, k: int, spec: ProcessSpec, budget: int = ENUMERATION_BUDGET) -> float:
    """Exact (1/n) E tr X_n^k by summing Wick expectations over all n**k sequences."""
    pairings = _gaussian_setup(n, k, spec)
    if k == 0:
        return 1.0
    if k % 2:
        # still validates the budget so callers see consistent errors
        next(iter_consistent_chunks(n, k, budget))
        return 0.0
    total = math.fsum(float(_wick_rows(ch, spec, pairings).sum()) for ch in iter_consistent_chunks(n, k, budget))
    return total / n ** (1 + k / 2)


def expectation_by_partition(
    n: int, k: int, spec: ProcessSpec, budget: int = ENUMERATION_BUDGET
) -> dict[Partition, float]:
    """Sum of Wick expectations over S_n(pi) for every pi that occurs."""
    pairings = _gaussian_setup(n, k, spec)
    out: dict[Partition, float] = {}
    for ch in iter_consistent_chunks(n, k, budget):
        vals = _wick_rows(ch, spec, pairings) if pairings else np.zeros(len(ch))
        a = np.abs(gaps_of(ch))
        keys, inverse = np.unique(a, axis=0, return_inverse=True)
        sums = np.bincount(inverse.ravel(), weights=vals, minlength=len(keys))
        for key, s in zip(keys.tolist(), sums.tolist()):
            pi = Partition.from_labels(key)
            out[pi] = out.get(pi, 0.0) + s
    return out


def star_contribution(
    n: int, pi: PairPartition, spec: ProcessSpec, absolute: bool = True, budget: int = ENUMERATION_BUDGET
) -> float:
    """Sum over star-consistent sequences of pi of (|.|) Wick expectations."""
    pairings = _gaussian_setup(n, pi.k, spec)
    total = 0.0
    for ch in iter_consistent_chunks(n, pi.k, budget):
        m = star_mask(gaps_of(ch), pi)
        if m.any():
            vals = _wick_rows(ch[m], spec, pairings)
            total += float(np.abs(vals).sum() if absolute else vals.sum())
    return total


def star_expectations(n: int, pi: PairPartition, spec: ProcessSpec, budget: int = ENUMERATION_BUDGET) -> np.ndarray:
    """Wick expectation of every star-consistent sequence of pi."""
    pairings = _gaussian_setup(n, pi.k, spec)
    parts = [
        _wick_rows(ch[m], spec, pairings)
        for ch in iter_consistent_chunks(n, pi.k, budget)
        if (m := star_mask(gaps_of(ch), pi)).any()
    ]
    return np.concatenate(parts) if parts else np.zeros(0)


@dataclass(frozen=True)
class MomentReport:
    n: int
    k: int
    spec: ProcessSpec
    exact_value: float | None
    mc_mean: float
    mc_stderr: float
    trials: int
    semicircle_target: int


@dataclass(frozen=True)
class FluctuationReport:
    k: int
    spec: str
    n_grid: tuple[int, ...]
    estimates: tuple[float, ...]
    trials: int
    slope: float
    slope_ci: tuple[float, float]


def map_trials(fn: Callable[[int], object], trials: int, threads: int | None = None) -> list:
    """Evaluate ``fn(i)`` for i in range(trials), results in trial order."""
    if threads == 1 or trials == 1:
        return [fn(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(trials)))


def run_trials(fn: Callable[[int], float], trials: int, threads: int | None = None) -> np.ndarray:
    return np.array(map_trials(fn, trials, threads), dtype=float)


def sample_trace_moment(n: int, k: int, spec: ProcessSpec, seed: int) -> float:
    """(1/n) tr X^k of one matrix built from ``seed``."""
    return esd_moment(eigenvalues(build_matrix(EnsembleConfig(n, spec, base_seed=seed))), k)


def mc_trace_moment(
    n: int,
    k: int,
    spec: ProcessSpec,
    trials: int,
    base_seed: int,
    threads: int | None = None,
    with_exact: bool = False,
) -> MomentReport:
    if trials < 2:
        raise DomainError("need at least 2 trials for a standard error")
    vals = run_trials(lambda i: sample_trace_moment(n, k, spec, trial_seed(base_seed, i)), trials, threads)
    exact = None
    if with_exact:
        try:
            exact = expected_trace_moment(n, k, spec)
        except (UnsupportedOracleError, ResourceError):
            exact = None
    return MomentReport(
        n=n,
        k=k,
        spec=spec,
        exact_value=exact,
        mc_mean=float(vals.mean()),
        mc_stderr=float(vals.std(ddof=1) / math.sqrt(trials)),
        trials=trials,
        semicircle_target=semicircle_moment(k),
    )


def fourth_central_moment(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.mean((x - x.mean()) ** 4))


def loglog_slope(ns, values) -> float:
    ns, values = np.asarray(ns, dtype=float), np.asarray(values, dtype=float)
    if np.any(values <= 0):
        return float("nan")
    return float(np.polyfit(np.log(ns), np.log(values), 1)[0])


def fluctuation_scan_sampler(
    trace_sampler: Callable[[int, int], float],
    k: int,
    n_grid: Sequence[int],
    trials: int,
    base_seed: int,
    spec_label: str = "",
    threads: int | None = None,
    n_boot: int = 200,
) -> FluctuationReport:
    """A_4 = E[(tr X^k - E tr X^k)^4] on a grid, for any ``trace_sampler(n, seed)``."""
    grid = tuple(sorted(set(int(n) for n in n_grid)))
    if len(grid) < 2:
        raise DomainError("fluctuation scan needs at least two distinct n")
    if trials < 100:
        raise DomainError("fluctuation scan needs at least 100 trials")
    samples = []
    for n in grid:
        seed_n = trial_seed(base_seed, 1_000_000 + n)
        samples.append(run_trials(lambda i, n=n, s=seed_n: trace_sampler(n, trial_seed(s, i)), trials, threads))
    estimates = tuple(fourth_central_moment(s) for s in samples)
    slope = loglog_slope(grid, estimates)
    if math.isnan(slope):
        ci = (float("nan"), float("nan"))
    else:
        rng = np.random.default_rng(trial_seed(base_seed, 2**31 - 1))
        boots = []
        for _ in range(n_boot):
            est = [fourth_central_moment(s[rng.integers(0, trials, trials)]) for s in samples]
            boots.append(loglog_slope(grid, est))
        boots = np.asarray(boots)
        boots = boots[np.isfinite(boots)]
        ci = (float(np.quantile(boots, 0.025)), float(np.quantile(boots, 0.975)))
    return FluctuationReport(k, spec_label, grid, estimates, trials, slope, ci)


def fluctuation_scan(
    spec: ProcessSpec,
    k: int,
    n_grid: Sequence[int],
    trials: int,
    base_seed: int,
    threads: int | None = None,
    n_boot: int = 200,
) -> FluctuationReport:
    def trace(n, seed):
        return n * sample_trace_moment(n, k, spec, seed)

    return fluctuation_scan_sampler(trace, k, n_grid, trials, base_seed, str(spec), threads, n_boot)
