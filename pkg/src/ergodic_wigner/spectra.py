"""Eigenvalues, empirical spectral distributions and the semicircle law."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ergodic_wigner.ensemble import Matrix
from ergodic_wigner.errors import DomainError, InputError, NumericalError


@dataclass(frozen=True)
class ESD:
    """Uniform measure on the ascending eigenvalues of an n x n matrix."""

    eigenvalues: np.ndarray = field(repr=False)

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float)
        if ev.ndim != 1:
            raise InputError("eigenvalues must be one-dimensional")
        if np.any(np.diff(ev) < 0):
            ev = np.sort(ev)
        ev.flags.writeable = False
        object.__setattr__(self, "eigenvalues", ev)

    def __len__(self):
        return len(self.eigenvalues)

    def moment(self, k: int) -> float:
        return esd_moment(self, k)

    def cdf(self, x):
        """Right-continuous empirical CDF."""
        return np.searchsorted(self.eigenvalues, x, side="right") / len(self)


def eigenvalues(m: Matrix | np.ndarray) -> ESD:
    a = m.entries if isinstance(m, Matrix) else np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    try:
        ev = np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"symmetric eigensolver failed for n={a.shape[0]}, "
            f"max|entry|={np.abs(a).max():.3g}: {exc}"
        ) from exc
    return ESD(ev)


def esd_moment(esd: ESD, k: int) -> float:
    """(1/n) sum of lambda**k, which equals (1/n) tr(X**k)."""
    if k < 0:
        raise DomainError("moment order must be nonnegative")
    if k == 0:
        return 1.0
    return float(np.mean(esd.eigenvalues**k))


def semicircle_moment(k: int) -> int:
    """Catalan number C_{k/2} for even k, 0 for odd k (exact integers)."""
    if k < 0:
        raise DomainError("moment order must be nonnegative")
    if k % 2:
        return 0
    m = k // 2
    return math.comb(2 * m, m) // (m + 1)


def semicircle_density(x):
    x = np.asarray(x, dtype=float)
    out = np.where(np.abs(x) <= 2, np.sqrt(np.clip(4 - x * x, 0, None)) / (2 * np.pi), 0.0)
    return out if out.ndim else float(out)


def semicircle_cdf(x):
    x = np.clip(np.asarray(x, dtype=float), -2.0, 2.0)
    out = 0.5 + x * np.sqrt(4 - x * x) / (4 * np.pi) + np.arcsin(x / 2) / np.pi
    out = np.clip(out, 0.0, 1.0)
    return out if out.ndim else float(out)


def semicircle_quantile(u, tol: float = 1e-13):
    """Inverse CDF by vectorized bisection on [-2, 2]."""
    u = np.asarray(u, dtype=float)
    if np.any((u < 0) | (u > 1)):
        raise DomainError("quantile levels must lie in [0, 1]")
    lo = np.full(u.shape, -2.0)
    hi = np.full(u.shape, 2.0)
    while np.max(hi - lo, initial=0.0) > tol:
        mid = 0.5 * (lo + hi)
        below = semicircle_cdf(mid) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    out = 0.5 * (lo + hi)
    return out if out.ndim else float(out)


def ks_distance(esd: ESD) -> float:
    """Kolmogorov distance between the ESD and the semicircle CDF.

    The supremum is attained at a jump; at the i-th (1-based) eigenvalue we
    compare F against both i/n and (i-1)/n.
    """
    n = len(esd)
    if n == 0:
        raise DomainError("empty ESD")
    f = semicircle_cdf(esd.eigenvalues)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def moment_distance(esd: ESD, K: int) -> float:
    if K < 2:
        raise DomainError("K must be >= 2")
    return max(abs(esd_moment(esd, k) - semicircle_moment(k)) for k in range(1, K + 1))


def histogram_rows(values, bins: int, lo: float | None = None, hi: float | None = None):
    """Rows ``(bin_left, bin_right, count, density)`` with density normalized to 1."""
    values = np.asarray(values, dtype=float)
    if bins < 1:
        raise DomainError("bins must be >= 1")
    if values.size == 0:
        raise DomainError("no values to histogram")
    lo = float(values.min()) if lo is None else lo
    hi = float(values.max()) if hi is None else hi
    counts, edges = np.histogram(values, bins=bins, range=(lo, hi))
    widths = np.diff(edges)
    dens = counts / (values.size * np.where(widths > 0, widths, 1.0))
    return [(float(a), float(b), int(c), float(d)) for a, b, c, d in zip(edges[:-1], edges[1:], counts, dens)]
