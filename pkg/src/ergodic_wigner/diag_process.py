"""Stationary mean-zero, unit-variance processes used to fill matrix diagonals.

Every process kind is standardized so that its marginal law has mean 0 and
variance 1:

* ``IIDGaussian``: i.i.d. standard normals.
* ``IIDRademacher``: i.i.d. uniform signs.
* ``AR1(phi)``: ``x[t] = phi * x[t-1] + sqrt(1 - phi**2) * e[t]`` started from
  its stationary N(0, 1) law; lag-t covariance ``phi**t``.
* ``MarkovTwoState(stay_prob)``: symmetric chain on {+1, -1} started uniformly;
  lag-t covariance ``(2 * stay_prob - 1)**t``.
* ``EquiCorrelated(rho)``: ``sqrt(rho) * Z + sqrt(1 - rho) * e[t]`` with a single
  shared Z per path; lag-t covariance ``rho`` for every ``t >= 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import lfilter

from ergodic_wigner.errors import DomainError, ParameterError

KINDS = ("IIDGaussian", "IIDRademacher", "AR1", "MarkovTwoState", "EquiCorrelated")
_PARAMETRIC = {"AR1", "MarkovTwoState", "EquiCorrelated"}
_GAUSSIAN = {"IIDGaussian", "AR1", "EquiCorrelated"}
_ALIASES = {k.lower(): k for k in KINDS}
_ALIASES.update({"ar(1)": "AR1", "markov": "MarkovTwoState", "equi": "EquiCorrelated"})


@dataclass(frozen=True)
class ProcessSpec:
    kind: str
    param: float | None = None

    def __post_init__(self):
        kind = _ALIASES.get(str(self.kind).lower())
        if kind is None:
            raise ParameterError(f"unknown process kind {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "kind", kind)
        if kind not in _PARAMETRIC:
            if self.param not in (None, 0, 0.0):
                raise ParameterError(f"{kind} takes no parameter, got {self.param!r}")
            object.__setattr__(self, "param", None)
            return
        if self.param is None:
            raise ParameterError(f"{kind} requires a parameter")
        x = float(self.param)
        if not math.isfinite(x):
            raise ParameterError(f"{kind} parameter must be finite")
        if kind == "AR1" and not abs(x) < 1:
            raise ParameterError(f"AR1 requires |phi| < 1, got {x}")
        if kind == "MarkovTwoState" and not 0 < x < 1:
            raise ParameterError(f"MarkovTwoState requires 0 < stay_prob < 1, got {x}")
        if kind == "EquiCorrelated" and not 0 <= x < 1:
            raise ParameterError(f"EquiCorrelated requires 0 <= rho < 1, got {x}")
        object.__setattr__(self, "param", x)

    @classmethod
    def from_dict(cls, d: dict) -> ProcessSpec:
        return cls(d["kind"], d.get("param"))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "param": self.param}

    @property
    def is_gaussian(self) -> bool:
        """True when every finite collection of entries is jointly Gaussian."""
        return self.kind in _GAUSSIAN

    @property
    def decaying(self) -> bool:
        """True when the lag-t covariance tends to 0."""
        return not (self.kind == "EquiCorrelated" and self.param > 0)

    def covariance(self, t):
        """Vectorized lag covariance; ``t`` is a nonnegative int or int array."""
        t = np.asarray(t)
        if np.any(t < 0):
            raise DomainError("lag must be nonnegative")
        if self.kind in ("IIDGaussian", "IIDRademacher"):
            out = (t == 0).astype(float)
        elif self.kind == "AR1":
            out = np.power(self.param, t, dtype=float)
        elif self.kind == "MarkovTwoState":
            out = np.power(2.0 * self.param - 1.0, t, dtype=float)
        else:
            out = np.where(t == 0, 1.0, self.param)
        return out if out.ndim else float(out)

    def __str__(self):
        return self.kind if self.param is None else f"{self.kind}({self.param:g})"


@dataclass(frozen=True)
class DiagonalPath:
    values: np.ndarray = field(repr=False)
    spec: ProcessSpec
    seed: int

    def __len__(self):
        return len(self.values)


def theoretical_covariance(spec: ProcessSpec, t: int) -> float:
    return float(spec.covariance(int(t)))


def absolute_moment(spec: ProcessSpec, k: int) -> float:
    """E|X|^k of the marginal law; finite for every k and every kind."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    if spec.kind in ("IIDRademacher", "MarkovTwoState"):
        return 1.0
    return 2 ** (k / 2) * math.gamma((k + 1) / 2) / math.sqrt(math.pi)


def sample_diagonal(spec: ProcessSpec, length: int, seed: int) -> DiagonalPath:
    """Draw a stationary path of ``length`` values, deterministic in ``seed``."""
    if length < 1:
        raise DomainError(f"length must be >= 1, got {length}")
    rng = np.random.default_rng(seed)
    kind, x = spec.kind, spec.param
    if kind == "IIDGaussian":
        values = rng.standard_normal(length)
    elif kind == "IIDRademacher":
        values = 2.0 * rng.integers(0, 2, size=length) - 1.0
    elif kind == "AR1":
        e = rng.standard_normal(length)
        # first value is the stationary draw, the rest are scaled innovations
        drive = math.sqrt(1.0 - x * x) * e
        drive[0] = e[0]
        values = lfilter([1.0], [1.0, -x], drive) if x != 0 else e
    elif kind == "MarkovTwoState":
        start = 2.0 * rng.integers(0, 2) - 1.0
        flips = rng.random(length - 1) >= x
        steps = np.where(flips, -1.0, 1.0)
        values = start * np.concatenate(([1.0], np.cumprod(steps)))
    else:
        shared = rng.standard_normal()
        e = rng.standard_normal(length)
        values = math.sqrt(x) * shared + math.sqrt(1.0 - x) * e
    values = np.asarray(values, dtype=float)
    values.flags.writeable = False
    return DiagonalPath(values, spec, seed)


def empirical_covariance(path, t: int) -> float:
    """Mean-corrected lag-t sample autocovariance with divisor ``len - t``.

    ``path`` may be a DiagonalPath or a plain sequence of floats.
    """
    v = np.asarray(path.values if isinstance(path, DiagonalPath) else path, dtype=float)
    if t < 0 or t >= len(v):
        raise DomainError(f"lag {t} outside [0, {len(v) - 1}]")
    c = v - v.mean()
    return float(np.dot(c[: len(v) - t], c[t:]) / (len(v) - t))
