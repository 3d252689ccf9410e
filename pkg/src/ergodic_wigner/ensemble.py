"""Symmetric random matrices whose diagonals are independent stationary paths."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from ergodic_wigner.diag_process import ProcessSpec, sample_diagonal
from ergodic_wigner.errors import DomainError, ParameterError


def entry_seed(base_seed: int, offset: int) -> int:
    """Seed for the diagonal at ``offset``, hashed from ``(base_seed, offset)``.

    Uses numpy's SeedSequence entropy mixing and returns a 64-bit integer.
    """
    if base_seed < 0 or offset < 0:
        raise DomainError("seeds and offsets must be nonnegative")
    lo, hi = np.random.SeedSequence([base_seed, offset]).generate_state(2, dtype=np.uint32)
    return int(lo) | (int(hi) << 32)


def trial_seed(base_seed: int, trial: int) -> int:
    """Base seed for the ``trial``-th independent matrix of an experiment."""
    # domain tag keeps trial seeds apart from diagonal seeds
    lo, hi = np.random.SeedSequence([base_seed, trial, 0x7472]).generate_state(2, dtype=np.uint32)
    return int(lo) | (int(hi) << 32)


@dataclass(frozen=True)
class EnsembleConfig:
    n: int
    default_spec: ProcessSpec
    per_offset_overrides: Mapping[int, ProcessSpec] = field(default_factory=dict)
    base_seed: int = 0

    def __post_init__(self):
        if int(self.n) < 1:
            raise DomainError(f"matrix dimension must be >= 1, got {self.n}")
        if not isinstance(self.default_spec, ProcessSpec):
            raise ParameterError("default_spec must be a ProcessSpec")
        for r, spec in self.per_offset_overrides.items():
            if r < 0 or not isinstance(spec, ProcessSpec):
                raise ParameterError(f"bad override for offset {r!r}")
        object.__setattr__(self, "per_offset_overrides", MappingProxyType(dict(self.per_offset_overrides)))

    def spec_for(self, offset: int) -> ProcessSpec:
        return self.per_offset_overrides.get(offset, self.default_spec)


@dataclass(frozen=True)
class Matrix:
    n: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.entries.flags.writeable = False

    def dump(self, path) -> None:
        """Write one row per line, space-separated, for cross-checking."""
        np.savetxt(path, self.entries, fmt="%.17g", delimiter=" ")


def build_matrix(config: EnsembleConfig) -> Matrix:
    """Fill ``X[p, p+r] = X[p+r, p] = a(p, p+r) / sqrt(n)`` offset by offset."""
    n = config.n
    x = np.empty((n, n))
    scale = 1.0 / math.sqrt(n)
    for r in range(n):
        path = sample_diagonal(config.spec_for(r), n - r, entry_seed(config.base_seed, r))
        idx = np.arange(n - r)
        vals = path.values * scale
        x[idx, idx + r] = vals
        x[idx + r, idx] = vals
    return Matrix(n, x)
