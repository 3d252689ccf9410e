import math

import numpy as np
import pytest
from conftest import GALLERY, batch_mean_se
from hypothesis import given
from hypothesis import strategies as st

from ergodic_wigner.diag_process import ProcessSpec, empirical_covariance, sample_diagonal
from ergodic_wigner.ensemble import EnsembleConfig, build_matrix, entry_seed, trial_seed
from ergodic_wigner.errors import DomainError


def test_one_by_one():
    spec = ProcessSpec("IIDGaussian")
    m = build_matrix(EnsembleConfig(1, spec, base_seed=9))
    first = sample_diagonal(spec, 1, entry_seed(9, 0)).values[0]
    assert m.entries.shape == (1, 1)
    assert m.entries[0, 0] == first


def test_zero_dimension():
    with pytest.raises(DomainError):
        EnsembleConfig(0, ProcessSpec("IIDGaussian"))


@given(st.sampled_from(GALLERY), st.integers(1, 40), st.integers(0, 2**32))
def test_symmetric_and_reproducible(spec, n, seed):
    cfg = EnsembleConfig(n, spec, base_seed=seed)
    a, b = build_matrix(cfg), build_matrix(cfg)
    assert np.array_equal(a.entries, a.entries.T)
    assert np.array_equal(a.entries, b.entries)
    assert np.all(np.isfinite(a.entries))


def test_entries_follow_diagonal_paths():
    spec = ProcessSpec("AR1", 0.5)
    n = 7
    m = build_matrix(EnsembleConfig(n, spec, base_seed=4))
    for r in range(n):
        path = sample_diagonal(spec, n - r, entry_seed(4, r)).values
        np.testing.assert_array_equal(np.diagonal(m.entries, r), path * (1 / math.sqrt(n)))


def test_per_offset_override():
    cfg = EnsembleConfig(6, ProcessSpec("IIDGaussian"), {1: ProcessSpec("MarkovTwoState", 0.9)}, base_seed=3)
    m = build_matrix(cfg)
    assert set(np.unique(np.abs(np.diagonal(m.entries, 1)) * math.sqrt(6)).round(12)) == {1.0}
    assert cfg.spec_for(2) == ProcessSpec("IIDGaussian")


def test_entry_seed_deterministic_and_distinct():
    assert entry_seed(17, 5) == entry_seed(17, 5)
    seeds = range(1000)
    assert all(entry_seed(s, 0) != entry_seed(s, 1) for s in seeds)
    pool = {entry_seed(s, r) for s in seeds for r in range(4)}
    assert len(pool) == 4000
    assert trial_seed(1, 0) != entry_seed(1, 0)


def test_offsets_use_independent_streams():
    spec = ProcessSpec("IIDGaussian")
    L = 10**5
    a = sample_diagonal(spec, L, entry_seed(5, 0)).values
    b = sample_diagonal(spec, L, entry_seed(5, 1)).values
    corr = np.corrcoef(a, b)[0, 1]
    assert abs(corr) <= 3 / math.sqrt(L)


def test_expected_frobenius_norm():
    # oracle: sum X^2 = (1/n)(sum_p a_pp^2 + 2 sum_{p<q} a_pq^2), so
    # E = (1/n)(n + n(n-1)) = n
    n, trials = 512, 200
    oracle = (n + 2 * (n * (n - 1) // 2)) / n
    assert oracle == n
    spec = ProcessSpec("IIDGaussian")
    vals = np.array([np.sum(build_matrix(EnsembleConfig(n, spec, base_seed=trial_seed(8, i))).entries ** 2)
                     for i in range(trials)])
    se = vals.std(ddof=1) / math.sqrt(trials)
    assert abs(vals.mean() - oracle) <= 3 * se


@pytest.mark.parametrize("spec", [ProcessSpec("AR1", 0.5), ProcessSpec("MarkovTwoState", 0.8)], ids=str)
def test_diagonal_stationarity_in_large_matrix(spec):
    n = 4096
    m = build_matrix(EnsembleConfig(n, spec, base_seed=77))
    for r in (0, 1):
        d = np.diagonal(m.entries, r) * math.sqrt(n)
        for t in range(4):
            prod = (d[: len(d) - t] - d.mean()) * (d[t:] - d.mean())
            se = batch_mean_se(prod, batches=64)
            assert abs(empirical_covariance(d, t) - spec.covariance(t)) <= 3 * se


def test_matrix_dump_roundtrip(tmp_path):
    m = build_matrix(EnsembleConfig(5, ProcessSpec("AR1", 0.3), base_seed=1))
    path = tmp_path / "m.txt"
    m.dump(path)
    np.testing.assert_array_equal(np.loadtxt(path), m.entries)
