"""Pilot runs behind the frozen test thresholds.

Prints the exact fourth moment of the equi-correlated ensemble at n = 64,
the spread of m4 and the KS distance over pilot seeds at n = 1024, and the
moment distance of the i.i.d. ensemble over 20 seeds.
"""

import numpy as np

from ergodic_wigner.diag_process import ProcessSpec
from ergodic_wigner.ensemble import EnsembleConfig, build_matrix, trial_seed
from ergodic_wigner.moment_oracle import expected_trace_moment
from ergodic_wigner.spectra import eigenvalues, esd_moment, ks_distance, moment_distance

PILOT_SEED = 777


def spread(spec, n=1024, trials=20):
    m4, ks = [], []
    for i in range(trials):
        esd = eigenvalues(build_matrix(EnsembleConfig(n, spec, base_seed=trial_seed(PILOT_SEED, i))))
        m4.append(esd_moment(esd, 4))
        ks.append(ks_distance(esd))
    m4, ks = np.array(m4), np.array(ks)
    print(f"{spec}: m4 mean {m4.mean():.4f} sd {m4.std(ddof=1):.4f}; ks mean {ks.mean():.4f} max {ks.max():.4f}")


def main():
    eq = ProcessSpec("EquiCorrelated", 0.5)
    for n in (16, 32, 64):
        print(f"exact m4, {eq}, n={n}: {expected_trace_moment(n, 4, eq, budget=n**4):.5f}")
    spread(ProcessSpec("AR1", 0.5))
    spread(eq)
    iid = ProcessSpec("IIDGaussian")
    d = [moment_distance(eigenvalues(build_matrix(EnsembleConfig(1024, iid, base_seed=s))), 4) for s in range(20)]
    print(f"moment_distance(K=4), iid n=1024 over 20 seeds: max {max(d):.4f}")


if __name__ == "__main__":
    main()
