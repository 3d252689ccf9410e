"""Compare the decaying and the non-decaying branch at one matrix size.

    python scripts/theorem_check.py --n 1024 --trials 20
"""

import argparse

import numpy as np

from ergodic_wigner.diag_process import ProcessSpec
from ergodic_wigner.ensemble import EnsembleConfig, build_matrix, trial_seed
from ergodic_wigner.spectra import eigenvalues, esd_moment, ks_distance, semicircle_moment

SPECS = [
    ProcessSpec("IIDGaussian"),
    ProcessSpec("AR1", 0.5),
    ProcessSpec("AR1", 0.9),
    ProcessSpec("MarkovTwoState", 0.8),
    ProcessSpec("EquiCorrelated", 0.25),
    ProcessSpec("EquiCorrelated", 0.5),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'spec':<22}{'m2':>8}{'m4':>8}{'m6':>9}{'ks':>8}")
    print(f"{'semicircle':<22}{1:>8}{semicircle_moment(4):>8}{semicircle_moment(6):>9}{0:>8}")
    for spec in SPECS:
        vals = []
        for i in range(args.trials):
            esd = eigenvalues(build_matrix(EnsembleConfig(args.n, spec, base_seed=trial_seed(args.seed, i))))
            vals.append([esd_moment(esd, 2), esd_moment(esd, 4), esd_moment(esd, 6), ks_distance(esd)])
        m2, m4, m6, ks = np.mean(vals, axis=0)
        print(f"{str(spec):<22}{m2:8.3f}{m4:8.3f}{m6:9.3f}{ks:8.4f}")


if __name__ == "__main__":
    main()
