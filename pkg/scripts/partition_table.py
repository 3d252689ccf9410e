"""Star-set ratios and residuals for every pair partition of k points."""

import sys

from ergodic_wigner.partitions import count_S, count_S_star, enumerate_pair_partitions, is_crossing


def main(k=4, grid=(10, 20, 40)):
    print("pi           crossing   n   S/n^(k/2+1)  S*/n^(k/2+1)  residual")
    for pp in enumerate_pair_partitions(k):
        for n in grid:
            if n**k > 10**7:
                continue
            s, star = count_S(n, pp), count_S_star(n, pp)
            scale = n ** (k // 2 + 1)
            print(f"{pp.canonical():<12} {is_crossing(pp)!s:<8} {n:>3}   {s / scale:.5f}      {star / scale:.5f}      {(s - star) / scale:.5f}")


if __name__ == "__main__":
    k = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    main(k, (10, 20, 40) if k == 4 else (4, 6, 8, 10))
