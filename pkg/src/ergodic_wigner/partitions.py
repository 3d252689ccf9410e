"""Set partitions, pair partitions and consistent index sequences.

All indices exposed here are 1-based. A consistent sequence of length k on
{1..n} is a cyclic tuple of pairs ``P_j = (p_j, q_j)`` with ``q_j = p_{j+1}``,
so it is determined by the points ``(p_1, ..., p_k)``; its gaps are
``g_j = q_j - p_j``. A sequence is pi-consistent when ``|g_i| = |g_j|`` holds
exactly for indices in a common block of pi, and star-consistent (for a pair
partition) when in addition ``g_i = -g_j`` within each block.

Counting is done by vectorized brute force over all ``n**k`` sequences, so
every routine here enforces an enumeration budget and raises instead of
truncating.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ergodic_wigner.errors import DomainError, ResourceError

MAX_PARTITION_K = 12
ENUMERATION_BUDGET = 10**7


@dataclass(frozen=True, eq=False)
class Partition:
    blocks: tuple[tuple[int, ...], ...]

    # PairPartition compares equal to the plain Partition with the same blocks
    def __eq__(self, other):
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        flat = sorted(i for b in blocks for i in b)
        if any(len(b) == 0 for b in blocks) or flat != list(range(1, len(flat) + 1)):
            raise DomainError(f"blocks {self.blocks!r} do not partition {{1..k}}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_labels(cls, labels) -> Partition:
        groups: dict = {}
        for i, lab in enumerate(labels, start=1):
            groups.setdefault(lab, []).append(i)
        return cls(tuple(tuple(g) for g in groups.values()))

    @property
    def k(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def classes(self) -> tuple[int, ...]:
        """0-based block index of each element 1..k (a restricted growth string)."""
        out = [0] * self.k
        for c, b in enumerate(self.blocks):
            for i in b:
                out[i - 1] = c
        return tuple(out)

    def equivalent(self, i: int, j: int) -> bool:
        c = self.classes
        return c[i - 1] == c[j - 1]

    @property
    def is_pair_partition(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)

    def canonical(self) -> str:
        """Compact text form such as ``1-3|2-4``."""
        return "|".join("-".join(map(str, b)) for b in self.blocks)

    @classmethod
    def parse(cls, text: str) -> Partition:
        blocks = tuple(tuple(int(x) for x in part.split("-")) for part in text.split("|"))
        p = cls(blocks)
        return PairPartition(p.blocks) if p.is_pair_partition else p

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return self.canonical()


class PairPartition(Partition):
    def __post_init__(self):
        super().__post_init__()
        if not self.is_pair_partition:
            raise DomainError(f"{self.canonical()} is not a pair partition")


@dataclass(frozen=True)
class ConsistentSequence:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(p), int(q)) for p, q in self.pairs)
        if not pairs:
            raise DomainError("empty sequence")
        for j, (_, q) in enumerate(pairs):
            if q != pairs[(j + 1) % len(pairs)][0]:
                raise DomainError(f"pairs {pairs} are not cyclically consistent at position {j + 1}")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_points(cls, points) -> ConsistentSequence:
        pts = [int(p) for p in points]
        return cls(tuple(zip(pts, pts[1:] + pts[:1])))

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def gaps(self) -> tuple[int, ...]:
        return tuple(q - p for p, q in self.pairs)


def enumerate_partitions(k: int) -> list[Partition]:
    """All set partitions of {1..k} via restricted growth strings."""
    if k < 1:
        raise DomainError("k must be positive")
    if k > MAX_PARTITION_K:
        raise ResourceError(f"k={k} exceeds the enumeration guard {MAX_PARTITION_K}")
    out = []

    def grow(rgs, top):
        if len(rgs) == k:
            out.append(Partition.from_labels(rgs))
            return
        for c in range(top + 2):
            rgs.append(c)
            grow(rgs, max(top, c))
            rgs.pop()

    grow([0], 0)
    return out


def enumerate_pair_partitions(k: int) -> list[PairPartition]:
    """All perfect matchings of {1..k}, in lexicographic block order."""
    if k < 1 or k % 2:
        raise DomainError(f"pair partitions need a positive even k, got {k}")
    if k > MAX_PARTITION_K:
        raise ResourceError(f"k={k} exceeds the enumeration guard {MAX_PARTITION_K}")

    def match(rest):
        if not rest:
            yield ()
            return
        first = rest[0]
        for idx in range(1, len(rest)):
            remaining = rest[1:idx] + rest[idx + 1 :]
            for tail in match(remaining):
                yield ((first, rest[idx]),) + tail

    return [PairPartition(m) for m in match(tuple(range(1, k + 1)))]


def is_crossing(pp: PairPartition) -> bool:
    c = pp.classes
    for i, j, l, m in itertools.combinations(range(pp.k), 4):
        if c[i] == c[l] and c[j] == c[m]:
            return True
    return False


def count_ncpp(k: int) -> int:
    return sum(not is_crossing(pp) for pp in enumerate_pair_partitions(k))


def _check_budget(n: int, k: int, budget: int) -> None:
    if n < 1 or k < 1:
        raise DomainError("n and k must be positive")
    if n**k > budget:
        raise ResourceError(f"n**k = {n}**{k} exceeds the enumeration budget {budget}")


def iter_consistent_chunks(n: int, k: int, budget: int = ENUMERATION_BUDGET) -> Iterator[np.ndarray]:
    """Yield int arrays of shape (m, k) holding points p_1..p_k (1-based).

    Chunks cover all ``n**k`` consistent sequences exactly once, in
    lexicographic order.
    """
    _check_budget(n, k, budget)
    lead = 0
    while lead < k and n ** (k - lead) > 2_000_000:
        lead += 1
    tail = np.indices((n,) * (k - lead)).reshape(k - lead, -1).T + 1
    for head in itertools.product(range(1, n + 1), repeat=lead):
        if lead:
            chunk = np.empty((tail.shape[0], k), dtype=np.int64)
            chunk[:, :lead] = head
            chunk[:, lead:] = tail
            yield chunk
        else:
            yield tail.astype(np.int64)


def gaps_of(points: np.ndarray) -> np.ndarray:
    """Signed gaps g_j = p_{j+1} - p_j (cyclic) for each row."""
    return np.roll(points, -1, axis=1) - points


def consistency_mask(gaps: np.ndarray, pi: Partition) -> np.ndarray:
    """Rows that are pi-consistent: equal |gap| iff same block."""
    a = np.abs(gaps)
    c = pi.classes
    mask = np.ones(len(gaps), dtype=bool)
    for i, j in itertools.combinations(range(pi.k), 2):
        same = a[:, i] == a[:, j]
        mask &= same if c[i] == c[j] else ~same
    return mask


def star_mask(gaps: np.ndarray, pp: PairPartition) -> np.ndarray:
    mask = consistency_mask(gaps, pp)
    for i, j in pp.blocks:
        mask &= gaps[:, i - 1] == -gaps[:, j - 1]
    return mask


def opposite_gap_mask(gaps: np.ndarray, pp: PairPartition) -> np.ndarray:
    """Rows with g_i = -g_j inside every block, ignoring cross-block equalities."""
    mask = np.ones(len(gaps), dtype=bool)
    for i, j in pp.blocks:
        mask &= gaps[:, i - 1] == -gaps[:, j - 1]
    return mask


def enumerate_consistent(n: int, k: int, budget: int = ENUMERATION_BUDGET) -> list[ConsistentSequence]:
    return [
        ConsistentSequence.from_points(row) for chunk in iter_consistent_chunks(n, k, budget) for row in chunk.tolist()
    ]


def partition_of_sequence(seq: ConsistentSequence) -> Partition:
    return Partition.from_labels(abs(g) for g in seq.gaps)


def _count(n, pi, mask_fn, budget):
    return int(sum(np.count_nonzero(mask_fn(gaps_of(ch), pi)) for ch in iter_consistent_chunks(n, pi.k, budget)))


def count_S(n: int, pi: Partition, budget: int = ENUMERATION_BUDGET) -> int:
    """Number of pi-consistent sequences on {1..n}."""
    return _count(n, pi, consistency_mask, budget)


def count_S_star(n: int, pi: PairPartition, budget: int = ENUMERATION_BUDGET) -> int:
    """Number of star-consistent sequences on {1..n}."""
    if not pi.is_pair_partition:
        raise DomainError("count_S_star needs a pair partition")
    return _count(n, pi, star_mask, budget)


def count_opposite_gaps(n: int, pi: PairPartition, budget: int = ENUMERATION_BUDGET) -> int:
    """Sequences with opposite gaps inside each block, blocks otherwise unconstrained."""
    if not pi.is_pair_partition:
        raise DomainError("count_opposite_gaps needs a pair partition")
    return _count(n, pi, opposite_gap_mask, budget)


def star_ratio(n: int, pi: PairPartition, budget: int = ENUMERATION_BUDGET) -> float:
    return count_S_star(n, pi, budget) / n ** (pi.k // 2 + 1)


def residual_count(n: int, pi: PairPartition, budget: int = ENUMERATION_BUDGET) -> int:
    """Size of S_n(pi) minus its star subset."""
    if not pi.is_pair_partition:
        raise DomainError("residual_count needs a pair partition")
    total = star = 0
    for ch in iter_consistent_chunks(n, pi.k, budget):
        g = gaps_of(ch)
        m = consistency_mask(g, pi)
        total += int(np.count_nonzero(m))
        for i, j in pi.blocks:
            m &= g[:, i - 1] == -g[:, j - 1]
        star += int(np.count_nonzero(m))
    return total - star


def partition_counts(n: int, k: int, budget: int = ENUMERATION_BUDGET) -> Counter:
    """Map each partition of {1..k} to the number of sequences consistent with it."""
    counts: Counter = Counter()
    for ch in iter_consistent_chunks(n, k, budget):
        a = np.abs(gaps_of(ch))
        # first index carrying the same |gap| labels the block
        first = np.full(a.shape, -1)
        for j in range(k):
            for i in range(j + 1):
                hit = (first[:, j] < 0) & (a[:, i] == a[:, j])
                first[hit, j] = i
        rows, freq = np.unique(first, axis=0, return_counts=True)
        for row, f in zip(rows.tolist(), freq.tolist()):
            counts[Partition.from_labels(row)] += f
    return counts
