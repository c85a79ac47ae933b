"""Integer partitions, conjugation, and Ferrers-dot weight sequences.

A partition here is a weakly decreasing tuple of positive integers.  The
conjugate counts Ferrers-diagram dots column by column, and the weight
sequence lists those dots in column order with column j (1-based) costing
p^(j-1); its prefix sums are the minimal total weights of dot selections.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .intmath import check_prime


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive integers; never empty."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("a partition needs at least one part")
        prev = None
        for part in self.parts:
            if not isinstance(part, int) or isinstance(part, bool) or part < 1:
                raise ValueError(f"parts must be positive integers, got {part!r}")
            if prev is not None and part > prev:
                raise ValueError(f"parts must be weakly decreasing, got {self.parts}")
            prev = part

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __iter__(self):
        return iter(self.parts)

    @property
    def size(self) -> int:
        """Total number of Ferrers dots."""
        return sum(self.parts)

    @property
    def width(self) -> int:
        """Largest part, i.e. the number of Ferrers columns."""
        return self.parts[0]

    def to_json(self) -> list[int]:
        return list(self.parts)


def make_partition(parts: Iterable[int]) -> Partition:
    """Build a partition, sorting the entries into weakly decreasing order."""
    entries = list(parts)
    if not entries:
        raise ValueError("a partition needs at least one part")
    return Partition(tuple(sorted(entries, reverse=True)))


def conjugate(partition: Partition) -> Partition:
    """Column dot counts: result[j-1] = #{i : parts[i] >= j}."""
    parts = partition.parts
    counts = []
    for j in range(1, parts[0] + 1):
        counts.append(sum(1 for a in parts if a >= j))
    return Partition(tuple(counts))


def truncate(partition: Partition, level: int) -> Partition:
    """Cap every part at the given level >= 1."""
    if level < 1:
        raise ValueError(f"truncation level must be >= 1, got {level}")
    return Partition(tuple(min(a, level) for a in partition.parts))


def geometric_sum(partition: Partition, p: int) -> int:
    """Sum of (p^a - 1)/(p - 1) over the parts, as an exact integer."""
    check_prime(p)
    return sum((p**a - 1) // (p - 1) for a in partition.parts)


@dataclass(frozen=True)
class WeightSequence:
    """Column-ordered Ferrers dot weights: conj[j-1] copies of p^(j-1)."""

    p: int
    weights: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        if any(b < a for a, b in zip(self.weights, self.weights[1:])):
            raise ValueError("weights must be weakly increasing")

    def __len__(self) -> int:
        return len(self.weights)

    def prefix_sums(self) -> tuple[int, ...]:
        """Cumulative weights, length len+1, starting at 0."""
        sums = [0]
        for w in self.weights:
            sums.append(sums[-1] + w)
        return tuple(sums)


def weight_sequence(partition: Partition, p: int) -> WeightSequence:
    """List the Ferrers dots column by column, weighting column j by p^(j-1)."""
    check_prime(p)
    conj = conjugate(partition)
    weights: list[int] = []
    for j, count in enumerate(conj.parts):
        weights.extend([p**j] * count)
    return WeightSequence(p, tuple(weights))


def conjugation_identity_sides(partition: Partition, m: int, x: int) -> tuple[int, int]:
    """Evaluate both sides of the tail-conjugation identity at an integer x.

    Left side:  sum_{j=m}^{a_1} conj[j] * x^j.
    Right side: sum_{i=1}^{conj[m]} (x^m + x^(m+1) + ... + x^(a_i)).
    The two polynomials are identical in Z[x]; callers assert lhs == rhs.
    """
    width = partition.width
    if not 1 <= m <= width:
        raise ValueError(f"m must lie in [1, {width}], got {m}")
    conj = conjugate(partition)
    lhs = sum(conj[j - 1] * x**j for j in range(m, width + 1))
    rhs = 0
    for i in range(conj[m - 1]):
        rhs += sum(x**e for e in range(m, partition[i] + 1))
    return lhs, rhs
