"""Partitions (non-increasing integer tuples) and the staircase families."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Partition:
    """A non-increasing tuple of non-negative integers.

    Parts are stored 0-based; reports present them 1-based. Parts are plain
    Python ints, so arbitrarily large leading entries are exact.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        if len(self.parts) == 0:
            raise ValueError("partition must have at least one part")
        for i, p in enumerate(self.parts):
            if not isinstance(p, int):
                raise TypeError(f"part at index {i} is not an integer: {p!r}")
            if p < 0:
                raise ValueError(f"negative part at index {i}: {p}")
        for i in range(len(self.parts) - 1):
            if self.parts[i] < self.parts[i + 1]:
                raise ValueError(
                    f"parts must be non-increasing: violation at index {i} "
                    f"({self.parts[i]} < {self.parts[i + 1]})"
                )

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def weight(self) -> int:
        """Sum of all parts."""
        return sum(self.parts)


def validate(parts) -> Partition:
    """Build a Partition from any integer sequence, rejecting invalid input."""
    return Partition(tuple(parts))


def staircase(m: int, N: int) -> Partition:
    """The staircase partition with parts (m-1)(N-1-i) for i = 0..N-1."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return Partition(tuple((m - 1) * (N - 1 - i) for i in range(N)))


def almost_staircase(m: int, N: int, head) -> Partition:
    """A staircase whose first len(head) parts are replaced by head.

    The splice must preserve monotonicity: head itself non-increasing and
    head[-1] >= the first retained staircase part.
    """
    head = tuple(head)
    l = len(head)
    if l > N:
        raise ValueError(f"head length {l} exceeds N={N}")
    tail = staircase(m, N).parts[l:]
    if l > 0 and tail and head[-1] < tail[0]:
        raise ValueError(
            f"splice breaks monotonicity at index {l - 1}: "
            f"head ends at {head[-1]} but staircase continues with {tail[0]}"
        )
    return Partition(head + tail)
