"""Run-length utilities for binary strings and the constrained 1-/2-run family."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

# A run is a (bit, length) pair; adjacent runs alternate bits, length >= 1.
Run = tuple[int, int]


def runs_of(s: str) -> list[Run]:
    """Decompose a binary string into its maximal runs of equal bits."""
    runs: list[Run] = []
    for c in s:
        b = int(c)
        if runs and runs[-1][0] == b:
            runs[-1] = (b, runs[-1][1] + 1)
        else:
            runs.append((b, 1))
    return runs


def bits_of(runs: list[Run]) -> str:
    """Inverse of runs_of."""
    return "".join(str(b) * ln for b, ln in runs)


def _match_masks(b: str) -> tuple[int, int]:
    m0 = m1 = 0
    for i, c in enumerate(b):
        if c == "1":
            m1 |= 1 << i
        else:
            m0 |= 1 << i
    return m0, m1


def lcs_len(a: str, b: str) -> int:
    """Length of a longest common subsequence, via bit-parallel DP."""
    if not a or not b:
        return 0
    n = len(b)
    mask = (1 << n) - 1
    m0, m1 = _match_masks(b)
    v = mask
    for c in a:
        p = (m1 if c == "1" else m0) & v
        v = ((v + p) | (v - p)) & mask
    return n - bin(v).count("1")


def sequence_lcs_len(a, b) -> int:
    """lcs_len generalized to sequences of hashable symbols."""
    if not a or not b:
        return 0
    n = len(b)
    mask = (1 << n) - 1
    masks: dict = {}
    for i, sym in enumerate(b):
        masks[sym] = masks.get(sym, 0) | (1 << i)
    v = mask
    for sym in a:
        p = masks.get(sym, 0) & v
        v = ((v + p) | (v - p)) & mask
    return n - bin(v).count("1")


def edit_distance(a: str, b: str) -> int:
    """Insertion/deletion edit distance: |a| + |b| - 2*LCS(a, b)."""
    return len(a) + len(b) - 2 * lcs_len(a, b)


def sequence_edit_distance(a, b) -> int:
    """Symbol-level insertion/deletion edit distance between two sequences."""
    return len(a) + len(b) - 2 * sequence_lcs_len(a, b)


def is_subsequence(sub: str, s: str) -> bool:
    """Greedy left-to-right subsequence test."""
    it = iter(s)
    return all(c in it for c in sub)


def in_S(s: str) -> bool:
    """Membership in S: starts and ends with 1, runs of length 1 or 2 only."""
    if not s or s[0] != "1" or s[-1] != "1":
        return False
    return all(ln <= 2 for _, ln in runs_of(s))


@dataclass(frozen=True)
class SProfile:
    """Shape of a string in the constrained family: length m with exactly
    r1 runs of length 1 and r2 runs of length 2."""

    m: int
    r1: int
    r2: int

    def __post_init__(self) -> None:
        if self.r1 < 0 or self.r2 < 0:
            raise ValueError("run counts must be nonnegative")
        if self.m != self.r1 + 2 * self.r2:
            raise ValueError(f"m={self.m} != r1 + 2*r2 = {self.r1 + 2 * self.r2}")
        if (self.r1 + self.r2) % 2 == 0:
            raise ValueError(
                "r1 + r2 must be odd (strings start and end with the same bit)"
            )

    @property
    def num_runs(self) -> int:
        return self.r1 + self.r2

    @property
    def count(self) -> int:
        """Size of the family: choose which runs have length 2."""
        return comb(self.num_runs, self.r1)

    @classmethod
    def of(cls, s: str) -> "SProfile":
        """Profile of a string already in S."""
        if not in_S(s):
            raise ValueError(f"{s!r} is not in S")
        runs = runs_of(s)
        r1 = sum(1 for _, ln in runs if ln == 1)
        return cls(len(s), r1, len(runs) - r1)


def enumerate_S(profile: SProfile) -> list[str]:
    """All strings with the given profile, in lexicographic order.

    Strings start and end with 1 and alternate bits; a string is determined
    by which of its runs have length 2.
    """
    k = profile.num_runs
    out = []
    for two_positions in combinations(range(k), profile.r2):
        twos = set(two_positions)
        runs = [(1 - (i % 2), 2 if i in twos else 1) for i in range(k)]
        out.append(bits_of(runs))
    out.sort()
    return out


def s_normalize(s: str) -> str:
    """Flatten runs of length >= 3 by flipping middle bits, yielding a string
    in S of the same length.

    Preserves the property of being a common subsequence of any pair of
    strings whose runs are all of length <= 2.
    """
    if not s or s[0] != "1" or s[-1] != "1":
        raise ValueError("input must start and end with 1")
    bits = list(s)
    i = 0
    while i + 2 < len(bits):
        if bits[i] == bits[i + 1] == bits[i + 2]:
            bits[i + 1] = "1" if bits[i + 1] == "0" else "0"
            i += 2
        else:
            i += 1
    return "".join(bits)
