"""Outer code over a q-ary alphabet, robust to symbol insertions/deletions.

Codewords are length-n symbol sequences whose pairwise symbol-level edit
distance exceeds 2 * delta_out * n, so a nearest-codeword decoder corrects any
combination of up to delta_out * n symbol insertions and deletions. The
construction is a seeded greedy pass over pseudorandom candidates; it is a
stand-in with the same interface and distance guarantee as any stronger
construction one might drop in.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .strings import sequence_edit_distance

# Candidates examined per message slot before giving up on the greedy pass.
_CANDIDATE_FACTOR = 200


@dataclass(frozen=True)
class OuterSpec:
    """Shape of the outer code: alphabet size q, block length n, message
    length k (so q**k messages), and decoding-radius fraction delta_out
    (radius = floor(delta_out * n) symbol edits)."""

    q: int
    n: int
    k: int
    delta_out: float

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError("alphabet size q must be at least 2")
        if self.n < 1:
            raise ValueError("block length n must be at least 1")
        if self.k < 0:
            raise ValueError("message length k must be nonnegative")
        if not 0.0 < self.delta_out < 1.0:
            raise ValueError("delta_out must lie in (0, 1)")

    @property
    def num_messages(self) -> int:
        return self.q**self.k

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def radius(self) -> int:
        """Guaranteed correctable number of symbol edits."""
        return int(self.delta_out * self.n)


@dataclass(frozen=True)
class OuterCode:
    """Messages are integers in [0, q**k); codeword i is codewords[i]."""

    spec: OuterSpec
    codewords: tuple[tuple[int, ...], ...]
    seed: int

    def __len__(self) -> int:
        return len(self.codewords)

    def encode(self, message: int) -> tuple[int, ...]:
        if not 0 <= message < len(self.codewords):
            raise ValueError(
                f"message {message} out of range [0, {len(self.codewords)})"
            )
        return self.codewords[message]

    def decode(self, received: tuple[int, ...] | list[int]) -> int:
        """Nearest codeword in symbol edit distance; ties take the smallest
        message. Accepts sequences of any length."""
        received = tuple(received)
        best, best_d = 0, None
        for i, c in enumerate(self.codewords):
            d = sequence_edit_distance(c, received)
            if best_d is None or d < best_d:
                best, best_d = i, d
        return best

    def validate(self) -> None:
        spec = self.spec
        if len(self.codewords) != spec.num_messages:
            raise ValueError(
                f"expected {spec.num_messages} codewords, found {len(self.codewords)}"
            )
        threshold = 2.0 * spec.delta_out * spec.n
        for i, c in enumerate(self.codewords):
            if len(c) != spec.n or any(not 0 <= s < spec.q for s in c):
                raise ValueError(f"codeword {i} malformed")
            for j in range(i + 1, len(self.codewords)):
                if sequence_edit_distance(c, self.codewords[j]) <= threshold:
                    raise ValueError(f"codewords {i} and {j} too close")

    def save(self, path: str | Path) -> None:
        spec = self.spec
        num, den = spec.delta_out.as_integer_ratio()
        lines = [
            f"outercode v1 q={spec.q} n={spec.n} k={spec.k}"
            f" dout_num={num} dout_den={den} seed={self.seed}"
        ]
        lines.extend(" ".join(str(s) for s in c) for c in self.codewords)
        Path(path).write_text("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "OuterCode":
        lines = Path(path).read_text().splitlines()
        fields = dict(kv.split("=") for kv in lines[0].split()[2:])
        spec = OuterSpec(
            int(fields["q"]),
            int(fields["n"]),
            int(fields["k"]),
            int(fields["dout_num"]) / int(fields["dout_den"]),
        )
        codewords = tuple(
            tuple(int(s) for s in line.split())
            for line in lines[1 : 1 + spec.num_messages]
        )
        code = cls(spec, codewords, int(fields["seed"]))
        code.validate()
        return code


def construct_outer(spec: OuterSpec, seed: int) -> OuterCode:
    """Greedy construction from a seeded pseudorandom candidate stream.

    Accepts a candidate iff its symbol edit distance to every accepted
    codeword exceeds 2 * delta_out * n. Raises if the candidate budget runs
    out before q**k codewords are found, reporting how many were achieved.
    """
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    needed = spec.num_messages
    threshold = 2.0 * spec.delta_out * spec.n
    accepted: list[tuple[int, ...]] = []
    budget = _CANDIDATE_FACTOR * needed
    for _ in range(budget):
        cand = tuple(int(s) for s in rng.integers(0, spec.q, size=spec.n))
        if all(sequence_edit_distance(cand, c) > threshold for c in accepted):
            accepted.append(cand)
            if len(accepted) == needed:
                return OuterCode(spec, tuple(accepted), seed)
    raise ValueError(
        f"greedy outer construction found only {len(accepted)} of {needed}"
        f" codewords within {budget} candidates; lower delta_out or k"
    )
