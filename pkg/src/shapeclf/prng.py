"""Pinned SplitMix64 generator with labeled, indexed streams.

Every random decision in the package (bootstrap replicates, per-node feature
subsets, fold shuffles, synthetic shape parameters) draws from a stream
derived as ``mix64(seed ^ hash64(label) ^ index)``. A stream depends on
nothing else, so ensemble members can be trained in any order or in
parallel and still come out bit-identical.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def mix64(z: int) -> int:
    """SplitMix64 finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def hash64(label: str) -> int:
    """FNV-1a over the UTF-8 bytes of ``label``, finalized with :func:`mix64`."""
    h = _FNV_OFFSET
    for byte in label.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & MASK64
    return mix64(h)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(_MUL1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_MUL2)
    return z ^ (z >> np.uint64(31))


class Prng:
    """SplitMix64 state machine.

    ``next_u64`` advances the state by the golden-ratio increment and returns
    the mixed state. Batched draws are exactly the sequential draws.
    """

    __slots__ = ("state",)

    def __init__(self, state: int):
        self.state = int(state) & MASK64

    @classmethod
    def stream(cls, seed: int, label: str, index: int = 0) -> "Prng":
        return cls(mix64((int(seed) & MASK64) ^ hash64(label) ^ (int(index) & MASK64)))

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def u64_array(self, size: int) -> np.ndarray:
        steps = np.arange(1, size + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            states = np.uint64(self.state) + steps * np.uint64(GOLDEN)
            out = _mix64_array(states)
        self.state = (self.state + size * GOLDEN) & MASK64
        return out

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.random()

    def randbelow(self, n: int) -> int:
        """Unbiased integer in ``[0, n)`` by rejection of the short tail."""
        if n < 1:
            raise ValueError(f"randbelow needs n >= 1, got {n}")
        floor = ((1 << 64) - n) % n
        while True:
            r = self.next_u64()
            if r >= floor:
                return r % n

    def integers(self, n: int, size: int) -> np.ndarray:
        """``size`` draws of :meth:`randbelow`, vectorized."""
        if n < 1:
            raise ValueError(f"integers needs n >= 1, got {n}")
        if size == 0:
            return np.zeros(0, dtype=np.int64)
        floor = ((1 << 64) - n) % n
        saved = self.state
        raw = self.u64_array(size)
        if floor and bool((raw < np.uint64(floor)).any()):
            # a rejection shifts every later draw; replay sequentially
            self.state = saved
            return np.array([self.randbelow(n) for _ in range(size)], dtype=np.int64)
        return (raw % np.uint64(n)).astype(np.int64)

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, walking from the end."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, n: int, k: int) -> list[int]:
        """``k`` distinct values from ``range(n)`` via a partial Fisher-Yates."""
        if not 0 <= k <= n:
            raise ValueError(f"cannot sample {k} of {n}")
        pool = list(range(n))
        for i in range(k):
            j = i + self.randbelow(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
