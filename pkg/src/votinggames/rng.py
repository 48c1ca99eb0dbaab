"""Explicit, splittable randomness.

Every probabilistic algorithm in the package takes an ``Rng`` argument and
draws through ``randrange``.  That single choke point is what lets the games
record an honest voter's coins and later replay them to audit a ballot.

The generator is Python's Mersenne Twister seeded through numpy's
``SeedSequence``.  It is reproducible and fast, and it is not a CSPRNG: this
package is a desk-scale reference, not a deployment.
"""

from __future__ import annotations

import random

import numpy as np


class CoinsExhausted(Exception):
    """A scripted replay asked for more coins than were recorded."""


class Rng:
    """Seedable random source that can be split into independent streams."""

    def __init__(self, seed: int | None = None, *, _seq: np.random.SeedSequence | None = None):
        self._seq = _seq if _seq is not None else np.random.SeedSequence(seed)
        state = self._seq.generate_state(8, np.uint32)
        self._rand = random.Random(int.from_bytes(state.tobytes(), "little"))

    @classmethod
    def from_hex(cls, seed_hex: str) -> "Rng":
        return cls(int(seed_hex, 16))

    @property
    def entropy(self) -> int:
        """Root entropy of the stream tree (the seed, or OS entropy if none)."""
        return int(self._seq.entropy)

    def spawn(self, n: int) -> list["Rng"]:
        return [Rng(_seq=s) for s in self._seq.spawn(n)]

    def child(self) -> "Rng":
        return self.spawn(1)[0]

    def randrange(self, start: int, stop: int | None = None) -> int:
        if stop is None:
            start, stop = 0, start
        return self._rand.randrange(start, stop)

    # convenience wrappers, all routed through randrange

    def bit(self) -> int:
        return self.randrange(2)

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def permutation(self, n: int) -> list[int]:
        """Uniform permutation of range(n) by Fisher-Yates."""
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.randrange(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return perm


class RecordingRng(Rng):
    """Wraps another Rng and keeps every value it hands out."""

    def __init__(self, inner: Rng):
        self._inner = inner
        self.coins: list[int] = []

    @property
    def entropy(self) -> int:
        return self._inner.entropy

    def spawn(self, n: int) -> list[Rng]:
        return self._inner.spawn(n)

    def randrange(self, start: int, stop: int | None = None) -> int:
        x = self._inner.randrange(start, stop)
        self.coins.append(x)
        return x


class ScriptedRng(Rng):
    """Replays a fixed list of coins, in order.

    A coin that falls outside the requested range raises ``ValueError``, so a
    replay can never silently diverge from the run that produced the coins.
    """

    def __init__(self, coins):
        self._coins = [int(c) for c in coins]
        self._pos = 0

    @property
    def entropy(self) -> int:
        raise TypeError("scripted coins have no entropy")

    def spawn(self, n: int) -> list[Rng]:
        raise TypeError("scripted coins cannot be split")

    @property
    def exhausted(self) -> bool:
        return self._pos == len(self._coins)

    def randrange(self, start: int, stop: int | None = None) -> int:
        if stop is None:
            start, stop = 0, start
        if self._pos >= len(self._coins):
            raise CoinsExhausted(f"coin {self._pos} requested, only {len(self._coins)} scripted")
        x = self._coins[self._pos]
        if not start <= x < stop:
            raise ValueError(f"scripted coin {x} outside [{start}, {stop})")
        self._pos += 1
        return x
