"""Seeded random source and the point distributions the testers draw from.

The generator is SplitMix64, the mixer behind Java's SplittableRandom.  The ``j``-th
64-bit output of a stream with seed ``s`` depends only on ``(s, j)``, and
the draws made from it depend only on the sequence of calls.  Child streams are
derived by mixing the parent seed with a derivation index, so per-trial
streams are reproducible no matter how trials are scheduled.  Statistical
quality only; not for cryptographic use.

Fixed-weight points come from a uniform w-subset of positions, redrawn when
it reproduces the excluded point; under the callers' preconditions that
happens with probability at most 1/n.
"""

from __future__ import annotations

from typing import Iterable

from .core import Point, UsageError

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_CHILD_GAMMA = 0xD1B54A32D192ED03


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class RandomSource:
    """SplitMix64 stream with a bit reservoir.

    Small draws are carved from the low end of buffered 64-bit outputs, so a
    call sequence such as ``bits(3), bits(5)`` consumes one generator step.
    """

    __slots__ = ("seed", "_state", "_buf", "_avail")

    def __init__(self, seed: int = 0):
        self.seed = seed & MASK64
        self._state = self.seed
        self._buf = 0
        self._avail = 0

    def next64(self) -> int:
        self._state = s = (self._state + _GAMMA) & MASK64
        z = ((s ^ (s >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def bits(self, k: int) -> int:
        """Uniform integer in [0, 2^k)."""
        avail = self._avail
        buf = self._buf
        while avail < k:
            buf |= self.next64() << avail
            avail += 64
        self._buf = buf >> k
        self._avail = avail - k
        return buf & ((1 << k) - 1)

    def below(self, m: int) -> int:
        """Uniform integer in [0, m), by rejection on the bit length."""
        if m <= 0:
            raise UsageError("below() needs a positive bound")
        k = (m - 1).bit_length()
        while True:
            r = self.bits(k)
            if r < m:
                return r

    def child(self, index: int) -> "RandomSource":
        z = (self.seed + _mix64((index * _CHILD_GAMMA) & MASK64)) & MASK64
        return RandomSource(_mix64(z))

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed})"


def as_source(rng: "RandomSource | int | None") -> RandomSource:
    if isinstance(rng, RandomSource):
        return rng
    return RandomSource(0 if rng is None else rng)


def mask_excluding(xm: int, n: int, rng: RandomSource) -> int:
    while True:
        m = rng.bits(n)
        if m != xm:
            return m


def mask_excluding_poles(n: int, rng: RandomSource) -> int:
    full = (1 << n) - 1
    while True:
        m = rng.bits(n)
        if m and m != full:
            return m


def _random_subset_mask(n: int, w: int, rng: RandomSource) -> int:
    """Uniform w-subset of positions 0..n-1 as a mask (Floyd's selection).

    Picks whichever of the subset or its complement is smaller.
    """
    k = w if 2 * w <= n else n - w
    m = 0
    below = rng.below
    for j in range(n - k, n):
        t = 1 << below(j + 1)
        m |= (1 << j) if m & t else t
    return m if k == w else ((1 << n) - 1) ^ m


def mask_same_weight_excluding(xm: int, n: int, rng: RandomSource) -> int:
    w = xm.bit_count()
    while True:
        m = _random_subset_mask(n, w, rng)
        if m != xm:
            return m


def sample_any(n: int, rng: RandomSource) -> Point:
    if n < 0:
        raise UsageError("arity must be non-negative")
    return Point(rng.bits(n), n)


def sample_excluding(x: Point, rng: RandomSource) -> Point:
    """Uniform over the 2^n - 1 points other than ``x``."""
    if x.n < 1:
        raise UsageError("no point other than x exists when n = 0")
    return Point(mask_excluding(x.mask, x.n, rng), x.n)


def sample_excluding_poles(n: int, rng: RandomSource) -> Point:
    """Uniform over the 2^n - 2 points other than all-0s and all-1s."""
    if n < 2:
        raise UsageError("need n >= 2 to exclude both poles")
    return Point(mask_excluding_poles(n, rng), n)


def sample_same_weight_excluding(x: Point, rng: RandomSource) -> Point:
    """Uniform over the points with the weight of ``x``, other than ``x``."""
    w = x.mask.bit_count()
    if w == 0 or w == x.n:
        raise UsageError("x must have weight strictly between 0 and n")
    return Point(mask_same_weight_excluding(x.mask, x.n, rng), x.n)


def sample_assignment(indices: Iterable[int], rng: RandomSource) -> dict[int, int]:
    """Uniform map from each index to a bit; keys are exactly ``indices``."""
    keys = sorted(indices)
    r = rng.bits(len(keys))
    return {i: (r >> j) & 1 for j, i in enumerate(keys)}
