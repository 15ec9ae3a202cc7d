"""Boolean points, counted query oracles and restrictions.

Points are stored as an integer mask plus an arity.  Argument ``i`` (1-based)
is bit ``i - 1`` of the mask, so the mask of a point is also its index in a
truth table.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence


class UsageError(ValueError):
    """Raised when an operation is called outside its domain."""


class CapacityError(UsageError):
    """Raised when an exponential-time routine is asked for an arity above its cap."""


class Point:
    __slots__ = ("mask", "n")

    def __init__(self, mask: int, n: int):
        if n < 0 or mask < 0 or mask >> n:
            raise UsageError(f"mask {mask} does not fit {n} arguments")
        self.mask = mask
        self.n = n

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Point":
        mask = 0
        n = 0
        for i, b in enumerate(bits):
            if b not in (0, 1, True, False):
                raise UsageError(f"bit values must be 0 or 1, got {b!r}")
            if b:
                mask |= 1 << i
            n = i + 1
        return cls(mask, n)

    @classmethod
    def from_string(cls, s: str) -> "Point":
        """Parse a bitstring with argument 1 leftmost."""
        if any(c not in "01" for c in s):
            raise UsageError(f"not a bitstring: {s!r}")
        return cls.from_bits(int(c) for c in s)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.n))

    def __getitem__(self, i: int) -> int:
        """Value of argument ``i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return (self.mask >> (i - 1)) & 1

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Point) and self.mask == other.mask and self.n == other.n

    def __hash__(self) -> int:
        return hash((self.mask, self.n))

    def __str__(self) -> str:
        return "".join("1" if (self.mask >> i) & 1 else "0" for i in range(self.n))

    def __repr__(self) -> str:
        return f"Point('{self}')"


def weight(p: Point) -> int:
    return p.mask.bit_count()


def xor_delta(x: Point, y: Point) -> tuple[int, list[int]]:
    """Number of differing coordinates and their sorted 1-based indices."""
    if x.n != y.n:
        raise UsageError(f"arity mismatch: {x.n} vs {y.n}")
    d = x.mask ^ y.mask
    return d.bit_count(), mask_indices(d)


def mask_indices(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def indices_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


class BooleanOracle:
    """A function {0,1}^n -> {0,1} that counts every evaluation.

    ``evaluate`` maps a point mask to a bit.  It must be deterministic.  The
    tally lives in :attr:`queries`; restrictions charge their queries to the
    oracle they were derived from.
    """

    def __init__(self, arity: int, evaluate: Callable[[int], int], name: str | None = None):
        if arity < 0:
            raise UsageError("arity must be non-negative")
        self.arity = arity
        self._evaluate = evaluate
        self.name = name
        self.queries = 0

    def query(self, p: Point) -> int:
        if p.n != self.arity:
            raise UsageError(f"point of arity {p.n} queried on oracle of arity {self.arity}")
        self.queries += 1
        return self._evaluate(p.mask)

    __call__ = query

    def query_mask(self, m: int) -> int:
        """Counted evaluation at the point with mask ``m``; no arity check."""
        self.queries += 1
        return self._evaluate(m)

    def query_bits(self, bits: Sequence[int]) -> int:
        return self.query(Point.from_bits(bits))

    def counted_root(self) -> "BooleanOracle":
        """The oracle whose counter this one charges."""
        return self

    def fresh(self) -> "BooleanOracle":
        """Same function, new zeroed counter (for per-trial accounting)."""
        return BooleanOracle(self.arity, self._evaluate, self.name)

    def __repr__(self) -> str:
        label = self.name or "oracle"
        return f"<{label} n={self.arity} queries={self.queries}>"


class Restriction(BooleanOracle):
    """``base`` with the arguments in ``fixed`` held constant.

    Free arguments keep their relative order: reduced position ``k`` (1-based)
    is the ``k``-th smallest original index not in ``fixed``.
    """

    def __init__(self, base: BooleanOracle, fixed: Mapping[int, int]):
        n = base.arity
        for i, b in fixed.items():
            if not 1 <= i <= n:
                raise UsageError(f"index {i} out of range 1..{n}")
            if b not in (0, 1):
                raise UsageError(f"fixed value for {i} must be 0 or 1")
        self.base = base
        self.fixed = dict(sorted(fixed.items()))
        self.free = [i for i in range(1, n + 1) if i not in self.fixed]
        self._fixed_mask = indices_mask(i for i, b in self.fixed.items() if b)
        self._free_bits = [1 << (i - 1) for i in self.free]
        self.arity = len(self.free)
        self.name = base.name

    @property
    def queries(self) -> int:
        return self.base.queries

    @queries.setter
    def queries(self, value: int) -> None:
        self.base.queries = value

    def lift_mask(self, q: int) -> int:
        m = self._fixed_mask
        fb = self._free_bits
        j = 0
        while q:
            if q & 1:
                m |= fb[j]
            q >>= 1
            j += 1
        return m

    def lift(self, q: Point) -> Point:
        if q.n != self.arity:
            raise UsageError(f"point of arity {q.n} does not fit restriction of arity {self.arity}")
        return Point(self.lift_mask(q.mask), self.base.arity)

    def original_index(self, k: int) -> int:
        """Original argument index of reduced position ``k``."""
        return self.free[k - 1]

    def query(self, p: Point) -> int:
        if p.n != self.arity:
            raise UsageError(f"point of arity {p.n} queried on oracle of arity {self.arity}")
        return self.query_mask(p.mask)

    __call__ = query

    def query_mask(self, q: int) -> int:
        m = self._fixed_mask
        fb = self._free_bits
        j = 0
        while q:
            if q & 1:
                m |= fb[j]
            q >>= 1
            j += 1
        base = self.base
        base.queries += 1
        return base._evaluate(m)

    def counted_root(self) -> BooleanOracle:
        return self.base

    def fresh(self) -> "Restriction":
        return Restriction(self.base.fresh(), self.fixed)

    def __repr__(self) -> str:
        return f"<restriction of {self.base!r} fixed={self.fixed}>"


def query(f: BooleanOracle, p: Point) -> int:
    return f.query(p)


def restrict(f: BooleanOracle, fixed: Mapping[int, int]) -> BooleanOracle:
    """Fix some arguments of ``f``; indices refer to ``f``'s own positions.

    Restricting a restriction yields a single restriction of the underlying
    oracle, so witness lifting is always one step.
    """
    if isinstance(f, Restriction):
        for i in fixed:
            if not 1 <= i <= f.arity:
                raise UsageError(f"index {i} out of range 1..{f.arity}")
        merged = dict(f.fixed)
        merged.update({f.original_index(i): b for i, b in fixed.items()})
        return Restriction(f.base, merged)
    return Restriction(f, fixed)


def embed_point(q: Point, fixed: Mapping[int, int], n: int | None = None) -> Point:
    """Full point agreeing with ``fixed`` on its keys and with ``q`` elsewhere."""
    target = q.n + len(fixed) if n is None else n
    if q.n + len(fixed) != target:
        raise UsageError(f"{q.n} free + {len(fixed)} fixed arguments != arity {target}")
    mask = 0
    j = 0
    for i in range(1, target + 1):
        if i in fixed:
            b = fixed[i]
        else:
            b = (q.mask >> j) & 1
            j += 1
        if b:
            mask |= 1 << (i - 1)
    for i in fixed:
        if not 1 <= i <= target:
            raise UsageError(f"fixed index {i} out of range 1..{target}")
    return Point(mask, target)
