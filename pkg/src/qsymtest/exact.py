"""Brute-force distances to the function classes the testers target.

Every routine here enumerates the full truth table (and, for quasi-symmetry,
every argument subset), so each is gated by an arity cap.  Results are exact
rationals ``k / 2^n``.

Quasi-symmetric functions are covered by enumerating, for every subset J,
the functions of ``|x_J|`` alone: a non-constant function of ``|x_J|``
depends on every argument in J (permuting J preserves it), so the union of
these families is exactly the quasi-symmetric functions, constants included
under J = {}.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np

from .core import CapacityError, UsageError, indices_mask
from .truthtable import TruthTable

SYM_CAP = 16
JUNTA_CAP = 16
QSYM_CAP = 14
DEP_CAP = 24


@functools.total_ordering
@dataclass(frozen=True)
class DistanceValue:
    """``numerator / denominator`` with the denominator kept at 2^n."""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0 or not 0 <= self.numerator <= self.denominator:
            raise ValueError(f"invalid distance {self.numerator}/{self.denominator}")

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.numerator / self.denominator

    def _cmp_key(self, other):
        if isinstance(other, DistanceValue):
            return self.numerator * other.denominator, other.numerator * self.denominator
        if isinstance(other, (int, Fraction)) or isinstance(other, Real):
            q = Fraction(other)
            return self.numerator * q.denominator, q.numerator * self.denominator
        return None

    def __eq__(self, other):
        if isinstance(other, _Infinite):
            return False
        key = self._cmp_key(other)
        return NotImplemented if key is None else key[0] == key[1]

    def __lt__(self, other):
        if isinstance(other, _Infinite):
            return True
        key = self._cmp_key(other)
        return NotImplemented if key is None else key[0] < key[1]

    def __hash__(self):
        return hash(self.as_fraction())

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


class _Infinite:
    """Distance between functions of different arities."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __le__(self, other):
        return other is self

    def __hash__(self):
        return hash("inf-distance")

    def __repr__(self):
        return "INFINITE_DISTANCE"


INFINITE_DISTANCE = _Infinite()


def _check_cap(tt: TruthTable, cap: int, what: str) -> None:
    if tt.arity > cap:
        raise CapacityError(f"{what} is capped at n <= {cap}, got n = {tt.arity}")


@functools.lru_cache(maxsize=32)
def _popcounts(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.uint32)
    pc = np.zeros(1 << n, dtype=np.uint8)
    for i in range(n):
        pc += ((idx >> i) & 1).astype(np.uint8)
    pc.setflags(write=False)
    return pc


def _minority_total(keys: np.ndarray, values: np.ndarray, nkeys: int) -> int:
    ones = np.bincount(keys, weights=values, minlength=nkeys)
    sizes = np.bincount(keys, minlength=nkeys)
    return int(np.minimum(ones, sizes - ones).sum())


def distance(f: TruthTable, g: TruthTable):
    """Fraction of table entries where ``f`` and ``g`` differ."""
    if f.arity != g.arity:
        return INFINITE_DISTANCE
    diff = np.bitwise_xor(np.frombuffer(f.packed, np.uint8), np.frombuffer(g.packed, np.uint8))
    return DistanceValue(int(np.unpackbits(diff).sum()), f.size)


def dist_const(f: TruthTable) -> DistanceValue:
    w = f.weight()
    return DistanceValue(min(w, f.size - w), f.size)


def dist_sym(f: TruthTable) -> DistanceValue:
    """Minority count summed over Hamming-weight levels."""
    _check_cap(f, SYM_CAP, "dist_sym")
    n = f.arity
    return DistanceValue(_minority_total(_popcounts(n), f.to_array(), n + 1), f.size)


def dist_junta(f: TruthTable, J) -> DistanceValue:
    """Distance to the functions depending only on arguments in ``J``."""
    _check_cap(f, JUNTA_CAP, "dist_junta")
    n = f.arity
    J = set(J)
    if not J <= set(range(1, n + 1)):
        raise UsageError(f"J = {sorted(J)} is not a subset of 1..{n}")
    keys = np.arange(f.size, dtype=np.int64) & indices_mask(J)
    return DistanceValue(_minority_total(keys, f.to_array(), f.size), f.size)


def dist_sym_on(f: TruthTable, J) -> DistanceValue:
    """Distance to the functions of ``|x_J|`` alone."""
    _check_cap(f, SYM_CAP, "dist_sym_on")
    n = f.arity
    keys = _popcounts(n)[np.arange(f.size, dtype=np.int64) & indices_mask(J)]
    return DistanceValue(_minority_total(keys, f.to_array(), n + 1), f.size)


def dist_quasisym(f: TruthTable) -> DistanceValue:
    """Distance to the quasi-symmetric functions, minimised over all subsets."""
    _check_cap(f, QSYM_CAP, "dist_quasisym")
    n = f.arity
    vals = f.to_array().astype(np.float64)
    pc = _popcounts(n)
    idx = np.arange(f.size, dtype=np.int64)
    best = f.size
    for jmask in range(1 << n):
        keys = pc[idx & jmask]
        t = _minority_total(keys, vals, n + 1)
        if t < best:
            best = t
            if best == 0:
                break
    return DistanceValue(best, f.size)


def dependent_set(f: TruthTable) -> frozenset[int]:
    """Arguments ``i`` for which flipping bit ``i`` changes ``f`` somewhere."""
    _check_cap(f, DEP_CAP, "dependent_set")
    n = f.arity
    arr = f.to_array()
    deps = set()
    for i in range(n):
        v = arr.reshape(1 << (n - i - 1), 2, 1 << i)
        if np.any(v[:, 0, :] != v[:, 1, :]):
            deps.add(i + 1)
    return frozenset(deps)
