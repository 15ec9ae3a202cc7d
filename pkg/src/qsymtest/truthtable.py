"""Packed truth tables and their text format.

File format::

    n=<arity>
    <hex>

The hex line holds ceil(2^n / 4) lowercase digits (one digit for n = 0),
most significant first.  Read as one big integer, bit ``i`` is the value of
the function at table index ``i = sum(x_i * 2^(i-1))``; argument 1 is the
least significant bit of the index.
"""

from __future__ import annotations

import re
from typing import Callable

import numpy as np

from .core import BooleanOracle, CapacityError, Point, UsageError

MAX_TABLE_ARITY = 28

_HEADER = re.compile(r"n=(\d+)")
_HEX = re.compile(r"[0-9a-f]+")


class TableFormatError(UsageError):
    pass


class TruthTable:
    """All 2^n values of a Boolean function, packed little-endian into bytes."""

    __slots__ = ("arity", "packed")

    def __init__(self, arity: int, packed: bytes):
        if not 0 <= arity <= MAX_TABLE_ARITY:
            raise CapacityError(f"truth tables support 0 <= n <= {MAX_TABLE_ARITY}, got {arity}")
        size = 1 << arity
        nbytes = (size + 7) // 8
        if len(packed) != nbytes:
            raise UsageError(f"expected {nbytes} packed bytes for n={arity}, got {len(packed)}")
        if size < 8 and packed[0] >> size:
            raise UsageError("bits set beyond the end of the table")
        self.arity = arity
        self.packed = bytes(packed)

    @classmethod
    def from_array(cls, values) -> "TruthTable":
        arr = np.asarray(values, dtype=np.uint8).ravel()
        size = arr.size
        n = size.bit_length() - 1
        if size == 0 or 1 << n != size:
            raise UsageError(f"table length {size} is not a power of two")
        if arr.max(initial=0) > 1:
            raise UsageError("table entries must be 0 or 1")
        return cls(n, np.packbits(arr, bitorder="little").tobytes())

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], int]) -> "TruthTable":
        """Tabulate ``fn`` over all point masks ``0 .. 2^n - 1``."""
        if n > MAX_TABLE_ARITY:
            raise CapacityError(f"cannot tabulate n={n} > {MAX_TABLE_ARITY}")
        return cls.from_array(np.fromiter((fn(i) for i in range(1 << n)), dtype=np.uint8, count=1 << n))

    @classmethod
    def from_oracle(cls, f: BooleanOracle) -> "TruthTable":
        """Tabulate an oracle without touching its query counter."""
        saved = f.queries
        try:
            if isinstance(f, TableOracle):
                return f.table
            n = f.arity
            return cls.from_function(n, lambda m: f.query(Point(m, n)))
        finally:
            f.queries = saved

    @property
    def size(self) -> int:
        return 1 << self.arity

    def value(self, index: int) -> int:
        return (self.packed[index >> 3] >> (index & 7)) & 1

    def to_array(self) -> np.ndarray:
        bits = np.unpackbits(np.frombuffer(self.packed, dtype=np.uint8), bitorder="little")
        return bits[: self.size]

    def weight(self) -> int:
        return int(np.unpackbits(np.frombuffer(self.packed, dtype=np.uint8)).sum())

    def flipped(self, indices) -> "TruthTable":
        arr = self.to_array().copy()
        idx = np.asarray(list(indices), dtype=np.int64)
        arr[idx] ^= 1
        return TruthTable.from_array(arr)

    def oracle(self, name: str | None = None) -> "TableOracle":
        return TableOracle(self, name)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TruthTable) and self.arity == other.arity and self.packed == other.packed

    def __hash__(self) -> int:
        return hash((self.arity, self.packed))

    def __repr__(self) -> str:
        return f"TruthTable(n={self.arity}, weight={self.weight()})"


class TableOracle(BooleanOracle):
    def __init__(self, table: TruthTable, name: str | None = None):
        self.table = table
        packed = table.packed
        super().__init__(table.arity, lambda m: (packed[m >> 3] >> (m & 7)) & 1, name)

    def fresh(self) -> "TableOracle":
        return TableOracle(self.table, self.name)


def hex_digits(n: int) -> int:
    return max(1, ((1 << n) + 3) // 4)


def store_truth_table(tt: TruthTable) -> str:
    value = int.from_bytes(tt.packed, "little")
    return f"n={tt.arity}\n{value:0{hex_digits(tt.arity)}x}\n"


def load_truth_table(text: str) -> TruthTable:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) != 2:
        raise TableFormatError("expected exactly two lines: 'n=<arity>' and a hex string")
    m = _HEADER.fullmatch(lines[0])
    if not m:
        raise TableFormatError(f"malformed header {lines[0]!r}")
    n = int(m.group(1))
    if n > MAX_TABLE_ARITY:
        raise TableFormatError(f"arity {n} exceeds the table cap {MAX_TABLE_ARITY}")
    digits = lines[1]
    if not _HEX.fullmatch(digits):
        raise TableFormatError("table body must be lowercase hexadecimal")
    if len(digits) != hex_digits(n):
        raise TableFormatError(f"expected {hex_digits(n)} hex digits for n={n}, got {len(digits)}")
    value = int(digits, 16)
    size = 1 << n
    if value >> size:
        raise TableFormatError("bits set beyond the end of the table")
    return TruthTable(n, value.to_bytes((size + 7) // 8, "little"))


def read_table_file(path) -> TruthTable:
    with open(path) as fh:
        return load_truth_table(fh.read())


def write_table_file(path, tt: TruthTable) -> None:
    with open(path, "w") as fh:
        fh.write(store_truth_table(tt))
