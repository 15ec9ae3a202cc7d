"""Named function families used as test inputs.

Formula families (const, dictator, parity, majority, threshold, sym-junta)
evaluate directly from the point mask and have no arity limit.  Table
families (random-table, perturbed) are materialised truth tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .core import BooleanOracle, UsageError, indices_mask
from .truthtable import MAX_TABLE_ARITY, TruthTable

FAMILIES = ("const", "dictator", "parity", "majority", "threshold", "random-table", "sym-junta", "perturbed")


@dataclass(frozen=True)
class FunctionSpec:
    family: str
    n: int
    params: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        params = dict(self.params)
        if isinstance(params.get("base"), FunctionSpec):
            params["base"] = params["base"].to_dict()
        if "J" in params:
            params["J"] = sorted(params["J"])
        return {"family": self.family, "n": self.n, "params": params}

    @classmethod
    def from_dict(cls, d: dict) -> "FunctionSpec":
        params = dict(d.get("params", {}))
        if isinstance(params.get("base"), dict):
            params["base"] = cls.from_dict(params["base"])
        return cls(d["family"], int(d["n"]), params)

    def __hash__(self) -> int:
        return hash((self.family, self.n, repr(sorted(self.to_dict()["params"].items()))))


def const(n: int, value: int = 0) -> FunctionSpec:
    return FunctionSpec("const", n, {"value": value})


def dictator(n: int, index: int = 1) -> FunctionSpec:
    return FunctionSpec("dictator", n, {"index": index})


def parity(n: int) -> FunctionSpec:
    return FunctionSpec("parity", n)


def majority(n: int) -> FunctionSpec:
    return FunctionSpec("majority", n)


def threshold(n: int, t: int) -> FunctionSpec:
    return FunctionSpec("threshold", n, {"t": t})


def random_table(n: int, seed: int) -> FunctionSpec:
    return FunctionSpec("random-table", n, {"seed": seed})


def sym_junta(n: int, J, levels) -> FunctionSpec:
    """Function of ``|x_J|`` given by ``levels[|x_J|]``; quasi-symmetric."""
    return FunctionSpec("sym-junta", n, {"J": sorted(J), "levels": list(levels)})


def perturbed(base: FunctionSpec, m: int, seed: int) -> FunctionSpec:
    """``base`` with ``m`` distinct table entries flipped."""
    return FunctionSpec("perturbed", base.n, {"base": base, "m": m, "seed": seed})


def _check_bit(v, what: str) -> int:
    if v not in (0, 1):
        raise UsageError(f"{what} must be 0 or 1, got {v!r}")
    return int(v)


def _formula(spec: FunctionSpec):
    n, p = spec.n, spec.params
    fam = spec.family
    if fam == "const":
        v = _check_bit(p.get("value", 0), "value")
        return lambda m: v
    if fam == "dictator":
        i = int(p.get("index", 1))
        if not 1 <= i <= n:
            raise UsageError(f"dictator index {i} out of range 1..{n}")
        s = i - 1
        return lambda m: (m >> s) & 1
    if fam == "parity":
        return lambda m: m.bit_count() & 1
    if fam == "majority":
        half = n // 2
        return lambda m: 1 if m.bit_count() > half else 0
    if fam == "threshold":
        t = int(p["t"])
        if not 0 <= t <= n + 1:
            raise UsageError(f"threshold {t} out of range 0..{n + 1}")
        return lambda m: 1 if m.bit_count() >= t else 0
    if fam == "sym-junta":
        J = sorted(int(j) for j in p["J"])
        if len(set(J)) != len(J) or not all(1 <= j <= n for j in J):
            raise UsageError(f"J = {J} is not a subset of 1..{n}")
        levels = tuple(_check_bit(v, "level value") for v in p["levels"])
        if len(levels) != len(J) + 1:
            raise UsageError(f"sym-junta needs |J| + 1 = {len(J) + 1} level values, got {len(levels)}")
        jm = indices_mask(J)
        return lambda m: levels[(m & jm).bit_count()]
    return None


def build_table(spec: FunctionSpec) -> TruthTable:
    if spec.n < 0:
        raise UsageError("arity must be non-negative")
    if spec.n > MAX_TABLE_ARITY:
        raise UsageError(f"cannot tabulate n={spec.n} > {MAX_TABLE_ARITY}")
    fam = spec.family
    if fam == "random-table":
        rng = np.random.default_rng(int(spec.params["seed"]))
        return TruthTable.from_array(rng.integers(0, 2, 1 << spec.n, dtype=np.uint8))
    if fam == "perturbed":
        base = spec.params["base"]
        if isinstance(base, dict):
            base = FunctionSpec.from_dict(base)
        if base.n != spec.n:
            raise UsageError("perturbed base must have the same arity")
        m = int(spec.params["m"])
        size = 1 << spec.n
        if not 0 <= m <= size:
            raise UsageError(f"flip count {m} out of range 0..{size}")
        rng = np.random.default_rng(int(spec.params["seed"]))
        flips = rng.choice(size, size=m, replace=False)
        return build_table(base).flipped(flips)
    fn = _formula(spec)
    if fn is None:
        raise UsageError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
    if spec.n <= 12:
        return TruthTable.from_function(spec.n, fn)
    return _vector_table(spec)


def _vector_table(spec: FunctionSpec) -> TruthTable:
    idx = np.arange(1 << spec.n, dtype=np.int64)
    pc = np.zeros(idx.size, dtype=np.int64)
    p = spec.params
    if spec.family == "dictator":
        return TruthTable.from_array((idx >> (int(p.get("index", 1)) - 1)) & 1)
    if spec.family == "const":
        return TruthTable.from_array(np.full(idx.size, int(p.get("value", 0)), dtype=np.uint8))
    jm = indices_mask(p["J"]) if spec.family == "sym-junta" else (1 << spec.n) - 1
    masked = idx & jm
    for i in range(spec.n):
        pc += (masked >> i) & 1
    if spec.family == "parity":
        vals = pc & 1
    elif spec.family == "majority":
        vals = pc > spec.n // 2
    elif spec.family == "threshold":
        vals = pc >= int(p["t"])
    else:
        vals = np.asarray(p["levels"], dtype=np.uint8)[pc]
    return TruthTable.from_array(vals.astype(np.uint8))


def build_function(spec: FunctionSpec) -> BooleanOracle:
    """Counted oracle for ``spec``; arity always equals ``spec.n``."""
    if spec.n < 0:
        raise UsageError("arity must be non-negative")
    fn = _formula(spec)
    if fn is not None:
        return BooleanOracle(spec.n, fn, spec.family)
    if spec.family in ("random-table", "perturbed"):
        return build_table(spec).oracle(spec.family)
    raise UsageError(f"unknown family {spec.family!r}; choose from {', '.join(FAMILIES)}")
