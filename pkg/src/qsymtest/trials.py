"""Seeded Monte-Carlo runs of the testers with exact-distance annotations.

Trial ``t`` (1-based) draws from ``RandomSource(seed).child(t)``; aggregation
is counts and maxima only, so a report depends on nothing but its inputs.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from statistics import NormalDist
from typing import Callable

from .core import BooleanOracle, UsageError
from .exact import (
    QSYM_CAP,
    SYM_CAP,
    DEP_CAP,
    DistanceValue,
    dependent_set,
    dist_const,
    dist_quasisym,
    dist_sym,
)
from .families import FunctionSpec, build_function, build_table
from .samplers import RandomSource
from .testers import (
    constancy_basic_step,
    constancy_test,
    dependency_estimate,
    estimate_cap,
    quasisym_basic_step,
    quasisym_cap,
    quasisymmetry_test,
    symmetry_basic_step,
    symmetry_test,
    repeat_cap,
    verify_witness,
)
from .truthtable import MAX_TABLE_ARITY, TableOracle, TruthTable

TESTERS = ("sym", "const", "qsym", "sym-basic", "const-basic", "qsym-basic")

_Z99 = NormalDist().inv_cdf(0.995)


def wilson_interval(successes: int, trials: int, z: float = _Z99) -> tuple[float, float]:
    """Two-sided Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    p = successes / trials
    z2 = z * z
    denom = 1 + z2 / trials
    centre = (p + z2 / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return lo, hi


@dataclass
class TrialReport:
    spec: dict | None
    test: str
    eps: float | None
    delta: float | None
    trials: int
    yes_count: int
    no_count: int
    mean_queries: float
    max_queries: int
    query_cap: int
    rejection_rate: float
    wilson_low: float
    wilson_high: float
    exact_distance: DistanceValue | None
    exact_distance_status: str
    seed: int
    n: int
    witness_failures: int = 0
    count_mismatches: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.exact_distance is not None:
            d["exact_distance"] = {
                "numerator": self.exact_distance.numerator,
                "denominator": self.exact_distance.denominator,
                "value": float(self.exact_distance),
            }
        return d


@dataclass
class EstimateReport:
    spec: dict | None
    eps: float
    delta: float
    trials: int
    seed: int
    n: int
    mean_queries: float
    max_queries: int
    query_cap: int
    max_search_queries: int
    j_counts: dict[str, int] = field(default_factory=dict)
    dependent_set: list[int] | None = None
    containment_failures: int = 0
    witness_failures: int = 0
    count_mismatches: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


# tabulating an opaque oracle costs 2^n Python calls
_TABULATE_CAP = 20


def _resolve(function) -> tuple[BooleanOracle, FunctionSpec | None]:
    if isinstance(function, FunctionSpec):
        return build_function(function), function
    if isinstance(function, TruthTable):
        return function.oracle(), None
    if isinstance(function, BooleanOracle):
        return function, None
    raise UsageError(f"cannot run trials on {type(function).__name__}")


def _table_for(f: BooleanOracle, spec: FunctionSpec | None, cap: int) -> TruthTable | None:
    if isinstance(f, TableOracle):
        return f.table if f.arity <= cap else None
    if spec is not None and spec.n <= min(cap, MAX_TABLE_ARITY):
        return build_table(spec)
    if f.arity > min(cap, _TABULATE_CAP):
        return None
    return TruthTable.from_oracle(f)


def _exact(test: str, f: BooleanOracle, spec: FunctionSpec | None, table: TruthTable | None):
    cls = {"sym": "sym", "sym-basic": "sym", "const": "const", "const-basic": "const", "qsym": "qsym"}.get(test)
    if cls is None:
        return None, "not-applicable"
    cap = {"sym": SYM_CAP, "const": MAX_TABLE_ARITY, "qsym": QSYM_CAP}[cls]
    tt = table if table is not None else _table_for(f, spec, cap)
    if tt is None or tt.arity > cap:
        return None, "above-cap"
    oracle = {"sym": dist_sym, "const": dist_const, "qsym": dist_quasisym}[cls]
    return oracle(tt), "computed"


def _runner(test: str, eps, delta, J) -> tuple[Callable, Callable[[int], int]]:
    """Tester as ``run(f, rng) -> Verdict`` and its query cap as a function of n."""
    if test == "sym-basic":
        return symmetry_basic_step, lambda n: 2
    if test == "const-basic":
        return constancy_basic_step, lambda n: 2
    if test == "qsym-basic":
        if J is None or eps is None:
            raise UsageError("qsym-basic needs eps and a set J")
        J = frozenset(J)
        cap = repeat_cap(eps, 0.5)
        return (lambda f, r: quasisym_basic_step(f, eps, J, r)), lambda n: cap
    if eps is None or delta is None:
        raise UsageError(f"tester {test!r} needs eps and delta")
    if test == "sym":
        cap = repeat_cap(eps, delta)
        return (lambda f, r: symmetry_test(f, eps, delta, r)), lambda n: cap
    if test == "const":
        cap = repeat_cap(eps, delta)
        return (lambda f, r: constancy_test(f, eps, delta, r)), lambda n: cap
    if test == "qsym":
        return (lambda f, r: quasisymmetry_test(f, eps, delta, r)), lambda n: quasisym_cap(n, eps, delta)
    raise UsageError(f"unknown tester {test!r}; choose from {', '.join(TESTERS)}")


def run_trials(
    function,
    test: str,
    eps: float | None,
    delta: float | None,
    trials: int,
    seed: int,
    *,
    J=None,
    verify: bool = True,
    exact: bool = True,
    table: TruthTable | None = None,
) -> TrialReport:
    """Run ``test`` ``trials`` times on independent child streams of ``seed``.

    ``function`` is a FunctionSpec, TruthTable or BooleanOracle.  Each
    ``no`` witness is re-checked on a separate counter when ``verify`` is
    set, and each run's reported queries are compared with the counter.
    """
    if trials < 1:
        raise UsageError("trials must be >= 1")
    f, spec = _resolve(function)
    run, capf = _runner(test, eps, delta, J)
    cap = capf(f.arity)
    checker = f.fresh()
    root = RandomSource(seed)
    no = 0
    total = 0
    worst = 0
    bad_witness = 0
    mismatches = 0
    for t in range(1, trials + 1):
        before = f.queries
        v = run(f, root.child(t))
        q = v.queries_used
        if f.queries - before != q:
            mismatches += 1
        total += q
        if q > worst:
            worst = q
        if v.answer == "no":
            no += 1
            if verify and not verify_witness(checker, v.witness):
                bad_witness += 1
    lo, hi = wilson_interval(no, trials)
    dist, status = _exact(test, f, spec, table) if exact else (None, "skipped")
    return TrialReport(
        spec=spec.to_dict() if spec else None,
        test=test,
        eps=eps,
        delta=delta,
        trials=trials,
        yes_count=trials - no,
        no_count=no,
        mean_queries=total / trials,
        max_queries=worst,
        query_cap=cap,
        rejection_rate=no / trials,
        wilson_low=lo,
        wilson_high=hi,
        exact_distance=dist,
        exact_distance_status=status,
        seed=seed,
        n=f.arity,
        witness_failures=bad_witness,
        count_mismatches=mismatches,
    )


def estimate_trials(
    function,
    eps: float,
    delta: float,
    trials: int,
    seed: int,
    *,
    verify: bool = True,
    table: TruthTable | None = None,
) -> EstimateReport:
    """Repeated dependency estimates; tallies each distinct J returned."""
    if trials < 1:
        raise UsageError("trials must be >= 1")
    f, spec = _resolve(function)
    n = f.arity
    cap = estimate_cap(n, eps, delta)
    if table is None:
        table = _table_for(f, spec, DEP_CAP)
    dep = dependent_set(table) if table is not None else None
    checker = f.fresh()
    root = RandomSource(seed)
    counts: Counter[str] = Counter()
    total = worst = worst_search = 0
    contain = bad_witness = mismatches = 0
    for t in range(1, trials + 1):
        before = f.queries
        est = dependency_estimate(f, eps, delta, root.child(t))
        q = est.queries_used
        if f.queries - before != q:
            mismatches += 1
        total += q
        worst = max(worst, q)
        worst_search = max(worst_search, max(est.search_queries, default=0))
        counts[",".join(map(str, sorted(est.J)))] += 1
        if dep is not None and not est.J <= dep:
            contain += 1
        if verify and not all(verify_witness(checker, w) for w in est.evidence):
            bad_witness += 1
    return EstimateReport(
        spec=spec.to_dict() if spec else None,
        eps=eps,
        delta=delta,
        trials=trials,
        seed=seed,
        n=n,
        mean_queries=total / trials,
        max_queries=worst,
        query_cap=cap,
        max_search_queries=worst_search,
        j_counts=dict(sorted(counts.items())),
        dependent_set=sorted(dep) if dep is not None else None,
        containment_failures=contain,
        witness_failures=bad_witness,
        count_mismatches=mismatches,
    )
