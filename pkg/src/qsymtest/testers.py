"""Randomized testers for symmetry, constancy and quasi-symmetry, and the
dependency-set estimator.

All testers have one-sided error: a function with the property is always
accepted, and every ``no`` carries a witness that :func:`verify_witness`
can re-check with fresh queries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Union

from .core import BooleanOracle, Point, Restriction, UsageError, embed_point, restrict
from .samplers import (
    RandomSource,
    as_source,
    mask_excluding,
    mask_excluding_poles,
    mask_same_weight_excluding,
    sample_assignment,
)

YES = "yes"
NO = "no"


@dataclass(frozen=True)
class NonSymmetry:
    """Two points of equal weight on which ``f`` differs."""

    x: Point
    y: Point
    fx: int
    fy: int


@dataclass(frozen=True)
class NonConstancy:
    x: Point
    y: Point
    fx: int
    fy: int


@dataclass(frozen=True)
class ArgDependency:
    """Points differing only at ``index`` on which ``f`` differs."""

    index: int
    x: Point
    y: Point
    fx: int
    fy: int


@dataclass(frozen=True)
class RestrictedNonSymmetry:
    """A non-symmetry pair of ``f`` with the arguments in ``assignment`` fixed.

    The pair's points list the free arguments in increasing index order.
    """

    assignment: Mapping[int, int]
    pair: NonSymmetry
    n: int

    def lifted(self) -> tuple[Point, Point]:
        return (
            embed_point(self.pair.x, self.assignment, self.n),
            embed_point(self.pair.y, self.assignment, self.n),
        )


@dataclass(frozen=True)
class QuasiAsymmetry:
    """``f`` depends on every argument in J, yet fixing the other arguments
    leaves a non-symmetric function of the J arguments.  No quasi-symmetric
    function admits both facts.
    """

    dependencies: tuple[ArgDependency, ...]
    restricted: RestrictedNonSymmetry

    @property
    def J(self) -> tuple[int, ...]:
        return tuple(sorted(d.index for d in self.dependencies))

    @property
    def n(self) -> int:
        return self.restricted.n


Witness = Union[NonSymmetry, NonConstancy, ArgDependency, RestrictedNonSymmetry, QuasiAsymmetry]


@dataclass(frozen=True)
class Verdict:
    answer: str
    witness: Witness | None = None
    queries_used: int = 0
    k: int | None = None

    @property
    def is_yes(self) -> bool:
        return self.answer == YES


_YES_0 = Verdict(YES)
_YES_2 = Verdict(YES, queries_used=2)


@dataclass(frozen=True)
class EstimateResult:
    J: frozenset[int]
    evidence: tuple[ArgDependency, ...]
    queries_used: int
    search_queries: tuple[int, ...] = field(default=())


def _check_params(eps: float, delta: float) -> None:
    if not (0 < eps < 1 and 0 < delta < 1):
        raise UsageError(f"need 0 < eps < 1 and 0 < delta < 1, got eps={eps}, delta={delta}")


def repetitions(eps: float, delta: float) -> int:
    """ceil((1/eps) * ln(1/delta)); natural log, so (1 - eps)^k <= delta."""
    _check_params(eps, delta)
    return math.ceil(-math.log(delta) / eps)


def quasisym_rounds(delta: float) -> int:
    """ceil(log_{4/3}(1/delta)): rounds needed when each round rejects w.p. >= 1/4."""
    if not 0 < delta < 1:
        raise UsageError(f"need 0 < delta < 1, got {delta}")
    return math.ceil(-math.log(delta) / math.log(4 / 3))


def search_cap(n: int) -> int:
    """ceil(log_{3/2} n), the most queries a dependency search may make."""
    if n <= 1:
        return 0
    k = math.ceil(math.log(n) / math.log(1.5))
    # guard against float error at exact powers
    while 1.5 ** (k - 1) >= n:
        k -= 1
    return k


def repeat_cap(eps: float, delta: float) -> int:
    return 2 * repetitions(eps, delta)


def estimate_cap(n: int, eps: float, delta: float) -> int:
    if n == 0:
        return 0
    return n * (2 * repetitions(eps, delta / n) + search_cap(n))


def quasisym_cap(n: int, eps: float, delta: float) -> int:
    e, d = eps / 4, delta / 2
    return estimate_cap(n, e, d) + quasisym_rounds(d) * repeat_cap(e, 0.5)


# ---------------------------------------------------------------- symmetry


def symmetry_basic_step(f: BooleanOracle, rng: RandomSource) -> Verdict:
    n = f.arity
    if n <= 1:
        return _YES_0
    x = mask_excluding_poles(n, rng)
    y = mask_same_weight_excluding(x, n, rng)
    fx = f.query_mask(x)
    fy = f.query_mask(y)
    if fx == fy:
        return _YES_2
    return Verdict(NO, NonSymmetry(Point(x, n), Point(y, n), fx, fy), 2)


def symmetry_test(f: BooleanOracle, eps: float, delta: float, rng) -> Verdict:
    k = repetitions(eps, delta)
    rng = as_source(rng)
    if f.arity <= 1:
        return Verdict(YES, k=k)
    return _repeat(symmetry_basic_step, f, k, rng)


def _repeat(step, f: BooleanOracle, k: int, rng: RandomSource) -> Verdict:
    used = 0
    for _ in range(k):
        v = step(f, rng)
        used += v.queries_used
        if v.answer is NO:
            return Verdict(NO, v.witness, used, k)
    return Verdict(YES, None, used, k)


# ---------------------------------------------------------------- constancy


def constancy_basic_step(f: BooleanOracle, rng: RandomSource) -> Verdict:
    n = f.arity
    if n == 0:
        return _YES_0
    x = rng.bits(n)
    y = mask_excluding(x, n, rng)
    fx = f.query_mask(x)
    fy = f.query_mask(y)
    if fx == fy:
        return _YES_2
    return Verdict(NO, NonConstancy(Point(x, n), Point(y, n), fx, fy), 2)


def constancy_test(f: BooleanOracle, eps: float, delta: float, rng) -> Verdict:
    k = repetitions(eps, delta)
    rng = as_source(rng)
    if f.arity == 0:
        return Verdict(YES, k=k)
    return _repeat(constancy_basic_step, f, k, rng)


# ---------------------------------------------------------------- dependency


def dependency_search(
    f: BooleanOracle, x: Point, y: Point, fx: int, fy: int
) -> tuple[int, ArgDependency, int]:
    """Bisect between ``x`` and ``y`` down to a single argument ``f`` depends on.

    ``fx`` and ``fy`` are the already-known values at the endpoints; only
    midpoints are queried.  Returns ``(index, witness, queries)``.
    """
    if fx == fy:
        raise UsageError("dependency search needs f(x) != f(y)")
    if x.n != y.n or x.n != f.arity:
        raise UsageError("arity mismatch in dependency search")
    n = f.arity
    xm, ym = x.mask, y.mask
    used = 0
    while True:
        d = xm ^ ym
        cnt = d.bit_count()
        if cnt == 0:
            raise UsageError("dependency search needs x != y")
        if cnt == 1:
            i = d.bit_length()
            return i, ArgDependency(i, Point(xm, n), Point(ym, n), fx, fy), used
        # z copies y on the first floor(cnt/2) differing positions, x on the rest
        half = cnt // 2
        low = 0
        rest = d
        for _ in range(half):
            b = rest & -rest
            low |= b
            rest ^= b
        zm = (xm & ~low) | (ym & low)
        fz = f.query_mask(zm)
        used += 1
        if fz != fx:
            ym, fy = zm, fz
        else:
            xm, fx = zm, fz


def _lift_dependency(g: Restriction, j: int, w: ArgDependency) -> ArgDependency:
    return ArgDependency(g.original_index(j), g.lift(w.x), g.lift(w.y), w.fx, w.fy)


def dependency_estimate(f: BooleanOracle, eps: float, delta: float, rng) -> EstimateResult:
    """Grow a set J of arguments ``f`` provably depends on.

    Each round fixes J at random and runs a constancy test with confidence
    ``delta / n`` on what is left; a rejection is bisected into one more
    argument.  J is always a subset of the true dependency set.
    """
    _check_params(eps, delta)
    rng = as_source(rng)
    n = f.arity
    if n == 0:
        return EstimateResult(frozenset(), (), 0)
    d = delta / n
    start = f.queries
    J: set[int] = set()
    evidence: list[ArgDependency] = []
    searches: list[int] = []
    while True:
        g = restrict(f, sample_assignment(J, rng))
        v = constancy_test(g, eps, d, rng)
        if v.is_yes:
            break
        w = v.witness
        j, dep, used = dependency_search(g, w.x, w.y, w.fx, w.fy)
        searches.append(used)
        dep = _lift_dependency(g, j, dep)
        J.add(dep.index)
        evidence.append(dep)
    evidence.sort(key=lambda e: e.index)
    return EstimateResult(frozenset(J), tuple(evidence), f.queries - start, tuple(searches))


# ---------------------------------------------------------------- quasi-symmetry


def quasisym_basic_step(f: BooleanOracle, eps: float, J, rng) -> Verdict:
    """Fix the arguments outside J at random and symmetry-test the rest with
    confidence 1/2."""
    n = f.arity
    J = set(J)
    if not J <= set(range(1, n + 1)):
        raise UsageError(f"J = {sorted(J)} is not a subset of 1..{n}")
    rng = as_source(rng)
    I = [i for i in range(1, n + 1) if i not in J]
    assignment = sample_assignment(I, rng)
    g = restrict(f, assignment)
    v = symmetry_test(g, eps, 0.5, rng)
    if v.is_yes:
        return v
    return Verdict(NO, RestrictedNonSymmetry(assignment, v.witness, n), v.queries_used, v.k)


def quasisymmetry_test(f: BooleanOracle, eps: float, delta: float, rng) -> Verdict:
    _check_params(eps, delta)
    rng = as_source(rng)
    e, d = eps / 4, delta / 2
    k = quasisym_rounds(d)
    start = f.queries
    est = dependency_estimate(f, e, d, rng)
    for _ in range(k):
        v = quasisym_basic_step(f, e, est.J, rng)
        if not v.is_yes:
            w = QuasiAsymmetry(est.evidence, v.witness)
            return Verdict(NO, w, f.queries - start, k)
    return Verdict(YES, None, f.queries - start, k)


# ---------------------------------------------------------------- verification


def _pair_differs(f: BooleanOracle, x: Point, y: Point) -> bool:
    return f.query(x) != f.query(y)


def verify_witness(f: BooleanOracle, w) -> bool:
    """Re-check a witness: structure first, then fresh queries of ``f``."""
    try:
        n = f.arity
        if isinstance(w, NonSymmetry):
            return (
                w.x.n == n == w.y.n
                and w.x != w.y
                and w.x.mask.bit_count() == w.y.mask.bit_count()
                and _pair_differs(f, w.x, w.y)
            )
        if isinstance(w, NonConstancy):
            return w.x.n == n == w.y.n and w.x != w.y and _pair_differs(f, w.x, w.y)
        if isinstance(w, ArgDependency):
            return (
                w.x.n == n == w.y.n
                and 1 <= w.index <= n
                and w.x.mask ^ w.y.mask == 1 << (w.index - 1)
                and _pair_differs(f, w.x, w.y)
            )
        if isinstance(w, RestrictedNonSymmetry):
            if w.n != n or not set(w.assignment) <= set(range(1, n + 1)):
                return False
            return verify_witness(restrict(f, w.assignment), w.pair)
        if isinstance(w, QuasiAsymmetry):
            J = [d.index for d in w.dependencies]
            if w.n != n or len(set(J)) != len(J):
                return False
            fixed = set(w.restricted.assignment)
            if set(J) & fixed or set(J) | fixed != set(range(1, n + 1)):
                return False
            return all(verify_witness(f, d) for d in w.dependencies) and verify_witness(f, w.restricted)
    except (UsageError, AttributeError, TypeError):
        return False
    return False
