import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qsymtest.core import Point, UsageError
from qsymtest.exact import dist_quasisym, distance
from qsymtest.families import (
    FunctionSpec,
    build_function,
    build_table,
    const,
    dictator,
    majority,
    parity,
    perturbed,
    random_table,
    sym_junta,
    threshold,
)
from qsymtest.serialize import flatten, to_csv, to_json, witness_from_dict, witness_to_dict
from qsymtest.testers import quasisymmetry_test, symmetry_test, verify_witness
from qsymtest.trials import estimate_trials, run_trials, wilson_interval
from qsymtest.truthtable import TruthTable

from conftest import exact_sym_step_rejection


# ------------------------------------------------------------ families


def test_dictator_projection():
    f = build_function(dictator(5, 3))
    assert f.query(Point.from_bits([0, 0, 1, 0, 0])) == 1
    assert f.query(Point.from_bits([1, 1, 0, 1, 1])) == 0


@pytest.mark.parametrize(
    "spec",
    [const(4, 1), dictator(6, 2), parity(5), majority(7), threshold(6, 2), sym_junta(7, [2, 5, 6], [1, 0, 0, 1])],
)
def test_table_matches_oracle(spec):
    f = build_function(spec)
    assert f.arity == spec.n
    assert TruthTable.from_oracle(f) == build_table(spec)


@pytest.mark.parametrize("spec", [parity(13), majority(14), threshold(13, 9), dictator(13, 13), const(13, 1),
                                  sym_junta(13, [1, 7, 13], [0, 1, 1, 0])])
def test_vectorized_table_matches_formula(spec):
    tt = build_table(spec)
    f = build_function(spec)
    rng = np.random.default_rng(0)
    for m in rng.integers(0, 1 << spec.n, 300):
        assert tt.value(int(m)) == f.query_mask(int(m))


def test_perturbed_parity_distance():
    base = parity(4)
    for seed in range(10):
        d = distance(build_table(perturbed(base, 2, seed)), build_table(base))
        assert (d.numerator, d.denominator) == (2, 16)


@given(st.integers(0, 8), st.data())
def test_perturbed_flip_count(n, data):
    m = data.draw(st.integers(0, 1 << n))
    seed = data.draw(st.integers(0, 2**31))
    d = distance(build_table(perturbed(random_table(n, 1), m, seed)), build_table(random_table(n, 1)))
    assert d.numerator == m


def test_sym_junta_is_quasisymmetric():
    spec = sym_junta(6, [1, 4], [0, 1, 0])
    assert dist_quasisym(build_table(spec)) == 0
    f = build_function(spec)
    assert all(quasisymmetry_test(f, 0.1, 0.1, s).is_yes for s in range(20))


def test_random_table_deterministic():
    assert build_table(random_table(10, 5)) == build_table(random_table(10, 5))
    assert build_table(random_table(10, 5)) != build_table(random_table(10, 6))


@pytest.mark.parametrize(
    "spec",
    [
        perturbed(parity(3), 9, 0),
        dictator(3, 4),
        const(2, 2),
        threshold(3, 5),
        sym_junta(4, [1, 5], [0, 1, 0]),
        sym_junta(4, [1, 2], [0, 1]),
        FunctionSpec("nope", 3),
    ],
)
def test_invalid_params(spec):
    with pytest.raises(UsageError):
        build_table(spec)


def test_spec_dict_roundtrip():
    spec = perturbed(sym_junta(5, {4, 2}, [0, 1, 1]), 3, 9)
    assert FunctionSpec.from_dict(json.loads(json.dumps(spec.to_dict()))) == spec


# ------------------------------------------------------------ wilson


def test_wilson_basic():
    lo, hi = wilson_interval(0, 100)
    assert lo == 0 and 0 < hi < 0.08
    lo, hi = wilson_interval(100, 100)
    assert hi == 1 and lo > 0.92
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi and math.isclose(0.5 - lo, hi - 0.5)
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


def test_wilson_coverage_against_exact_probability():
    tt = TruthTable.from_array(np.random.default_rng(2).integers(0, 2, 16))
    p = exact_sym_step_rejection(tt)
    reps = 400
    covered = 0
    for r in range(reps):
        rep = run_trials(tt, "sym-basic", None, None, 500, seed=1000 + r, verify=False, exact=False)
        covered += rep.wilson_low <= p <= rep.wilson_high
    assert covered / reps >= 0.99 - 4 * math.sqrt(0.99 * 0.01 / reps)


# ------------------------------------------------------------ run_trials


def test_run_trials_parity_all_yes():
    rep = run_trials(parity(6), "sym", 0.1, 0.05, 1000, seed=3)
    assert rep.yes_count == 1000 and rep.no_count == 0
    assert rep.max_queries <= rep.query_cap
    assert rep.exact_distance == 0 and rep.exact_distance_status == "computed"


def test_run_trials_dictator_basic_step_rejects():
    rep = run_trials(dictator(2, 1), "sym-basic", None, None, 10**4, seed=1)
    assert rep.rejection_rate == 1.0
    assert rep.witness_failures == 0 and rep.count_mismatches == 0


def test_run_trials_deterministic():
    a = run_trials(random_table(7, 2), "qsym", 0.2, 0.1, 200, seed=5).to_dict()
    b = run_trials(random_table(7, 2), "qsym", 0.2, 0.1, 200, seed=5).to_dict()
    assert a == b
    assert a["yes_count"] + a["no_count"] == 200


def test_run_trials_above_cap_flagged():
    rep = run_trials(parity(17), "sym", 0.3, 0.3, 5, seed=0)
    assert rep.exact_distance is None and rep.exact_distance_status == "above-cap"


def test_run_trials_errors():
    with pytest.raises(UsageError):
        run_trials(parity(3), "sym", 0.1, 0.1, 0, seed=0)
    with pytest.raises(UsageError):
        run_trials(parity(3), "sym", None, None, 5, seed=0)
    with pytest.raises(UsageError):
        run_trials(parity(3), "bogus", 0.1, 0.1, 5, seed=0)
    with pytest.raises(UsageError):
        run_trials(parity(3), "qsym-basic", 0.1, 0.1, 5, seed=0)


def test_estimate_trials_parity():
    rep = estimate_trials(parity(4), 0.1, 0.1, 500, seed=2)
    assert rep.containment_failures == rep.witness_failures == rep.count_mismatches == 0
    assert rep.dependent_set == [1, 2, 3, 4]
    assert sum(rep.j_counts.values()) == 500
    assert rep.max_queries <= rep.query_cap


# ------------------------------------------------------------ serialization


def test_csv_and_json_agree():
    rep = run_trials(random_table(5, 1), "const", 0.1, 0.05, 300, seed=4)
    js = json.loads(to_json(rep.to_dict()))
    row = next(csv.DictReader(io.StringIO(to_csv(rep.to_dict()))))
    flat = flatten(js)
    assert set(row) == set(flat)
    for k, v in flat.items():
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            continue
        assert float(row[k]) == v, k


def test_witness_roundtrip_through_json():
    f = build_function(random_table(6, 3))
    seen = 0
    for s in range(200):
        v = quasisymmetry_test(f, 0.1, 0.1, s)
        if v.is_yes:
            continue
        seen += 1
        w = witness_from_dict(json.loads(json.dumps(witness_to_dict(v.witness))))
        assert w == v.witness
        assert verify_witness(f.fresh(), w)
    assert seen > 0
    v = symmetry_test(build_function(dictator(3, 1)), 0.1, 0.1, 0)
    d = witness_to_dict(v.witness)
    assert d["kind"] == "non-symmetry" and all(len(s) == 3 for s in d["points"])
    assert witness_from_dict(d) == v.witness


@pytest.mark.parametrize("bad", [{}, {"kind": "nope"}, {"kind": "non-symmetry", "points": ["01"]},
                                 {"kind": "arg-dependency", "points": ["0", "1"], "indices": [1, 2]}])
def test_witness_from_dict_malformed(bad):
    with pytest.raises(UsageError):
        witness_from_dict(bad)
