"""Property testers for symmetry, constancy and quasi-symmetry of Boolean
functions, a dependency-set estimator, and exact brute-force distances."""

from .core import (
    BooleanOracle,
    CapacityError,
    Point,
    Restriction,
    UsageError,
    embed_point,
    query,
    restrict,
    weight,
    xor_delta,
)
from .exact import (
    INFINITE_DISTANCE,
    DistanceValue,
    dependent_set,
    dist_const,
    dist_junta,
    dist_quasisym,
    dist_sym,
    distance,
)
from .samplers import RandomSource
from .testers import (
    ArgDependency,
    EstimateResult,
    NonConstancy,
    NonSymmetry,
    QuasiAsymmetry,
    RestrictedNonSymmetry,
    Verdict,
    constancy_basic_step,
    constancy_test,
    dependency_estimate,
    dependency_search,
    quasisym_basic_step,
    quasisymmetry_test,
    repetitions,
    symmetry_basic_step,
    symmetry_test,
    verify_witness,
)
from .truthtable import TruthTable, load_truth_table, store_truth_table

__version__ = "0.1.0"
