"""Densities of integers classified by how many proper k-full numbers land
between successive kth powers, verified by exact enumeration."""

from .arith import (
    KFullRepr,
    canonical_repr,
    enumerate_kfull,
    factorize,
    introot,
    is_kfull,
    is_prime,
    is_squarefree,
    moebius,
)
from .bounded import ErrorBoundedReal
from .density import (
    DensityTable,
    SeriesCoeffs,
    SubsetSpec,
    XiSequence,
    build_table,
    coeffs_a,
    constant_C,
    density_A,
    density_B,
    density_shiu,
    eval_F,
    normalization_check,
    xi_direct,
    xi_from_power_sums,
)
from .empirical import (
    EmpiricalCounts,
    IntervalHit,
    classify_pair,
    compare_tables,
    empirical_table,
    hit_count,
    interval_hits,
    lemma_check,
    members_B,
)
from .shapes import (
    LambdaElement,
    PowerSums,
    enumerate_lambda,
    lambda_value,
    power_sum_direct,
    power_sum_euler,
    power_sums,
    tail_bound,
)
from .zetas import prime_zeta, prime_zeta_tail, zeta

__version__ = "0.1.0"

__all__ = [
    "DensityTable", "EmpiricalCounts", "ErrorBoundedReal", "IntervalHit",
    "KFullRepr", "LambdaElement", "PowerSums", "SeriesCoeffs", "SubsetSpec",
    "XiSequence", "build_table", "canonical_repr", "classify_pair",
    "coeffs_a", "compare_tables", "constant_C", "density_A", "density_B",
    "density_shiu", "empirical_table", "enumerate_kfull", "enumerate_lambda",
    "eval_F", "factorize", "hit_count", "interval_hits", "introot",
    "is_kfull", "is_prime", "is_squarefree", "lambda_value", "lemma_check",
    "members_B", "moebius", "normalization_check", "power_sum_direct",
    "power_sum_euler", "power_sums", "prime_zeta", "prime_zeta_tail",
    "tail_bound", "xi_direct", "xi_from_power_sums", "zeta",
]
