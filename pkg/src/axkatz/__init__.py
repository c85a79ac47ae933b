"""p-adic lower bounds for simultaneous zero counts on finite commutative groups.

The package computes the group-theoretic Ax-Katz style lower bound on
ord_p(#Z(f_1, ..., f_r)) for maps between finite commutative p-groups from
the invariant factors and functional-degree caps, implements the underlying
finite-difference calculus and conjugate-partition optimization, and ships
brute-force oracles that verify every closed form at desk scale.
"""

from .bounds import (
    BoundReport,
    PrimeBound,
    TargetSpec,
    ValuationMinimum,
    binomial_sum_valuation,
    bound_objective,
    bound_objective_minimum,
    equal_exponent_bound,
    expand_targets,
    make_targets,
    min_valuation,
    min_valuation_equal_exponent,
    multi_prime_bounds,
    polynomial_system_bound,
    product_valuation,
    step_cost_minimum,
    vp_value,
    zero_count_bound,
)
from .calculus import (
    BinomialSeries,
    FiniteMap,
    difference,
    functional_degree,
    integral,
    iterated_difference,
    lift_difference_at_zero,
    lift_difference_box,
    primary_assemble,
    primary_split,
    proper_lift,
    reconstruct,
    series_coefficients,
    tensor_product,
    zero_count,
)
from .degrees import INF, NEG_INF, Degree
from .errors import ConsistencyError, ResourceLimitError, UnsupportedMapError
from .groups import (
    AbelianShape,
    PGroupShape,
    element_at,
    enumerate_elements,
    index_of,
    max_functional_degree,
    primary_decomposition,
)
from .oracle import (
    PolySystem,
    TraceReport,
    VerifyReport,
    binomial_column_sums,
    brute_max_degree,
    brute_min_valuation,
    brute_objective_minimum,
    functions_by_degree,
    objective_box,
    poly_zero_count,
    sample_bounded_map,
    verify_bound,
    zero_count_trace,
)
from .partitions import (
    Partition,
    WeightSequence,
    conjugate,
    conjugation_identity_sides,
    geometric_sum,
    make_partition,
    truncate,
    weight_sequence,
)

__all__ = [
    "AbelianShape",
    "BinomialSeries",
    "BoundReport",
    "ConsistencyError",
    "Degree",
    "FiniteMap",
    "INF",
    "NEG_INF",
    "PGroupShape",
    "Partition",
    "PolySystem",
    "PrimeBound",
    "ResourceLimitError",
    "TargetSpec",
    "TraceReport",
    "UnsupportedMapError",
    "ValuationMinimum",
    "VerifyReport",
    "WeightSequence",
    "binomial_column_sums",
    "binomial_sum_valuation",
    "bound_objective",
    "bound_objective_minimum",
    "brute_max_degree",
    "brute_min_valuation",
    "brute_objective_minimum",
    "conjugate",
    "conjugation_identity_sides",
    "difference",
    "element_at",
    "enumerate_elements",
    "equal_exponent_bound",
    "expand_targets",
    "functional_degree",
    "functions_by_degree",
    "geometric_sum",
    "index_of",
    "integral",
    "iterated_difference",
    "lift_difference_at_zero",
    "lift_difference_box",
    "make_partition",
    "make_targets",
    "max_functional_degree",
    "min_valuation",
    "min_valuation_equal_exponent",
    "multi_prime_bounds",
    "objective_box",
    "poly_zero_count",
    "polynomial_system_bound",
    "primary_assemble",
    "primary_decomposition",
    "primary_split",
    "product_valuation",
    "proper_lift",
    "reconstruct",
    "sample_bounded_map",
    "series_coefficients",
    "step_cost_minimum",
    "tensor_product",
    "truncate",
    "verify_bound",
    "vp_value",
    "weight_sequence",
    "zero_count",
    "zero_count_bound",
    "zero_count_trace",
]
