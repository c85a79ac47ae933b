"""Brute-force oracles: enumeration, sampling, tracing, polynomial systems."""

import random

import pytest

from axkatz import (
    INF,
    NEG_INF,
    AbelianShape,
    Degree,
    FiniteMap,
    PolySystem,
    ResourceLimitError,
    binomial_column_sums,
    brute_max_degree,
    brute_min_valuation,
    brute_objective_minimum,
    functional_degree,
    functions_by_degree,
    make_partition,
    make_targets,
    objective_box,
    poly_zero_count,
    sample_bounded_map,
    verify_bound,
    zero_count,
    zero_count_trace,
)

Z2 = AbelianShape((2,))
Z4 = AbelianShape((4,))
Z42 = AbelianShape((4, 2))


def test_binomial_column_sums_routes_agree():
    for limit in (1, 2, 5, 27, 64, 125, 128):
        assert binomial_column_sums(limit, direct=True) == binomial_column_sums(
            limit, direct=False
        )


def test_binomial_column_sums_values():
    assert binomial_column_sums(4) == [4, 6, 4, 1]
    # The n-th column over [0, 9) sums to C(9, n + 1).
    import math

    assert binomial_column_sums(9) == [math.comb(9, n + 1) for n in range(9)]


def test_functions_by_degree_buckets():
    buckets = functions_by_degree(Z2, Z2)
    sizes = {key: len(maps) for key, maps in buckets.items()}
    assert sizes == {NEG_INF: 1, Degree.of(0): 1, Degree.of(1): 2}
    assert sum(sizes.values()) == 4

    bigger = functions_by_degree(Z4, Z2)
    assert sum(len(v) for v in bigger.values()) == 16
    assert max(k for k in bigger if k.is_finite) == 3

    with pytest.raises(ResourceLimitError):
        functions_by_degree(Z42, Z4, cap=100)


def test_brute_max_degree_small_pairs():
    assert brute_max_degree(Z4, Z2) == 3
    assert brute_max_degree(AbelianShape((2, 2)), Z2) == 2
    with pytest.raises(ValueError):
        brute_max_degree(AbelianShape((6,)), Z2)


def test_brute_min_valuation_fixtures():
    alpha = make_partition([2, 1])
    assert brute_min_valuation(2, alpha, 1) == 2
    assert brute_min_valuation(2, alpha, 0) == 3
    assert brute_min_valuation(2, make_partition([6, 5, 3, 1]), 18) == 6


def test_objective_box():
    targets = make_targets(2, [(1, 1)])
    assert objective_box(targets, 3) == (3,)
    two = make_targets(3, [(2, 1), (1, 2)])
    assert objective_box(two, 2) == (8 + 6, 2 + 2)


def test_brute_objective_minimum_fixtures():
    alpha = make_partition([2, 1])
    targets = make_targets(2, [(1, 1)])
    minimum, argmin = brute_objective_minimum(alpha, targets, 3)
    assert minimum == 2 and argmin in ((1,), (2,))
    flat, _ = brute_objective_minimum(make_partition([1, 1]), make_targets(2, [(1, 2)]), 2)
    assert flat == 0
    a, _ = brute_objective_minimum(alpha, targets, 3)
    b, _ = brute_objective_minimum(alpha, targets, 4)
    assert a == b
    with pytest.raises(ResourceLimitError):
        brute_objective_minimum(alpha, make_targets(2, [(2, 3)]), 50, limit=10)


def test_verify_bound_exhaustive_fixture():
    report = verify_bound(2, make_partition([2, 1]), [(Z2, 1)])
    assert report.bound == 2
    assert report.passed and not report.vacuous
    assert report.objective_match
    assert report.systems_tested == 6
    assert report.min_ord == 2
    assert sum(1 for v in report.witness[0] if v == (0,)) == 4


def test_verify_bound_sampled_deterministic():
    first = verify_bound(2, make_partition([2, 1]), [(Z4, 2)], mode="sampled", seed=42, samples=6)
    second = verify_bound(2, make_partition([2, 1]), [(Z4, 2)], mode="sampled", seed=42, samples=6)
    assert first.passed and second.passed
    assert first.to_json_dict() == second.to_json_dict()
    other = verify_bound(2, make_partition([2, 1]), [(Z4, 2)], mode="sampled", seed=43, samples=6)
    assert other.passed


def test_verify_bound_non_cyclic_target():
    report = verify_bound(2, make_partition([1]), [(AbelianShape((2, 2)), 1)])
    assert report.bound == 0
    assert report.passed and not report.vacuous
    assert report.instance["targets"] == [[[2, 2], 1]]


def test_sample_bounded_map_properties():
    rng = random.Random(77)
    for domain, codomain, cap in [(Z42, Z4, 2), (AbelianShape((9,)), AbelianShape((3,)), 1)]:
        for _ in range(8):
            f = sample_bounded_map(domain, codomain, cap, rng)
            degree = functional_degree(f)
            assert degree.is_finite and 1 <= degree.value <= cap


def test_zero_count_trace_fixtures():
    zero_map = FiniteMap(Z2, Z2, ((0,), (0,)))
    trace = zero_count_trace([zero_map], beta=2)
    assert (trace.count, trace.count_ord) == (2, 1)
    assert trace.integral_ord == 1

    parity = FiniteMap.from_callable(Z4, Z2, lambda x: (x[0] % 2,))
    trace2 = zero_count_trace([parity], beta=2)
    assert (trace2.count, trace2.count_ord, trace2.integral_ord) == (2, 1, 1)
    assert trace2.floors_ok

    never = FiniteMap(Z4, Z2, ((1,),) * 4)
    with pytest.raises(ValueError):
        zero_count_trace([never])
    with pytest.raises(ValueError):
        zero_count_trace([parity], beta=1)


def test_zero_count_trace_random_systems():
    rng = random.Random(123)
    traced = 0
    while traced < 8:
        f = sample_bounded_map(Z42, Z4, 2, rng)
        g = sample_bounded_map(Z42, Z2, 1, rng)
        count, _ = zero_count([f, g])
        if count == 0:
            continue
        trace = zero_count_trace([f, g])
        assert trace.integral_ord == trace.count_ord
        assert trace.floors_ok
        traced += 1


def test_poly_zero_count_fixtures():
    hyper = PolySystem(2, 3, (((1, (1, 1, 0)), (1, (0, 0, 1))),), (2,))
    count, ords = poly_zero_count(hyper)
    assert count == 4 and ords[2] == 2

    sharp = PolySystem(2, 2, (((1, (1, 1)),),), (2,))
    count, ords = poly_zero_count(sharp)
    assert count == 3 and ords[2] == 0

    empty = PolySystem(6, 2, ((), ()), (1, 1))
    count, ords = poly_zero_count(empty)
    assert count == 36 and ords[2] == 2 and ords[3] == 2

    constant = PolySystem(4, 1, (((3, (0,)),),), (1,))
    count, ords = poly_zero_count(constant)
    assert count == 0 and ords[2] == INF


def test_poly_system_validation():
    with pytest.raises(ValueError):
        PolySystem(2, 2, (((1, (2, 1)),),), (1,))  # degree 3 exceeds declared 1
    with pytest.raises(ValueError):
        PolySystem(1, 2, ((),), (1,))
    # A monomial whose coefficient dies mod m may exceed the declared degree.
    PolySystem(2, 2, (((2, (5, 5)), (1, (1, 0))),), (1,))


def test_poly_zero_count_json_roundtrip():
    system = PolySystem(12, 2, (((5, (1, 1)), (7, (0, 1))),), (2,))
    rebuilt = PolySystem.from_json_dict(system.to_json_dict())
    assert rebuilt == system
    count, ords = poly_zero_count(system)
    assert count == poly_zero_count(rebuilt)[0]
