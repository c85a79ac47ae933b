"""Closed-form bounds against fixtures and small brute-force scans."""

import random

import pytest

from axkatz import (
    INF,
    AbelianShape,
    binomial_sum_valuation,
    bound_objective,
    bound_objective_minimum,
    brute_min_valuation,
    equal_exponent_bound,
    expand_targets,
    make_partition,
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
from axkatz.intmath import ceil_div


def test_binomial_sum_valuation_fixtures():
    assert binomial_sum_valuation(2, 3, 0) == 3
    assert binomial_sum_valuation(2, 3, 7) == 0
    assert binomial_sum_valuation(2, 3, 8) == INF
    assert binomial_sum_valuation(3, 2, 2) == 1
    alpha = make_partition([2, 1])
    assert product_valuation(2, alpha, (0, 0)) == 3
    assert product_valuation(2, alpha, (1, 0)) == 2
    assert product_valuation(2, alpha, (3, 1)) == 0
    assert product_valuation(2, alpha, (4, 0)) == INF


def test_min_valuation_fixtures():
    alpha = make_partition([2, 1])
    w = min_valuation(2, alpha, 0)
    assert (w.value, w.t, w.point) == (3, 0, (0, 0))
    assert min_valuation(2, alpha, 100).value == 0
    fig1 = min_valuation(2, make_partition([6, 5, 3, 1]), 18)
    assert (fig1.value, fig1.t) == (6, 9)
    fig2 = min_valuation(2, make_partition([6, 5, 4, 2, 2, 1]), 24)
    assert (fig2.t, fig2.full_columns, fig2.extra_dots) == (13, 2, 2)
    assert fig2.mu == (3, 3, 2, 2, 2, 1)
    assert fig2.value == 7
    assert min_valuation(3, make_partition([2, 2]), float("inf")).value == 0


def test_min_valuation_positivity_criterion():
    # Positive minimum exactly when the budget is below the box diagonal sum.
    for p in (2, 3):
        for parts in [[1], [2], [2, 1], [3, 1], [2, 2, 1]]:
            alpha = make_partition(parts)
            edge = sum(p**a - 1 for a in alpha)
            assert vp_value(p, alpha, edge - 1) > 0
            assert vp_value(p, alpha, edge) == 0


def test_min_valuation_monotone():
    alpha = make_partition([3, 2])
    values = [vp_value(2, alpha, budget) for budget in range(0, 14)]
    assert all(b <= a for a, b in zip(values, values[1:]))
    grown = make_partition([4, 2])
    assert all(
        vp_value(2, grown, budget) >= vp_value(2, alpha, budget) for budget in range(0, 14)
    )


def test_min_valuation_matches_brute_small():
    rng = random.Random(2)
    for _ in range(30):
        p = rng.choice([2, 3])
        alpha = make_partition([rng.randint(1, 3) for _ in range(rng.randint(1, 3))])
        budget = rng.randint(0, sum(p**a - 1 for a in alpha) + 3)
        assert min_valuation(p, alpha, budget).value == brute_min_valuation(p, alpha, budget)


def test_min_valuation_equal_exponent_fixtures():
    # Exponent 1 collapses to copies minus the affordable step count.
    for p, copies, budget in [(2, 4, 0), (2, 4, 3), (3, 5, 7), (5, 2, 100)]:
        expected = max(copies - budget // (p - 1), 0)
        assert min_valuation_equal_exponent(p, copies, 1, budget) == expected
    assert min_valuation_equal_exponent(2, 3, 2, 6) == 2
    assert min_valuation_equal_exponent(2, 3, 2, 3 * (2**2 - 1)) == 0


def test_min_valuation_equal_exponent_random_agreement():
    rng = random.Random(8)
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        copies = rng.randint(1, 4)
        exponent = rng.randint(1, 3)
        budget = rng.randint(0, copies * (p**exponent - 1) + 4)
        alpha = make_partition([exponent] * copies)
        assert min_valuation_equal_exponent(p, copies, exponent, budget) == vp_value(
            p, alpha, budget
        )


def brute_step_cost(costs, credits, budget, window):
    def credit_at(s):
        return credits[s - 1] if s <= len(credits) else credits[-1]

    best = None
    argmin = None
    for s in range(window + 1):
        have = sum(credit_at(i) for i in range(1, s + 1)) + budget
        reach = 0
        total = 0
        for t, c in enumerate(costs, start=1):
            total += c
            if total <= have:
                reach = t
        if best is None or s - reach < best:
            best, argmin = s - reach, s
    return argmin, best


def test_step_cost_minimum_fixtures():
    assert step_cost_minimum((1, 1, 2), (2,), 0) == (2, -1)
    costs = (1, 1, 2)
    assert step_cost_minimum(costs, (2, 2), sum(costs)) == (0, -3)
    assert step_cost_minimum((1,), (1,), 0) == (1, 0)


def test_step_cost_minimum_validation():
    with pytest.raises(ValueError):
        step_cost_minimum((2, 1), (2,), 0)  # costs not increasing
    with pytest.raises(ValueError):
        step_cost_minimum((1,), (1, 2), 0)  # credits not decreasing
    with pytest.raises(ValueError):
        step_cost_minimum((3,), (2,), 0)  # first cost above first credit
    with pytest.raises(ValueError):
        step_cost_minimum((1, 1, 1, 1), (3, 1), 0)  # credits move before s0


def test_step_cost_minimum_matches_brute():
    rng = random.Random(4)
    checked = 0
    while checked < 120:
        length = rng.randint(1, 6)
        costs = sorted(rng.randint(1, 6) for _ in range(length))
        first = rng.randint(costs[0], 8)
        credits = [first] * rng.randint(1, 6)
        while len(credits) < 8 and rng.random() < 0.5:
            credits.append(rng.randint(1, credits[-1]))
        budget = rng.randint(0, 12)
        try:
            s0, minimum = step_cost_minimum(tuple(costs), tuple(credits), budget)
        except ValueError:
            continue  # generated credits moved before s0; not a valid instance
        window = len(costs) + ceil_div(budget, min(credits)) + 5
        argmin, brute = brute_step_cost(costs, credits, budget, window)
        assert minimum == brute
        checked += 1


def test_bound_objective_fixtures():
    alpha = make_partition([2, 1])
    targets = make_targets(2, [(1, 1)])
    assert bound_objective(alpha, targets, (0,)) == 3
    assert bound_objective(alpha, targets, (1,)) == 2
    assert bound_objective(alpha, targets, (3,)) == 3
    with pytest.raises(ValueError):
        bound_objective(alpha, targets, (1, 1))


def test_bound_objective_minimum_fixtures():
    assert bound_objective_minimum(make_partition([2, 1]), make_targets(2, [(1, 1)]), 3) == 2
    assert bound_objective_minimum(make_partition([1, 1]), make_targets(2, [(1, 2)]), 1) == 0
    assert bound_objective_minimum(make_partition([3]), make_targets(2, [(1, 1)]), 3) == 2
    with pytest.raises(ValueError):
        bound_objective_minimum(make_partition([2, 1]), make_targets(2, [(1, 1)]), 1)


def test_target_spec_ordering_and_measures():
    targets = make_targets(2, [(1, 1), (2, 1), (1, 4)])
    assert targets.targets == ((1, 4), (2, 1), (1, 1))  # keys 8, 4, 2
    # Equal keys break ties toward the larger exponent.
    tied = make_targets(2, [(1, 2), (2, 1)])
    assert tied.targets == ((2, 1), (1, 2))
    spec = make_targets(3, [(2, 2), (1, 1)])
    assert spec.measure == 2 * 4 + 1
    assert spec.level == 2 + 0
    with pytest.raises(ValueError):
        make_targets(2, [])
    with pytest.raises(ValueError):
        make_targets(2, [(0, 1)])


def test_zero_count_bound_fixtures():
    report = zero_count_bound(make_partition([2, 1]), make_targets(2, [(1, 1)]))
    assert (report.a_measure, report.b_measure, report.level) == (4, 1, 1)
    assert report.truncated.parts == (1, 1)
    assert report.truncated_measure == 2
    assert report.case == "first" and report.bound == 2
    cw = zero_count_bound(make_partition([1, 1, 1]), make_targets(2, [(1, 2)]))
    assert cw.bound == 1
    flat = zero_count_bound(make_partition([1, 1]), make_targets(2, [(1, 2)]))
    assert flat.bound == 0 and flat.case == "second"
    deep = zero_count_bound(make_partition([3]), make_targets(2, [(1, 1)]))
    assert deep.bound == 2 and deep.case == "second" and deep.t_star == 1


def test_zero_count_bound_matches_objective_minimum():
    rng = random.Random(13)
    for _ in range(60):
        p = rng.choice([2, 3])
        alpha = make_partition([rng.randint(1, 3) for _ in range(rng.randint(1, 3))])
        targets = make_targets(
            p, [(rng.randint(1, 2), rng.randint(1, 3)) for _ in range(rng.randint(1, 2))]
        )
        report = zero_count_bound(alpha, targets)
        beta = (report.s0 or 0) + rng.randint(1, 2)
        assert report.bound == bound_objective_minimum(alpha, targets, beta)


def test_positive_bound_iff_source_exceeds_targets():
    rng = random.Random(19)
    for _ in range(80):
        p = rng.choice([2, 3, 5])
        alpha = make_partition([rng.randint(1, 3) for _ in range(rng.randint(1, 4))])
        targets = make_targets(
            p, [(rng.randint(1, 2), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
        )
        report = zero_count_bound(alpha, targets)
        if report.a_measure > report.b_measure:
            assert report.bound >= 1
        else:
            assert report.bound == 0


def test_flat_exponent_recovery():
    # All-ones partitions recover the prime-field style ceiling formula.
    rng = random.Random(23)
    for _ in range(40):
        p = rng.choice([2, 3])
        n = rng.randint(1, 8)
        targets = make_targets(
            p, [(rng.randint(1, 2), rng.randint(1, 3)) for _ in range(rng.randint(1, 2))]
        )
        report = zero_count_bound(make_partition([1] * n), targets)
        d1, beta1 = report.targets.d1, report.targets.beta1
        expected = max(ceil_div(n - report.b_measure, d1 * p ** (beta1 - 1)), 0)
        assert report.bound == expected


def test_equal_exponent_bound_fixtures():
    assert equal_exponent_bound(2, 2, 2, make_targets(2, [(1, 3)])) == 1
    # Exponent 1 agrees with the flat recovery above.
    assert equal_exponent_bound(2, 5, 1, make_targets(2, [(1, 2)])) == 2
    with pytest.raises(ValueError):
        equal_exponent_bound(3, 2, 2, make_targets(2, [(1, 1)]))


def test_equal_exponent_bound_random_agreement():
    rng = random.Random(31)
    for _ in range(200):
        p = rng.choice([2, 3])
        copies = rng.randint(1, 4)
        exponent = rng.randint(1, 3)
        targets = make_targets(
            p, [(rng.randint(1, 2), rng.randint(1, 3)) for _ in range(rng.randint(1, 2))]
        )
        general = zero_count_bound(make_partition([exponent] * copies), targets).bound
        assert equal_exponent_bound(p, copies, exponent, targets) == general


def test_expand_targets():
    spec = expand_targets(2, [(AbelianShape((4, 2)), 3)])
    assert spec.targets == ((2, 3), (1, 3))
    single = expand_targets(3, [(AbelianShape((9,)), 2)])
    assert single.targets == ((2, 2),)
    mixed = expand_targets(2, [(AbelianShape((4, 2)), 3), (AbelianShape((2,)), 1)])
    assert mixed.measure == 3 * (3 + 1) + 1
    with pytest.raises(ValueError):
        expand_targets(2, [(AbelianShape((6,)), 1)])


def test_multi_prime_bounds_fixtures():
    mp = multi_prime_bounds(AbelianShape((6,)), [(AbelianShape((6,)), 1)])
    assert {q: e.bound for q, e in mp.items()} == {2: 0, 3: 0}
    assert not any(e.empty_system for e in mp.values())

    mp2 = multi_prime_bounds(AbelianShape((6, 6, 6)), [(AbelianShape((2,)), 2)])
    assert mp2[2].bound == 1 and not mp2[2].empty_system
    assert mp2[3].bound == 3 and mp2[3].empty_system and mp2[3].report is None

    solo = multi_prime_bounds(AbelianShape((4, 2)), [(AbelianShape((2,)), 1)])
    direct = zero_count_bound(make_partition([2, 1]), make_targets(2, [(1, 1)]))
    assert solo[2].bound == direct.bound

    with pytest.raises(ValueError):
        multi_prime_bounds(AbelianShape(()), [(AbelianShape((2,)), 1)])


def test_polynomial_system_bound_fixtures():
    reports = polynomial_system_bound(4, 10, [2])
    assert set(reports) == {2}
    assert reports[2].bound == 6
    prime_field = polynomial_system_bound(3, 7, [1, 2])
    assert prime_field[3].bound == max(ceil_div(7 - 3, 2), 0)
    with pytest.raises(ValueError):
        polynomial_system_bound(1, 3, [1])
    with pytest.raises(ValueError):
        polynomial_system_bound(4, 3, [])


def test_polynomial_system_bound_asymptotic_growth():
    boundsByN = [polynomial_system_bound(12, n, [2, 1])[2].bound for n in range(1, 61)]
    assert all(b <= a for b, a in zip(boundsByN, boundsByN[1:]))
    assert boundsByN[-1] > boundsByN[0]
    assert boundsByN[-1] >= 10


def test_bound_report_json_roundtrip_fields():
    report = zero_count_bound(make_partition([2, 1]), make_targets(2, [(1, 1)]))
    data = report.to_json_dict()
    assert data["A"] == 4 and data["B"] == 1 and data["Abreve"] == 2
    assert data["case"] == "first" and data["bound"] == 2
    assert data["alpha"] == [2, 1] and data["targets"] == [[1, 1]]
