"""Closed-form p-adic lower bounds for simultaneous zero counts.

Everything here is exact integer arithmetic.  Rational comparisons such as
"prefix <= D / (p - 1)" are evaluated as "(p - 1) * prefix <= D", and integer
logarithms are computed by repeated multiplication, never through floats.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .degrees import INF, Degree
from .errors import ConsistencyError
from .groups import AbelianShape, primary_decomposition
from .intmath import ceil_div, check_prime, factorize, ilog, multiplicity
from .partitions import (
    Partition,
    conjugate,
    geometric_sum,
    make_partition,
    truncate,
    weight_sequence,
)

Budget = int | float  # nonnegative int, or math.inf for an unbounded budget


def binomial_sum_valuation(p: int, exponent: int, n: int) -> Degree:
    """ord_p of sum_{x=0}^{p^exponent - 1} C(x, n).

    Finite values equal exponent - ord_p(n + 1); the sum vanishes (infinite
    valuation) once n exceeds p^exponent - 1.
    """
    check_prime(p)
    if exponent < 1:
        raise ValueError(f"exponent must be >= 1, got {exponent}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > p**exponent - 1:
        return INF
    return Degree.of(exponent - multiplicity(p, n + 1))


def product_valuation(p: int, alpha: Partition, point: Sequence[int]) -> Degree:
    """ord_p of the product of per-coordinate binomial column sums."""
    if len(point) != len(alpha):
        raise ValueError(f"expected {len(alpha)} coordinates, got {len(point)}")
    total: Degree = Degree.of(0)
    for a, n in zip(alpha, point):
        term = binomial_sum_valuation(p, a, n)
        if term == INF:
            return INF
        total = total + term
    return total


@lru_cache(maxsize=None)
def _scaled_weight_prefix(p: int, parts: tuple[int, ...]) -> tuple[int, ...]:
    """(p - 1) times the weight-sequence prefix sums of the partition."""
    prefix = weight_sequence(Partition(parts), p).prefix_sums()
    return tuple((p - 1) * w for w in prefix)


def vp_value(p: int, alpha: Partition, budget: Budget) -> int:
    """Minimum of product_valuation over points with coordinate sum <= budget.

    Equals alpha.size minus the largest t whose scaled weight prefix fits in
    the budget; greedy column-by-column dot selection is optimal because the
    weights increase along columns.
    """
    check_prime(p)
    if budget < 0:
        raise ValueError(f"budget must be nonnegative, got {budget}")
    scaled = _scaled_weight_prefix(p, alpha.parts)
    t = bisect_right(scaled, budget) - 1
    return alpha.size - t


@dataclass(frozen=True)
class ValuationMinimum:
    """Minimum valuation with an explicit minimizing point.

    full_columns counts the completely selected Ferrers columns, extra_dots
    the dots taken from the next column, mu the per-row dot counts, and
    point = (p^mu_i - 1)_i attains the minimum.
    """

    value: int
    t: int
    point: tuple[int, ...]
    mu: tuple[int, ...]
    full_columns: int
    extra_dots: int

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "t": self.t,
            "point": list(self.point),
            "mu": list(self.mu),
            "Q": self.full_columns,
            "R": self.extra_dots,
        }


def min_valuation(p: int, alpha: Partition, budget: Budget) -> ValuationMinimum:
    """vp_value together with a witness point, cross-checked four ways."""
    check_prime(p)
    if budget < 0:
        raise ValueError(f"budget must be nonnegative, got {budget}")
    conj = conjugate(alpha)
    n_rows = len(alpha)
    width = alpha.width

    def conj_at(j: int) -> int:
        # Column counts extended by conj_at(0) = N and conj_at(width + 1) = 0.
        if j < 1:
            return n_rows
        if j > width:
            return 0
        return conj[j - 1]

    col_prefix = [0]
    for j in range(1, width + 1):
        col_prefix.append(col_prefix[-1] + conj_at(j) * p ** (j - 1))

    full = 0
    while full < width and (p - 1) * col_prefix[full + 1] <= budget:
        full += 1
    if full == width:
        extra = 0
    else:
        room = budget - (p - 1) * col_prefix[full]
        extra = min(int(room // ((p - 1) * p**full)), conj_at(full + 1))
        if extra >= conj_at(full + 1):
            raise ConsistencyError("a full next column contradicts column maximality")

    t = sum(conj_at(j) for j in range(1, full + 1)) + extra
    scaled = _scaled_weight_prefix(p, alpha.parts)
    if t != bisect_right(scaled, budget) - 1:
        raise ConsistencyError("column selection disagrees with the weight prefix")

    mu = []
    for i in range(1, n_rows + 1):
        if i <= extra:
            mu.append(full + 1)
        elif i <= conj_at(full + 1):
            mu.append(full)
        else:
            mu.append(alpha[i - 1])
    point = tuple(p**m - 1 for m in mu)
    value = alpha.size - t

    forms = (
        sum(a - m for a, m in zip(alpha, mu)),
        sum(alpha[i] for i in range(conj_at(full))) - conj_at(full) * full - extra,
        sum(alpha[i] for i in range(conj_at(full + 1))) - conj_at(full + 1) * full - extra,
        sum(conj_at(j) for j in range(full + 1, width + 1)) - extra,
    )
    if any(form != value for form in forms):
        raise ConsistencyError(f"witness rearrangements disagree: {forms} vs {value}")
    if product_valuation(p, alpha, point) != Degree.of(value):
        raise ConsistencyError("witness point does not attain the minimum value")
    if sum(point) > budget:
        raise ConsistencyError("witness point exceeds the budget")
    return ValuationMinimum(value, t, point, tuple(mu), full, extra)


def min_valuation_equal_exponent(p: int, copies: int, exponent: int, budget: Budget) -> int:
    """Closed form of the minimum valuation for a constant partition.

    With Q the largest q such that copies * (p^q - 1) <= budget and R the
    leftover-dot count, the value is max(copies * (exponent - Q) - R, 0);
    for exponent 1 this collapses to max(copies - floor(budget/(p-1)), 0).
    """
    check_prime(p)
    if copies < 1 or exponent < 1:
        raise ValueError("copies and exponent must be >= 1")
    if budget < 0:
        raise ValueError(f"budget must be nonnegative, got {budget}")
    alpha = make_partition([exponent] * copies)
    if budget == float("inf"):
        value = 0
    else:
        budget = int(budget)
        q = 0
        while copies * (p ** (q + 1) - 1) <= budget:
            q += 1
        r = (budget - copies * (p**q - 1)) // ((p - 1) * p**q)
        value = max(copies * (exponent - q) - r, 0)
    if value != vp_value(p, alpha, budget):
        raise ConsistencyError("equal-exponent clamp disagrees with the general formula")
    return value


def step_cost_minimum(
    costs: Sequence[int], credits: Sequence[int], budget: int
) -> tuple[int, int]:
    """Minimize S(s) = s - max{t : costs[:t] fits in credits[:s] + budget}.

    costs must be weakly increasing and credits weakly decreasing, both
    positive, with costs[0] <= credits[0] and the credits constant over the
    first s0 steps; credits extend past their given length by the last value.
    Returns (s0, S(s0)) where s0 = max(ceil((costs-prefix-at-t0 - budget) /
    credits[0]), 0) and t0 is the last cost not exceeding credits[0].
    """
    if not costs or not credits:
        raise ValueError("costs and credits must be nonempty")
    if any(c < 1 for c in costs) or any(v < 1 for v in credits):
        raise ValueError("costs and credits must be positive")
    if any(b < a for a, b in zip(costs, costs[1:])):
        raise ValueError("costs must be weakly increasing")
    if any(b > a for a, b in zip(credits, credits[1:])):
        raise ValueError("credits must be weakly decreasing")
    if budget < 0:
        raise ValueError(f"budget must be nonnegative, got {budget}")
    if costs[0] > credits[0]:
        raise ValueError("the first cost must not exceed the first credit")

    t0 = max(t for t in range(1, len(costs) + 1) if costs[t - 1] <= credits[0])
    s0 = max(ceil_div(sum(costs[:t0]) - budget, credits[0]), 0)

    def credit_at(s: int) -> int:
        return credits[s - 1] if s <= len(credits) else credits[-1]

    if any(credit_at(s) != credits[0] for s in range(1, s0 + 1)):
        raise ValueError(f"credits must stay constant through step {s0}")

    if s0 > 0:
        return s0, s0 - t0
    reach = 0
    total = 0
    for t, cost in enumerate(costs, start=1):
        total += cost
        if total <= budget:
            reach = t
    return 0, -reach


@dataclass(frozen=True)
class TargetSpec:
    """Cyclic targets (beta_j, d_j), sorted by d * p^beta then beta, descending."""

    p: int
    targets: tuple[tuple[int, int], ...]

    def __post_init__(self):
        check_prime(self.p)
        if not self.targets:
            raise ValueError("at least one target is required")
        for beta, d in self.targets:
            if beta < 1 or d < 1:
                raise ValueError(f"targets need beta >= 1 and d >= 1, got {(beta, d)}")
        keys = [(d * self.p**beta, beta) for beta, d in self.targets]
        if any(b > a for a, b in zip(keys, keys[1:])):
            raise ValueError("targets must be sorted by d * p^beta, then beta, descending")

    @property
    def r(self) -> int:
        return len(self.targets)

    @property
    def beta1(self) -> int:
        return self.targets[0][0]

    @property
    def d1(self) -> int:
        return self.targets[0][1]

    @property
    def measure(self) -> int:
        """Degree-weighted target size: sum of d * (p^beta - 1)/(p - 1)."""
        return sum(d * (self.p**beta - 1) // (self.p - 1) for beta, d in self.targets)

    @property
    def level(self) -> int:
        """Truncation level beta_1 + floor(log_p(d_1))."""
        return self.beta1 + ilog(self.p, self.d1)

    def to_json(self) -> list[list[int]]:
        return [[beta, d] for beta, d in self.targets]


def make_targets(p: int, pairs: Sequence[tuple[int, int]]) -> TargetSpec:
    """Build a TargetSpec, sorting by d * p^beta with larger beta first on ties."""
    check_prime(p)
    ordered = sorted(pairs, key=lambda bd: (bd[1] * p ** bd[0], bd[0]), reverse=True)
    return TargetSpec(p, tuple((int(b), int(d)) for b, d in ordered))


def bound_objective(alpha: Partition, targets: TargetSpec, point: Sequence[int]) -> int:
    """Per-target carry floors plus the valuation minimum at the spent budget."""
    p = targets.p
    if len(point) != targets.r:
        raise ValueError(f"expected {targets.r} coordinates, got {len(point)}")
    floors = 0
    budget = 0
    for (beta, d), n in zip(targets.targets, point):
        if n < 0:
            raise ValueError("objective coordinates must be nonnegative")
        floors += max(ceil_div(n - (p**beta - 1), p ** (beta - 1) * (p - 1)), 0)
        budget += d * n
    return floors + vp_value(p, alpha, budget)


def _case_split(alpha: Partition, targets: TargetSpec) -> dict:
    p = targets.p
    a_measure = geometric_sum(alpha, p)
    b_measure = targets.measure
    level = targets.level
    truncated = truncate(alpha, level)
    truncated_measure = geometric_sum(truncated, p)
    s0 = max(ceil_div(truncated_measure - b_measure, targets.d1 * p ** (targets.beta1 - 1)), 0)
    prefix = weight_sequence(alpha, p).prefix_sums()
    t_star = max(t for t in range(1, alpha.size + 1) if prefix[t] <= b_measure)
    return {
        "a_measure": a_measure,
        "b_measure": b_measure,
        "level": level,
        "truncated": truncated,
        "truncated_measure": truncated_measure,
        "s0": s0,
        "t_star": t_star,
        "first_case": truncated_measure > b_measure,
    }


def bound_objective_minimum(alpha: Partition, targets: TargetSpec, beta: int) -> int:
    """Closed-form minimum of the objective over the full coefficient box.

    Valid for every integer beta exceeding the step count s0; the value does
    not depend on beta.
    """
    data = _case_split(alpha, targets)
    if beta <= data["s0"]:
        raise ValueError(f"beta must exceed s0 = {data['s0']}, got {beta}")
    if data["first_case"]:
        return data["s0"] + alpha.size - data["truncated"].size
    return alpha.size - data["t_star"]


@dataclass(frozen=True)
class BoundReport:
    """Every intermediate of the two-case bound, so the split can be audited."""

    p: int
    alpha: Partition
    targets: TargetSpec
    a_measure: int
    b_measure: int
    level: int
    truncated: Partition
    truncated_measure: int
    case: str
    s0: int | None
    t_star: int | None
    raw_bound: int
    bound: int

    @property
    def alpha_sum(self) -> int:
        return self.alpha.size

    @property
    def truncated_sum(self) -> int:
        return self.truncated.size

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "alpha": self.alpha.to_json(),
            "targets": self.targets.to_json(),
            "A": self.a_measure,
            "B": self.b_measure,
            "L": self.level,
            "alpha_breve": self.truncated.to_json(),
            "alpha_sum": self.alpha_sum,
            "alpha_breve_sum": self.truncated_sum,
            "Abreve": self.truncated_measure,
            "case": self.case,
            "s0": self.s0,
            "t_star": self.t_star,
            "raw_bound": self.raw_bound,
            "bound": self.bound,
        }


def zero_count_bound(alpha: Partition, targets: TargetSpec) -> BoundReport:
    """Two-case lower bound on ord_p of the simultaneous zero count.

    Surplus case (truncated source measure above the target measure): the
    ceiling step count plus the truncation loss.  Deficit case: rows minus
    the longest affordable weight prefix.  The public bound is clamped at 0.
    """
    p = targets.p
    data = _case_split(alpha, targets)
    if data["first_case"]:
        raw = data["s0"] + alpha.size - data["truncated"].size
        case, s0, t_star = "first", data["s0"], None
    else:
        raw = alpha.size - data["t_star"]
        case, s0, t_star = "second", None, data["t_star"]
    bound = max(raw, 0)
    if data["a_measure"] > data["b_measure"] and bound < 1:
        raise ConsistencyError("source measure above target measure forces a positive bound")
    if data["a_measure"] <= data["b_measure"] and bound != 0:
        raise ConsistencyError("source measure at most target measure forces a zero bound")
    return BoundReport(
        p=p,
        alpha=alpha,
        targets=targets,
        a_measure=data["a_measure"],
        b_measure=data["b_measure"],
        level=data["level"],
        truncated=data["truncated"],
        truncated_measure=data["truncated_measure"],
        case=case,
        s0=s0,
        t_star=t_star,
        raw_bound=raw,
        bound=bound,
    )


def equal_exponent_bound(p: int, copies: int, exponent: int, targets: TargetSpec) -> int:
    """The bound specialized to a constant exponent partition.

    Uses the floor-log form with Q = floor(log_p((p-1)B/copies + 1)) and the
    matching remainder R; the raw second-case value copies*(exponent-Q) - R
    may be negative and is clamped.  Cross-checked against the general bound.
    """
    if targets.p != p:
        raise ValueError("targets were built for a different prime")
    if copies < 1 or exponent < 1:
        raise ValueError("copies and exponent must be >= 1")
    b_measure = targets.measure
    abreve1 = min(exponent, targets.level)
    truncated_measure = copies * (p**abreve1 - 1) // (p - 1)
    if truncated_measure > b_measure:
        raw = ceil_div(truncated_measure - b_measure, targets.d1 * p ** (targets.beta1 - 1))
        raw += copies * (exponent - abreve1)
    else:
        q = 0
        while copies * (p ** (q + 1) - 1) <= (p - 1) * b_measure:
            q += 1
        r = (b_measure - copies * (p**q - 1) // (p - 1)) // p**q
        raw = copies * (exponent - q) - r
    bound = max(raw, 0)
    general = zero_count_bound(make_partition([exponent] * copies), targets).bound
    if bound != general:
        raise ConsistencyError(f"equal-exponent bound {bound} disagrees with {general}")
    return bound


def expand_targets(p: int, shaped: Sequence[tuple[AbelianShape, int]]) -> TargetSpec:
    """Replace p-group targets by their cyclic factors under coordinate projections.

    Each factor p^beta of a target shape with cap d contributes a cyclic
    target (beta, d), since projections can only lower the degree.
    """
    check_prime(p)
    pairs: list[tuple[int, int]] = []
    for shape, d in shaped:
        if shape.is_trivial:
            raise ValueError("target shapes must be nontrivial")
        if d < 1:
            raise ValueError(f"degree caps must be >= 1, got {d}")
        for m in shape.factors:
            e = multiplicity(p, m)
            if p**e != m:
                raise ValueError(f"factor {m} is not a power of {p}")
            pairs.append((e, d))
    return make_targets(p, pairs)


@dataclass(frozen=True)
class PrimeBound:
    """Per-prime result of a mixed-order bound computation.

    When no target has a component at the prime, every component map is
    forced to vanish there, the component zero set is the whole component,
    and the reported bound is its full exponent sum; empty_system flags that
    this is a counting fact rather than an optimized bound.
    """

    prime: int
    bound: int
    empty_system: bool
    report: BoundReport | None

    def to_json_dict(self) -> dict:
        return {
            "prime": self.prime,
            "bound": self.bound,
            "empty_system": self.empty_system,
            "report": self.report.to_json_dict() if self.report else None,
        }


def multi_prime_bounds(
    domain: AbelianShape, shaped: Sequence[tuple[AbelianShape, int]]
) -> dict[int, PrimeBound]:
    """Per-prime bounds for maps between arbitrary finite commutative groups.

    Finite-degree maps split over Sylow components and the zero count is the
    product of the component counts, so each prime of |A| gets the bound of
    its component system with targets restricted to that prime.
    """
    if domain.is_trivial:
        raise ValueError("the domain must be nontrivial")
    if not shaped:
        raise ValueError("at least one target is required")
    out: dict[int, PrimeBound] = {}
    for prime, pshape in primary_decomposition(domain).items():
        pairs: list[tuple[int, int]] = []
        for shape, d in shaped:
            if shape.is_trivial:
                raise ValueError("target shapes must be nontrivial")
            if d < 1:
                raise ValueError(f"degree caps must be >= 1, got {d}")
            for m in shape.factors:
                e = multiplicity(prime, m)
                if e:
                    pairs.append((e, d))
        if pairs:
            report = zero_count_bound(pshape.exponents, make_targets(prime, pairs))
            out[prime] = PrimeBound(prime, report.bound, False, report)
        else:
            out[prime] = PrimeBound(prime, pshape.exponents.size, True, None)
    return out


def polynomial_system_bound(
    modulus: int, nvars: int, degrees: Sequence[int]
) -> dict[int, BoundReport]:
    """Per-prime bounds for polynomial systems over the rng Z/mZ.

    The additive group of Z/mZ splits into one cyclic factor per prime; n
    variables give n copies, and each polynomial of degree at most d caps the
    functional degree of its evaluation map by d.
    """
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if nvars < 1:
        raise ValueError(f"variable count must be >= 1, got {nvars}")
    if not degrees or any(d < 1 for d in degrees):
        raise ValueError("degrees must be a nonempty list of integers >= 1")
    out: dict[int, BoundReport] = {}
    for prime, e in sorted(factorize(modulus).items()):
        alpha = make_partition([e] * nvars)
        targets = make_targets(prime, [(e, d) for d in degrees])
        out[prime] = zero_count_bound(alpha, targets)
    return out
