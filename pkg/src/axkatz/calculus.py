"""Finite-difference calculus for maps between finite commutative groups.

Maps are stored as value tables in enumeration order.  The functional degree
of a nonzero map f is the largest total order of an iterated generator
difference that is not identically zero; it is -inf for the zero map and
+inf exactly when the map does not split over the Sylow components of its
domain and codomain.  Searching generator differences suffices because the
augmentation ideal of the group ring is generated by (e_i - 1) over the
standard generators e_i, so all order-(d+1) differences vanish iff all
order-(d+1) products of arbitrary translation differences do.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .degrees import INF, NEG_INF, Degree
from .errors import ConsistencyError, UnsupportedMapError
from .groups import (
    AbelianShape,
    PGroupShape,
    component_of,
    enumerate_elements,
    index_of,
    max_functional_degree,
)
from .intmath import binomial, factorize, multiplicity
from .partitions import make_partition


@dataclass(frozen=True)
class FiniteMap:
    """Total function between finite shapes, tabulated in enumeration order."""

    domain: AbelianShape
    codomain: AbelianShape
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.values) != self.domain.order:
            raise ValueError(
                f"table has {len(self.values)} entries, domain has {self.domain.order}"
            )
        for v in self.values:
            if not self.codomain.contains(v):
                raise ValueError(f"{v!r} is not a reduced element of {self.codomain.factors}")

    @classmethod
    def from_callable(
        cls,
        domain: AbelianShape,
        codomain: AbelianShape,
        fn: Callable[[tuple[int, ...]], tuple[int, ...]],
        limit: int | None = None,
    ) -> "FiniteMap":
        values = tuple(codomain.reduce(fn(x)) for x in enumerate_elements(domain, limit))
        return cls(domain, codomain, values)

    def at(self, x: tuple[int, ...]) -> tuple[int, ...]:
        return self.values[index_of(self.domain, x)]

    __call__ = at

    @property
    def is_zero(self) -> bool:
        return all(not any(v) for v in self.values)

    @property
    def is_constant(self) -> bool:
        return all(v == self.values[0] for v in self.values)

    def to_json_dict(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "values": [list(v) for v in self.values],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "FiniteMap":
        try:
            domain = AbelianShape(tuple(data["domain"]))
            codomain = AbelianShape(tuple(data["codomain"]))
            values = tuple(tuple(v) for v in data["values"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed function table: {exc}") from exc
        return cls(domain, codomain, values)


@lru_cache(maxsize=None)
def _generator_shift(shape: AbelianShape, axis: int) -> tuple[int, ...]:
    """Index permutation sending each element index to the index of x + e_axis."""
    elements = enumerate_elements(shape)
    perm = []
    for x in elements:
        shifted = list(x)
        shifted[axis] = (shifted[axis] + 1) % shape.factors[axis]
        perm.append(index_of(shape, tuple(shifted)))
    return tuple(perm)


@lru_cache(maxsize=None)
def _pure_prime(shape: AbelianShape) -> int | None:
    """The unique prime when every factor is a power of it, else None."""
    if shape.is_trivial:
        return None
    primes = set()
    for m in shape.factors:
        fac = factorize(m)
        if len(fac) != 1:
            return None
        primes.update(fac)
    return primes.pop() if len(primes) == 1 else None


def difference(f: FiniteMap, a: tuple[int, ...]) -> FiniteMap:
    """Translation difference x -> f(x + a) - f(x)."""
    if not f.domain.contains(a):
        raise ValueError(f"{a} is not a reduced element of the domain")
    perm = [index_of(f.domain, f.domain.add(x, a)) for x in enumerate_elements(f.domain)]
    values = tuple(
        f.codomain.sub(f.values[perm[k]], f.values[k]) for k in range(len(f.values))
    )
    return FiniteMap(f.domain, f.codomain, values)


def iterated_difference(f: FiniteMap, orders: Sequence[int]) -> FiniteMap:
    """Apply the generator difference in coordinate i orders[i] times.

    The generator differences commute, so the application order is irrelevant.
    """
    naxes = len(f.domain.factors)
    if len(orders) != naxes:
        raise ValueError(f"expected {naxes} orders, got {len(orders)}")
    if any(n < 0 for n in orders):
        raise ValueError("difference orders must be nonnegative")
    values = f.values
    mods = f.codomain.factors
    for axis, n in enumerate(orders):
        perm = _generator_shift(f.domain, axis)
        for _ in range(n):
            values = tuple(
                tuple((a - b) % m for a, b, m in zip(values[perm[k]], values[k], mods))
                for k in range(len(values))
            )
    return FiniteMap(f.domain, f.codomain, values)


def _p_group_degree(f: FiniteMap) -> int:
    """Exact degree of a nonzero map between p-groups of one common prime.

    Levels the iterated generator differences by total order and stops at the
    first identically vanishing level; each weight vector is produced from a
    single canonical parent, and children of vanished tables are skipped
    because differencing the zero map stays zero.
    """
    p = _pure_prime(f.domain)
    exponents = make_partition(multiplicity(p, m) for m in f.domain.factors)
    beta = max(multiplicity(p, m) for m in f.codomain.factors)
    cap = max_functional_degree(PGroupShape(p, exponents), beta)
    naxes = len(f.domain.factors)
    shifts = [_generator_shift(f.domain, i) for i in range(naxes)]
    size = f.domain.order

    scalar = len(f.codomain.factors) == 1
    if scalar:
        q = f.codomain.factors[0]
        start: tuple = tuple(v[0] for v in f.values)

        def diff(table, perm):
            return tuple((table[perm[k]] - table[k]) % q for k in range(size))

        def nonzero(table):
            return any(table)

    else:
        mods = f.codomain.factors
        start = f.values

        def diff(table, perm):
            return tuple(
                tuple((a - b) % m for a, b, m in zip(table[perm[k]], table[k], mods))
                for k in range(size)
            )

        def nonzero(table):
            return any(any(v) for v in table)

    level = {(0,) * naxes: start}
    k = 0
    while True:
        live = {nvec: t for nvec, t in level.items() if nonzero(t)}
        if not live:
            return k - 1
        if k > cap:
            raise ConsistencyError(
                f"nonzero difference of order {k} exceeds the degree cap {cap}"
            )
        nxt: dict[tuple[int, ...], tuple] = {}
        for nvec, table in live.items():
            first = next((i for i, n in enumerate(nvec) if n), naxes - 1)
            for i in range(first + 1):
                child = nvec[:i] + (nvec[i] + 1,) + nvec[i + 1 :]
                nxt[child] = diff(table, shifts[i])
        level = nxt
        k += 1


def primary_split(f: FiniteMap) -> dict[int, FiniteMap] | None:
    """Split a map into Sylow-component maps, or None when it does not split.

    A map splits iff for every prime the component of f(x) depends only on
    the matching component of x; finite functional degree is equivalent to
    splitting, with the degree the maximum over the component maps.
    """
    primes = sorted(set(f.domain.primes()) | set(f.codomain.primes()))
    elements = enumerate_elements(f.domain)
    out: dict[int, FiniteMap] = {}
    for prime in primes:
        comp_a = component_of(f.domain, prime)
        comp_b = component_of(f.codomain, prime)
        table = tuple(
            comp_b.project(f.at(comp_a.include(u)))
            for u in enumerate_elements(comp_a.shape)
        )
        g = FiniteMap(comp_a.shape, comp_b.shape, table)
        for k, x in enumerate(elements):
            if comp_b.project(f.values[k]) != table[index_of(comp_a.shape, comp_a.project(x))]:
                return None
        out[prime] = g
    return out


def primary_assemble(
    domain: AbelianShape, codomain: AbelianShape, components: Mapping[int, FiniteMap]
) -> FiniteMap:
    """Assemble a map from Sylow-component maps; missing primes act as zero."""
    for prime, g in components.items():
        if g.domain != component_of(domain, prime).shape:
            raise ValueError(f"component at {prime} has domain {g.domain.factors}")
        if g.codomain != component_of(codomain, prime).shape:
            raise ValueError(f"component at {prime} has codomain {g.codomain.factors}")

    def fn(x: tuple[int, ...]) -> tuple[int, ...]:
        total = codomain.zero()
        for prime, g in components.items():
            comp_a = component_of(domain, prime)
            comp_b = component_of(codomain, prime)
            total = codomain.add(total, comp_b.include(g.at(comp_a.project(x))))
        return total

    return FiniteMap.from_callable(domain, codomain, fn)


def functional_degree(f: FiniteMap) -> Degree:
    """Exact functional degree in the extended naturals."""
    if f.is_zero:
        return NEG_INF
    p_dom = _pure_prime(f.domain)
    if p_dom is not None and p_dom == _pure_prime(f.codomain):
        return Degree.of(_p_group_degree(f))
    split = primary_split(f)
    if split is None:
        return INF
    best = NEG_INF
    for g in split.values():
        if g.is_zero:
            continue
        if g.domain.is_trivial or g.codomain.is_trivial:
            part = Degree.of(0)
        else:
            part = Degree.of(_p_group_degree(g))
        best = max(best, part)
    return best


def _p_pair_data(f: FiniteMap) -> tuple[int, tuple[int, ...], int]:
    """(p, domain exponents in stored order, degree cap) for a one-prime pair."""
    p = _pure_prime(f.domain)
    if p is None or _pure_prime(f.codomain) != p:
        raise UnsupportedMapError(
            "series expansion needs domain and codomain p-groups of one common prime"
        )
    exps = tuple(multiplicity(p, m) for m in f.domain.factors)
    beta = max(multiplicity(p, m) for m in f.codomain.factors)
    cap = max_functional_degree(PGroupShape(p, make_partition(exps)), beta)
    return p, exps, cap


def _axis_triangle(values: list, width: int, naxes: int, sub) -> None:
    """In-place per-axis forward differencing; cell k ends as the k-th
    iterated difference of the original array at the origin."""
    strides = [width ** (naxes - 1 - i) for i in range(naxes)]
    for axis in range(naxes):
        stride = strides[axis]
        block = stride * width
        for base in range(0, len(values), block):
            for offset in range(stride):
                line = base + offset
                for k in range(1, width):
                    for j in range(width - 1, k - 1, -1):
                        pos = line + j * stride
                        values[pos] = sub(values[pos], values[pos - stride])


def series_coefficients(f: FiniteMap) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Nonzero binomial-basis coefficients of the periodic pullback of f.

    The coefficient at n is the n-th iterated difference of the pullback at
    the origin; support is contained in total order <= the degree cap of the
    domain/codomain pair, and the maximal support order equals the degree.
    """
    _, _, cap = _p_pair_data(f)
    naxes = len(f.domain.factors)
    width = cap + 1
    factors = f.domain.factors

    window: list = []
    for point in itertools.product(range(width), repeat=naxes):
        window.append(f.at(tuple(c % m for c, m in zip(point, factors))))

    mods = f.codomain.factors
    if len(mods) == 1:
        q = mods[0]
        flat = [v[0] for v in window]
        _axis_triangle(flat, width, naxes, lambda a, b: (a - b) % q)
        window = [(v,) for v in flat]
    else:
        _axis_triangle(
            window,
            width,
            naxes,
            lambda a, b: tuple((x - y) % m for x, y, m in zip(a, b, mods)),
        )

    coeffs: dict[tuple[int, ...], tuple[int, ...]] = {}
    for idx, point in enumerate(itertools.product(range(width), repeat=naxes)):
        if sum(point) <= cap and any(window[idx]):
            coeffs[point] = window[idx]
    return coeffs


def reconstruct(
    domain: AbelianShape,
    codomain: AbelianShape,
    coeffs: Mapping[tuple[int, ...], tuple[int, ...]],
    degree: Degree | int,
) -> FiniteMap:
    """Evaluate a binomial-basis coefficient table back into a map.

    Inverse of series_coefficients when the coefficients came from an actual
    map on the domain and the bound is at least its degree.
    """
    bound = Degree.of(degree) if not isinstance(degree, Degree) else degree
    for nvec, c in coeffs.items():
        if any(c) and Degree.of(sum(nvec)) > bound:
            raise ValueError(f"coefficient at {nvec} violates the degree bound {bound}")

    def fn(x: tuple[int, ...]) -> tuple[int, ...]:
        total = codomain.zero()
        for nvec, c in coeffs.items():
            scale = 1
            for xi, ni in zip(x, nvec):
                scale *= binomial(xi, ni)
                if scale == 0:
                    break
            if scale:
                total = codomain.add(total, codomain.scale(scale, c))
        return total

    return FiniteMap.from_callable(domain, codomain, fn)


@dataclass(frozen=True)
class BinomialSeries:
    """Finitely supported integer series in the binomial basis.

    Evaluates as F(x) = sum over support of C(x_1, n_1)...C(x_N, n_N) times
    the coefficient, in exact integer arithmetic.
    """

    arity: int
    coeffs: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        for nvec, c in self.coeffs.items():
            if len(nvec) != self.arity or any(n < 0 for n in nvec):
                raise ValueError(f"bad support point {nvec} for arity {self.arity}")
            if not isinstance(c, int):
                raise ValueError(f"coefficients must be integers, got {c!r}")

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.arity:
            raise ValueError(f"expected {self.arity} coordinates, got {len(point)}")
        total = 0
        for nvec, c in self.coeffs.items():
            term = c
            for xi, ni in zip(point, nvec):
                term *= binomial(xi, ni)
                if term == 0:
                    break
            total += term
        return total

    __call__ = evaluate

    def degree(self) -> Degree:
        orders = [sum(nvec) for nvec, c in self.coeffs.items() if c]
        return Degree.of(max(orders)) if orders else NEG_INF


def proper_lift(f: FiniteMap) -> BinomialSeries:
    """Integer series lifting f along reduction mod its cyclic p-power codomain.

    Coefficients are the canonical representatives of the series coefficients
    of f, so they vanish exactly where the originals do, and reducing the
    series mod the codomain modulus reproduces the periodic pullback of f.
    """
    if len(f.codomain.factors) != 1 or len(factorize(f.codomain.factors[0])) != 1:
        raise ValueError("proper lifts need a cyclic codomain of prime-power order")
    coeffs = {nvec: c[0] for nvec, c in series_coefficients(f).items() if c[0]}
    return BinomialSeries(len(f.domain.factors), coeffs)


def lift_difference_at_zero(series: BinomialSeries, orders: Sequence[int]) -> int:
    """Iterated difference of the series at the origin, by alternating sums.

    Collapses to the coefficient at the given orders, which makes divisibility
    checks on the coefficients honest recomputations rather than lookups.
    """
    if len(orders) != series.arity:
        raise ValueError(f"expected {series.arity} orders, got {len(orders)}")
    total = 0
    for point in itertools.product(*(range(n + 1) for n in orders)):
        sign = (-1) ** ((sum(orders) - sum(point)) & 1)
        weight = 1
        for ni, ki in zip(orders, point):
            weight *= binomial(ni, ki)
        total += sign * weight * series.evaluate(point)
    return total


def lift_difference_box(
    series: BinomialSeries, width: int
) -> dict[tuple[int, ...], int]:
    """All iterated differences of the series at the origin, for every order
    vector inside the cube [0, width)^arity, via one in-place triangle."""
    naxes = series.arity
    values = [
        series.evaluate(point)
        for point in itertools.product(range(width), repeat=naxes)
    ]
    _axis_triangle(values, width, naxes, lambda a, b: a - b)
    return {
        point: values[idx]
        for idx, point in enumerate(itertools.product(range(width), repeat=naxes))
    }


def tensor_product(factors: Sequence[FiniteMap | BinomialSeries]):
    """Combine maps or series on disjoint variables by multiplying values.

    Finite maps must share one cyclic ring codomain; the result lives on the
    concatenated domain.  Series combine coefficientwise because the binomial
    basis is multiplicative across disjoint variables.
    """
    if not factors:
        raise ValueError("tensor product needs at least one factor")
    if all(isinstance(g, FiniteMap) for g in factors):
        codomain = factors[0].codomain
        if len(codomain.factors) != 1:
            raise ValueError("tensor product of maps needs a cyclic ring codomain")
        if any(g.codomain != codomain for g in factors):
            raise ValueError("tensor factors must share one codomain ring")
        q = codomain.factors[0]
        domain = AbelianShape(tuple(m for g in factors for m in g.domain.factors))
        values = []
        for combo in itertools.product(*(g.values for g in factors)):
            prod = 1
            for v in combo:
                prod = (prod * v[0]) % q
            values.append((prod,))
        return FiniteMap(domain, codomain, tuple(values))
    if all(isinstance(g, BinomialSeries) for g in factors):
        arity = sum(g.arity for g in factors)
        coeffs: dict[tuple[int, ...], int] = {}
        for combo in itertools.product(*(g.coeffs.items() for g in factors)):
            nvec = tuple(n for key, _ in combo for n in key)
            c = 1
            for _, ci in combo:
                c *= ci
            if c:
                coeffs[nvec] = c
        return BinomialSeries(arity, coeffs)
    raise ValueError("tensor factors must be all maps or all series")


def integral(fn: Callable[[tuple[int, ...]], int], bounds: Sequence[int]) -> int:
    """Exact sum of fn over the box [0, b_1) x ... x [0, b_N).

    Additive in fn, which is what the valuation bound on integrals of
    degree-capped series rests on.
    """
    total = 0
    for point in itertools.product(*(range(b) for b in bounds)):
        total += fn(point)
    return total


def zero_count(
    maps: Sequence[FiniteMap], domain: AbelianShape | None = None
) -> tuple[int, dict[int, Degree]]:
    """Count simultaneous zeros and report ord_q per prime q dividing |A|.

    An empty system has every point as a zero; a zero count of 0 reports
    infinite valuation at every prime.
    """
    if maps:
        domain = maps[0].domain
        if any(f.domain != domain for f in maps):
            raise ValueError("all maps in a system must share one domain")
    elif domain is None:
        raise ValueError("an empty system needs an explicit domain")
    count = 0
    for k in range(domain.order):
        if all(not any(f.values[k]) for f in maps):
            count += 1
    ords = {
        prime: (INF if count == 0 else Degree.of(multiplicity(prime, count)))
        for prime in domain.primes()
    }
    return count, ords
