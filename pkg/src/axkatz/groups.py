"""Finite commutative group shapes, element enumeration, and Sylow splitting.

A shape is just the tuple of cyclic factor moduli; elements are reduced
coordinate tuples enumerated in row-major order (last coordinate fastest),
which fixes the on-disk function-table format.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from .errors import ResourceLimitError
from .intmath import check_prime, factorize, multiplicity
from .partitions import Partition, make_partition

DEFAULT_ENUM_LIMIT = 10**6
ENUM_LIMIT_ENV = "AXKATZ_ENUM_LIMIT"


def enumeration_limit() -> int:
    """Default element-count cap; override with the AXKATZ_ENUM_LIMIT env var."""
    raw = os.environ.get(ENUM_LIMIT_ENV)
    return int(raw) if raw else DEFAULT_ENUM_LIMIT


@dataclass(frozen=True)
class AbelianShape:
    """Direct sum of Z/mZ factors, in the stored order; () is the trivial group."""

    factors: tuple[int, ...]

    def __post_init__(self):
        for m in self.factors:
            if not isinstance(m, int) or isinstance(m, bool) or m < 2:
                raise ValueError(f"factors must be integers >= 2, got {m!r}")

    @property
    def order(self) -> int:
        n = 1
        for m in self.factors:
            n *= m
        return n

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def primes(self) -> tuple[int, ...]:
        return tuple(sorted(factorize(self.order).keys())) if self.factors else ()

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.factors)

    def add(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.factors))

    def sub(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((a - b) % m for a, b, m in zip(x, y, self.factors))

    def scale(self, k: int, x: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((k * a) % m for a, m in zip(x, self.factors))

    def reduce(self, x: tuple[int, ...]) -> tuple[int, ...]:
        if len(x) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} coordinates, got {len(x)}")
        return tuple(a % m for a, m in zip(x, self.factors))

    def contains(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == len(self.factors)
            and all(isinstance(a, int) and 0 <= a < m for a, m in zip(x, self.factors))
        )

    def to_json(self) -> list[int]:
        return list(self.factors)


@dataclass(frozen=True)
class PGroupShape:
    """p-group presented by its invariant-factor exponent partition."""

    p: int
    exponents: Partition

    def __post_init__(self):
        check_prime(self.p)

    @property
    def order(self) -> int:
        return self.p**self.exponents.size

    @property
    def group_exponent(self) -> int:
        """Exponent of the group, p^(largest invariant-factor exponent)."""
        return self.p ** self.exponents.width

    def shape(self) -> AbelianShape:
        return AbelianShape(tuple(self.p**a for a in self.exponents.parts))


def primary_decomposition(shape: AbelianShape) -> dict[int, PGroupShape]:
    """Split a nontrivial shape into its Sylow components, one per prime."""
    if shape.is_trivial:
        raise ValueError("the trivial group has no primary decomposition")
    exponents: dict[int, list[int]] = {}
    for m in shape.factors:
        for prime, e in factorize(m).items():
            exponents.setdefault(prime, []).append(e)
    return {
        prime: PGroupShape(prime, make_partition(exps))
        for prime, exps in sorted(exponents.items())
    }


@dataclass(frozen=True)
class PrimaryComponent:
    """Positional view of one Sylow component inside a parent shape.

    For a parent factor Z/mZ with m = c * q, q the prime-power part, the
    component coordinate of x is (x * c^-1) mod q and the inclusion sends
    u to (c * u) mod m; these are mutually inverse CRT maps.
    """

    prime: int
    parent: AbelianShape
    positions: tuple[int, ...]
    moduli: tuple[int, ...]
    cofactors: tuple[int, ...]
    inverses: tuple[int, ...]

    @property
    def shape(self) -> AbelianShape:
        return AbelianShape(self.moduli)

    def project(self, x: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(
            (x[pos] * inv) % q
            for pos, inv, q in zip(self.positions, self.inverses, self.moduli)
        )

    def include(self, u: tuple[int, ...]) -> tuple[int, ...]:
        out = [0] * len(self.parent.factors)
        for pos, cof, coord in zip(self.positions, self.cofactors, u):
            out[pos] = (cof * coord) % self.parent.factors[pos]
        return tuple(out)


@lru_cache(maxsize=None)
def primary_components(shape: AbelianShape) -> dict[int, PrimaryComponent]:
    """Positional Sylow components of a shape, keyed by prime."""
    views: dict[int, PrimaryComponent] = {}
    for prime in shape.primes():
        positions, moduli, cofactors, inverses = [], [], [], []
        for pos, m in enumerate(shape.factors):
            e = multiplicity(prime, m)
            if e == 0:
                continue
            q = prime**e
            c = m // q
            positions.append(pos)
            moduli.append(q)
            cofactors.append(c)
            inverses.append(pow(c, -1, q))
        views[prime] = PrimaryComponent(
            prime, shape, tuple(positions), tuple(moduli), tuple(cofactors), tuple(inverses)
        )
    return views


def component_of(shape: AbelianShape, prime: int) -> PrimaryComponent:
    """The Sylow view at a prime; a trivial view when the prime does not divide |G|."""
    views = primary_components(shape)
    if prime in views:
        return views[prime]
    return PrimaryComponent(prime, shape, (), (), (), ())


def enumerate_elements(shape: AbelianShape, limit: int | None = None) -> list[tuple[int, ...]]:
    """All elements in row-major order, last coordinate fastest."""
    cap = enumeration_limit() if limit is None else limit
    if shape.order > cap:
        raise ResourceLimitError(
            f"group of order {shape.order} exceeds the enumeration limit {cap}"
        )
    elements = [()]
    for m in shape.factors:
        elements = [x + (c,) for x in elements for c in range(m)]
    return elements


def index_of(shape: AbelianShape, x: tuple[int, ...]) -> int:
    """Position of a reduced element in enumerate_elements order."""
    if not shape.contains(x):
        raise ValueError(f"{x} is not a reduced element of {shape.factors}")
    idx = 0
    for a, m in zip(x, shape.factors):
        idx = idx * m + a
    return idx


def element_at(shape: AbelianShape, idx: int) -> tuple[int, ...]:
    """Inverse of index_of."""
    if not 0 <= idx < shape.order:
        raise ValueError(f"index {idx} out of range for order {shape.order}")
    coords = []
    for m in reversed(shape.factors):
        idx, c = divmod(idx, m)
        coords.append(c)
    return tuple(reversed(coords))


def max_functional_degree(shape: PGroupShape, beta: int) -> int:
    """Largest finite functional degree into a p-group of exponent p^beta.

    Equals sum_i (p^(a_i) - 1) + (beta - 1)(p - 1) p^(a_1 - 1) where a_1 is
    the largest domain exponent.
    """
    if beta < 1:
        raise ValueError(f"beta must be >= 1, got {beta}")
    p = shape.p
    parts = shape.exponents.parts
    return sum(p**a - 1 for a in parts) + (beta - 1) * (p - 1) * p ** (parts[0] - 1)
