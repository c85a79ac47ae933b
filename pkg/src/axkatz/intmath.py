"""Exact integer helpers: primality, valuations, logs, binomials.

Everything here is unbounded-integer arithmetic; no floating point is used
anywhere, so correctness never depends on magnitudes staying small.
"""

from __future__ import annotations

import math


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"expected a prime, got {p}")
    return p


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 by trial division (desk scale)."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def multiplicity(base: int, n: int) -> int:
    """Largest k with base**k dividing n, for n != 0 and base >= 2."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if n == 0:
        raise ValueError("0 is divisible by every power; handle separately")
    n = abs(n)
    k = 0
    while n % base == 0:
        n //= base
        k += 1
    return k


def ilog(base: int, x: int) -> int:
    """floor(log_base(x)) for x >= 1, by repeated multiplication."""
    if base < 2 or x < 1:
        raise ValueError(f"ilog needs base >= 2 and x >= 1, got {base}, {x}")
    k = 0
    power = base
    while power <= x:
        k += 1
        power *= base
    return k


def ceil_div(a: int, b: int) -> int:
    """Ceiling of a / b for positive b, exact for negative a as well."""
    if b <= 0:
        raise ValueError(f"divisor must be positive, got {b}")
    return -((-a) // b)


def binomial(x: int, n: int) -> int:
    """C(x, n) for any integer x and n >= 0; negative upper index reflects."""
    if n < 0:
        raise ValueError(f"lower index must be nonnegative, got {n}")
    if x >= 0:
        return math.comb(x, n)
    return (-1) ** (n & 1) * math.comb(n - x - 1, n)
