"""Exact integer utilities: primality, factorization, valuations, prime search.

Everything is deterministic. Inputs are validated against the 64-bit
contract the rest of the package assumes; no probabilistic answers.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

U64_MAX = 2**64 - 1

# Deterministic Miller-Rabin witness tiers (published complete sets).
# Each entry: inputs strictly below the bound are decided by the witness list.
_MR_TIERS = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (9_080_191, (31, 73)),
    (3_215_031_751, (2, 3, 5, 7)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (U64_MAX + 1, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)

# Fixed seed so Pollard-rho parameter choices are reproducible run to run.
_RHO_SEED = 0x5EED

_TRIAL_BOUND = 10_000


def _mr_witness(n: int, a: int) -> bool:
    """True if a witnesses the compositeness of odd n > 2."""
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a % n, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n <= 2**64 - 1."""
    if n < 0 or n > U64_MAX:
        raise ValueError(f"is_prime requires 0 <= n <= 2**64-1, got {n}")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    for bound, witnesses in _MR_TIERS:
        if n < bound:
            return not any(_mr_witness(n, a) for a in witnesses)
    raise AssertionError("unreachable: tiers cover the full input range")


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as (prime, exponent) pairs, primes increasing."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        primes = [p for p, _ in self.pairs]
        if primes != sorted(set(primes)):
            raise ValueError("factor primes must be strictly increasing")
        if any(e < 1 for _, e in self.pairs):
            raise ValueError("exponents must be positive")

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.pairs:
            out *= p**e
        return out

    def primes(self) -> list[int]:
        return [p for p, _ in self.pairs]

    def exponent(self, p: int) -> int:
        for q, e in self.pairs:
            if q == p:
                return e
        return 0

    def __str__(self) -> str:
        if not self.pairs:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.pairs)


def _rho_brent(n: int, rng: random.Random) -> int:
    """A nontrivial factor of composite n with no small prime factors."""
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        # cycle degenerated; retry with fresh parameters


def factorize(n: int) -> Factorization:
    """Factor n >= 1 by trial division then Pollard-rho on the cofactors."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    found: dict[int, int] = {}
    for p in range(2, _TRIAL_BOUND + 1):
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    rng = random.Random(_RHO_SEED)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        d = _rho_brent(m, rng)
        stack.append(d)
        stack.append(m // d)
    return Factorization(tuple(sorted(found.items())))


def padic_valuation(n: int, ell: int) -> int:
    """Largest e with ell**e dividing n (n >= 1, ell prime)."""
    if n < 1:
        raise ValueError(f"padic_valuation requires n >= 1, got {n}")
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    e = 0
    while n % ell == 0:
        n //= ell
        e += 1
    return e


def p_part(n: int, p: int) -> int:
    """The p-adic part p**v_p(n) of n."""
    return p ** padic_valuation(n, p)


def is_prime_power(n: int) -> Optional[tuple[int, int]]:
    """(p, r) with n = p**r if n > 1 is a prime power, else None."""
    if n < 2:
        return None
    fac = factorize(n)
    if len(fac.pairs) != 1:
        return None
    return fac.pairs[0]


def multiplicative_order(a: int, q: int) -> int:
    """Order of a in (Z/qZ)*; requires gcd(a, q) = 1."""
    a %= q
    if math.gcd(a, q) != 1:
        raise ValueError(f"{a} is not a unit mod {q}")
    group_order = q - 1 if is_prime(q) else _euler_phi(q)
    order = group_order
    for p, _ in factorize(group_order).pairs:
        while order % p == 0 and pow(a, order // p, q) == 1:
            order //= p
    return order


def _euler_phi(n: int) -> int:
    out = 1
    for p, e in factorize(n).pairs:
        out *= p ** (e - 1) * (p - 1)
    return out


def dirichlet_search(p: int, n: int, m_max: int = 10**6) -> Optional[tuple[int, int]]:
    """Smallest m <= m_max with q = m*p**n + 1 prime, as (m, q); None if none.

    Absence is a value, not an error: existence for unbounded m is
    guaranteed by Dirichlet's theorem on primes in arithmetic progressions,
    but a bounded search may come up empty.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"exponent must be positive, got {n}")
    if m_max < 1:
        raise ValueError(f"m_max must be positive, got {m_max}")
    step = p**n
    for m in range(1, m_max + 1):
        q = m * step + 1
        if q > U64_MAX:
            return None
        if is_prime(q):
            return (m, q)
    return None
