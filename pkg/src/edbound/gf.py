"""Arithmetic in GF(p^r) and the projective-line realization of PSL2(q).

Field elements are length-r coefficient tuples over F_p (coefficient i
multiplies x^i), reduced modulo the lexicographically smallest monic
irreducible polynomial of degree r. Fields here stay small: they only
need to carry the Moebius action on the q+1 points of the projective
line for enumerable PSL2(q).
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .numtheory import factorize, is_prime, is_prime_power
from .perm import DEFAULT_CAP, ConcreteGroup, GroupTooLargeError, Permutation

FIELD_SIZE_CAP = 2**20

Element = tuple[int, ...]


# -- polynomial helpers over F_p (little-endian coefficient tuples) ---------


def _poly_trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(num: Sequence[int], den: Sequence[int], p: int) -> tuple[int, ...]:
    num = list(num)
    dn = _poly_trim(den)
    inv_lead = pow(dn[-1], p - 2, p)
    while len(_poly_trim(num)) >= len(dn):
        trimmed = _poly_trim(num)
        shift = len(trimmed) - len(dn)
        factor = trimmed[-1] * inv_lead % p
        num = list(trimmed)
        for i, d in enumerate(dn):
            num[shift + i] = (num[shift + i] - factor * d) % p
    return _poly_trim(num)


def _monic_polys(degree: int, p: int) -> Iterator[tuple[int, ...]]:
    """Monic polynomials of exact degree, in lexicographic coefficient order."""
    for n in range(p**degree):
        digits = []
        m = n
        for _ in range(degree):
            digits.append(m % p)
            m //= p
        yield tuple(digits) + (1,)


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg/2."""
    degree = len(poly) - 1
    if degree == 1:
        return True
    for d in range(1, degree // 2 + 1):
        for candidate in _monic_polys(d, p):
            if not _poly_mod(poly, candidate, p):
                return False
    return True


class GF:
    """The finite field GF(p^r)."""

    def __init__(self, p: int, r: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if r < 1:
            raise ValueError("extension degree must be positive")
        q = p**r
        if q > FIELD_SIZE_CAP:
            raise ValueError(f"field size {q} exceeds cap {FIELD_SIZE_CAP}")
        self.p = p
        self.r = r
        self.q = q
        self.modulus = self._find_modulus()

    def _find_modulus(self) -> tuple[int, ...]:
        for poly in _monic_polys(self.r, self.p):
            if _is_irreducible(poly, self.p):
                return poly
        raise AssertionError("an irreducible polynomial of every degree exists")

    # -- element plumbing ----------------------------------------------------

    @property
    def zero(self) -> Element:
        return (0,) * self.r

    @property
    def one(self) -> Element:
        return (1,) + (0,) * (self.r - 1)

    def element(self, coeffs: Sequence[int]) -> Element:
        if len(coeffs) != self.r or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"element needs {self.r} coefficients in 0..{self.p - 1}")
        return tuple(coeffs)

    def from_int(self, n: int) -> Element:
        """Decode 0 <= n < q as base-p digits (the canonical enumeration)."""
        if not 0 <= n < self.q:
            raise ValueError(f"need 0 <= n < {self.q}")
        digits = []
        for _ in range(self.r):
            digits.append(n % self.p)
            n //= self.p
        return tuple(digits)

    def to_int(self, a: Element) -> int:
        out = 0
        for c in reversed(a):
            out = out * self.p + c
        return out

    def elements(self) -> Iterator[Element]:
        for n in range(self.q):
            yield self.from_int(n)

    # -- arithmetic ------------------------------------------------------------

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % self.p for x in a)

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def mul(self, a: Element, b: Element) -> Element:
        prod = _poly_mul(a, b, self.p)
        rem = _poly_mod(prod, self.modulus, self.p)
        return tuple(rem) + (0,) * (self.r - len(rem))

    def pow(self, a: Element, n: int) -> Element:
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = self.one
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, a: Element) -> Element:
        if a == self.zero:
            raise ZeroDivisionError("inversion of zero in a finite field")
        return self.pow(a, self.q - 2)

    def frobenius(self, a: Element) -> Element:
        return self.pow(a, self.p)


# -- projective line and PSL2 -------------------------------------------------

Point = tuple[Element, Element]


def projective_line(field: GF) -> list[Point]:
    """The q+1 normalized points: infinity (1:0) first, then (a:1)."""
    return [(field.one, field.zero)] + [(a, field.one) for a in field.elements()]


def _normalize(field: GF, x: Element, y: Element) -> Point:
    if y != field.zero:
        return (field.mul(x, field.inv(y)), field.one)
    return (field.one, field.zero)


def _mobius_permutation(field: GF, points: list[Point], index: dict[Point, int], matrix) -> Permutation:
    (a, b), (c, d) = matrix
    images = []
    for x, y in points:
        nx = field.add(field.mul(a, x), field.mul(b, y))
        ny = field.add(field.mul(c, x), field.mul(d, y))
        images.append(index[_normalize(field, nx, ny)])
    return Permutation(images)


def psl2_order(q: int) -> int:
    """|PSL2(q)|: (q-1)q(q+1)/2 for odd q, (q-1)q(q+1) for even q."""
    if is_prime_power(q) is None:
        raise ValueError(f"{q} is not a prime power")
    n = (q - 1) * q * (q + 1)
    return n if q % 2 == 0 else n // 2


def psl2_permutation_group(q: int, cap: int = DEFAULT_CAP) -> ConcreteGroup:
    """PSL2(q) acting on the projective line over GF(q).

    SL2 is generated by the transvections [[1, x^i], [0, 1]] (x^i running
    over a basis of GF(q) over its prime field) together with
    [[0, -1], [1, 0]]; the induced Moebius action factors through the
    center. The enumerated order is checked against the closed form.
    """
    decomposition = is_prime_power(q)
    if decomposition is None:
        raise ValueError(f"{q} is not a prime power")
    expected = psl2_order(q)
    if expected > cap:
        raise GroupTooLargeErrorForPsl2(q, expected, cap)
    p, r = decomposition
    field = GF(p, r)
    points = projective_line(field)
    index = {pt: i for i, pt in enumerate(points)}
    x = field.from_int(field.p) if r > 1 else field.one  # the element "x" when r > 1
    gens = []
    power = field.one
    for _ in range(r):
        gens.append(
            _mobius_permutation(field, points, index, ((field.one, power), (field.zero, field.one)))
        )
        power = field.mul(power, x)
    gens.append(
        _mobius_permutation(
            field, points, index, ((field.zero, field.neg(field.one)), (field.one, field.zero))
        )
    )
    group = ConcreteGroup.from_generators(gens, cap=cap)
    if group.order != expected:
        raise AssertionError(
            f"PSL2({q}) enumeration produced order {group.order}, expected {expected}"
        )
    return group


def GroupTooLargeErrorForPsl2(q: int, expected: int, cap: int):
    from .perm import GroupTooLargeError

    return GroupTooLargeError(
        f"PSL2({q}) has order {expected} > cap {cap}; use the structured descriptor"
    )


def unit_element_of_order(q: int, d: int) -> int:
    """Smallest t in (Z/qZ)* of exact multiplicative order d (q prime, d | q-1)."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if d < 1 or (q - 1) % d != 0:
        raise ValueError(f"{d} does not divide {q - 1} = q - 1")
    if d == 1:
        return 1
    from .numtheory import factorize

    prime_divisors = factorize(d).primes()
    for t in range(2, q):
        if pow(t, d, q) != 1:
            continue
        if all(pow(t, d // ell, q) != 1 for ell in prime_divisors):
            return t
    raise AssertionError("the unit group of a prime field is cyclic")
