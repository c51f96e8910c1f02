"""Permutation groups by explicit enumeration.

Everything here is deliberately brute force: a group is its full element
set, so Sylow subgroups, p-cores and tameness predicates computed here can
serve as ground truth for the closed-form family rules in `families`.
Intended scale is degrees up to a few thousand and orders up to the
enumeration cap.

Groups and permutations are immutable after construction and safe for
concurrent reads (internal memo tables are only ever extended, never
rewritten).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .numtheory import is_prime, p_part, padic_valuation

DEFAULT_CAP = 2_000_000

CYCLIC = "cyclic"
DIHEDRAL = "dihedral"
ELEMENTARY_ABELIAN = "elementary_abelian"
EXPLICIT = "explicit"


class GroupTooLargeError(RuntimeError):
    """A closure exceeded the enumeration cap; use a structured descriptor."""


def _dtypes_for(degree: int) -> tuple[np.dtype, np.dtype]:
    # native dtype for composition, big-endian twin for order-preserving keys
    if degree <= 32767:
        return np.dtype(np.int16), np.dtype(">i2")
    return np.dtype(np.int32), np.dtype(">i4")


class Permutation:
    """A bijection of {0, ..., degree-1} stored as its image array.

    Hashable and totally ordered by the image sequence, so sorted element
    lists are lexicographic and reports are deterministic.
    """

    __slots__ = ("_arr", "_key", "_order")

    def __init__(self, images: Iterable[int]):
        arr = np.asarray(list(images))
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("images must be a nonempty sequence of integers")
        degree = int(arr.size)
        native, big = _dtypes_for(degree)
        arr = arr.astype(native)
        if not np.array_equal(np.sort(arr), np.arange(degree, dtype=native)):
            raise ValueError(f"images must be a bijection of 0..{degree - 1}")
        arr.setflags(write=False)
        self._arr = arr
        self._key = arr.astype(big).tobytes()
        self._order: Optional[int] = None

    @classmethod
    def _raw(cls, arr: np.ndarray) -> "Permutation":
        # arr must already be a valid image array of the native dtype
        self = object.__new__(cls)
        arr.setflags(write=False)
        self._arr = arr
        _, big = _dtypes_for(arr.size)
        self._key = arr.astype(big).tobytes()
        self._order = None
        return self

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise ValueError("degree must be positive")
        native, _ = _dtypes_for(degree)
        return cls._raw(np.arange(degree, dtype=native))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        """Product of the given cycles acting on {0..degree-1}."""
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for pt in cycle:
                if not 0 <= pt < degree:
                    raise ValueError(f"point {pt} out of range for degree {degree}")
                if pt in seen:
                    raise ValueError(f"point {pt} repeated across cycles")
                seen.add(pt)
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return int(self._arr.size)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._arr)

    def __call__(self, point: int) -> int:
        return int(self._arr[point])

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (p * q)(i) = p(q(i)), i.e. q is applied first."""
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError(
                f"cannot compose permutations of degrees {self.degree} and {other.degree}"
            )
        return Permutation._raw(self._arr[other._arr])

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self._arr)
        inv[self._arr] = np.arange(self.degree, dtype=self._arr.dtype)
        return Permutation._raw(inv)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._arr, np.arange(self.degree, dtype=self._arr.dtype)))

    def cycle_lengths(self) -> list[int]:
        """Lengths of all cycles, fixed points included."""
        images = self._arr.tolist()
        seen = bytearray(len(images))
        out = []
        for start in range(len(images)):
            if seen[start]:
                continue
            length = 0
            pt = start
            while not seen[pt]:
                seen[pt] = 1
                pt = images[pt]
                length += 1
            out.append(length)
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, sorted."""
        images = self._arr.tolist()
        seen = bytearray(len(images))
        out = []
        for start in range(len(images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = 1
            pt = images[start]
            while pt != start:
                seen[pt] = 1
                cycle.append(pt)
                pt = images[pt]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def order(self) -> int:
        """Least n >= 1 with self**n the identity: lcm of cycle lengths."""
        if self._order is None:
            self._order = math.lcm(*self.cycle_lengths())
        return self._order

    def fixed_points(self) -> int:
        return int(np.count_nonzero(self._arr == np.arange(self.degree, dtype=self._arr.dtype)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __lt__(self, other: "Permutation") -> bool:
        return self._key < other._key

    def __le__(self, other: "Permutation") -> bool:
        return self._key <= other._key

    def __repr__(self) -> str:
        cyc = self.cycles()
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Permutation[{self.degree}]{body}"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply q first, then p."""
    return p * q


def element_order(g: Permutation) -> int:
    return g.order()


def generate_elements(generators: Iterable[Permutation], cap: int = DEFAULT_CAP) -> set[Permutation]:
    """Breadth-first closure of {identity} and the generators under composition.

    Raises GroupTooLargeError as soon as the closure exceeds cap.
    """
    gens = list(generators)
    if cap < 1:
        raise ValueError("cap must be positive")
    if not gens:
        raise ValueError("at least one generator is required")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators must share one degree")
    gen_arrs = [g._arr for g in gens]
    _, big = _dtypes_for(degree)
    ident = Permutation.identity(degree)
    found: dict[bytes, np.ndarray] = {ident._key: ident._arr}
    frontier = [ident._arr]
    while frontier:
        fresh = []
        for arr in frontier:
            for g in gen_arrs:
                prod = arr[g]  # (x*g)(i) = x(g(i))
                key = prod.astype(big).tobytes()
                if key not in found:
                    if len(found) >= cap:
                        raise GroupTooLargeError(
                            f"group too large to enumerate (cap {cap}); "
                            "use a structured descriptor instead"
                        )
                    found[key] = prod
                    fresh.append(prod)
        frontier = fresh
    return {Permutation._raw(arr) for arr in found.values()}


@dataclass(frozen=True)
class SylowClass:
    """Structural classification of a Sylow subgroup.

    Tags are assigned with a fixed precedence (elementary abelian, then
    cyclic, then dihedral, then explicit), so groups of order 1 or p carry
    the elementary-abelian tag even though they are also cyclic, and the
    Klein four-group carries it even though it is the dihedral group of
    order 4. `is_cyclic`/`is_dihedral` recover those coarser readings.
    """

    tag: str
    order: int
    rank: Optional[int] = None
    witness: Optional[frozenset] = None

    def __post_init__(self):
        if self.tag not in (CYCLIC, DIHEDRAL, ELEMENTARY_ABELIAN, EXPLICIT):
            raise ValueError(f"unknown Sylow tag {self.tag!r}")
        if self.tag == DIHEDRAL and (self.order < 4 or self.order % 2):
            raise ValueError("dihedral Sylow classes need even order >= 4")

    def is_cyclic(self) -> bool:
        return self.tag == CYCLIC or (self.tag == ELEMENTARY_ABELIAN and (self.rank or 0) <= 1)

    def is_dihedral(self) -> bool:
        # order-4 dihedral group == Klein four-group, tagged elementary abelian
        return self.tag == DIHEDRAL or (self.tag == ELEMENTARY_ABELIAN and self.order == 4)

    def describe(self) -> str:
        if self.tag == ELEMENTARY_ABELIAN:
            return f"elementary abelian of order {self.order} (rank {self.rank})"
        return f"{self.tag} of order {self.order}"


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _check_prime_or_zero(p: int) -> None:
    if p != 0:
        _check_prime(p)


def _p_power_exponent(n: int, p: int) -> Optional[int]:
    """e with n = p**e, or None if n is not a power of p (n=1 gives 0)."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e if n == 1 else None


class ConcreteGroup:
    """A fully enumerated permutation group.

    Elements are kept in canonical sorted order (lexicographic on image
    sequences), so every derived object is deterministic.
    """

    __slots__ = ("degree", "generators", "elements", "order", "_eset", "_identity", "_sylow_memo")

    def __init__(self, generators: Sequence[Permutation], elements: Iterable[Permutation]):
        elems = sorted(set(elements))
        if not elems:
            raise ValueError("a group needs at least the identity")
        degree = elems[0].degree
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elems)
        self.order = len(elems)
        self._eset = frozenset(elems)
        self._identity = Permutation.identity(degree)
        self._sylow_memo: dict[int, tuple[frozenset, tuple, tuple]] = {}
        if self._identity not in self._eset:
            raise ValueError("element set must contain the identity")
        if any(g not in self._eset for g in self.generators):
            raise ValueError("every generator must belong to the element set")
        if math.factorial(degree) % self.order:
            raise ValueError("group order must divide degree! (Lagrange)")

    @classmethod
    def from_generators(cls, generators: Sequence[Permutation], cap: int = DEFAULT_CAP) -> "ConcreteGroup":
        gens = list(generators)
        return cls(gens, generate_elements(gens, cap=cap))

    # -- basic protocol ----------------------------------------------------

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g in self._eset

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ConcreteGroup)
            and self.degree == other.degree
            and self._eset == other._eset
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.order))

    def __repr__(self) -> str:
        return f"ConcreteGroup(degree={self.degree}, order={self.order})"

    @property
    def identity(self) -> Permutation:
        return self._identity

    # -- subgroup machinery ------------------------------------------------

    def _closure(self, gens: Sequence[Permutation]) -> set[Permutation]:
        """Subgroup generated by gens (all inside this group)."""
        out = {self._identity}
        frontier = [self._identity]
        gen_list = list(gens)
        while frontier:
            fresh = []
            for x in frontier:
                for g in gen_list:
                    y = x * g
                    if y not in out:
                        out.add(y)
                        fresh.append(y)
            frontier = fresh
        return out

    def _closure_extend(
        self, members: set[Permutation], gens: list[Permutation], extra: Permutation
    ) -> set[Permutation]:
        gens.append(extra)
        return self._closure(gens)

    def subgroup(self, gens: Iterable[Permutation]) -> frozenset:
        gens = list(gens)
        for g in gens:
            if g not in self._eset:
                raise ValueError("generator not in the group")
        return frozenset(self._closure(gens))

    def conjugacy_class(self, g: Permutation) -> frozenset:
        if g not in self._eset:
            raise ValueError("element not in the group")
        pairs = [(s, s.inverse()) for s in self.generators]
        seen = {g}
        queue = deque([g])
        while queue:
            x = queue.popleft()
            for s, si in pairs:
                y = (s * x) * si
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def normal_closure(self, seed: Iterable[Permutation]) -> frozenset:
        """Smallest normal subgroup containing the seed elements."""
        seed = list(seed)
        for g in seed:
            if g not in self._eset:
                raise ValueError("seed element not in the group")
        orbit: set[Permutation] = set()
        for g in seed:
            if g not in orbit:
                orbit |= self.conjugacy_class(g)
        members = {self._identity}
        gens: list[Permutation] = []
        for g in sorted(orbit):
            if g not in members:
                members = self._closure_extend(members, gens, g)
        return frozenset(members)

    def subgroup_conjugates(self, subgroup: Iterable[Permutation]) -> Iterator[frozenset]:
        """All distinct conjugates of a subgroup, the given one first."""
        start = frozenset(subgroup)
        pairs = [(s, s.inverse()) for s in self.generators]
        seen = {start}
        queue = deque([start])
        while queue:
            current = queue.popleft()
            yield current
            for s, si in pairs:
                conj = frozenset((s * x) * si for x in current)
                if conj not in seen:
                    seen.add(conj)
                    queue.append(conj)

    # -- Sylow subgroups and p-cores ----------------------------------------

    def _sylow(self, p: int) -> tuple[frozenset, tuple, tuple]:
        """(members, generating chain, sorted members) for one Sylow p-subgroup.

        Constructive: grow P by adjoining p-power-order elements of its
        normalizer until |P| is the full p-part of the group order. The
        element scan follows canonical order, so the result is deterministic.
        """
        memo = self._sylow_memo.get(p)
        if memo is not None:
            return memo
        target = p_part(self.order, p)
        members: set[Permutation] = {self._identity}
        gens: list[Permutation] = []
        while len(members) < target:
            extender = self._find_sylow_extender(members, gens, p)
            members = self._closure_extend(members, gens, extender)
        result = (frozenset(members), tuple(gens), tuple(sorted(members)))
        self._sylow_memo[p] = result
        return result

    def _find_sylow_extender(
        self, members: set[Permutation], gens: list[Permutation], p: int
    ) -> Permutation:
        for g in self.elements:
            if g in members:
                continue
            gi = g.inverse()
            # g normalizes <gens>: enough to conjugate the generators
            if any((g * h) * gi not in members for h in gens):
                continue
            if _p_power_exponent(g.order(), p) is not None:
                return g
        raise AssertionError("Sylow extension must exist while |P| < p-part")

    def sylow_subgroup(self, p: int) -> frozenset:
        """A Sylow p-subgroup; {identity} when p does not divide the order."""
        _check_prime(p)
        return self._sylow(p)[0]

    def p_core(self, p: int) -> frozenset:
        """Largest normal p-subgroup: intersection of all Sylow p-conjugates."""
        _check_prime(p)
        sylow = self._sylow(p)[0]
        core = set(sylow)
        if len(core) > 1:
            for conj in self.subgroup_conjugates(sylow):
                core &= conj
                if len(core) == 1:
                    break
        return frozenset(core)

    def p_core_from_closures(self, p: int) -> frozenset:
        """The p-core again, via normal closures (independent cross-check).

        Subgroup generated by every p-element whose normal closure is a
        p-group. Conjugate elements share a closure, so one representative
        per conjugacy class is tested.
        """
        _check_prime(p)
        covered: set[Permutation] = set()
        members = {self._identity}
        gens: list[Permutation] = []
        for g in self.elements:
            if g in covered:
                continue
            n = g.order()
            if n == 1 or _p_power_exponent(n, p) is None:
                continue
            cls = self.conjugacy_class(g)
            covered |= cls
            closure = self.normal_closure([g])
            if _p_power_exponent(len(closure), p) is None:
                continue
            for x in sorted(closure):
                if x not in members:
                    members = self._closure_extend(members, gens, x)
        return frozenset(members)

    # -- predicates ----------------------------------------------------------

    def is_tame(self, p: int) -> bool:
        """True iff p = 0 or p does not divide the group order."""
        _check_prime_or_zero(p)
        return p == 0 or self.order % p != 0

    def is_weakly_tame(self, p: int) -> bool:
        """True iff p = 0 or the p-core is trivial."""
        _check_prime_or_zero(p)
        return p == 0 or len(self.p_core(p)) == 1

    def max_prime_power_element_order(self, p: int) -> int:
        """Largest n with an element of order p**n (0 if only the identity).

        Computed as the exponent of a Sylow p-subgroup: every p-element
        lies in one, so the maxima agree.
        """
        _check_prime(p)
        _, _, members = self._sylow(p)
        size = len(members)
        best = 1
        for x in members:
            n = x.order()
            if n > best:
                best = n
                if best == size:
                    break
        exponent = _p_power_exponent(best, p)
        assert exponent is not None
        return exponent

    def classify_sylow(self, p: int) -> SylowClass:
        """Classify a Sylow p-subgroup with the fixed tag precedence."""
        _check_prime(p)
        members_set, gens, members = self._sylow(p)
        m = len(members)
        # elementary abelian first: commuting generators, all of order p
        if all(g.order() == p for g in gens) and _pairwise_commute(gens):
            return SylowClass(ELEMENTARY_ABELIAN, m, rank=padic_valuation(m, p) if m > 1 else 0)
        exponent = 1
        for x in members:
            n = x.order()
            if n > exponent:
                exponent = n
                if exponent == m:
                    return SylowClass(CYCLIC, m)
        if m >= 4 and m % 2 == 0:
            half = m // 2
            for c in members:
                if c.order() != half:
                    continue
                cyc = _cyclic_powers(c)
                c_inv = c.inverse()
                for t in members:
                    if t.order() == 2 and t not in cyc and (t * c) * t == c_inv:
                        return SylowClass(DIHEDRAL, m)
        return SylowClass(EXPLICIT, m, witness=members_set)


def _pairwise_commute(gens: Sequence[Permutation]) -> bool:
    return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1 :])


def _cyclic_powers(c: Permutation) -> set[Permutation]:
    out = {Permutation.identity(c.degree)}
    x = c
    while x not in out:
        out.add(x)
        x = x * c
    return out
