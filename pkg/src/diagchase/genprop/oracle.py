"""Element-enumeration oracle for finite abelian groups.

This module deliberately shares no algorithm with the symbolic code path.
It reads only the invariant factors of each group and the raw integer
matrix of each homomorphism, then answers every question by listing
elements.  Group structure of a subgroup or quotient is recovered from the
counts ``#{x : n x = 0}``, which determine a finite abelian group up to
isomorphism.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from ..errors import OracleInapplicable

Element = tuple[int, ...]

DEFAULT_MAX_ORDER = 4096


def _factors(group) -> tuple[int, ...]:
    return tuple(group.invariant_factors)


def _raw_matrix(hom) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(r) for r in hom.matrix.data)


class ElementTable:
    """All elements of ``Z/d_1 x ... x Z/d_k``, lexicographically ordered."""

    def __init__(self, factors: Sequence[int], max_order: int = DEFAULT_MAX_ORDER):
        factors = tuple(factors)
        if any(d == 0 for d in factors):
            raise OracleInapplicable("infinite group: cannot enumerate elements")
        order = 1
        for d in factors:
            order *= d
        if order > max_order:
            raise OracleInapplicable(f"group of order {order} exceeds the bound {max_order}")
        self.factors = factors
        self.order = order
        self.elements: list[Element] = list(product(*(range(d) for d in factors)))

    @property
    def zero(self) -> Element:
        return tuple(0 for _ in self.factors)

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def times(self, n: int, x: Element) -> Element:
        return tuple(n * a % d for a, d in zip(x, self.factors))


class Oracle:
    """Answers element-level questions, caching one table per group."""

    def __init__(self, max_order: int = DEFAULT_MAX_ORDER):
        self.max_order = max_order
        self._tables: dict[tuple[int, ...], ElementTable] = {}

    def table(self, group) -> ElementTable:
        key = _factors(group)
        if key not in self._tables:
            self._tables[key] = ElementTable(key, self.max_order)
        return self._tables[key]

    # ------------------------------------------------------------ maps

    def apply(self, hom, x: Element) -> Element:
        target = self.table(hom.dst).factors
        return tuple(sum(m * a for m, a in zip(row, x)) % e
                     for row, e in zip(_raw_matrix(hom), target))

    def graph(self, hom) -> dict[Element, Element]:
        return {x: self.apply(hom, x) for x in self.table(hom.src).elements}

    def image_set(self, hom) -> frozenset[Element]:
        self.table(hom.dst)
        return frozenset(self.graph(hom).values())

    def kernel_set(self, hom) -> frozenset[Element]:
        zero = self.table(hom.dst).zero
        return frozenset(x for x, y in self.graph(hom).items() if y == zero)

    def is_injective(self, hom) -> bool:
        return len(self.kernel_set(hom)) == 1

    def is_surjective(self, hom) -> bool:
        return len(self.image_set(hom)) == self.table(hom.dst).order

    def is_iso(self, hom) -> bool:
        return self.is_injective(hom) and self.is_surjective(hom)

    def has_property(self, hom, mode: str) -> bool:
        return {"monic": self.is_injective, "epic": self.is_surjective,
                "iso": self.is_iso}[mode](hom)

    def maps_equal(self, p, q) -> bool:
        """Pointwise equality of two maps given as lists of homs applied
        right to left (``[h, g, f]`` means ``h(g(f(x)))``)."""
        src = p[-1].src
        for x in self.table(src).elements:
            if self._run(p, x) != self._run(q, x):
                return False
        return True

    def _run(self, chain, x):
        for h in reversed(chain):
            x = self.apply(h, x)
        return x

    # ------------------------------------------------------------ structure

    def exact_at(self, f, g) -> bool:
        return self.image_set(f) == self.kernel_set(g)

    def short_exact(self, f, g) -> bool:
        return self.is_injective(f) and self.is_surjective(g) and self.exact_at(f, g)

    def subgroup_factors(self, group, subset: Iterable[Element]) -> tuple[int, ...]:
        t = self.table(group)
        h = list(subset)
        return _factors_from_counts(
            len(h), lambda n: sum(1 for x in h if t.times(n, x) == t.zero))

    def quotient_factors(self, group, subset: Iterable[Element]) -> tuple[int, ...]:
        t = self.table(group)
        h = frozenset(subset)
        size = t.order // len(h)
        return _factors_from_counts(
            size, lambda n: sum(1 for x in t.elements if t.times(n, x) in h) // len(h))

    def group_factors(self, group) -> tuple[int, ...]:
        t = self.table(group)
        return self.subgroup_factors(group, t.elements)

    # ------------------------------------------------------------ ladders

    def ladder_verdicts(self, ladder, mode: str) -> dict[str, bool]:
        """Every hypothesis and the conclusion of the short five lemma,
        evaluated by enumeration (conclusion included unconditionally)."""
        l = ladder
        return {
            "top row short exact": self.short_exact(l.f, l.g),
            "bottom row short exact": self.short_exact(l.f_prime, l.g_prime),
            "left square commutes: f' alpha = beta f":
                self.maps_equal([l.f_prime, l.alpha], [l.beta, l.f]),
            "right square commutes: g' beta = gamma g":
                self.maps_equal([l.g_prime, l.beta], [l.gamma, l.g]),
            f"alpha {mode}": self.has_property(l.alpha, mode),
            f"gamma {mode}": self.has_property(l.gamma, mode),
            f"beta {mode}": self.has_property(l.beta, mode),
        }


def _primes_of(n: int) -> list[int]:
    ps, p = [], 2
    while p * p <= n:
        if n % p == 0:
            ps.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        ps.append(n)
    return ps


def _factors_from_counts(order: int, count) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group of the given order from
    ``count(n) = #{x : n x = 0}``.

    For each prime ``p`` the number of cyclic p-primary summands of order at
    least ``p^k`` is ``log_p(count(p^k) / count(p^(k-1)))``.
    """
    per_prime: list[list[int]] = []
    for p in _primes_of(order):
        at_least = []
        prev, k = 1, 1
        while True:
            c = count(p ** k)
            ratio = c // prev
            r = 0
            while ratio > 1:
                ratio //= p
                r += 1
            if r == 0:
                break
            at_least.append(r)
            prev, k = c, k + 1
        powers = []
        for k, r in enumerate(at_least, start=1):
            nxt = at_least[k] if k < len(at_least) else 0
            powers += [p ** k] * (r - nxt)
        per_prime.append(sorted(powers, reverse=True))
    length = max((len(x) for x in per_prime), default=0)
    out = []
    for i in range(length):
        v = 1
        for powers in per_prime:
            if i < len(powers):
                v *= powers[i]
        out.append(v)
    return tuple(sorted(out))


_STATEMENTS = ("injective", "surjective", "iso", "kernel", "image",
               "exact_at", "short_exact", "short_five")


def oracle_check(statement: str, *args, max_order: int = DEFAULT_MAX_ORDER, **kwargs):
    """Dispatch a named question to a fresh :class:`Oracle`."""
    o = Oracle(max_order)
    if statement == "injective":
        return o.is_injective(*args)
    if statement == "surjective":
        return o.is_surjective(*args)
    if statement == "iso":
        return o.is_iso(*args)
    if statement == "kernel":
        return o.kernel_set(*args)
    if statement == "image":
        return o.image_set(*args)
    if statement == "exact_at":
        return o.exact_at(*args)
    if statement == "short_exact":
        return o.short_exact(*args)
    if statement == "short_five":
        return o.ladder_verdicts(*args, **kwargs)
    raise ValueError(f"unknown statement {statement!r}; choose from {_STATEMENTS}")
