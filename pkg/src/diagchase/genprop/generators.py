"""Seeded generators of groups, homomorphisms, sequences, ladders and grids.

All randomness flows through an explicit :class:`random.Random`, so a given
:class:`GenConfig` always produces the same stream.  Generators that need a
morphism with a property (monic, epic, iso) draw at random up to a retry
bound and then fall back to a deterministic canonical choice.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Iterator

from .. import abcat
from ..diagram import MODES, NineGrid, SesLadder
from ..errors import GenerationError, InputError
from ..fgab import (FGAB, FgGroup, GroupHom, cokernel, compose, direct_sum,
                    factor_through_cokernel, factor_through_kernel, identity, kernel,
                    make_hom, normalize_object, zero_hom, ZERO)
from ..intlin import IntMatrix
from ..vecfp import FpMap, FpSpace

SCHEMES = ("split_split", "epi_kernel_top_split_bottom", "conjugated")


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_rank: int = 2
    factor_pool: tuple[int, ...] = (2, 3, 4, 8, 9, 0)
    max_order: int = 64
    scheme: str = "split_split"
    retry_bound: int = 64

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise InputError(f"unknown scheme {self.scheme!r}; choose from {SCHEMES}")
        if self.max_rank < 0 or self.retry_bound < 1:
            raise InputError("max_rank must be >= 0 and retry_bound >= 1")
        if any(d < 0 or d == 1 for d in self.factor_pool):
            raise InputError("factor pool entries must be 0 or >= 2")

    def rng(self) -> random.Random:
        return random.Random(self.seed)


# ---------------------------------------------------------------- objects and maps


def random_object(cfg: GenConfig, rng: random.Random) -> FgGroup:
    """Up to ``max_rank`` factors from the pool; finite draws respect
    ``max_order`` (redrawn, falling back to the zero group)."""
    for _ in range(cfg.retry_bound):
        k = rng.randint(0, cfg.max_rank)
        g = normalize_object([rng.choice(cfg.factor_pool) for _ in range(k)])
        if g.order is None or g.order <= cfg.max_order:
            return g
    return ZERO


def _random_entry(d: int, e: int, rng: random.Random) -> int:
    if e == 0:
        return rng.randint(-3, 3) if d == 0 else 0
    step = e // gcd(d, e)
    return step * rng.randrange(e // step)


def random_hom(a: FgGroup, b: FgGroup, rng: random.Random) -> GroupHom:
    rows = [[_random_entry(d, e, rng) for d in a.invariant_factors]
            for e in b.invariant_factors]
    return make_hom(a, b, IntMatrix.from_rows(rows, cols=a.rank))


def _prime_powers(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


def _elementary_divisors(g: FgGroup) -> Counter:
    c = Counter()
    for d in g.invariant_factors:
        if d == 0:
            c[0] += 1
        else:
            c.update(_prime_powers(d))
    return c


def summand_complement(small: FgGroup, big: FgGroup) -> FgGroup | None:
    """``X`` with ``small ⊕ X ≅ big``, or None if ``small`` is not a summand."""
    s, b = _elementary_divisors(small), _elementary_divisors(big)
    if any(b[k] < v for k, v in s.items()):
        return None
    rest = b - s
    return normalize_object(sorted(rest.elements()))


def random_monic(src: FgGroup, dst: FgGroup, rng: random.Random,
                 retries: int = 64) -> GroupHom:
    """A monomorphism ``src -> dst``: rejection sampling, then the split
    embedding when ``src`` is a summand of ``dst``."""
    for _ in range(retries):
        f = random_hom(src, dst, rng)
        if abcat.is_monic(FGAB, f):
            return f
    comp = summand_complement(src, dst)
    if comp is None:
        raise GenerationError(f"no monomorphism found from {src} to {dst}")
    return direct_sum(src, comp).inj_a


def random_epic(src: FgGroup, dst: FgGroup, rng: random.Random,
                retries: int = 64) -> GroupHom:
    """An epimorphism ``src -> dst``, falling back to the split projection."""
    for _ in range(retries):
        f = random_hom(src, dst, rng)
        if abcat.is_epic(FGAB, f):
            return f
    comp = summand_complement(dst, src)
    if comp is None:
        raise GenerationError(f"no epimorphism found from {src} to {dst}")
    return direct_sum(dst, comp).proj_a


def _elementary_automorphism(a: FgGroup, rng: random.Random) -> GroupHom:
    """Product of a few transvections ``x_j += c x_i`` and unit rescalings,
    each invertible with an inverse of the same kind."""
    d = a.invariant_factors
    n = len(d)
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            c = _random_entry(d[i], d[j], rng) or (1 if d[j] == 0 and d[i] == 0 else 0)
            for r in range(n):
                rows[j][r] += c * rows[i][r]
        else:
            units = [u for u in range(1, d[i]) if gcd(u, d[i]) == 1] if d[i] else [1, -1]
            u = rng.choice(units)
            rows[i] = [u * x for x in rows[i]]
    return make_hom(a, a, IntMatrix.from_rows(rows, cols=n))


def random_automorphism(a: FgGroup, rng: random.Random, retries: int = 64) -> GroupHom:
    """Rejection sampling over endomorphisms, then a random product of
    elementary automorphisms."""
    for _ in range(retries):
        f = random_hom(a, a, rng)
        if abcat.is_monic(FGAB, f) and abcat.is_epic(FGAB, f):
            return f
    if a.rank == 0:
        return identity(a)
    return _elementary_automorphism(a, rng)


def random_quotient(a: FgGroup, cfg: GenConfig, rng: random.Random) -> GroupHom:
    """Cokernel projection of a random map into ``a`` (always epic)."""
    return cokernel(random_hom(random_object(cfg, rng), a, rng)).projection


# ---------------------------------------------------------------- sequences


def random_ses(cfg: GenConfig, rng: random.Random) -> tuple[GroupHom, GroupHom]:
    """A short exact ``A -f-> B -g-> C``: ``g`` is the cokernel of a random
    map into a random ``B`` and ``f`` is the kernel of ``g``."""
    b = random_object(cfg, rng)
    g = random_quotient(b, cfg, rng)
    f = kernel(g).inclusion
    return f, g


def _map_for_mode(a: FgGroup, mode: str, cfg: GenConfig, rng: random.Random) -> GroupHom:
    """A random morphism out of ``a`` that is monic / epic / iso."""
    if mode == "monic":
        extra = random_object(cfg, rng)
        return random_monic(a, direct_sum(a, extra).sum_object, rng, cfg.retry_bound)
    if mode == "epic":
        return random_quotient(a, cfg, rng)
    return random_automorphism(a, rng, cfg.retry_bound)


def split_ladder(a: FgGroup, c: FgGroup, alpha: GroupHom, gamma: GroupHom,
                 h: GroupHom) -> SesLadder:
    """Split rows ``A -> A ⊕ C -> C`` and ``A' -> A' ⊕ C' -> C'`` with
    ``β = ι_A'(α ρ_A + h ρ_C) + ι_C' γ ρ_C``; both squares commute."""
    top, bot = direct_sum(a, c), direct_sum(alpha.dst, gamma.dst)
    beta = (compose(bot.inj_a, compose(alpha, top.proj_a) + compose(h, top.proj_b))
            + compose(bot.inj_b, compose(gamma, top.proj_b)))
    return SesLadder(FGAB, top.inj_a, top.proj_b, bot.inj_a, bot.proj_b, alpha, beta, gamma)


def epi_kernel_ladder(f: GroupHom, g: GroupHom, beta1: GroupHom, gamma: GroupHom) -> SesLadder:
    """Given top row ``(f, g)`` over a split bottom row ``A' -> A' ⊕ C' -> C'``,
    with ``β = ι_A' β₁ + ι_C' γ g`` and ``α = β₁ f``."""
    bot = direct_sum(beta1.dst, gamma.dst)
    beta = compose(bot.inj_a, beta1) + compose(bot.inj_b, compose(gamma, g))
    return SesLadder(FGAB, f, g, bot.inj_a, bot.proj_b, compose(beta1, f), beta, gamma)


def _split_split(cfg, mode, rng) -> SesLadder:
    a, c = random_object(cfg, rng), random_object(cfg, rng)
    alpha = _map_for_mode(a, mode, cfg, rng)
    gamma = _map_for_mode(c, mode, cfg, rng)
    h = random_hom(c, alpha.dst, rng)
    return split_ladder(a, c, alpha, gamma, h)


def _epi_kernel(cfg, mode, rng) -> SesLadder:
    f, g = random_ses(cfg, rng)
    b = f.dst
    beta1 = None
    for _ in range(cfg.retry_bound):
        if mode == "monic":
            extra = random_object(cfg, rng)
            beta1 = random_monic(b, direct_sum(b, extra).sum_object, rng, cfg.retry_bound)
            break
        if mode == "epic":
            cand = random_quotient(b, cfg, rng)
            if abcat.is_epic(FGAB, compose(cand, f)):
                beta1 = cand
                break
        else:
            cand = random_hom(b, f.src, rng)
            if abcat.classify_morphism(FGAB, compose(cand, f)).iso:
                beta1 = cand
                break
            if rng.random() < 0.25:
                f, g = random_ses(cfg, rng)
                b = f.dst
    if beta1 is None:
        if mode == "epic":
            beta1 = zero_hom(b, ZERO)
        else:
            # fall back to a split top row, which always admits a retraction
            a, c = f.src, g.dst
            ds = direct_sum(a, c)
            f, g, beta1 = ds.inj_a, ds.proj_b, ds.proj_a
    gamma = _map_for_mode(g.dst, mode, cfg, rng)
    return epi_kernel_ladder(f, g, beta1, gamma)


def conjugate_ladder(l: SesLadder, rng: random.Random, retries: int = 64) -> SesLadder:
    """Transport every morphism along random automorphisms of the six objects."""
    objs = {"A": l.f.src, "B": l.f.dst, "C": l.g.dst,
            "A'": l.f_prime.src, "B'": l.f_prime.dst, "C'": l.g_prime.dst}
    u = {k: random_automorphism(v, rng, retries) for k, v in objs.items()}
    inv = {k: abcat.classify_morphism(FGAB, v).inverse for k, v in u.items()}

    def move(m, s, t):
        return compose(u[t], compose(m, inv[s]))

    return SesLadder(
        FGAB,
        f=move(l.f, "A", "B"), g=move(l.g, "B", "C"),
        f_prime=move(l.f_prime, "A'", "B'"), g_prime=move(l.g_prime, "B'", "C'"),
        alpha=move(l.alpha, "A", "A'"), beta=move(l.beta, "B", "B'"),
        gamma=move(l.gamma, "C", "C'"))


def gen_ladder(cfg: GenConfig, mode: str, rng: random.Random) -> SesLadder:
    """A commutative ladder with short exact rows whose outer verticals have
    the ``mode`` property."""
    if mode not in MODES:
        raise InputError(f"mode must be one of {MODES}")
    scheme = cfg.scheme
    if scheme == "conjugated":
        base = rng.choice(("split_split", "epi_kernel_top_split_bottom"))
        return conjugate_ladder(_build(base, cfg, mode, rng), rng, cfg.retry_bound)
    return _build(scheme, cfg, mode, rng)


def _build(scheme, cfg, mode, rng):
    if scheme == "split_split":
        return _split_split(cfg, mode, rng)
    return _epi_kernel(cfg, mode, rng)


def ladder_stream(cfg: GenConfig, mode: str, count: int) -> Iterator[SesLadder]:
    rng = cfg.rng()
    for _ in range(count):
        yield gen_ladder(cfg, mode, rng)


# ---------------------------------------------------------------- nine grids


def gen_nine_grid(cfg: GenConfig, rng: random.Random,
                  direction: str = "bottom_from_top") -> NineGrid:
    """A 3x3 grid with exact columns and the two given rows exact.

    ``bottom_from_top``: rows 1-2 are a monic ladder and row 3 is induced on
    the column cokernels.  ``top_from_bottom``: rows 2-3 are an epic ladder
    and row 1 is induced on the column kernels.
    """
    conj = rng.random() < 0.5
    if direction == "bottom_from_top":
        l = _split_split(cfg, "monic", rng)
        if conj:
            l = conjugate_ladder(l, rng, cfg.retry_bound)
        a2, b2, c2 = (cokernel(m).projection for m in (l.alpha, l.beta, l.gamma))
        f3 = factor_through_cokernel(l.alpha, compose(b2, l.f_prime))
        g3 = factor_through_cokernel(l.beta, compose(c2, l.g_prime))
        return NineGrid(FGAB, l.f, l.g, l.f_prime, l.g_prime, f3, g3,
                        l.alpha, a2, l.beta, b2, l.gamma, c2)
    if direction == "top_from_bottom":
        l = _split_split(cfg, "epic", rng)
        if conj:
            l = conjugate_ladder(l, rng, cfg.retry_bound)
        a1, b1, c1 = (kernel(m).inclusion for m in (l.alpha, l.beta, l.gamma))
        f1 = factor_through_kernel(l.beta, compose(l.f, a1))
        g1 = factor_through_kernel(l.gamma, compose(l.g, b1))
        return NineGrid(FGAB, f1, g1, l.f, l.g, l.f_prime, l.g_prime,
                        a1, l.alpha, b1, l.beta, c1, l.gamma)
    raise InputError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------- vector spaces


def random_space(prime: int, max_dim: int, rng: random.Random) -> FpSpace:
    return FpSpace(prime, rng.randint(0, max_dim))


def random_fp_map(a: FpSpace, b: FpSpace, rng: random.Random) -> FpMap:
    p = a.prime
    return FpMap(a, b, IntMatrix(b.dim, a.dim, tuple(
        tuple(rng.randrange(p) for _ in range(a.dim)) for _ in range(b.dim))))
