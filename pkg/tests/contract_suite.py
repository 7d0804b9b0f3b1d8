"""Category-agnostic invariant checks, shared by unit and acceptance tests.

Each ``check_*`` function returns a list of failure descriptions (empty when
everything holds) so callers can count failures over large samples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable

from diagchase import abcat
from diagchase.fgab import FGAB
from diagchase.genprop import GenConfig, random_hom, random_object
from diagchase.genprop.generators import random_fp_map, random_space
from diagchase.vecfp import VecFp


@dataclass
class Sampler:
    """Random objects and morphisms for one category instance."""
    cat: Any
    obj: Callable[[random.Random], Any]
    hom: Callable[[Any, Any, random.Random], Any]

    def morphism(self, rng):
        return self.hom(self.obj(rng), self.obj(rng), rng)


def fgab_sampler(pool=(2, 3, 4, 8, 9, 0), max_rank=3, max_order=64) -> Sampler:
    cfg = GenConfig(factor_pool=tuple(pool), max_rank=max_rank, max_order=max_order)
    return Sampler(FGAB, lambda rng: random_object(cfg, rng), random_hom)


def vecfp_sampler(prime=3, max_dim=4) -> Sampler:
    return Sampler(VecFp(prime), lambda rng: random_space(prime, max_dim, rng), random_fp_map)


def opposite_sampler(s: Sampler) -> Sampler:
    # a morphism a -> b of the opposite category is a base morphism b -> a
    return Sampler(abcat.opposite_instance(s.cat), s.obj, lambda a, b, rng: s.hom(b, a, rng))


def _eq(cat, f, g):
    return cat.morphism_equal(f, g)


def check_kernel_cokernel(s: Sampler, f, rng, competitors: int = 10) -> list[str]:
    cat, bad = s.cat, []
    a, b = cat.domain(f), cat.codomain(f)
    k, kappa = cat.kernel(f)
    q, pi = cat.cokernel(f)
    if not abcat.is_monic(cat, kappa):
        bad.append("kernel inclusion not monic")
    if not abcat.is_epic(cat, pi):
        bad.append("cokernel projection not epic")
    if not cat.is_zero_morphism(cat.compose(f, kappa)):
        bad.append("f ker f != 0")
    if not cat.is_zero_morphism(cat.compose(pi, f)):
        bad.append("cok f f != 0")
    for _ in range(competitors):
        x = s.obj(rng)
        g = cat.compose(kappa, s.hom(x, k, rng))
        h = cat.factor_through_kernel(f, g)
        if not _eq(cat, cat.compose(kappa, h), g):
            bad.append("factor_through_kernel does not factor")
        g2 = cat.compose(s.hom(q, x, rng), pi)
        h2 = cat.factor_through_cokernel(f, g2)
        if not _eq(cat, cat.compose(h2, pi), g2):
            bad.append("factor_through_cokernel does not factor")
    return bad


def check_mono_epi(s: Sampler, f, rng, competitors: int = 10) -> list[str]:
    """Monic/epic classification against cancellation, plus the normality
    and inverse properties."""
    cat, bad = s.cat, []
    a, b = cat.domain(f), cat.codomain(f)
    kobj, kappa = cat.kernel(f)
    cobj, pi = cat.cokernel(f)
    monic, epic = abcat.is_monic(cat, f), abcat.is_epic(cat, f)
    if monic != cat.is_zero_object(kobj) or epic != cat.is_zero_object(cobj):
        bad.append("monic/epic disagrees with zero kernel/cokernel")
    # cancellation: a non-monic map has the nonzero kernel as a witness, a
    # monic map must cancel on random pairs
    if not monic and cat.is_zero_morphism(kappa):
        bad.append("non-monic map with zero kernel inclusion")
    if not epic and cat.is_zero_morphism(pi):
        bad.append("non-epic map with zero cokernel projection")
    for _ in range(competitors):
        x = s.obj(rng)
        u, v = s.hom(x, a, rng), s.hom(x, a, rng)
        if monic and _eq(cat, cat.compose(f, u), cat.compose(f, v)) and not _eq(cat, u, v):
            bad.append("monic map fails left cancellation")
        u, v = s.hom(b, x, rng), s.hom(b, x, rng)
        if epic and _eq(cat, cat.compose(u, f), cat.compose(v, f)) and not _eq(cat, u, v):
            bad.append("epic map fails right cancellation")
    if monic and not abcat.subobjects_equal(cat, f, cat.kernel(pi).inclusion):
        bad.append("monic f is not ker(cok f)")
    if epic and not abcat.quotients_equal(cat, f, cat.cokernel(kappa).projection):
        bad.append("epic f is not cok(ker f)")
    c = abcat.classify_morphism(cat, f)
    if c.iso != (monic and epic):
        bad.append("iso flag inconsistent")
    if c.iso:
        inv = c.inverse
        if not (_eq(cat, cat.compose(f, inv), cat.identity(b))
                and _eq(cat, cat.compose(inv, f), cat.identity(a))):
            bad.append("inverse not two-sided")
    return bad


def check_image(s: Sampler, f) -> list[str]:
    cat, bad = s.cat, []
    imf = abcat.image_factorization(cat, f)
    if not abcat.is_epic(cat, imf.canonical_epi):
        bad.append("canonical epi onto the image is not epic")
    if not abcat.is_monic(cat, imf.image_mono):
        bad.append("image inclusion not monic")
    if not _eq(cat, cat.compose(imf.image_mono, imf.canonical_epi), f):
        bad.append("img f phi != f")
    if not _eq(cat, cat.compose(imf.coimage_factor, imf.coimage_epi), f):
        bad.append("coimage factorization does not recompose f")
    return bad


def check_direct_sum(s: Sampler, a, b, rng, competitors: int = 10) -> list[str]:
    cat, bad = s.cat, []
    ds = cat.direct_sum(a, b)
    ida, idb, ids = cat.identity(a), cat.identity(b), cat.identity(ds.sum_object)
    if not (_eq(cat, cat.compose(ds.proj_a, ds.inj_a), ida)
            and _eq(cat, cat.compose(ds.proj_b, ds.inj_b), idb)
            and cat.is_zero_morphism(cat.compose(ds.proj_a, ds.inj_b))
            and cat.is_zero_morphism(cat.compose(ds.proj_b, ds.inj_a))):
        bad.append("direct sum projection/injection identities fail")
    # this identity is what makes every mediator unique
    if not _eq(cat, cat.add(cat.compose(ds.inj_a, ds.proj_a),
                            cat.compose(ds.inj_b, ds.proj_b)), ids):
        bad.append("iota_A rho_A + iota_B rho_B != id")
    for _ in range(competitors):
        c = s.obj(rng)
        phi, psi = s.hom(c, a, rng), s.hom(c, b, rng)
        h = abcat.product_mediator(cat, ds, phi, psi)
        if not (_eq(cat, cat.compose(ds.proj_a, h), phi)
                and _eq(cat, cat.compose(ds.proj_b, h), psi)):
            bad.append("product mediator does not commute")
        delta = s.hom(c, ds.sum_object, rng)
        h2 = cat.add(h, delta)
        if (_eq(cat, cat.compose(ds.proj_a, h2), phi) and _eq(cat, cat.compose(ds.proj_b, h2), psi)
                and not _eq(cat, h2, h)):
            bad.append("product mediator not unique")
        phi, psi = s.hom(a, c, rng), s.hom(b, c, rng)
        h = abcat.coproduct_mediator(cat, ds, phi, psi)
        if not (_eq(cat, cat.compose(h, ds.inj_a), phi)
                and _eq(cat, cat.compose(h, ds.inj_b), psi)):
            bad.append("coproduct mediator does not commute")
        delta = s.hom(ds.sum_object, c, rng)
        h2 = cat.add(h, delta)
        if (_eq(cat, cat.compose(h2, ds.inj_a), phi) and _eq(cat, cat.compose(h2, ds.inj_b), psi)
                and not _eq(cat, h2, h)):
            bad.append("coproduct mediator not unique")
    return bad


def check_morphism(s: Sampler, f, rng, competitors: int = 10) -> list[str]:
    cat = s.cat
    return (check_kernel_cokernel(s, f, rng, competitors)
            + check_mono_epi(s, f, rng, competitors)
            + check_image(s, f)
            + check_direct_sum(s, cat.domain(f), cat.codomain(f), rng, competitors))


def random_epi(s: Sampler, c, rng):
    """An epimorphism onto ``c`` (a cokernel projection composed with an iso)."""
    cat = s.cat
    x = s.obj(rng)
    ds = cat.direct_sum(c, x)
    return cat.add(ds.proj_a, cat.compose(s.hom(x, c, rng), ds.proj_b))


def check_pullback(s: Sampler, phi, psi, rng, competitors: int = 10) -> list[str]:
    cat, bad = s.cat, []
    pb = abcat.pullback(cat, phi, psi)
    if not _eq(cat, cat.compose(phi, pb.proj_a), cat.compose(psi, pb.proj_b)):
        bad.append("pullback square does not commute")
    pair = abcat.product_mediator(cat, pb.sum_data, pb.proj_a, pb.proj_b)
    if not abcat.is_monic(cat, pair):
        bad.append("pullback projections are not jointly monic (mediators not unique)")
    a, b = cat.domain(phi), cat.domain(psi)
    for i in range(competitors):
        x = s.obj(rng)
        if i % 2 == 0:
            r = s.hom(x, pb.pb_object, rng)
            f, g = cat.compose(pb.proj_a, r), cat.compose(pb.proj_b, r)
        else:
            f, g = s.hom(x, a, rng), s.hom(x, b, rng)
            if not _eq(cat, cat.compose(phi, f), cat.compose(psi, g)):
                # make the square commute by killing the A leg's discrepancy
                f, g = cat.zero_morphism(x, a), cat.compose(cat.kernel(psi).inclusion,
                                                           s.hom(x, cat.kernel(psi).kernel_object, rng))
        m = abcat.pullback_mediator(cat, pb, f, g)
        if not (_eq(cat, cat.compose(pb.proj_a, m), f) and _eq(cat, cat.compose(pb.proj_b, m), g)):
            bad.append("pullback mediator does not commute")
        competitor = cat.add(m, s.hom(x, pb.pb_object, rng))
        if (_eq(cat, cat.compose(pb.proj_a, competitor), f)
                and _eq(cat, cat.compose(pb.proj_b, competitor), g)
                and not _eq(cat, competitor, m)):
            bad.append("pullback mediator not unique")
    if abcat.is_epic(cat, phi) and not abcat.is_epic(cat, pb.proj_b):
        bad.append("phi epic but pi_B not epic")
    return bad


def check_exactness_forms(cat, f, g) -> list[str]:
    forms = abcat.short_exactness_forms(cat, f, g)
    bad = []
    if len(set(forms.values())) != 1:
        bad.append(f"exactness forms disagree: {forms}")
    if abcat.is_short_exact(cat, f, g).exact != forms["definition"]:
        bad.append("is_short_exact disagrees with the definition form")
    mid_exact = abcat.is_exact_at(cat, f, g)
    if forms["definition"] and not mid_exact:
        bad.append("short exact but not exact in the middle")
    return bad


def check_against_oracle(oracle, f) -> list[str]:
    """Categorical kernel, cokernel and image of an fgab map against element
    enumeration: invariant factors and element-level maps."""
    cat, bad = FGAB, []
    b = f.dst
    ker_set, img_set = oracle.kernel_set(f), oracle.image_set(f)

    k, kappa = cat.kernel(f)
    if not oracle.is_injective(kappa) or oracle.image_set(kappa) != ker_set:
        bad.append("kernel inclusion does not enumerate the kernel")
    if k.invariant_factors != oracle.subgroup_factors(f.src, ker_set):
        bad.append("kernel invariant factors differ")

    q, pi = cat.cokernel(f)
    if not oracle.is_surjective(pi) or oracle.kernel_set(pi) != img_set:
        bad.append("cokernel projection does not kill exactly the image")
    if q.invariant_factors != oracle.quotient_factors(b, img_set):
        bad.append("cokernel invariant factors differ")

    imf = abcat.image_factorization(cat, f)
    if imf.image_object.invariant_factors != oracle.subgroup_factors(b, img_set):
        bad.append("image invariant factors differ")
    if not oracle.is_injective(imf.image_mono) or oracle.image_set(imf.image_mono) != img_set:
        bad.append("image inclusion does not enumerate the image")
    if not oracle.is_surjective(imf.canonical_epi):
        bad.append("canonical epi not surjective")
    if not oracle.maps_equal([imf.image_mono, imf.canonical_epi], [f]):
        bad.append("img f phi differs from f pointwise")

    if abcat.is_monic(cat, f) != oracle.is_injective(f):
        bad.append("monic verdict differs from injectivity")
    if abcat.is_epic(cat, f) != oracle.is_surjective(f):
        bad.append("epic verdict differs from surjectivity")
    return bad
