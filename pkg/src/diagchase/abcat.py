"""Abelian-category contract and the constructions derived from it.

A concrete category implements :class:`AbelianCategory`.  Everything else in
this module (classification, images, pullbacks, pushouts, exactness, the
opposite category) is written purely against that interface, so it runs
unchanged on any instance, including an :class:`OppositeCategory` wrapper.

Kernels and cokernels are only determined up to isomorphism.  Each instance
picks one representative; comparisons between subobjects go through
:func:`subobjects_equal` / :func:`quotients_equal`, never through raw
morphism equality.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass
from typing import Any, NamedTuple

from .errors import ConsistencyError, InputError, PreconditionError

Obj = Any
Mor = Any


class KernelData(NamedTuple):
    kernel_object: Obj
    inclusion: Mor


class CokernelData(NamedTuple):
    cokernel_object: Obj
    projection: Mor


@dataclass(frozen=True)
class DirectSumData:
    """Biproduct ``A ⊕ B`` with injections and projections."""
    sum_object: Obj
    inj_a: Mor
    inj_b: Mor
    proj_a: Mor
    proj_b: Mor


class AbelianCategory(abc.ABC):
    """What a concrete abelian category must provide.

    Morphism handles are opaque to the derived layer; it only touches them
    through these methods.  ``compose(g, f)`` is ``g ∘ f``.

    Besides the kernel/cokernel factorizations, instances provide
    ``lift_through_mono`` and ``colift_through_epi``: solving ``m ∘ v = x`` for
    an arbitrary mono ``m`` (resp. ``v ∘ e = x`` for an epi ``e``).  The
    universal properties alone only let one factor through the instance's own
    canonical kernel, which is not enough to invert a mono that arrives from
    outside.
    """

    name: str = "category"

    # objects and morphism plumbing
    @abc.abstractmethod
    def check_object(self, a: Obj) -> None: ...

    @abc.abstractmethod
    def check_morphism(self, f: Mor) -> None: ...

    @abc.abstractmethod
    def domain(self, f: Mor) -> Obj: ...

    @abc.abstractmethod
    def codomain(self, f: Mor) -> Obj: ...

    @abc.abstractmethod
    def object_equal(self, a: Obj, b: Obj) -> bool: ...

    @abc.abstractmethod
    def zero_object(self) -> Obj: ...

    def is_zero_object(self, a: Obj) -> bool:
        return self.object_equal(a, self.zero_object())

    # additive structure
    @abc.abstractmethod
    def identity(self, a: Obj) -> Mor: ...

    @abc.abstractmethod
    def compose(self, g: Mor, f: Mor) -> Mor: ...

    @abc.abstractmethod
    def add(self, f: Mor, g: Mor) -> Mor: ...

    @abc.abstractmethod
    def negate(self, f: Mor) -> Mor: ...

    def subtract(self, f: Mor, g: Mor) -> Mor:
        return self.add(f, self.negate(g))

    @abc.abstractmethod
    def zero_morphism(self, a: Obj, b: Obj) -> Mor: ...

    @abc.abstractmethod
    def morphism_equal(self, f: Mor, g: Mor) -> bool: ...

    def is_zero_morphism(self, f: Mor) -> bool:
        return self.morphism_equal(
            f, self.zero_morphism(self.domain(f), self.codomain(f)))

    @abc.abstractmethod
    def direct_sum(self, a: Obj, b: Obj) -> DirectSumData: ...

    # universal constructions
    @abc.abstractmethod
    def kernel(self, f: Mor) -> KernelData: ...

    @abc.abstractmethod
    def cokernel(self, f: Mor) -> CokernelData: ...

    @abc.abstractmethod
    def factor_through_kernel(self, f: Mor, g: Mor) -> Mor:
        """The unique ``h`` with ``ker(f) ∘ h == g``; requires ``f ∘ g == 0``."""

    @abc.abstractmethod
    def factor_through_cokernel(self, f: Mor, g: Mor) -> Mor:
        """The unique ``h`` with ``h ∘ cok(f) == g``; requires ``g ∘ f == 0``."""

    @abc.abstractmethod
    def lift_through_mono(self, m: Mor, x: Mor) -> Mor:
        """A ``v`` with ``m ∘ v == x``; PreconditionError if none exists."""

    @abc.abstractmethod
    def colift_through_epi(self, e: Mor, x: Mor) -> Mor:
        """A ``v`` with ``v ∘ e == x``; PreconditionError if none exists."""

    def describe_object(self, a: Obj) -> Any:
        return a

    def describe_morphism(self, f: Mor) -> Any:
        return f


class OppositeCategory(AbelianCategory):
    """``C^op``: same objects and handles, every arrow read backwards."""

    def __init__(self, base: AbelianCategory):
        self.base = base
        self.name = f"{base.name}^op"

    def check_object(self, a):
        self.base.check_object(a)

    def check_morphism(self, f):
        self.base.check_morphism(f)

    def domain(self, f):
        return self.base.codomain(f)

    def codomain(self, f):
        return self.base.domain(f)

    def object_equal(self, a, b):
        return self.base.object_equal(a, b)

    def zero_object(self):
        return self.base.zero_object()

    def is_zero_object(self, a):
        return self.base.is_zero_object(a)

    def identity(self, a):
        return self.base.identity(a)

    def compose(self, g, f):
        return self.base.compose(f, g)

    def add(self, f, g):
        return self.base.add(f, g)

    def negate(self, f):
        return self.base.negate(f)

    def zero_morphism(self, a, b):
        return self.base.zero_morphism(b, a)

    def morphism_equal(self, f, g):
        return self.base.morphism_equal(f, g)

    def direct_sum(self, a, b):
        ds = self.base.direct_sum(a, b)
        return DirectSumData(ds.sum_object, inj_a=ds.proj_a, inj_b=ds.proj_b,
                             proj_a=ds.inj_a, proj_b=ds.inj_b)

    def kernel(self, f):
        c = self.base.cokernel(f)
        return KernelData(c.cokernel_object, c.projection)

    def cokernel(self, f):
        k = self.base.kernel(f)
        return CokernelData(k.kernel_object, k.inclusion)

    def factor_through_kernel(self, f, g):
        return self.base.factor_through_cokernel(f, g)

    def factor_through_cokernel(self, f, g):
        return self.base.factor_through_kernel(f, g)

    def lift_through_mono(self, m, x):
        return self.base.colift_through_epi(m, x)

    def colift_through_epi(self, e, x):
        return self.base.lift_through_mono(e, x)

    def describe_object(self, a):
        return self.base.describe_object(a)

    def describe_morphism(self, f):
        return self.base.describe_morphism(f)


def opposite_instance(cat: AbelianCategory) -> AbelianCategory:
    return OppositeCategory(cat)


def chain(cat: AbelianCategory, *morphisms: Mor) -> Mor:
    """``chain(cat, h, g, f) == h ∘ g ∘ f``."""
    if not morphisms:
        raise InputError("chain needs at least one morphism")
    out = morphisms[-1]
    for m in reversed(morphisms[:-1]):
        out = compose_checked(cat, m, out)
    return out


def compose_checked(cat: AbelianCategory, g: Mor, f: Mor) -> Mor:
    _require_composable(cat, f, g)
    return cat.compose(g, f)


def _require_composable(cat, f, g, what="composition"):
    cat.check_morphism(f)
    cat.check_morphism(g)
    if not cat.object_equal(cat.codomain(f), cat.domain(g)):
        raise InputError(f"{what}: codomain of first map does not match domain of second")


# ---------------------------------------------------------------- classification


@dataclass(frozen=True)
class MorphismClassification:
    monic: bool
    epic: bool
    iso: bool
    inverse: Mor | None = None


def is_monic(cat: AbelianCategory, f: Mor) -> bool:
    return cat.is_zero_object(cat.kernel(f).kernel_object)


def is_epic(cat: AbelianCategory, f: Mor) -> bool:
    return cat.is_zero_object(cat.cokernel(f).cokernel_object)


def classify_morphism(cat: AbelianCategory, f: Mor) -> MorphismClassification:
    """Monic iff the kernel object is zero, epic iff the cokernel object is.

    For an isomorphism the inverse is assembled from contract operations
    only: ``h`` splits the (invertible) image inclusion ``κ`` and ``v``
    compares ``κ`` with ``f`` itself, giving ``f⁻¹ = v ∘ h``.
    """
    cat.check_morphism(f)
    monic = is_monic(cat, f)
    epic = is_epic(cat, f)
    if not (monic and epic):
        return MorphismClassification(monic, epic, False)
    a, b = cat.domain(f), cat.codomain(f)
    imf = image_factorization(cat, f)
    h = cat.factor_through_kernel(imf.cokernel_map, cat.identity(b))
    v = _factor_through_image(cat, imf, cat.identity(a), f)
    inverse = cat.compose(v, h)
    if not (cat.morphism_equal(cat.compose(f, inverse), cat.identity(b))
            and cat.morphism_equal(cat.compose(inverse, f), cat.identity(a))):
        raise ConsistencyError("constructed inverse is not two-sided")
    return MorphismClassification(True, True, True, inverse)


# ---------------------------------------------------------------- images


@dataclass(frozen=True)
class ImageFactorization:
    """``f = img_f ∘ canonical_epi`` with ``img_f = ker(cok f)``.

    The coimage side is ``coimage_epi = cok(ker f)`` together with the
    induced ``coimage_factor: Coim f -> B``.
    """
    image_object: Obj
    image_mono: Mor
    canonical_epi: Mor
    coimage_object: Obj
    coimage_epi: Mor
    coimage_factor: Mor
    cokernel_map: Mor
    kernel_map: Mor


def image_factorization(cat: AbelianCategory, f: Mor) -> ImageFactorization:
    cat.check_morphism(f)
    cok = cat.cokernel(f).projection
    image_object, image_mono = cat.kernel(cok)
    phi = cat.factor_through_kernel(cok, f)
    ker = cat.kernel(f).inclusion
    coimage_object, coimage_epi = cat.cokernel(ker)
    coimage_factor = cat.factor_through_cokernel(ker, f)
    return ImageFactorization(image_object, image_mono, phi, coimage_object,
                              coimage_epi, coimage_factor, cok, ker)


def _factor_through_image(cat, imf: ImageFactorization, g: Mor, h: Mor) -> Mor:
    psi = cat.lift_through_mono(h, imf.image_mono)
    if not cat.morphism_equal(cat.compose(psi, imf.canonical_epi), g):
        raise ConsistencyError("image factorization is not compatible with g")
    return psi


def factor_through_image(cat: AbelianCategory, f: Mor, g: Mor, h: Mor) -> Mor:
    """Given monic ``h: C -> B`` and ``g: A -> C`` with ``h ∘ g == f``,
    return the unique ``ψ: I_f -> C`` with ``h ∘ ψ == img f`` and
    ``ψ ∘ φ == g``."""
    _require_composable(cat, g, h)
    if not (cat.object_equal(cat.domain(g), cat.domain(f))
            and cat.object_equal(cat.codomain(h), cat.codomain(f))):
        raise InputError("factor_through_image: endpoints do not match f")
    if not is_monic(cat, h):
        raise PreconditionError("factor_through_image: h is not monic")
    if not cat.morphism_equal(cat.compose(h, g), f):
        raise PreconditionError("factor_through_image: h ∘ g != f")
    return _factor_through_image(cat, image_factorization(cat, f), g, h)


# ---------------------------------------------------------------- (co)products


def product_mediator(cat: AbelianCategory, ds: DirectSumData, phi: Mor, psi: Mor) -> Mor:
    """``⟨φ, ψ⟩: D -> A ⊕ B`` with ``ρ_A ∘ h = φ`` and ``ρ_B ∘ h = ψ``."""
    if not cat.object_equal(cat.domain(phi), cat.domain(psi)):
        raise InputError("product mediator needs a common domain")
    return cat.add(cat.compose(ds.inj_a, phi), cat.compose(ds.inj_b, psi))


def coproduct_mediator(cat: AbelianCategory, ds: DirectSumData, phi: Mor, psi: Mor) -> Mor:
    """``[φ, ψ]: A ⊕ B -> D`` with ``h ∘ ι_A = φ`` and ``h ∘ ι_B = ψ``."""
    if not cat.object_equal(cat.codomain(phi), cat.codomain(psi)):
        raise InputError("coproduct mediator needs a common codomain")
    return cat.add(cat.compose(phi, ds.proj_a), cat.compose(psi, ds.proj_b))


# ---------------------------------------------------------------- pullback / pushout


@dataclass(frozen=True)
class PullbackData:
    pb_object: Obj
    proj_a: Mor
    proj_b: Mor
    witness_omega: Mor
    omega_kernel: Mor
    sum_data: DirectSumData
    phi: Mor
    psi: Mor


def pullback(cat: AbelianCategory, phi: Mor, psi: Mor) -> PullbackData:
    """Pullback of ``φ: A -> C`` and ``ψ: B -> C`` as ``ker(φρ_A − ψρ_B)``."""
    cat.check_morphism(phi)
    cat.check_morphism(psi)
    if not cat.object_equal(cat.codomain(phi), cat.codomain(psi)):
        raise InputError("pullback: φ and ψ must share a codomain")
    ds = cat.direct_sum(cat.domain(phi), cat.domain(psi))
    omega = cat.subtract(cat.compose(phi, ds.proj_a), cat.compose(psi, ds.proj_b))
    p, k = cat.kernel(omega)
    return PullbackData(p, cat.compose(ds.proj_a, k), cat.compose(ds.proj_b, k),
                        omega, k, ds, phi, psi)


def pullback_mediator(cat: AbelianCategory, pb: PullbackData, f: Mor, g: Mor) -> Mor:
    if not (cat.object_equal(cat.codomain(f), cat.domain(pb.phi))
            and cat.object_equal(cat.codomain(g), cat.domain(pb.psi))
            and cat.object_equal(cat.domain(f), cat.domain(g))):
        raise InputError("pullback_mediator: endpoints do not form a square")
    if not cat.morphism_equal(cat.compose(pb.phi, f), cat.compose(pb.psi, g)):
        raise PreconditionError("pullback_mediator: square does not commute")
    return cat.factor_through_kernel(pb.witness_omega,
                                     product_mediator(cat, pb.sum_data, f, g))


@dataclass(frozen=True)
class PushoutData:
    po_object: Obj
    inj_a: Mor
    inj_b: Mor
    witness: Mor
    witness_cokernel: Mor
    sum_data: DirectSumData
    phi: Mor
    psi: Mor


def pushout(cat: AbelianCategory, phi: Mor, psi: Mor) -> PushoutData:
    """Pushout of ``φ': C -> A`` and ``ψ': C -> B`` as ``cok(ι_Aφ' − ι_Bψ')``."""
    cat.check_morphism(phi)
    cat.check_morphism(psi)
    if not cat.object_equal(cat.domain(phi), cat.domain(psi)):
        raise InputError("pushout: φ' and ψ' must share a domain")
    ds = cat.direct_sum(cat.codomain(phi), cat.codomain(psi))
    theta = cat.subtract(cat.compose(ds.inj_a, phi), cat.compose(ds.inj_b, psi))
    q, c = cat.cokernel(theta)
    return PushoutData(q, cat.compose(c, ds.inj_a), cat.compose(c, ds.inj_b),
                       theta, c, ds, phi, psi)


def pushout_mediator(cat: AbelianCategory, po: PushoutData, f: Mor, g: Mor) -> Mor:
    if not (cat.object_equal(cat.domain(f), cat.codomain(po.phi))
            and cat.object_equal(cat.domain(g), cat.codomain(po.psi))
            and cat.object_equal(cat.codomain(f), cat.codomain(g))):
        raise InputError("pushout_mediator: endpoints do not form a square")
    if not cat.morphism_equal(cat.compose(f, po.phi), cat.compose(g, po.psi)):
        raise PreconditionError("pushout_mediator: square does not commute")
    return cat.factor_through_cokernel(po.witness,
                                       coproduct_mediator(cat, po.sum_data, f, g))


# ---------------------------------------------------------------- subobjects


def subobjects_equal(cat: AbelianCategory, m: Mor, n: Mor) -> bool:
    """Whether two monos into the same object define the same subobject."""
    if not cat.object_equal(cat.codomain(m), cat.codomain(n)):
        raise InputError("subobjects_equal: monos must share a codomain")
    if not (is_monic(cat, m) and is_monic(cat, n)):
        raise PreconditionError("subobjects_equal: both morphisms must be monic")
    return (cat.is_zero_morphism(cat.compose(cat.cokernel(n).projection, m))
            and cat.is_zero_morphism(cat.compose(cat.cokernel(m).projection, n)))


def quotients_equal(cat: AbelianCategory, p: Mor, q: Mor) -> bool:
    """Dual of :func:`subobjects_equal` for epis out of the same object."""
    return subobjects_equal(opposite_instance(cat), p, q)


# ---------------------------------------------------------------- exactness


def is_exact_at(cat: AbelianCategory, f: Mor, g: Mor) -> bool:
    """``img f == ker g`` (with ``g ∘ f == 0``) at the middle object."""
    _require_composable(cat, f, g, "is_exact_at")
    gf_zero = cat.is_zero_morphism(cat.compose(g, f))
    kg = cat.kernel(g).inclusion
    img = image_factorization(cat, f)
    by_image = gf_zero and subobjects_equal(cat, img.image_mono, kg)
    by_definition = gf_zero and cat.is_zero_morphism(cat.compose(img.cokernel_map, kg))
    if by_image != by_definition:
        raise ConsistencyError("exactness forms disagree")
    return by_image


@dataclass(frozen=True)
class ShortExactVerdict:
    exact: bool
    diagnostic: str | None = None

    def __bool__(self):
        return self.exact


def short_exactness_forms(cat: AbelianCategory, f: Mor, g: Mor) -> dict[str, bool]:
    """Three equivalent readings of short exactness, computed independently.

    ``definition``: f monic, g epic, g∘f = 0, (cok f)∘(ker g) = 0.
    ``kernel_cokernel``: f is a kernel of g and g is a cokernel of f.
    ``image_kernel``: f monic, g epic, img f = ker g.
    """
    _require_composable(cat, f, g, "short_exactness_forms")
    monic = is_monic(cat, f)
    epic = is_epic(cat, g)
    kg = cat.kernel(g).inclusion
    cf = cat.cokernel(f).projection
    definition = (monic and epic and cat.is_zero_morphism(cat.compose(g, f))
                  and cat.is_zero_morphism(cat.compose(cf, kg)))
    kernel_cokernel = (monic and epic and subobjects_equal(cat, f, kg)
                       and quotients_equal(cat, g, cf))
    image_kernel = (monic and epic and subobjects_equal(
        cat, image_factorization(cat, f).image_mono, kg))
    return {"definition": definition, "kernel_cokernel": kernel_cokernel,
            "image_kernel": image_kernel}


def is_short_exact(cat: AbelianCategory, f: Mor, g: Mor) -> ShortExactVerdict:
    """``0 -> A -f-> B -g-> C -> 0`` exactness; the diagnostic names the
    first clause that fails."""
    _require_composable(cat, f, g, "is_short_exact")
    monic = is_monic(cat, f)
    epic = is_epic(cat, g)
    kg = cat.kernel(g).inclusion
    cf = cat.cokernel(f).projection
    verdict = ShortExactVerdict(True)
    if not monic:
        verdict = ShortExactVerdict(False, "f not monic")
    elif not epic:
        verdict = ShortExactVerdict(False, "g not epic")
    elif not cat.is_zero_morphism(cat.compose(g, f)):
        verdict = ShortExactVerdict(False, "g f != 0")
    elif not cat.is_zero_morphism(cat.compose(cf, kg)):
        verdict = ShortExactVerdict(False, "(cok f)(ker g) != 0")
    # f = ker g and g = cok f, up to isomorphism
    as_pair = (monic and epic and subobjects_equal(cat, f, kg)
               and quotients_equal(cat, g, cf))
    if as_pair != verdict.exact:
        raise ConsistencyError("short exactness disagrees with the kernel/cokernel form")
    return verdict
