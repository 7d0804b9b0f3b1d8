"""Derived constructions and the contract invariant suite, exercised on
both concrete instances and on their opposites."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contract_suite import (check_exactness_forms, check_image, check_morphism, check_pullback,
                            fgab_sampler, opposite_sampler, random_epi, vecfp_sampler)
from diagchase import abcat
from diagchase.abcat import (OppositeCategory, chain, classify_morphism, factor_through_image,
                             image_factorization, is_exact_at, is_short_exact, opposite_instance,
                             pullback, pullback_mediator, pushout, pushout_mediator,
                             quotients_equal, subobjects_equal)
from diagchase.errors import InputError, PreconditionError
from diagchase.fgab import (FGAB, ZERO, direct_sum, identity, make_hom, normalize_object,
                            zero_hom)
from diagchase.genprop import Oracle

G = normalize_object
Z2, Z4 = G([2]), G([4])

SAMPLERS = {
    "fgab": fgab_sampler(),
    "vecfp": vecfp_sampler(),
    "fgab-op": opposite_sampler(fgab_sampler()),
    "vecfp-op": opposite_sampler(vecfp_sampler(prime=2)),
}


# ---------------------------------------------------------------- images


def test_image_of_doubling_on_z4():
    f = make_hom(Z4, Z4, [[2]])
    imf = image_factorization(FGAB, f)
    assert imf.image_object == Z2
    assert imf.image_mono.matrix.tolist() == [[2]]
    assert imf.canonical_epi.matrix.tolist() == [[1]]
    assert Oracle().image_set(f) == {(0,), (2,)}


def test_image_of_monic_and_zero():
    f = make_hom(Z2, Z4, [[2]])
    imf = image_factorization(FGAB, f)
    assert subobjects_equal(FGAB, f, imf.image_mono)
    assert classify_morphism(FGAB, imf.canonical_epi).iso
    assert image_factorization(FGAB, zero_hom(Z4, Z2)).image_object == ZERO


def test_factor_through_image_examples():
    f = make_hom(Z4, Z4, [[2]])
    imf = image_factorization(FGAB, f)
    assert factor_through_image(FGAB, f, imf.canonical_epi, imf.image_mono) == identity(Z2)
    psi = factor_through_image(FGAB, f, make_hom(Z4, Z2, [[1]]), make_hom(Z2, Z4, [[2]]))
    assert psi.matrix.tolist() == [[1]]
    zero = zero_hom(Z4, Z4)
    c = G([3, 0])
    h = make_hom(c, Z4, [[0, 1]])
    with pytest.raises(PreconditionError):
        factor_through_image(FGAB, zero, zero_hom(Z4, c), h)  # h is not monic
    h = identity(Z4)
    assert factor_through_image(FGAB, zero, zero_hom(Z4, Z4), h) == zero_hom(ZERO, Z4)


# ---------------------------------------------------------------- pullbacks and pushouts


def test_pullback_of_reduction_and_identity():
    phi = make_hom(Z4, Z2, [[1]])
    pb = pullback(FGAB, phi, identity(Z2))
    assert pb.pb_object == Z4
    assert abcat.is_epic(FGAB, pb.proj_b)
    # the mediator from (id, phi) is the canonical iso a -> (a, a mod 2)
    h = pullback_mediator(FGAB, pb, identity(Z4), phi)
    assert classify_morphism(FGAB, h).iso
    assert FGAB.compose(pb.proj_a, h) == identity(Z4)


def test_pullback_along_zero_and_identity():
    phi = make_hom(Z4, Z2, [[1]])
    pb = pullback(FGAB, phi, zero_hom(Z2, Z2))
    assert pb.pb_object == G([2, 2])
    b = G([2, 4])
    psi = make_hom(b, Z2, [[1, 1]])
    pb = pullback(FGAB, identity(Z2), psi)
    assert pb.pb_object == b
    iso = classify_morphism(FGAB, pb.proj_b)
    assert iso.iso
    assert FGAB.compose(pb.proj_a, iso.inverse) == psi


def test_pullback_mediator_trivial_cases():
    phi = make_hom(Z4, Z2, [[1]])
    pb = pullback(FGAB, phi, identity(Z2))
    assert pullback_mediator(FGAB, pb, pb.proj_a, pb.proj_b) == identity(pb.pb_object)
    assert pullback_mediator(FGAB, pb, zero_hom(ZERO, Z4), zero_hom(ZERO, Z2)) == \
        zero_hom(ZERO, pb.pb_object)
    with pytest.raises(PreconditionError):
        pullback_mediator(FGAB, pb, identity(Z4), zero_hom(Z4, Z2))


def test_pushout_examples():
    assert pushout(FGAB, identity(Z4), identity(Z4)).po_object == Z4
    a, b = G([3]), G([2, 0])
    assert pushout(FGAB, zero_hom(ZERO, a), zero_hom(ZERO, b)).po_object == \
        direct_sum(a, b).sum_object
    po = pushout(FGAB, make_hom(Z2, Z4, [[2]]), identity(Z2))
    assert po.po_object == Z4
    q = FGAB.compose(po.inj_a, make_hom(Z2, Z4, [[2]]))
    assert q == FGAB.compose(po.inj_b, identity(Z2))
    m = pushout_mediator(FGAB, po, po.inj_a, po.inj_b)
    assert m == identity(po.po_object)


# ---------------------------------------------------------------- subobjects and exactness


def test_subobjects_equal_examples():
    m = make_hom(Z2, Z4, [[2]])
    assert subobjects_equal(FGAB, m, m)
    n = image_factorization(FGAB, make_hom(Z4, Z4, [[2]])).image_mono
    assert subobjects_equal(FGAB, m, n)
    ds = direct_sum(Z2, Z2)
    assert not subobjects_equal(FGAB, ds.inj_a, ds.inj_b)
    with pytest.raises(PreconditionError):
        subobjects_equal(FGAB, make_hom(Z4, Z2, [[1]]), identity(Z2))


def test_quotients_equal_examples():
    p = make_hom(Z4, Z2, [[1]])
    assert quotients_equal(FGAB, p, FGAB.compose(make_hom(Z2, Z2, [[1]]), p))
    ds = direct_sum(Z2, Z2)
    assert not quotients_equal(FGAB, ds.proj_a, ds.proj_b)


def test_exact_at_examples():
    g = make_hom(Z4, Z2, [[1]])
    assert is_exact_at(FGAB, FGAB.kernel(g).inclusion, g)
    assert is_exact_at(FGAB, make_hom(Z2, Z4, [[2]]), g)
    assert not is_exact_at(FGAB, identity(Z2), identity(Z2))


def test_short_exact_examples():
    assert is_short_exact(FGAB, make_hom(Z2, Z4, [[2]]), make_hom(Z4, Z2, [[1]]))
    ds = direct_sum(G([3]), G([0]))
    assert is_short_exact(FGAB, ds.inj_a, ds.proj_b)
    v = is_short_exact(FGAB, zero_hom(Z2, Z4), make_hom(Z4, Z2, [[1]]))
    assert not v and v.diagnostic == "f not monic"
    v = is_short_exact(FGAB, make_hom(Z2, Z4, [[2]]), make_hom(Z4, Z4, [[2]]))
    assert v.diagnostic == "g not epic"
    v = is_short_exact(FGAB, make_hom(Z2, Z2, [[1]]), make_hom(Z2, Z2, [[1]]))
    assert v.diagnostic == "g f != 0"
    # monic, epic, g f = 0, but the kernel of g is larger than the image of f
    f = make_hom(ZERO, G([2, 2]), [[], []])
    g = make_hom(G([2, 2]), Z2, [[1, 0]])
    assert is_short_exact(FGAB, f, g).diagnostic == "(cok f)(ker g) != 0"


def test_composability_is_checked():
    with pytest.raises(InputError):
        is_short_exact(FGAB, identity(Z2), identity(Z4))


# ---------------------------------------------------------------- duality


def test_opposite_swaps_monic_and_epic():
    op = opposite_instance(FGAB)
    for f in (make_hom(Z2, Z4, [[2]]), make_hom(Z4, Z2, [[1]]), identity(Z4)):
        c, d = classify_morphism(FGAB, f), classify_morphism(op, f)
        assert (c.monic, c.epic) == (d.epic, d.monic)


def test_kernel_in_opposite_is_cokernel():
    reduction = make_hom(Z4, Z2, [[1]])
    op = opposite_instance(FGAB)
    assert op.kernel(reduction).kernel_object == ZERO
    assert op.kernel(reduction) == FGAB.cokernel(reduction)


def test_opposite_of_opposite_agrees():
    op2 = OppositeCategory(OppositeCategory(FGAB))
    s = fgab_sampler()
    rng = random.Random(5)
    for _ in range(100):
        f = s.morphism(rng)
        a, b = classify_morphism(FGAB, f), classify_morphism(op2, f)
        assert (a.monic, a.epic, a.iso) == (b.monic, b.epic, b.iso)


def test_chain_composes_right_to_left():
    f = make_hom(Z2, Z4, [[2]])
    g = make_hom(Z4, Z2, [[1]])
    assert chain(FGAB, g, f) == zero_hom(Z2, Z2)
    assert chain(FGAB, f, g, f) == zero_hom(Z2, Z4)


# ---------------------------------------------------------------- invariant suite


@pytest.mark.parametrize("name", sorted(SAMPLERS))
@given(seed=st.integers(0, 2 ** 32))
def test_contract_invariants(name, seed):
    s = SAMPLERS[name]
    rng = random.Random(seed)
    f = s.morphism(rng)
    assert check_morphism(s, f, rng, competitors=4) == []


@pytest.mark.parametrize("name", sorted(SAMPLERS))
@given(seed=st.integers(0, 2 ** 32))
def test_pullback_invariants(name, seed):
    s = SAMPLERS[name]
    rng = random.Random(seed)
    c = s.obj(rng)
    phi = random_epi(s, c, rng) if rng.random() < 0.5 else s.hom(s.obj(rng), c, rng)
    psi = s.hom(s.obj(rng), c, rng)
    assert check_pullback(s, phi, psi, rng, competitors=4) == []


@pytest.mark.parametrize("name", ["fgab", "vecfp"])
@given(seed=st.integers(0, 2 ** 32))
def test_exactness_forms_agree(name, seed):
    s = SAMPLERS[name]
    rng = random.Random(seed)
    cat = s.cat
    g = s.morphism(rng)
    f = cat.kernel(g).inclusion if rng.random() < 0.5 else s.hom(s.obj(rng), cat.domain(g), rng)
    if rng.random() < 0.5:
        g = cat.cokernel(f).projection
    assert check_exactness_forms(cat, f, g) == []


@given(seed=st.integers(0, 2 ** 32))
def test_image_invariants_in_opposite(seed):
    s = SAMPLERS["fgab-op"]
    rng = random.Random(seed)
    assert check_image(s, s.morphism(rng)) == []
