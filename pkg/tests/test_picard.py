"""Blow-up lattices: intersection numbers, class enumeration, reflections,
invariant ranks, orbit partitions, and the rank-one orbit constraints."""

import pytest
from hypothesis import given, settings, strategies as st

from cremona.picard import (
    DivisorClass,
    LatticeIsometry,
    PicLattice,
    coxeter_corpus,
    coxeter_element,
    exceptional_classes,
    inner,
    invariant_rank,
    isometry_compose,
    isometry_inverse,
    isometry_order,
    isometry_power,
    orbits,
    rank_one_orbit_check,
    simple_reflections,
    weyl_reflection,
    weyl_word,
)

# counts of classes with square -1 and canonical degree -1, ranks 1 through 8
CLASS_COUNTS = (1, 3, 6, 10, 16, 27, 56, 240)


def E(i, r):
    coords = [0] * (r + 1)
    coords[i] = 1
    return DivisorClass(tuple(coords))


# ---------------------------------------------------------------- lattices

def test_lattice_validation():
    with pytest.raises(ValueError):
        PicLattice(0)
    with pytest.raises(ValueError):
        PicLattice(9)
    lat = PicLattice(6)
    assert lat.dim == 7
    assert lat.degree == 3
    assert lat.canonical == DivisorClass((-3, 1, 1, 1, 1, 1, 1))


def test_inner_products():
    lat6 = PicLattice(6)
    assert inner(lat6.canonical, lat6.canonical, lat6) == 3
    lat4 = PicLattice(4)
    assert inner(lat4.canonical, lat4.canonical, lat4) == 5
    e1 = E(1, 4)
    assert inner(e1, e1, lat4) == -1
    assert inner(lat4.canonical, e1, lat4) == -1


def test_inner_rank_mismatch():
    with pytest.raises(ValueError, match='rank mismatch'):
        inner(E(1, 4), E(1, 4), PicLattice(2))


def test_divisor_arithmetic():
    a = DivisorClass((1, -1, 0))
    b = DivisorClass((0, 1, 1))
    assert a + b == DivisorClass((1, 0, 1))
    assert a - b == DivisorClass((1, -2, -1))
    assert 3 * a == DivisorClass((3, -3, 0))
    assert -a == DivisorClass((-1, 1, 0))
    assert repr(a) == '(1; -1, 0)'
    with pytest.raises(ValueError):
        a + DivisorClass((1, 0, 0, 0))


# ------------------------------------------------------------ enumeration

@pytest.mark.parametrize('r, count', list(zip(range(1, 9), CLASS_COUNTS)))
def test_exceptional_class_counts(r, count):
    assert len(exceptional_classes(PicLattice(r))) == count


def test_exceptional_classes_at_small_rank():
    assert exceptional_classes(PicLattice(1)) == [DivisorClass((0, 1))]
    got = exceptional_classes(PicLattice(2))
    assert got == [DivisorClass((0, 0, 1)), DivisorClass((0, 1, 0)),
                   DivisorClass((1, -1, -1))]


@pytest.mark.parametrize('r', range(1, 9))
def test_adjunction_on_every_class(r):
    lat = PicLattice(r)
    K = lat.canonical
    for d in exceptional_classes(lat):
        assert inner(d, K + d, lat) == -2


# ------------------------------------------------------------ reflections

def test_reflection_swaps_exceptional_pair():
    lat = PicLattice(4)
    s = weyl_reflection(DivisorClass((0, 1, -1, 0, 0)), lat)
    assert s.apply(E(1, 4)) == E(2, 4)
    assert s.apply(E(2, 4)) == E(1, 4)
    assert s.apply(E(3, 4)) == E(3, 4)


def test_reflection_is_an_involution():
    lat = PicLattice(4)
    s = weyl_reflection(DivisorClass((1, -1, -1, -1, 0)), lat)
    assert isometry_compose(s, s) == LatticeIsometry.identity(lat)


def test_reflection_rejects_non_roots():
    lat = PicLattice(4)
    with pytest.raises(ValueError, match='not a root'):
        weyl_reflection(E(1, 4), lat)
    # square -2 but nonzero canonical degree
    with pytest.raises(ValueError, match='not a root'):
        weyl_reflection(DivisorClass((1, 1, 1, 1, 0)), lat)


def test_simple_reflection_inventory():
    assert simple_reflections(PicLattice(1)) == []
    assert len(simple_reflections(PicLattice(2))) == 1
    assert len(simple_reflections(PicLattice(3))) == 3
    assert len(simple_reflections(PicLattice(8))) == 8


def test_coxeter_composite_has_finite_order():
    # s1 s2 s3 s0 at rank four closes up after five steps
    lat = PicLattice(4)
    w = weyl_word('s1 s2 s3 s0', lat)
    assert isometry_order(w) == 5
    assert isometry_order(coxeter_element(lat)) == 5


def test_weyl_word_rejects_unknown_tokens():
    with pytest.raises(ValueError, match='unknown reflection'):
        weyl_word('s7', PicLattice(4))
    with pytest.raises(ValueError, match='unknown reflection'):
        weyl_word('s0', PicLattice(2))


# -------------------------------------------------------------- isometries

def test_isometry_constructor_validates():
    lat = PicLattice(2)
    with pytest.raises(ValueError, match='does not preserve'):
        LatticeIsometry(((1, 0, 0), (0, 1, 1), (0, 0, 1)), lat)
    # permuting e0 with e1 breaks the signature
    with pytest.raises(ValueError):
        LatticeIsometry(((0, 1, 0), (1, 0, 0), (0, 0, 1)), lat)
    with pytest.raises(ValueError, match='fix the canonical'):
        LatticeIsometry(((1, 0, 0), (0, -1, 0), (0, 0, -1)), lat)


def test_inverse_and_negative_powers():
    lat = PicLattice(6)
    c = coxeter_element(lat)
    one = LatticeIsometry.identity(lat)
    assert isometry_compose(c, isometry_inverse(c)) == one
    assert isometry_power(c, 12) == one
    assert isometry_power(c, -5) == isometry_inverse(isometry_power(c, 5))


def test_order_cap():
    lat = PicLattice(4)
    with pytest.raises(ValueError, match='cap'):
        isometry_order(coxeter_element(lat), cap=3)


# ---------------------------------------------------------- invariant rank

def test_invariant_rank_examples():
    lat4 = PicLattice(4)
    assert invariant_rank(LatticeIsometry.identity(lat4)) == 5
    lat2 = PicLattice(2)
    swap = weyl_reflection(DivisorClass((0, 1, -1)), lat2)
    assert invariant_rank(swap) == 2
    assert invariant_rank(coxeter_element(lat4)) == 1


def test_invariant_rank_of_generator_list():
    lat = PicLattice(4)
    refs = simple_reflections(lat)
    # all four simple reflections together fix only the canonical line
    assert invariant_rank(refs) == 1
    assert invariant_rank(refs[1:]) == 2


# ------------------------------------------------------------------ orbits

def test_orbits_under_identity_are_singletons():
    lat = PicLattice(4)
    classes = exceptional_classes(lat)
    parts = orbits(LatticeIsometry.identity(lat), classes)
    assert [len(p) for p in parts] == [1] * 10


def test_orbits_of_rank_four_coxeter():
    lat = PicLattice(4)
    parts = orbits(coxeter_element(lat), exceptional_classes(lat))
    assert sorted(len(p) for p in parts) == [5, 5]


def test_orbits_of_rank_two_swap():
    lat = PicLattice(2)
    swap = weyl_reflection(DivisorClass((0, 1, -1)), lat)
    parts = orbits(swap, exceptional_classes(lat))
    assert sorted(len(p) for p in parts) == [1, 2]


def test_orbits_reject_unclosed_input():
    lat = PicLattice(2)
    swap = weyl_reflection(DivisorClass((0, 1, -1)), lat)
    with pytest.raises(ValueError, match='does not permute'):
        orbits(swap, [E(1, 2)])


# -------------------------------------------------- rank-one orbit checks

def test_rank_one_check_on_rank_four_coxeter():
    rep = rank_one_orbit_check(coxeter_element(PicLattice(4)))
    assert rep == {'applies': True, 'invariant_rank': 1,
                   'orbits': [(5, -1), (5, -1)], 'group_order': 5}


def test_rank_one_check_on_order_three_element():
    # the fourth power of the rank-six Coxeter element has order three
    g = isometry_power(coxeter_element(PicLattice(6)), 4)
    assert isometry_order(g) == 3
    rep = rank_one_orbit_check(g)
    assert rep['applies']
    assert rep['orbits'] == [(3, -1)] * 9
    assert rep['group_order'] == 3


def test_rank_one_check_declines_identity():
    rep = rank_one_orbit_check(LatticeIsometry.identity(PicLattice(4)))
    assert rep == {'applies': False, 'invariant_rank': 5,
                   'reason': 'hypothesis not met'}


def test_rank_six_coxeter_orbit_profile():
    rep = rank_one_orbit_check(coxeter_element(PicLattice(6)))
    assert sorted(rep['orbits']) == [(3, -1), (12, -4), (12, -4)]
    assert rep['group_order'] == 12


# ------------------------------------------------------------------ corpus

@pytest.mark.parametrize('r, size', [(4, 4), (6, 8), (8, 29)])
def test_corpus_sizes(r, size):
    assert len(coxeter_corpus(PicLattice(r))) == size


@pytest.mark.parametrize('r', [4, 6])
def test_corpus_passes_rank_one_check(r):
    lat = PicLattice(r)
    for iso in coxeter_corpus(lat):
        rep = rank_one_orbit_check(iso)
        assert rep['applies']
        assert all(size % lat.degree == 0 and mult < 0
                   for size, mult in rep['orbits'])


def test_rank_eight_corpus_spot_check():
    # every power of the order-30 element is rank one; check the first
    lat = PicLattice(8)
    corpus = coxeter_corpus(lat)
    assert isometry_order(corpus[0]) == 30
    rep = rank_one_orbit_check(corpus[0])
    assert rep['orbits'] == [(30, -30)] * 8


# -------------------------------------------------------------- properties

@settings(max_examples=20, deadline=None)
@given(st.integers(2, 8), st.data())
def test_random_weyl_words_stay_isometries(r, data):
    lat = PicLattice(r)
    refs = simple_reflections(lat)
    word = data.draw(st.lists(st.sampled_from(refs), min_size=1, max_size=6))
    out = word[0]
    for ref in word[1:]:
        out = isometry_compose(out, ref)
    # constructor re-validation makes composition and inversion closure checks
    assert isometry_compose(out, isometry_inverse(out)) == LatticeIsometry.identity(lat)
    assert out.apply(lat.canonical) == lat.canonical


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 29))
def test_rank_eight_powers_satisfy_orbit_sums(k):
    lat = PicLattice(8)
    g = isometry_power(coxeter_element(lat), k)
    rep = rank_one_orbit_check(g)
    assert rep['applies']
    K = lat.canonical
    for orbit in orbits(g, exceptional_classes(lat)):
        total = orbit[0]
        for d in orbit[1:]:
            total = total + d
        assert total == (total.coords[0] // -3) * K
