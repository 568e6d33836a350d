"""Plane and quadric map tests: normalization, composition, orders,
fixed curves, fixed points, and the projection to the plane."""

from fractions import Fraction

import pytest

from cremona.cyclotomic import CycNumber, root_of_unity
from cremona.polynomials import MultiPoly
from cremona.birmaps import (
    BirMapP1P1,
    BirMapP2,
    automorphism_kind,
    component_genus,
    compose,
    find_fixed_point,
    fixed_curve,
    order,
    segre_project,
)

X = MultiPoly.variable('x')
Y = MultiPoly.variable('y')
Z = MultiPoly.variable('z')
X1 = MultiPoly.variable('x1')
X2 = MultiPoly.variable('x2')
Y1 = MultiPoly.variable('y1')
Y2 = MultiPoly.variable('y2')

SIGMA = BirMapP2([Y * Z, X * Z, X * Y])


def proj_equal3(p, q):
    p = [CycNumber(c) if not isinstance(c, CycNumber) else c for c in p]
    q = [CycNumber(c) if not isinstance(c, CycNumber) else c for c in q]
    return all(
        (p[i] * q[j] - p[j] * q[i]).is_zero
        for i in range(3) for j in range(i + 1, 3))


def proj_equal2(p, q):
    p = [CycNumber(c) if not isinstance(c, CycNumber) else c for c in p]
    q = [CycNumber(c) if not isinstance(c, CycNumber) else c for c in q]
    return (p[0] * q[1] - p[1] * q[0]).is_zero


# ----- construction and normalization -----

def test_common_factor_and_scale_are_stripped():
    assert BirMapP2([X * X * Y, X * Y * Y, X * Y * Z]) == BirMapP2.identity()
    assert BirMapP2([2 * X, 2 * Y, 2 * Z]) == BirMapP2.identity()


def test_rejects_bad_plane_components():
    with pytest.raises(ValueError):
        BirMapP2([X, Y, MultiPoly()])
    with pytest.raises(ValueError):
        BirMapP2([X * X, Y, Z])
    with pytest.raises(ValueError):
        BirMapP2([X + 1, Y, Z])
    with pytest.raises(ValueError):
        BirMapP2([X, X, Z])  # singular linear map
    with pytest.raises(ValueError):
        BirMapP2([MultiPoly.variable('w'), Y, Z])


def test_quadric_normalization_and_rejection():
    f = BirMapP1P1([(X1 * Y1, X2 * Y1), (Y1, Y2)])
    assert f.pairs[0] == (X1, X2)
    with pytest.raises(ValueError):
        BirMapP1P1([(X1, X1), (Y1, Y2)])  # pair collapses to constants
    with pytest.raises(ValueError):
        BirMapP1P1([(X1, X2 * X2), (Y1, Y2)])


# ----- composition -----

def test_linear_composition_is_matrix_product():
    a = BirMapP2.linear([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    b = BirMapP2.linear([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert compose(a, b) == BirMapP2.linear([[0, 2, 0], [1, 0, 0], [0, 0, 3]])


def test_compose_agrees_with_pointwise_application():
    g = BirMapP2.linear([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    h = compose(SIGMA, g)
    for pt in [(1, 1, 1), (1, 2, 5), (2, -1, 7)]:
        assert proj_equal3(h.apply(pt), SIGMA.apply(g.apply(pt)))


def test_standard_involution_squares_to_identity():
    assert compose(SIGMA, SIGMA) == BirMapP2.identity()


# ----- orders -----

def test_plane_orders():
    assert order(SIGMA) == 2
    assert order(BirMapP2([X, Y, -Z])) == 2
    z7 = root_of_unity(7)
    assert order(BirMapP2([X, Y, Z * z7])) == 7
    quintic = BirMapP2([X * (Z - Y), Z * (X - Y), X * Z])
    assert order(quintic) == 5


def test_infinite_order_hits_the_cap():
    shear = BirMapP2([X + Z, Y, Z])
    assert order(shear, cap=30) is None
    growing = compose(SIGMA, shear)
    assert order(growing, cap=10, degree_bound=64) is None


def test_quadric_order():
    z3 = root_of_unity(3)
    z5 = root_of_unity(5)
    f = BirMapP1P1([(X1 * z3, X2), (Y1 * z5, Y2)])
    assert order(f) == 15
    swap = BirMapP1P1([(Y1, Y2), (X1, X2)])
    assert order(swap) == 2


# ----- fixed curves -----

def test_reflection_fixes_a_line():
    report = fixed_curve(BirMapP2([X, Y, -Z]))
    assert report.components == ((Z, 1),)
    assert report.residual


def test_standard_involution_fixes_no_curve():
    report = fixed_curve(SIGMA)
    assert report.components == ()
    assert report.residual
    # Its fixed points are isolated: (1:1:1) is one of them.
    assert proj_equal3(SIGMA.apply((1, 1, 1)), (1, 1, 1))


def test_identity_fixed_curve_is_refused():
    with pytest.raises(ValueError):
        fixed_curve(BirMapP2.identity())


def test_fixed_curve_splitting_and_multiplicities():
    f = BirMapP1P1([(X1 * (X1 - X2) ** 2, X2 ** 3), (Y1, Y2)])
    report = fixed_curve(f)
    assert set(report.components) == {(X1, 2), (X2, 1), (X1 - 2 * X2, 1)}

    g = BirMapP1P1([(X1 ** 2, X2 ** 2), (Y1, Y2)])
    assert set(fixed_curve(g).components) == {(X1, 1), (X2, 1), (X1 - X2, 1)}


@pytest.mark.parametrize("n,genus", [(2, 1), (3, 2), (4, 3)])
def test_interchange_involution_fixed_curve_genus(n, genus):
    top = MultiPoly.constant(1)
    bottom = MultiPoly.constant(1)
    for k in range(1, n + 1):
        top = top * (X1 - k * X2)
        bottom = bottom * (X1 - (n + k) * X2)
    f = BirMapP1P1([(X1, X2), (Y2 * top, Y1 * bottom)])
    assert order(f) == 2
    report = fixed_curve(f)
    assert len(report.components) == 1
    factor, mult = report.components[0]
    assert mult == 1
    assert factor == (Y2 ** 2 * top - Y1 ** 2 * bottom).monic()
    assert component_genus(factor) == genus


def test_component_genus_plane_shapes():
    assert component_genus(Z) == 0
    assert component_genus(X ** 3 + Y ** 3 + Z ** 3) == 1
    assert component_genus(Y ** 2 * Z - X ** 3 - X * Z ** 2) == 1
    assert component_genus(X ** 3 + Y ** 3) == 0


# ----- fixed points of quadric automorphisms -----

def test_fixed_point_of_diagonal_automorphism():
    z3 = root_of_unity(3)
    f = BirMapP1P1([(X1 * z3, X2), (Y1, Y2)])
    pt = find_fixed_point(f)
    img = f.apply(pt)
    assert proj_equal2(img[0], pt[0]) and proj_equal2(img[1], pt[1])


def test_fixed_point_of_rotation():
    f = BirMapP1P1([(-X2, X1), (Y1, Y2)])
    pt = find_fixed_point(f)
    img = f.apply(pt)
    assert proj_equal2(img[0], pt[0]) and proj_equal2(img[1], pt[1])


def test_fixed_point_of_swap():
    swap = BirMapP1P1([(Y1, Y2), (X1, X2)])
    pt = find_fixed_point(swap)
    assert proj_equal2(pt[0], (1, 0)) and proj_equal2(pt[1], (1, 0))
    twisted = BirMapP1P1([(Y2, Y1), (X1, X2)])
    pt = find_fixed_point(twisted)
    img = twisted.apply(pt)
    assert proj_equal2(img[0], pt[0]) and proj_equal2(img[1], pt[1])


def test_fixed_point_requires_automorphism():
    with pytest.raises(ValueError):
        find_fixed_point(BirMapP1P1([(X1 ** 2, X2 ** 2), (Y1, Y2)]))


# ----- projection to the plane -----

def test_segre_projection_of_diagonal_action():
    z3 = root_of_unity(3)
    z5 = root_of_unity(5)
    f = BirMapP1P1([(X1 * z3, X2), (Y1 * z5, Y2)])
    for pt in [find_fixed_point(f), ((1, 0), (1, 0))]:
        g = segre_project(f, pt)
        assert g.degree == 1
        assert order(g) == 15


def test_segre_projection_of_swap():
    swap = BirMapP1P1([(Y1, Y2), (X1, X2)])
    g = segre_project(swap, find_fixed_point(swap))
    assert g == BirMapP2.linear([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert order(g) == 2


def test_segre_projection_rejects_unfixed_point():
    z3 = root_of_unity(3)
    f = BirMapP1P1([(X1 * z3, X2), (Y1, Y2)])
    with pytest.raises(ValueError):
        segre_project(f, ((1, 1), (1, 0)))


def test_automorphism_kind():
    assert automorphism_kind(BirMapP1P1([(X1, X2), (Y1, Y2)])) == 'direct'
    assert automorphism_kind(BirMapP1P1([(Y1, Y2), (X1, X2)])) == 'swap'
    assert automorphism_kind(BirMapP1P1([(X1 ** 2, X2 ** 2), (Y1, Y2)])) is None
