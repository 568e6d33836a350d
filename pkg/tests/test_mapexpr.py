"""Parser round trips: printing an object and parsing the text gives
the object back, and malformed input is rejected cleanly."""

from fractions import Fraction

import pytest

from cremona.cyclotomic import root_of_unity
from cremona.polynomials import MultiPoly, RatFunc
from cremona.birmaps import BirMapP1P1, BirMapP2
from cremona.mapexpr import (
    MapSyntaxError,
    parse_map,
    parse_polynomial,
    parse_quadruple,
    parse_ratfunc,
)

X = MultiPoly.variable('x')
Y = MultiPoly.variable('y')
Z = MultiPoly.variable('z')


def test_polynomial_parsing():
    assert parse_polynomial("x^2 - 2*x + 1") == X ** 2 - 2 * X + 1
    assert parse_polynomial("3/4*x*y") == X * Y * Fraction(3, 4)
    z8 = root_of_unity(8)
    assert parse_polynomial("(1/2 + 3*zeta(8) - zeta(8)^3)*x") == \
        X * (Fraction(1, 2) + 3 * z8 - z8 ** 3)
    assert parse_polynomial("zeta(6)") == MultiPoly.constant(root_of_unity(6))
    assert parse_polynomial("-x + (-2)^-1") == -X - Fraction(1, 2)


def test_polynomial_round_trip():
    samples = [
        X ** 3 - X * Y * Z * 7 + 1,
        (X - Y) ** 2 * Fraction(9, 4),
        X * root_of_unity(8) - Y * (root_of_unity(3) + 2),
        MultiPoly.constant(Fraction(-3, 7)),
        MultiPoly(),
    ]
    for p in samples:
        assert parse_polynomial(str(p)) == p


def test_variable_restriction():
    with pytest.raises(MapSyntaxError):
        parse_polynomial("x + q", variables=('x', 'y'))
    with pytest.raises(MapSyntaxError):
        parse_polynomial("x / y")


def test_map_round_trip():
    maps = [
        BirMapP2([Y * Z, X * Z, X * Y]),
        BirMapP2([X * (Z - Y), Z * (X - Y), X * Z]),
        BirMapP2([X, Y, Z * root_of_unity(7)]),
    ]
    for f in maps:
        assert parse_map(str(f)) == f

    x1, x2 = MultiPoly.variable('x1'), MultiPoly.variable('x2')
    y1, y2 = MultiPoly.variable('y1'), MultiPoly.variable('y2')
    quads = [
        BirMapP1P1([(x1 * root_of_unity(3), x2), (y1, y2)]),
        BirMapP1P1([(y1, y2), (x1, x2)]),
        BirMapP1P1([(x1, x2),
                    (y2 * (x1 - x2) * (x1 - 2 * x2), y1 * (x1 - 3 * x2) * (x1 - 4 * x2))]),
    ]
    for f in quads:
        assert parse_map(str(f)) == f


def test_map_parsing_from_plain_text():
    f = parse_map("(x:y:z) -> (y*z : x*z : x*y)")
    assert f == BirMapP2([Y * Z, X * Z, X * Y])
    g = parse_map("((x1:x2),(y1:y2)) -> ((x2 : x1), (y1 : y2))")
    assert g.pairs[0][0] == MultiPoly.variable('x2')


def test_map_syntax_errors():
    for bad in [
        "(x:y) -> (x : y)",
        "(x:y:z) -> (x : y)",
        "(x:y:z) (x : y : z)",
        "(x:y:z) -> (x : y : z) extra",
        "(a:b:c) -> (a : b : c)",
        "(x:y:z) -> (x : y : w)",
    ]:
        with pytest.raises(MapSyntaxError):
            parse_map(bad)


def test_ratfunc_parsing():
    f = parse_ratfunc("(x^2 - 1)/(x + 2)")
    assert f == RatFunc(X ** 2 - 1, X + 2)
    assert parse_ratfunc(str(f)) == f
    g = parse_ratfunc("1/x + x")
    assert g == RatFunc(X ** 2 + 1, X)
    with pytest.raises(MapSyntaxError):
        parse_ratfunc("x + y")


def test_quadruple_parsing():
    w = MultiPoly.variable('w')
    comps = parse_quadruple("(w : x : zeta(5)*y : z)")
    assert comps[0] == w
    assert comps[2] == MultiPoly.variable('y') * root_of_unity(5)
    with_header = parse_quadruple("(w:x:y:z) -> (-w : x : y : z)")
    assert with_header[0] == -w
    assert parse_quadruple("(w : x : y : z)") == [
        w, X, Y, Z]
    with pytest.raises(MapSyntaxError):
        parse_quadruple("(w : x : y)")
