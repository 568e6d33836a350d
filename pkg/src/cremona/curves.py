"""Fixed-curve models and their isomorphism invariants.

Double covers y^2 = g(x) carry their genus in the degree of g; elliptic
curves in Weierstrass form carry the j-invariant; branch loci on the
line are compared through the full set of Moebius normalizations, which
is a complete invariant of the branch set up to PGL(2).  These are the
certificates the classifier uses to tell conjugacy classes apart.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import lcm
from typing import Optional, Union

from .cyclotomic import CycNumber, cyc_sqrt
from .polynomials import (
    MultiPoly,
    common_zero_exists,
    is_squarefree,
    squarefree_decomposition,
)


class Infinity:
    """The point at infinity on the projective line."""

    _instance: Optional['Infinity'] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return 'oo'


INFINITY = Infinity()

BranchValue = Union[CycNumber, Infinity]


def _value_key(v: BranchValue):
    if isinstance(v, Infinity):
        return (0,)
    return (1,) + v.canonical_key()


class HyperellipticModel:
    """The double cover y^2 = g(x) for a squarefree g of degree >= 3."""

    __slots__ = ('g',)

    def __init__(self, g: MultiPoly):
        if g.is_zero or g.is_constant or len(g.variables) != 1:
            raise ValueError("the right side must be a nonconstant univariate polynomial")
        if g.total_degree() < 3:
            raise ValueError("degree must be at least 3")
        if not is_squarefree(g):
            raise ValueError(f"not squarefree: {g}")
        self.g = g

    def __repr__(self) -> str:
        return f'y^2 = {self.g}'


def hyperelliptic_genus(c: HyperellipticModel) -> int:
    """floor((deg g - 1) / 2): the double cover branches over the deg-g
    roots of g, plus infinity when the degree is odd."""
    return (c.g.total_degree() - 1) // 2


class WeierstrassCurve:
    """v^2 = u^3 + a u + b, nonsingular."""

    __slots__ = ('a', 'b')

    def __init__(self, a: CycNumber, b: CycNumber):
        a = a if isinstance(a, CycNumber) else CycNumber(a)
        b = b if isinstance(b, CycNumber) else CycNumber(b)
        if (CycNumber(4) * a ** 3 + CycNumber(27) * b ** 2).is_zero:
            raise ValueError("singular curve: 4a^3 + 27b^2 = 0")
        self.a = a
        self.b = b

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeierstrassCurve):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __repr__(self) -> str:
        return f'v^2 = u^3 + ({self.a})u + ({self.b})'


def j_invariant(c: WeierstrassCurve) -> CycNumber:
    four_a3 = CycNumber(4) * c.a ** 3
    return CycNumber(1728) * four_a3 / (four_a3 + CycNumber(27) * c.b ** 2)


def dp1_trace_to_weierstrass(lam: CycNumber, mu: CycNumber) -> WeierstrassCurve:
    """The curve w^2 = z^3 + lam*x^4*z + mu*x^6 in the variables
    u = z/x^2, v = w/x^3 is Weierstrass with (a, b) = (lam, mu)."""
    return WeierstrassCurve(lam, mu)


class BranchData:
    """A finite set of distinct points on the line, at least three."""

    __slots__ = ('points',)

    def __init__(self, points):
        pts = []
        for p in points:
            if isinstance(p, Infinity):
                pts.append(INFINITY)
            elif isinstance(p, CycNumber):
                pts.append(p)
            else:
                pts.append(CycNumber(p))
        pts.sort(key=_value_key)
        for u, v in zip(pts, pts[1:]):
            if u is v or u == v:
                raise ValueError("branch points must be distinct")
        if len(pts) < 3:
            raise ValueError("need at least three branch points")
        self.points = tuple(pts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BranchData):
            return NotImplemented
        return self.points == other.points

    def __repr__(self) -> str:
        return 'branch{' + ', '.join(str(p) for p in self.points) + '}'


# ----- exact root extraction -----

def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _rational_roots(coeffs: list[CycNumber]) -> tuple[list[CycNumber], list[CycNumber]]:
    """Split off rational roots; returns (roots, remaining coefficients)."""
    roots: list[CycNumber] = []
    work = list(coeffs)
    while len(work) > 1 and work[0].is_zero:
        roots.append(CycNumber(0))
        work = work[1:]
    if not all(c.is_rational for c in work):
        return roots, work
    while len(work) > 2:
        qs = [c.as_fraction() for c in work]
        scale = 1
        for q in qs:
            scale = lcm(scale, q.denominator)
        ints = [int(q * scale) for q in qs]
        c0, cd = ints[0], ints[-1]
        if c0 == 0:
            roots.append(CycNumber(0))
            work = work[1:]
            continue
        found = None
        for p in _int_divisors(c0):
            for q in _int_divisors(cd):
                for sign in (1, -1):
                    cand = Fraction(sign * p, q)
                    if _eval_dense(work, CycNumber(cand)).is_zero:
                        found = CycNumber(cand)
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        work = _deflate(work, found)
    return roots, work


def _eval_dense(coeffs: list[CycNumber], x: CycNumber) -> CycNumber:
    acc = CycNumber(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: list[CycNumber], root: CycNumber) -> list[CycNumber]:
    # Synthetic division by (x - root); the remainder vanishes by assumption.
    desc = list(reversed(coeffs))
    quot = [desc[0]]
    for c in desc[1:-1]:
        quot.append(c + quot[-1] * root)
    return list(reversed(quot))


def exact_roots(g: MultiPoly) -> list[CycNumber]:
    """All roots of a univariate polynomial, when they are expressible:
    rational roots are split off first, then a remaining factor of degree
    at most two is solved in radicals.  Raises ValueError otherwise."""
    if g.is_zero or g.is_constant or len(g.variables) != 1:
        raise ValueError("need a nonconstant univariate polynomial")
    var = g.variables[0]
    coeffs = [c.constant_value() for c in g.dense_in(var)]
    roots, rest = _rational_roots(coeffs)
    if len(rest) == 2:
        roots.append(-rest[0] / rest[1])
    elif len(rest) == 3:
        a, b, c = rest[2], rest[1], rest[0]
        try:
            d = cyc_sqrt(b * b - CycNumber(4) * a * c)
        except ValueError as exc:
            raise ValueError(f"roots of {g} are not expressible here") from exc
        half = CycNumber(Fraction(1, 2))
        roots.append((-b + d) * half / a)
        roots.append((-b - d) * half / a)
    elif len(rest) > 3:
        raise ValueError(f"roots of {g} are not expressible here")
    return roots


def branch_points(c: HyperellipticModel) -> BranchData:
    """Roots of g, plus infinity when deg g is odd."""
    pts: list[BranchValue] = list(exact_roots(c.g))
    if c.g.total_degree() % 2 == 1:
        pts.append(INFINITY)
    return BranchData(pts)


# ----- the Moebius-normalization invariant -----

def _moebius_image(t: BranchValue, p: BranchValue, q: BranchValue, r: BranchValue) -> CycNumber:
    """Image of t under the unique Moebius map sending (p,q,r) to (0,1,oo).
    t is assumed distinct from r, so the image is finite."""
    inf = isinstance
    if inf(p, Infinity):
        return (q - r) / (t - r)
    if inf(q, Infinity):
        return (t - p) / (t - r)
    if inf(r, Infinity):
        return (t - p) / (q - p)
    if inf(t, Infinity):
        return (q - r) / (q - p)
    return ((t - p) * (q - r)) / ((t - r) * (q - p))


def branch_invariant(c: HyperellipticModel) -> frozenset:
    """Over every ordered triple of branch points sent to (0,1,oo), the
    sorted tuple of images of the remaining points; the resulting set is
    equal for two models exactly when their branch sets are
    PGL(2)-equivalent."""
    data = branch_points(c)
    pts = data.points
    out = set()
    for p in pts:
        for q in pts:
            if q is p or q == p:
                continue
            for r in pts:
                if r is p or r == p or r is q or r == q:
                    continue
                images = [
                    _moebius_image(t, p, q, r)
                    for t in pts
                    if t is not p and t != p and t is not q and t != q and t is not r and t != r
                ]
                images.sort(key=lambda v: v.canonical_key())
                out.add(tuple(images))
    return frozenset(out)


# ----- genus bookkeeping for curves met inside fixed loci -----

def conic_fiber_genus(c2: MultiPoly, c1: MultiPoly, c0: MultiPoly,
                      uv: tuple[str, str]) -> Optional[int]:
    """Genus of the double cover {c2*s^2 + c1*s*t + c0*t^2 = 0} of the
    (u:v) line, read off from the odd-multiplicity part of the
    discriminant form.  Returns None when the discriminant vanishes
    identically, since the curve then splits into two sections."""
    u, v = uv
    disc = c1 * c1 - c2 * c0 * 4
    if disc.is_zero:
        return None
    if any(name not in uv for name in disc.variables):
        raise ValueError("discriminant involves unexpected variables")
    if not disc.is_homogeneous():
        raise ValueError("discriminant is not a binary form")
    vdeg = disc.degree_in(v)
    val = 0
    if vdeg > 0:
        val = min(exp[disc.variables.index(v)] for exp in disc.terms)
    branch = 1 if val % 2 else 0
    dehom = disc.substitute({v: 1})
    if not dehom.is_constant:
        for factor, mult in squarefree_decomposition(dehom):
            if mult % 2:
                branch += factor.total_degree()
    if branch % 2:
        raise ValueError("odd branch count from a binary form")
    if branch == 0:
        return 0
    return max(branch // 2 - 1, 0)


def smooth_plane_curve(f: MultiPoly) -> bool:
    """Whether the plane projective curve f = 0 is smooth.  f must be
    homogeneous in exactly three coordinates; the check runs over the
    three standard charts, and in characteristic zero a common zero of
    the partials already lies on the curve."""
    if f.is_zero or f.is_constant:
        raise ValueError("not a curve")
    if len(f.variables) != 3:
        raise ValueError("three coordinates required")
    if not f.is_homogeneous():
        raise ValueError("homogeneous input required")
    a, b, c = f.variables
    partials = [f.derivative(w) for w in (a, b, c)]
    charts = [{c: 1}, {b: 1, c: 0}, {a: 1, b: 0, c: 0}]
    for chart in charts:
        if common_zero_exists([p.substitute(chart) for p in partials]):
            return False
    return True


def quadratic_pair_split(
        f: MultiPoly, s: str, t: str) -> Optional[tuple[MultiPoly, MultiPoly, MultiPoly]]:
    """Write f as c2*s^2 + c1*s*t + c0*t^2 with the c's free of s and t,
    or None when f has another shape."""
    c2 = MultiPoly.constant(0)
    c1 = c2
    c0 = c2
    for coeffs, es, et in _split_by_pair(f, s, t):
        if es == 2 and et == 0:
            c2 = coeffs
        elif es == 1 and et == 1:
            c1 = coeffs
        elif es == 0 and et == 2:
            c0 = coeffs
        else:
            return None
    return c2, c1, c0


def _split_by_pair(f: MultiPoly, s: str, t: str):
    """Group terms of f by their (s, t) exponents; yields
    (cofactor polynomial, s-exponent, t-exponent) triples."""
    names = f.variables
    si = names.index(s) if s in names else None
    ti = names.index(t) if t in names else None
    rest = tuple(n for n in names if n != s and n != t)
    buckets: dict[tuple[int, int], dict] = {}
    for exp, coeff in f.terms.items():
        es = exp[si] if si is not None else 0
        et = exp[ti] if ti is not None else 0
        key = tuple(e for n, e in zip(names, exp) if n != s and n != t)
        buckets.setdefault((es, et), {})[key] = coeff
    for (es, et), terms in sorted(buckets.items()):
        yield MultiPoly(rest, terms), es, et


def plane_curve_genus(f: MultiPoly) -> Optional[int]:
    """Geometric genus of a plane curve component when a supported shape
    applies: degree at most two, a double-cover form quadratic in one
    coordinate, or a smooth cubic.  None means unrecognized, never a
    guess."""
    if f.is_zero or f.is_constant:
        raise ValueError("not a curve")
    if not f.is_homogeneous():
        raise ValueError("homogeneous input required")
    if f.total_degree() <= 2:
        return 0
    names = f.variables
    if len(names) <= 2:
        return 0  # a binary form splits into lines
    if len(names) == 3:
        for s in names:
            if f.degree_in(s) != 2:
                continue
            others = tuple(n for n in names if n != s)
            cs = f.dense_in(s)
            if len(cs) == 3 and cs[1].is_zero:
                return conic_fiber_genus(cs[2], cs[1], cs[0], others)
        if f.total_degree() == 3:
            return 1 if smooth_plane_curve(f) else None
    return None


def weierstrass_plane_form(f: MultiPoly) -> Optional[tuple[CycNumber, CycNumber]]:
    """Match a ternary cubic against c*(v^2*t - u^3 - a*u*t^2 - b*t^3)
    over every assignment of the three coordinates to (u, v, t).
    Returns (a, b), or None when no assignment fits."""
    names = f.variables
    if len(names) != 3:
        return None
    allowed = {(0, 2, 1), (3, 0, 0), (1, 0, 2), (0, 0, 3)}
    for u, v, t in permutations(names):
        spots = (names.index(u), names.index(v), names.index(t))
        found: dict[tuple[int, int, int], CycNumber] = {}
        for exp, coeff in f.terms.items():
            key = (exp[spots[0]], exp[spots[1]], exp[spots[2]])
            if key not in allowed:
                found = {}
                break
            found[key] = coeff
        c = found.get((0, 2, 1))
        cu = found.get((3, 0, 0))
        if c is None or cu is None or cu != -c:
            continue
        zero = CycNumber(0)
        a = -found.get((1, 0, 2), zero) / c
        b = -found.get((0, 0, 3), zero) / c
        return a, b
    return None


def plane_cubic_j(f: MultiPoly) -> Optional[CycNumber]:
    """j-invariant of a plane cubic in the closed-form cases met inside
    fixed loci: a diagonal cubic has j = 0, and a Weierstrass-shaped one
    hands off to the standard formula.  None when the shape is
    unrecognized or the curve is singular; never a guess."""
    if f.is_zero or not f.is_homogeneous() or f.total_degree() != 3:
        raise ValueError("a plane cubic is required")
    if len(f.variables) != 3:
        return None
    diagonal = {tuple(3 if i == k else 0 for i in range(3)) for k in range(3)}
    if set(f.terms) == diagonal:
        return CycNumber(0)
    shape = weierstrass_plane_form(f)
    if shape is None:
        return None
    try:
        return j_invariant(WeierstrassCurve(*shape))
    except ValueError:
        return None
