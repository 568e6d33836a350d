"""Birational self-maps of the projective plane and of the quadric.

Plane maps carry three coprime homogeneous components in x, y, z; maps
of the quadric carry two coprime bihomogeneous pairs in x1, x2 and y1,
y2, one per ruling.  Construction strips common factors and rescales so
the first component of each projective tuple has leading coefficient 1,
which turns projective equality into plain tuple equality.

Composition substitutes and strips again.  Orders are found by honest
iteration under a step cap and a degree guard; hitting either guard
yields None rather than a wrong answer.  Fixed curves come from the
rank-one minors of the map against the identity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Union

from .cyclotomic import CycNumber, cyc_sqrt, root_of_unity
from .polynomials import MultiPoly, homogenize, poly_gcd, squarefree_decomposition
from .curves import conic_fiber_genus, plane_curve_genus, quadratic_pair_split

P2_VARS = ('x', 'y', 'z')
QUADRIC_VARS = ('x1', 'x2', 'y1', 'y2')

ORDER_CAP = 64
DEGREE_BOUND = 512

Polyish = Union[int, Fraction, CycNumber, MultiPoly]
Point2 = Sequence[Union[int, Fraction, CycNumber]]


def _as_poly(p: Polyish) -> MultiPoly:
    return p if isinstance(p, MultiPoly) else MultiPoly.constant(p)


def _as_cyc(v) -> CycNumber:
    return v if isinstance(v, CycNumber) else CycNumber(v)


def _gcd_all(polys: Sequence[MultiPoly]) -> MultiPoly:
    g = polys[0]
    for p in polys[1:]:
        if g.is_constant:
            break
        g = poly_gcd(g, p)
    return g


def _scaled_by_first(comps: list[MultiPoly]) -> tuple[MultiPoly, ...]:
    lead = comps[0].leading_coeff()
    inv = lead.inverse()
    return tuple(c * inv for c in comps)


def _bidegree(p: MultiPoly) -> tuple[int, int]:
    """Degrees of a bihomogeneous polynomial in the two coordinate
    pairs; raises when term degrees disagree."""
    if p.is_zero:
        raise ValueError("zero polynomial has no bidegree")
    names = p.variables
    xpos = [i for i, n in enumerate(names) if n in ('x1', 'x2')]
    ypos = [i for i, n in enumerate(names) if n in ('y1', 'y2')]
    seen = set()
    for exp in p.terms:
        dx = sum(exp[i] for i in xpos)
        dy = sum(exp[i] for i in ypos)
        seen.add((dx, dy))
    if len(seen) != 1:
        raise ValueError("component is not bihomogeneous")
    return seen.pop()


# ===== Plane maps =====

class BirMapP2:
    """Rational self-map of the plane, written (x:y:z) -> (f1:f2:f3)."""

    __slots__ = ('_comps',)

    def __init__(self, components: Sequence[Polyish]):
        comps = [_as_poly(c) for c in components]
        if len(comps) != 3:
            raise ValueError("three components required")
        if any(c.is_zero for c in comps):
            raise ValueError("zero component; the map is not dominant")
        degs = set()
        for c in comps:
            if any(v not in P2_VARS for v in c.variables):
                raise ValueError("plane maps use the coordinates x, y, z")
            if not c.is_homogeneous():
                raise ValueError("components must be homogeneous")
            degs.add(c.total_degree())
        if len(degs) != 1:
            raise ValueError("components must share one degree")
        g = _gcd_all(comps)
        if not g.is_constant:
            comps = [c.divexact(g) for c in comps]
        if comps[0].total_degree() < 1:
            raise ValueError("constant map")
        self._comps = _scaled_by_first(comps)
        if self.degree == 1 and self._det3().is_zero:
            raise ValueError("linear map is singular")

    @property
    def components(self) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
        return self._comps

    @property
    def degree(self) -> int:
        return self._comps[0].total_degree()

    @staticmethod
    def identity() -> 'BirMapP2':
        return BirMapP2([MultiPoly.variable(v) for v in P2_VARS])

    @staticmethod
    def linear(rows: Sequence[Sequence[Union[int, Fraction, CycNumber]]]) -> 'BirMapP2':
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a 3x3 matrix is required")
        gens = [MultiPoly.variable(v) for v in P2_VARS]
        comps = [sum((gens[j] * _as_cyc(r[j]) for j in range(3)), MultiPoly()) for r in rows]
        return BirMapP2(comps)

    def _det3(self) -> CycNumber:
        unit = [{v: 1 if v == w else 0 for v in P2_VARS} for w in P2_VARS]
        m = [[self._comps[i].evaluate(unit[j]) for j in range(3)] for i in range(3)]
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    def apply(self, point: Point2) -> tuple[CycNumber, CycNumber, CycNumber]:
        if len(point) != 3:
            raise ValueError("a plane point has three coordinates")
        vals = {v: _as_cyc(c) for v, c in zip(P2_VARS, point)}
        if all(c.is_zero for c in vals.values()):
            raise ValueError("(0:0:0) is not a point")
        image = tuple(c.evaluate(vals) for c in self._comps)
        if all(c.is_zero for c in image):
            raise ValueError("the point is indeterminate for this map")
        return image

    def __eq__(self, other) -> bool:
        return isinstance(other, BirMapP2) and self._comps == other._comps

    def __hash__(self):
        return hash(self._comps)

    def __str__(self) -> str:
        body = " : ".join(str(c) for c in self._comps)
        return f"(x:y:z) -> ({body})"

    __repr__ = __str__


# ===== Maps of the quadric =====

class BirMapP1P1:
    """Rational self-map of P1 x P1, one projective pair per ruling."""

    __slots__ = ('_pairs',)

    def __init__(self, pairs: Sequence[Sequence[Polyish]]):
        if len(pairs) != 2 or any(len(p) != 2 for p in pairs):
            raise ValueError("two pairs of two components required")
        clean = []
        for pair in pairs:
            a, b = (_as_poly(c) for c in pair)
            if a.is_zero or b.is_zero:
                raise ValueError("zero entry; the factor map is not dominant")
            for c in (a, b):
                if any(v not in QUADRIC_VARS for v in c.variables):
                    raise ValueError("quadric maps use x1, x2, y1, y2")
            if _bidegree(a) != _bidegree(b):
                raise ValueError("pair entries must share one bidegree")
            g = poly_gcd(a, b)
            if not g.is_constant:
                a, b = a.divexact(g), b.divexact(g)
            if a.is_constant:
                raise ValueError("constant factor map")
            clean.append(_scaled_by_first([a, b]))
        self._pairs = tuple(clean)

    @property
    def pairs(self) -> tuple[tuple[MultiPoly, MultiPoly], tuple[MultiPoly, MultiPoly]]:
        return self._pairs

    @property
    def bidegrees(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return tuple(_bidegree(p[0]) for p in self._pairs)

    @staticmethod
    def identity() -> 'BirMapP1P1':
        x1, x2, y1, y2 = (MultiPoly.variable(v) for v in QUADRIC_VARS)
        return BirMapP1P1([(x1, x2), (y1, y2)])

    def apply(self, point) -> tuple[tuple[CycNumber, CycNumber], tuple[CycNumber, CycNumber]]:
        (a1, a2), (b1, b2) = point
        vals = {'x1': _as_cyc(a1), 'x2': _as_cyc(a2), 'y1': _as_cyc(b1), 'y2': _as_cyc(b2)}
        if (vals['x1'].is_zero and vals['x2'].is_zero) or (vals['y1'].is_zero and vals['y2'].is_zero):
            raise ValueError("each factor coordinate pair must be nonzero")
        out = []
        for pair in self._pairs:
            img = tuple(c.evaluate(vals) for c in pair)
            if all(c.is_zero for c in img):
                raise ValueError("the point is indeterminate for this map")
            out.append(img)
        return tuple(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, BirMapP1P1) and self._pairs == other._pairs

    def __hash__(self):
        return hash(self._pairs)

    def __str__(self) -> str:
        (p1, p2), (q1, q2) = self._pairs
        return f"((x1:x2),(y1:y2)) -> (({p1} : {p2}), ({q1} : {q2}))"

    __repr__ = __str__


BirMap = Union[BirMapP2, BirMapP1P1]


def automorphism_kind(f: BirMapP1P1) -> Optional[str]:
    """'direct' when each ruling maps linearly to itself, 'swap' when
    the rulings are exchanged linearly, None otherwise."""
    d1, d2 = f.bidegrees
    if d1 == (1, 0) and d2 == (0, 1):
        return 'direct'
    if d1 == (0, 1) and d2 == (1, 0):
        return 'swap'
    return None


# ===== Composition and orders =====

def compose(f: BirMap, g: BirMap) -> BirMap:
    """The map sending P to f(g(P)).  Common factors appearing after
    substitution are stripped by the constructors."""
    if isinstance(f, BirMapP2) and isinstance(g, BirMapP2):
        subs = dict(zip(P2_VARS, g.components))
        return BirMapP2([c.substitute(subs) for c in f.components])
    if isinstance(f, BirMapP1P1) and isinstance(g, BirMapP1P1):
        (p1, p2), (q1, q2) = g.pairs
        subs = {'x1': p1, 'x2': p2, 'y1': q1, 'y2': q2}
        return BirMapP1P1([tuple(c.substitute(subs) for c in pair) for pair in f.pairs])
    raise TypeError("cannot compose maps of different surfaces")


def _size(f: BirMap) -> int:
    if isinstance(f, BirMapP2):
        return f.degree
    return max(a + b for a, b in f.bidegrees)


def order(f: BirMap, cap: int = ORDER_CAP, degree_bound: int = DEGREE_BOUND) -> Optional[int]:
    """Order of f by iteration: the least k <= cap with f^k the
    identity, or None once the cap or the degree guard is passed.  None
    is a refusal to answer, not a certificate of infinite order."""
    ident = type(f).identity()
    acc = f
    for k in range(1, cap + 1):
        if acc == ident:
            return k
        if _size(acc) > degree_bound:
            return None
        acc = compose(acc, f)
    return None


# ===== Fixed curves =====

class FixedCurveReport:
    """Distinct divisor factors fixed pointwise, with multiplicities.
    residual stays True: the listed factors come from a partial
    factorization, so unsplit or unrecognized pieces may remain."""

    __slots__ = ('_components', '_residual')

    def __init__(self, components: Sequence[tuple[MultiPoly, int]], residual: bool = True):
        self._components = tuple(components)
        self._residual = residual

    @property
    def components(self) -> tuple[tuple[MultiPoly, int], ...]:
        return self._components

    @property
    def residual(self) -> bool:
        return self._residual

    def __str__(self) -> str:
        if not self._components:
            return "no fixed curve found (residual possible)"
        parts = ", ".join(
            f"({p})^{m}" if m > 1 else f"({p})" for p, m in self._components)
        return f"fixed divisor factors: {parts}; residual possible"

    __repr__ = __str__


def _split_divisor(g: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Partial factorization of a fixed-curve divisor: coordinate
    factors split off exactly, then a squarefree decomposition when one
    variable or a binary form remains.  Anything else is reported whole
    with multiplicity 1."""
    out: list[tuple[MultiPoly, int]] = []
    for name in g.variables:
        if g.is_constant:
            break
        if name not in g.variables:
            continue
        pos = g.variables.index(name)
        val = min(exp[pos] for exp in g.terms)
        if val > 0:
            gen = MultiPoly.variable(name)
            out.append((gen, val))
            g = g.divexact(gen ** val)
    if not g.is_constant:
        names = g.variables
        if len(names) == 1:
            out.extend(squarefree_decomposition(g))
        elif len(names) == 2 and g.is_homogeneous():
            u, v = names
            total = g.total_degree()
            dehom = g.substitute({v: 1})
            for factor, mult in squarefree_decomposition(dehom):
                out.append((homogenize(factor, u, v), mult))
        else:
            out.append((g.monic(), 1))
    out.sort(key=lambda fm: (fm[0].total_degree(), str(fm[0])))
    return out


def fixed_curve(f: BirMap) -> FixedCurveReport:
    """Factors of the one-dimensional part of the fixed locus, read off
    from the gcd of the rank-one minors against the identity."""
    if f == type(f).identity():
        raise ValueError("the identity fixes the whole surface")
    if isinstance(f, BirMapP2):
        f1, f2, f3 = f.components
        x, y, z = (MultiPoly.variable(v) for v in P2_VARS)
        minors = [f1 * y - f2 * x, f1 * z - f3 * x, f2 * z - f3 * y]
    else:
        (p1, p2), (q1, q2) = f.pairs
        x1, x2, y1, y2 = (MultiPoly.variable(v) for v in QUADRIC_VARS)
        minors = [p1 * x2 - p2 * x1, q1 * y2 - q2 * y1]
    nonzero = [m for m in minors if not m.is_zero]
    g = _gcd_all(nonzero)
    if g.is_constant:
        return FixedCurveReport(())
    return FixedCurveReport(_split_divisor(g))


def component_genus(factor: MultiPoly) -> Optional[int]:
    """Geometric genus of a fixed-curve factor when its shape is
    recognized; None otherwise.  Plane factors go through the plane
    rules; quadric factors of fiber degree at most one are rational, and
    those quadratic in one ruling are double covers of the other."""
    names = factor.variables
    if all(n in P2_VARS for n in names):
        return plane_curve_genus(factor)
    if not all(n in QUADRIC_VARS for n in names):
        raise ValueError("unknown coordinate system")
    dx, dy = _bidegree(factor)
    if dx <= 1 or dy <= 1:
        return 0
    if dy == 2:
        split = quadratic_pair_split(factor, 'y1', 'y2')
        if split is not None:
            return conic_fiber_genus(split[0], split[1], split[2], ('x1', 'x2'))
    if dx == 2:
        split = quadratic_pair_split(factor, 'x1', 'x2')
        if split is not None:
            return conic_fiber_genus(split[0], split[1], split[2], ('y1', 'y2'))
    return None


# ===== Fixed points of quadric automorphisms =====

def _linear_coeffs(p: MultiPoly, uv: tuple[str, str]) -> tuple[CycNumber, CycNumber]:
    u, v = uv
    return (p.evaluate({u: 1, v: 0}), p.evaluate({u: 0, v: 1}))


Mat2 = tuple[tuple[CycNumber, CycNumber], tuple[CycNumber, CycNumber]]


def _mat2_from_pair(pair: tuple[MultiPoly, MultiPoly], uv: tuple[str, str]) -> Mat2:
    return (_linear_coeffs(pair[0], uv), _linear_coeffs(pair[1], uv))


def _mat2_mul(a: Mat2, b: Mat2) -> Mat2:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _mat2_apply(a: Mat2, v: tuple[CycNumber, CycNumber]) -> tuple[CycNumber, CycNumber]:
    return (a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1])


def _eigenvalues_2x2(m: Mat2) -> list[CycNumber]:
    """Eigenvalues within the cyclotomic field.  A direct square root of
    the discriminant is tried first; when that is out of reach the ratio
    of the eigenvalues is searched among roots of unity, which covers
    every matrix of finite projective order."""
    (a, b), (c, d) = m
    tr = a + d
    det = a * d - b * c
    disc = tr * tr - det * 4
    if disc.is_zero:
        return [tr / 2]
    try:
        s = cyc_sqrt(disc)
        return [(tr + s) / 2, (tr - s) / 2]
    except ValueError:
        pass
    if tr.is_zero:
        return [cyc_sqrt(-det)]  # may raise; nothing better is available
    for n in range(2, ORDER_CAP + 1):
        for e in range(1, n):
            zeta = root_of_unity(n, e)
            lift = zeta + 1
            if lift.is_zero:
                continue
            if tr * tr * zeta == det * lift * lift:
                lam = tr / lift
                return [lam, lam * zeta]
    raise ValueError("eigenvalues are not expressible here")


def _eigenvector_2x2(m: Mat2) -> tuple[CycNumber, CycNumber]:
    """A deterministic eigenvector, scaled so its first nonzero
    coordinate is 1.  Among the eigenvalues the one with the smallest
    canonical key is used."""
    (a, b), (c, d) = m
    if b.is_zero and c.is_zero:
        if a == d:
            return (CycNumber(1), CycNumber(0))
        lam = min((a, d), key=lambda v: v.canonical_key())
        return (CycNumber(1), CycNumber(0)) if lam == a else (CycNumber(0), CycNumber(1))
    lam = min(_eigenvalues_2x2(m), key=lambda v: v.canonical_key())
    if not b.is_zero:
        vec = (b, lam - a)
    else:
        vec = (lam - d, c)
    if not vec[0].is_zero:
        return (CycNumber(1), vec[1] / vec[0])
    return (CycNumber(0), CycNumber(1))


def _normalize_pair(v: tuple[CycNumber, CycNumber]) -> tuple[CycNumber, CycNumber]:
    if not v[0].is_zero:
        return (CycNumber(1), v[1] / v[0])
    if v[1].is_zero:
        raise ValueError("zero vector")
    return (CycNumber(0), CycNumber(1))


def find_fixed_point(f: BirMapP1P1):
    """A fixed point of a quadric automorphism, as a pair of projective
    coordinate pairs.  The choice is deterministic; any fixed point is
    acceptable downstream."""
    kind = automorphism_kind(f)
    if kind is None:
        raise ValueError("an automorphism of the quadric is required")
    if kind == 'direct':
        mx = _mat2_from_pair(f.pairs[0], ('x1', 'x2'))
        my = _mat2_from_pair(f.pairs[1], ('y1', 'y2'))
        return (_eigenvector_2x2(mx), _eigenvector_2x2(my))
    # Swap: f(p, q) = (A q, B p), so p is fixed by A B and q = B p.
    ma = _mat2_from_pair(f.pairs[0], ('y1', 'y2'))
    mb = _mat2_from_pair(f.pairs[1], ('x1', 'x2'))
    p = _eigenvector_2x2(_mat2_mul(ma, mb))
    q = _normalize_pair(_mat2_apply(mb, p))
    return (p, q)


# ===== From the quadric to the plane =====

def _basis_change_to_origin(p: tuple[CycNumber, CycNumber]) -> Mat2:
    """An invertible matrix sending the projective point p to (1:0)."""
    alpha, beta = p
    if not alpha.is_zero:
        inv = alpha.inverse()
        return ((inv, CycNumber(0)), (-beta * inv, CycNumber(1)))
    return ((CycNumber(0), beta.inverse()), (CycNumber(1), CycNumber(0)))


def _mat2_inverse(m: Mat2) -> Mat2:
    (a, b), (c, d) = m
    det = a * d - b * c
    if det.is_zero:
        raise ValueError("singular matrix")
    inv = det.inverse()
    return ((d * inv, -b * inv), (-c * inv, a * inv))


def _linear_quadric_map(mx: Mat2, my: Mat2) -> BirMapP1P1:
    x1, x2 = MultiPoly.variable('x1'), MultiPoly.variable('x2')
    y1, y2 = MultiPoly.variable('y1'), MultiPoly.variable('y2')
    return BirMapP1P1([
        (x1 * mx[0][0] + x2 * mx[0][1], x1 * mx[1][0] + x2 * mx[1][1]),
        (y1 * my[0][0] + y2 * my[0][1], y1 * my[1][0] + y2 * my[1][1]),
    ])


def _projectively_equal(u: tuple[CycNumber, CycNumber], v) -> bool:
    v = tuple(_as_cyc(c) for c in v)
    return (u[0] * v[1] - u[1] * v[0]).is_zero


def segre_project(f: BirMapP1P1, point) -> BirMapP2:
    """Conjugate a quadric automorphism fixing the given point into a
    linear plane map, by moving the point to ((1:0),(1:0)) and passing
    through the degree-(1,1) projection (x1*y2 : x2*y1 : x2*y2).  The
    result must come out linear; anything else raises."""
    if automorphism_kind(f) is None:
        raise ValueError("an automorphism of the quadric is required")
    px = tuple(_as_cyc(c) for c in point[0])
    py = tuple(_as_cyc(c) for c in point[1])
    image = f.apply((px, py))
    if not (_projectively_equal(image[0], px) and _projectively_equal(image[1], py)):
        raise ValueError("the point is not fixed by the map")
    mx = _basis_change_to_origin(px)
    my = _basis_change_to_origin(py)
    t = _linear_quadric_map(mx, my)
    t_inv = _linear_quadric_map(_mat2_inverse(mx), _mat2_inverse(my))
    centered = compose(t, compose(f, t_inv))
    x, y, z = (MultiPoly.variable(v) for v in P2_VARS)
    subs = {'x1': x, 'x2': z, 'y1': y, 'y2': z}
    (p1, p2), (q1, q2) = (
        tuple(c.substitute(subs) for c in pair) for pair in centered.pairs)
    projected = BirMapP2([p1 * q2, p2 * q1, p2 * q2])
    if projected.degree != 1:
        raise ValueError("projection did not come out linear")
    return projected
