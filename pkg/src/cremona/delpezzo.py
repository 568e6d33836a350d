"""Del Pezzo surfaces as weighted hypersurfaces, with their monomial
automorphisms.

Degree-one surfaces live in P(3, 1, 1, 2) as w^2 = z^3 + F4(x, y) z +
F6(x, y); cubic surfaces, among them the triple covers w^3 = F(x, y, z)
of the plane, live in ordinary P^3.  An automorphism here is monomial:
it permutes the four coordinates and rescales them, which covers every
representative the classifier needs while keeping all computations in
exact cyclotomic arithmetic.

Two points of care.  Weighted scaling makes the identity ambiguous: the
map scaling (w, x, y, z) by (l^a, l^b, l^c, l^d) for weights (a, b, c, d)
is the identity for every l, so equality of automorphisms and order
computations anchor l at a weight-one coordinate.  And fixed loci are
assembled from eigenvalue strata: for each candidate l the coordinates
whose scale equals l^weight stay free and the rest are set to zero, so a
stratum is a coordinate point, a binary form's zero set, or a curve cut
out of a coordinate hyperplane, whose genus and j-invariant are computed
whenever the restricted equation has a recognized shape.
"""

from __future__ import annotations

from math import gcd, lcm
from typing import Optional, Sequence, Union

from .curves import (
    conic_fiber_genus,
    dp1_trace_to_weierstrass,
    j_invariant,
    plane_cubic_j,
    plane_curve_genus,
    smooth_plane_curve,
    weierstrass_plane_form,
)
from .cyclotomic import CycNumber, cyc_sqrt, root_of_unity
from .polynomials import MultiPoly, common_zero_exists, poly_gcd

COORDS = ('w', 'x', 'y', 'z')

ORDER_CAP = 360

Scalarish = Union[int, CycNumber]


def _as_cyc(v) -> CycNumber:
    return v if isinstance(v, CycNumber) else CycNumber(v)


def _exponent_of(p: MultiPoly, exp: tuple[int, ...], name: str) -> int:
    return exp[p.variables.index(name)] if name in p.variables else 0


class WeightedHypersurface:
    """A hypersurface in weighted projective 3-space on the coordinates
    (w, x, y, z).  Every monomial of the equation must have the same
    weighted degree."""

    __slots__ = ('weights', 'equation', 'degree')

    def __init__(self, weights: Sequence[int], equation: MultiPoly, degree: Optional[int] = None):
        weights = tuple(int(a) for a in weights)
        if len(weights) != 4 or any(a < 1 for a in weights):
            raise ValueError("four positive weights required")
        if not isinstance(equation, MultiPoly) or equation.is_zero:
            raise ValueError("the equation must be a nonzero polynomial")
        if any(name not in COORDS for name in equation.variables):
            raise ValueError(f"equation variables must lie in {COORDS}")
        by_name = dict(zip(COORDS, weights))
        seen = {
            sum(by_name[name] * e for name, e in zip(equation.variables, exp))
            for exp in equation.terms
        }
        if len(seen) != 1:
            raise ValueError("equation is not weighted homogeneous")
        found = seen.pop()
        if degree is not None and degree != found:
            raise ValueError(f"stated degree {degree} but monomials have degree {found}")
        self.weights = weights
        self.equation = equation
        self.degree = found

    def weight_of(self, name: str) -> int:
        return self.weights[COORDS.index(name)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedHypersurface):
            return NotImplemented
        return self.weights == other.weights and self.equation == other.equation

    def __repr__(self) -> str:
        return f'{{{self.equation} = 0}} in P{self.weights}'


class MonomialAut:
    """The map sending P to (scales[0]*P[perm[0]], ..., scales[3]*P[perm[3]]).

    When a surface is supplied the constructor checks that the
    permutation respects the weights and that the pullback of the
    equation is a scalar multiple of it; an unbound automorphism defers
    both checks to the caller.
    """

    __slots__ = ('perm', 'scales')

    def __init__(self, perm: Sequence[int], scales: Sequence[Scalarish],
                 surface: Optional[WeightedHypersurface] = None):
        perm = tuple(int(i) for i in perm)
        if sorted(perm) != [0, 1, 2, 3]:
            raise ValueError("not a permutation of the four coordinates")
        scales = tuple(_as_cyc(s) for s in scales)
        if len(scales) != 4 or any(s.is_zero for s in scales):
            raise ValueError("four nonzero scales required")
        self.perm = perm
        self.scales = scales
        if surface is not None:
            if any(surface.weights[perm[i]] != surface.weights[i] for i in range(4)):
                raise ValueError("permutation mixes coordinates of different weights")
            ok, _ = preserves(self, surface)
            if not ok:
                raise ValueError("map does not preserve the surface")

    @staticmethod
    def identity() -> 'MonomialAut':
        return MonomialAut((0, 1, 2, 3), (1, 1, 1, 1))

    @property
    def is_diagonal(self) -> bool:
        return self.perm == (0, 1, 2, 3)

    def pullback(self) -> dict[str, MultiPoly]:
        """Substitution realizing E -> E o phi on polynomials."""
        return {
            COORDS[i]: MultiPoly.variable(COORDS[self.perm[i]]) * self.scales[i]
            for i in range(4)
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialAut):
            return NotImplemented
        return self.perm == other.perm and self.scales == other.scales

    def __str__(self) -> str:
        pieces = []
        for i in range(4):
            name = COORDS[self.perm[i]]
            s = self.scales[i]
            if s == CycNumber(1):
                pieces.append(name)
            elif s == CycNumber(-1):
                pieces.append(f'-{name}')
            else:
                pieces.append(f'({s})*{name}')
        return '(w : x : y : z) -> (' + ' : '.join(pieces) + ')'

    def __repr__(self) -> str:
        return str(self)


def compose_auts(f: MonomialAut, g: MonomialAut) -> MonomialAut:
    """f after g."""
    perm = tuple(g.perm[f.perm[i]] for i in range(4))
    scales = tuple(f.scales[i] * g.scales[f.perm[i]] for i in range(4))
    return MonomialAut(perm, scales)


def aut_inverse(f: MonomialAut) -> MonomialAut:
    back = tuple(f.perm.index(j) for j in range(4))
    return MonomialAut(back, tuple(f.scales[back[j]].inverse() for j in range(4)))


def aut_power(f: MonomialAut, n: int) -> MonomialAut:
    if n < 0:
        return aut_power(aut_inverse(f), -n)
    out = MonomialAut.identity()
    for _ in range(n):
        out = compose_auts(out, f)
    return out


def preserves(aut: MonomialAut, surface: WeightedHypersurface) -> tuple[bool, Optional[CycNumber]]:
    """Whether the pullback of the equation is a scalar multiple of it;
    on success the scalar comes back too."""
    image = surface.equation.substitute(aut.pullback())
    exp, lead = surface.equation.leading()
    factor = image.terms.get(exp) if image.variables == surface.equation.variables else None
    if factor is None:
        return False, None
    lam = factor / lead
    if image == surface.equation * lam:
        return True, lam
    return False, None


def _is_weighted_identity(aut: MonomialAut, weights: tuple[int, ...]) -> bool:
    # scaling (w, x, y, z) by (l^a, l^b, l^c, l^d) acts trivially, so
    # anchor l at a weight-one coordinate
    if aut.perm != (0, 1, 2, 3):
        return False
    ones = [i for i, a in enumerate(weights) if a == 1]
    if not ones:
        raise ValueError("no weight-one coordinate to anchor the scaling")
    lam = aut.scales[ones[0]]
    return all(aut.scales[i] == lam ** weights[i] for i in range(4))


def same_aut(f: MonomialAut, g: MonomialAut, weights: tuple[int, ...]) -> bool:
    """Equality as maps of the weighted space, allowing the trivial
    rescaling between representatives."""
    if f.perm != g.perm:
        return False
    ratios = MonomialAut((0, 1, 2, 3), tuple(a / b for a, b in zip(f.scales, g.scales)))
    return _is_weighted_identity(ratios, weights)


def aut_order(aut: MonomialAut, surface: WeightedHypersurface, cap: int = ORDER_CAP) -> int:
    current = aut
    for n in range(1, cap + 1):
        if _is_weighted_identity(current, surface.weights):
            return n
        current = compose_auts(current, aut)
    raise ValueError(f"order exceeds the cap of {cap}")


# ----- roots of unity bookkeeping -----

def _root_log(c: CycNumber) -> tuple[int, int]:
    """(N, j) with c = zeta_N^j.  The conductor bounds the search, but
    minus a root of unity can live at twice the conductor, hence the
    second sweep."""
    n = c.conductor
    for m in (n, 2 * n):
        value = CycNumber(1)
        zeta = root_of_unity(m)
        for j in range(m):
            if value == c:
                return m, j
            value = value * zeta
    raise ValueError(f"not a root of unity: {c}")


def _scalar_order(c: CycNumber) -> int:
    m, j = _root_log(c)
    return m // gcd(m, j) if j else 1


def _nth_roots(c: CycNumber, k: int) -> list[CycNumber]:
    """All k-th roots of a root of unity."""
    m, j = _root_log(c)
    return [root_of_unity(k * m, j + t * m) for t in range(k)]


# ----- fixed loci -----

_KIND_RANK = {'surface': 0, 'curve': 1, 'point': 2}


class FixedComponent:
    """One stratum of a fixed locus: the coordinates left free, the
    equation restricted to them, and curve invariants when the
    restriction has a recognized shape."""

    __slots__ = ('kind', 'coords', 'equation', 'genus', 'j')

    def __init__(self, kind: str, coords: tuple[str, ...], equation: Optional[MultiPoly],
                 genus: Optional[int] = None, j: Optional[CycNumber] = None):
        self.kind = kind
        self.coords = coords
        self.equation = equation
        self.genus = genus
        self.j = j

    def __repr__(self) -> str:
        extra = ''
        if self.genus is not None:
            extra += f', genus {self.genus}'
        if self.j is not None:
            extra += f', j = {self.j}'
        return f'<{self.kind} on {"".join(self.coords)}: {self.equation}{extra}>'


def _trace_invariants(eq: MultiPoly, names: tuple[str, ...],
                      weights: dict[str, int]) -> tuple[Optional[int], Optional[CycNumber]]:
    """Genus and j of the curve cut out by eq on the free coordinates,
    dispatched on the weight signature of the stratum."""
    signature = tuple(sorted(weights[n] for n in names))
    if signature == (1, 1, 1):
        genus = plane_curve_genus(eq) if len(eq.variables) == 3 else 0
        j = None
        if eq.total_degree() == 3 and len(eq.variables) == 3:
            j = plane_cubic_j(eq)
        return genus, j
    if signature == (1, 2, 3):
        # w^2 = z^3 + lam*v^4*z + mu*v^6 with v the weight-one coordinate
        v = next(n for n in names if weights[n] == 1)
        spots = {(2, 0, 0): 'cw', (0, 0, 3): 'cz', (0, 4, 1): 'c1', (0, 6, 0): 'c0'}
        coeffs = {}
        for exp, coeff in eq.terms.items():
            key = (
                _exponent_of(eq, exp, 'w'),
                _exponent_of(eq, exp, v),
                _exponent_of(eq, exp, 'z'),
            )
            if key not in spots:
                return None, None
            coeffs[spots[key]] = coeff
        cw = coeffs.get('cw')
        cz = coeffs.get('cz')
        if cw is None or cz is None or cz != -cw:
            return None, None
        zero = CycNumber(0)
        lam = -coeffs.get('c1', zero) / cw
        mu = -coeffs.get('c0', zero) / cw
        try:
            curve = dp1_trace_to_weierstrass(lam, mu)
        except ValueError:
            return 0, None
        return 1, j_invariant(curve)
    if signature == (1, 1, 3):
        if eq.degree_in('w') == 2:
            parts = eq.dense_in('w')
            if len(parts) == 3 and parts[1].is_zero and parts[2].is_constant:
                pair = tuple(n for n in names if n != 'w')
                return conic_fiber_genus(parts[2], parts[1], parts[0], pair), None
        return None, None
    return None, None


def fixed_locus(aut: MonomialAut, surface: WeightedHypersurface) -> list[FixedComponent]:
    """Components of the fixed-point set of a diagonal automorphism,
    one per eigenvalue stratum meeting the surface.  Strata contained in
    a larger listed stratum are dropped."""
    if not aut.is_diagonal:
        raise ValueError("fixed loci are computed for diagonal maps only")
    ok, _ = preserves(aut, surface)
    if not ok:
        raise ValueError("map does not preserve the surface")
    weights = surface.weights
    candidates: list[CycNumber] = []
    for i in range(4):
        for r in _nth_roots(aut.scales[i], weights[i]):
            if r not in candidates:
                candidates.append(r)
    components: list[FixedComponent] = []
    seen: set[tuple[int, ...]] = set()
    for lam in candidates:
        free = tuple(i for i in range(4) if aut.scales[i] == lam ** weights[i])
        if not free or free in seen:
            continue
        seen.add(free)
        names = tuple(COORDS[i] for i in free)
        zeroed = {COORDS[i]: 0 for i in range(4) if i not in free}
        restricted = surface.equation.substitute(zeroed)
        if len(free) == 4:
            components.append(FixedComponent('surface', names, surface.equation))
        elif len(free) == 1:
            if restricted.is_zero:
                components.append(FixedComponent('point', names, None))
        elif len(free) == 2:
            if restricted.is_zero:
                components.append(FixedComponent('curve', names, None, genus=0))
            else:
                components.append(FixedComponent('point', names, restricted))
        else:
            wts = {COORDS[i]: weights[i] for i in free}
            genus, j = _trace_invariants(restricted, names, wts)
            components.append(FixedComponent('curve', names, restricted, genus, j))
    components = [
        c for c in components
        if not any(d is not c and set(c.coords) < set(d.coords) for d in components)
    ]
    components.sort(key=lambda c: (_KIND_RANK[c.kind], c.coords))
    return components


# ----- smoothness -----

def _binary_form(f: MultiPoly, degree: int, label: str) -> MultiPoly:
    if not isinstance(f, MultiPoly):
        f = MultiPoly.constant(f)
    if f.is_zero:
        return f
    if any(name not in ('x', 'y') for name in f.variables):
        raise ValueError(f"{label} must be a form in x and y")
    if not f.is_homogeneous() or f.total_degree() != degree:
        raise ValueError(f"{label} must be homogeneous of degree {degree}")
    return f


def smooth_cubic_surface(f: MultiPoly) -> bool:
    """Smoothness of the cyclic cover w^3 = f over the plane, which
    holds exactly when the branch cubic f is smooth.  A Weierstrass
    shape is settled by its closed discriminant criterion."""
    if f.is_zero or not f.is_homogeneous() or f.total_degree() != 3:
        raise ValueError("a ternary cubic is required")
    if any(name not in ('x', 'y', 'z') for name in f.variables):
        raise ValueError("the branch cubic must use x, y, z")
    shape = weierstrass_plane_form(f)
    if shape is not None:
        a, b = shape
        return not (CycNumber(4) * a ** 3 + CycNumber(27) * b ** 2).is_zero
    if len(f.variables) != 3:
        return False
    return smooth_plane_curve(f)


def smooth_dp1(f4: MultiPoly, f6: MultiPoly) -> bool:
    """Smoothness of w^2 = z^3 + f4*z + f6 in P(3, 1, 1, 2) by chart
    Jacobians.  A singular point needs w = 0, since the w-partial is 2w,
    and the locus x = y = 0 meets the surface only where w^2 = z^3,
    a single point at which the chart z != 0 is always smooth."""
    f4 = _binary_form(f4, 4, "the quartic")
    f6 = _binary_form(f6, 6, "the sextic")
    z = MultiPoly.variable('z')
    for chart in ('x', 'y'):
        c4 = f4.substitute({chart: 1})
        c6 = f6.substitute({chart: 1})
        e = z ** 3 + c4 * z + c6
        other = 'y' if chart == 'x' else 'x'
        system = [e, e.derivative('z'), e.derivative(other)]
        if common_zero_exists([p for p in system if not p.is_zero]):
            return False
    return True


def dp1_root_condition(f4: MultiPoly, f6: MultiPoly) -> bool:
    """Whether every multiple root of the sextic avoids the quartic's
    roots, the binary forms viewed on the projective line.  A zero
    quartic vanishes everywhere, so it passes only when the sextic is
    squarefree."""
    f4 = _binary_form(f4, 4, "the quartic")
    f6 = _binary_form(f6, 6, "the sextic")
    if f6.is_zero:
        return False
    d6 = f6.substitute({'y': 1})
    multiple = poly_gcd(d6, d6.derivative('x')) if not d6.is_constant else MultiPoly.constant(1)
    infinity_mult = 6 - d6.total_degree()
    if f4.is_zero:
        return multiple.is_constant and infinity_mult < 2
    d4 = f4.substitute({'y': 1})
    finite_hit = not poly_gcd(multiple, d4).is_constant
    infinity_hit = infinity_mult >= 2 and d4.total_degree() < 4
    return not (finite_hit or infinity_hit)


# ----- diagonal automorphism groups of degree-one surfaces -----

class AutGroupReport:
    """A finite abelian automorphism group: generators, invariant
    factors in ascending order, and the order."""

    __slots__ = ('generators', 'structure', 'order')

    def __init__(self, generators: Sequence[MonomialAut], structure: Sequence[int], order: int):
        self.generators = tuple(generators)
        self.structure = tuple(int(d) for d in structure)
        product = 1
        for d in self.structure:
            product *= d
        if product != order:
            raise ValueError("invariant factors do not multiply to the order")
        self.order = order

    def as_dict(self) -> dict:
        return {
            'order': self.order,
            'structure': list(self.structure),
            'generators': [str(g) for g in self.generators],
        }

    def __repr__(self) -> str:
        if not self.structure:
            return 'trivial group'
        return ' x '.join(f'Z/{d}' for d in self.structure) + f' (order {self.order})'


def _int_divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _invariant_chains(n: int, cap: Optional[int] = None):
    """Tuples d1 | d2 | ... | dk with product n, ascending, each at
    least 2; built from the largest factor down."""
    if n == 1:
        yield ()
        return
    for d in _int_divisors(n):
        if d < 2:
            continue
        if cap is not None and cap % d != 0:
            continue
        for rest in _invariant_chains(n // d, d):
            yield rest + (d,)


ScaleTuple = tuple[CycNumber, CycNumber, CycNumber, CycNumber]


def _tuple_mul(a: ScaleTuple, b: ScaleTuple) -> ScaleTuple:
    return tuple(p * q for p, q in zip(a, b))


def _tuple_order(t: ScaleTuple) -> int:
    return lcm(*(_scalar_order(c) for c in t))


def _abelian_structure(elements: list[ScaleTuple]) -> tuple[int, ...]:
    """Invariant factors recovered from the order statistics, which
    determine a finite abelian group completely."""
    n = len(elements)
    if n == 1:
        return ()
    orders = [_tuple_order(t) for t in elements]
    exponent = lcm(*orders)
    matches = []
    for chain in _invariant_chains(n):
        if not chain or chain[-1] != exponent:
            continue
        good = True
        for m in _int_divisors(exponent):
            predicted = 1
            for d in chain:
                predicted *= gcd(m, d)
            if predicted != sum(1 for o in orders if m % o == 0):
                good = False
                break
        if good:
            matches.append(chain)
    if len(matches) != 1:
        raise RuntimeError(f"order statistics match {len(matches)} abelian groups")
    return matches[0]


def _generating_tuples(elements: list[ScaleTuple]) -> list[ScaleTuple]:
    identity = tuple(CycNumber(1) for _ in range(4))
    pool = sorted(
        elements,
        key=lambda t: (-_tuple_order(t), tuple(c.canonical_key() for c in t)),
    )
    span = {identity}
    chosen: list[ScaleTuple] = []
    for e in pool:
        if e in span:
            continue
        chosen.append(e)
        powers = [identity]
        current = e
        while current != identity:
            powers.append(current)
            current = _tuple_mul(current, e)
        span = {_tuple_mul(s, p) for s in span for p in powers}
        if len(span) == len(elements):
            break
    return chosen


def _monomial_support(f: MultiPoly, label: str) -> list[int]:
    """y-exponents of the allowed binary forms: zero, a monomial, or a
    scalar multiple of x^6 + x*y^5 or its mirror."""
    if f.is_zero:
        return []
    exps = sorted(_exponent_of(f, exp, 'y') for exp in f.terms)
    if len(exps) == 1:
        return exps
    if len(exps) == 2 and f.total_degree() == 6:
        coeffs = {_exponent_of(f, exp, 'y'): c for exp, c in f.terms.items()}
        if set(coeffs) in ({0, 5}, {1, 6}):
            lo, hi = sorted(coeffs)
            if coeffs[lo] == coeffs[hi]:
                return exps
    raise ValueError(
        f"{label}: only monomial forms and the x^6 + x*y^5 family are supported"
    )


def dp1_diagonal_auts(f4: MultiPoly, f6: MultiPoly) -> AutGroupReport:
    """The diagonal automorphisms of w^2 = z^3 + f4*z + f6, enumerated
    with the x-scale pinned to 1, which removes the weighted-scaling
    ambiguity.  The scale on y is confined to a finite cyclotomic group
    by the exponent differences within and across the two forms; every
    candidate is verified against the surface before it counts."""
    f4 = _binary_form(f4, 4, "the quartic")
    f6 = _binary_form(f6, 6, "the sextic")
    if not smooth_dp1(f4, f6):
        raise ValueError("the surface is singular")
    surface = dp1_surface(f4, f6)
    b4 = _monomial_support(f4, "the quartic")
    b6 = _monomial_support(f6, "the sextic")
    base = b6[0]
    constraints = [b - base for b in b6]
    constraints += [b - b4[0] for b in b4]
    constraints += [2 * base - 3 * b for b in b4]
    modulus = 0
    for c in constraints:
        modulus = gcd(modulus, c)
    if modulus == 0:
        raise RuntimeError("the scale on y is unconstrained")
    elements: list[ScaleTuple] = []
    one = CycNumber(1)
    for t in range(modulus):
        ly = root_of_unity(modulus, t)
        s6 = ly ** base
        if b4:
            z_choices = [ly ** (base - b4[0])]
        else:
            z_choices = _nth_roots(s6, 3)
        for lz in z_choices:
            if lz ** 3 != s6:
                continue
            lw = cyc_sqrt(lz ** 3)
            for sw in (lw, -lw):
                candidate = MonomialAut((0, 1, 2, 3), (sw, one, ly, lz))
                ok, _ = preserves(candidate, surface)
                if ok:
                    elements.append(candidate.scales)
    structure = _abelian_structure(elements)
    generators = [
        MonomialAut((0, 1, 2, 3), t, surface) for t in _generating_tuples(elements)
    ]
    return AutGroupReport(generators, structure, len(elements))


def gs_subgroup(f4: MultiPoly) -> AutGroupReport:
    """The subgroup of diagonal automorphisms acting trivially on x, y,
    and the quotient: the fibrewise involution w -> -w, joined by
    z -> zeta_3 * z exactly when the quartic vanishes.  The generators
    come unbound since no specific sextic is singled out."""
    f4 = _binary_form(f4, 4, "the quartic")
    one = CycNumber(1)
    if f4.is_zero:
        gen = MonomialAut((0, 1, 2, 3), (CycNumber(-1), one, one, root_of_unity(3)))
        elements = [gen.scales]
        current = gen.scales
        for _ in range(5):
            current = _tuple_mul(current, gen.scales)
            elements.append(current)
        return AutGroupReport([gen], _abelian_structure(elements), 6)
    gen = MonomialAut((0, 1, 2, 3), (CycNumber(-1), one, one, one))
    identity = tuple(one for _ in range(4))
    return AutGroupReport([gen], _abelian_structure([gen.scales, identity]), 2)


# ----- eigenvalue certificates -----

def eigenvalue_multiset(aut: MonomialAut) -> tuple[CycNumber, ...]:
    """The four scales of a diagonal map, canonically sorted."""
    if not aut.is_diagonal:
        raise ValueError("eigenvalues are read off diagonal maps only")
    return tuple(sorted(aut.scales, key=lambda c: c.canonical_key()))


def multisets_scalar_related(a: Sequence[CycNumber], b: Sequence[CycNumber]) -> bool:
    """Whether some scalar carries one multiset onto the other; the
    candidates are the quotients against a fixed element of the first."""
    if len(a) != len(b):
        return False
    key = lambda c: c.canonical_key()
    left = sorted(a, key=key)
    for pick in b:
        lam = pick / left[0]
        if sorted((lam * c for c in left), key=key) == sorted(b, key=key):
            return True
    return False


# ----- named surfaces and automorphisms -----

def fermat_cubic() -> WeightedHypersurface:
    poly = sum(
        (MultiPoly.variable(name) ** 3 for name in COORDS),
        MultiPoly.constant(0),
    )
    return WeightedHypersurface((1, 1, 1, 1), poly, 3)


def cubic_cover(f: MultiPoly) -> WeightedHypersurface:
    """The cyclic cover w^3 = f of the plane, smooth for smooth f."""
    if not smooth_cubic_surface(f):
        raise ValueError("the branch cubic is singular")
    return WeightedHypersurface((1, 1, 1, 1), MultiPoly.variable('w') ** 3 - f, 3)


def dp1_surface(f4: MultiPoly, f6: MultiPoly) -> WeightedHypersurface:
    f4 = _binary_form(f4, 4, "the quartic")
    f6 = _binary_form(f6, 6, "the sextic")
    w = MultiPoly.variable('w')
    z = MultiPoly.variable('z')
    return WeightedHypersurface((3, 1, 1, 2), w ** 2 - z ** 3 - f4 * z - f6, 6)


def surface_s15() -> WeightedHypersurface:
    """The degree-one surface w^2 = z^3 + x^6 + x*y^5, whose diagonal
    automorphisms form a cyclic group of order 30."""
    x = MultiPoly.variable('x')
    y = MultiPoly.variable('y')
    return dp1_surface(MultiPoly.constant(0), x ** 6 + x * y ** 5)


def fermat_order9(which: int) -> MonomialAut:
    """The order-9 coordinate cycle (w : t*y : z : x) on the Fermat
    cubic, with t = zeta_3 for which = 1 and its square for which = 2.
    The two are the normal forms the order-9 conjugation test targets."""
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    one = CycNumber(1)
    return MonomialAut((0, 2, 3, 1), (one, root_of_unity(3, which), one, one), fermat_cubic())


def s15_order15() -> MonomialAut:
    one = CycNumber(1)
    scales = (one, one, root_of_unity(5), root_of_unity(3))
    return MonomialAut((0, 1, 2, 3), scales, surface_s15())


def bertini_involution(surface: Optional[WeightedHypersurface] = None) -> MonomialAut:
    """w -> -w, the covering involution of a degree-one surface over
    its anticanonical quadric cone."""
    one = CycNumber(1)
    return MonomialAut((0, 1, 2, 3), (CycNumber(-1), one, one, one), surface)


# ----- the order-9 normal form -----

_CYCLE_XYZ = (0, 2, 3, 1)


def fermat_order9_normalize(g: MonomialAut) -> tuple[int, MonomialAut]:
    """Conjugate an order-9 monomial automorphism of the Fermat cubic
    onto the normal form (w : t*y : z : x) with t = zeta_3 or its
    square.  Returns the class index (1 or 2) and the conjugator c with
    c^-1 * g * c equal to the normal form; the composition is verified
    before returning."""
    surface = fermat_cubic()
    ok, _ = preserves(g, surface)
    if not ok:
        raise ValueError("map does not preserve the surface")
    order = aut_order(g, surface, cap=36)
    if order != 9:
        raise ValueError(f"expected order 9, got order {order}")
    fixed = [i for i in range(4) if g.perm[i] == i]
    if len(fixed) != 1:
        raise ValueError("the permutation part must fix exactly one coordinate")
    conjugator = MonomialAut.identity()
    current = g
    ones = (CycNumber(1),) * 4
    if fixed[0] != 0:
        swap = list(range(4))
        swap[0], swap[fixed[0]] = swap[fixed[0]], swap[0]
        stage = MonomialAut(tuple(swap), ones, surface)
        current = compose_auts(aut_inverse(stage), compose_auts(current, stage))
        conjugator = compose_auts(conjugator, stage)
    if current.perm != _CYCLE_XYZ:
        stage = MonomialAut((0, 1, 3, 2), ones, surface)
        current = compose_auts(aut_inverse(stage), compose_auts(current, stage))
        conjugator = compose_auts(conjugator, stage)
    if current.perm != _CYCLE_XYZ:
        raise RuntimeError("could not orient the coordinate cycle")
    anchor = current.scales[0].inverse()
    b = current.scales[2] * anchor
    c = current.scales[3] * anchor
    t = current.scales[1] * anchor * b * c
    if t == CycNumber(1):
        raise ValueError("the cube acts trivially, so the order cannot be 9")
    one = CycNumber(1)
    stage = MonomialAut((0, 1, 2, 3), (one, one, b * c, c), surface)
    conjugator = compose_auts(conjugator, stage)
    target = MonomialAut(_CYCLE_XYZ, (one, t, one, one), surface)
    check = compose_auts(aut_inverse(conjugator), compose_auts(g, conjugator))
    if not same_aut(check, target, surface.weights):
        raise RuntimeError("conjugation check failed")
    which = 1 if t == root_of_unity(3) else 2
    return which, conjugator
