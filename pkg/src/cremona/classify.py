"""Conjugacy-class reports for finite-order plane maps.

For a given order this module emits the class count together with
explicit representatives and certificates separating them.  Even orders
and orders three and five admit infinitely many classes, told apart by
the genus or the j-invariant of a fixed curve; orders nine and fifteen
have exactly three and nine classes, realised on the Fermat cubic and
on a degree-one surface; every other odd order collapses to the single
linear class.

Certificates carry a ``checked`` flag when both values were computed
and compared here.  A few separations rest on arguments that are not
machine-checked; those carry a ``cited`` note instead and must not be
read as verified.

The module also computes conjugacy-invariant records for user-supplied
maps: the order, and for each proper power the fixed curves of genus at
least one with their invariants.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from .birmaps import (
    DEGREE_BOUND,
    BirMapP1P1,
    BirMapP2,
    component_genus,
    compose,
    fixed_curve,
)
from .birmaps import order as birmap_order
from .cyclotomic import CycNumber, root_of_unity
from .delpezzo import (
    MonomialAut,
    WeightedHypersurface,
    aut_order,
    aut_power,
    cubic_cover,
    dp1_diagonal_auts,
    dp1_surface,
    eigenvalue_multiset,
    fermat_cubic,
    fermat_order9,
    fixed_locus,
    multisets_scalar_related,
    s15_order15,
    smooth_dp1,
    surface_s15,
)
from .jonquieres import (
    JonqElement,
    jonq_compose,
    jonq_order,
    order8_twist,
    root_construct,
    root_search,
    to_birmap,
)
from .mapexpr import MapSyntaxError, parse_polynomial, parse_quadruple
from .mapexpr import parse_map as _parse_map_text
from .polynomials import MultiPoly

__all__ = [
    'Caps',
    'CapExceeded',
    'MapExpr',
    'ClassReport',
    'classify_order',
    'invariants_of',
    'parse_map',
    'parse_surface',
    'parse_aut',
    'CITED_SEPARATION',
]

CITED_SEPARATION = ('separation as birational classes beyond the surface '
                    'automorphism group is not machine-checked here')

UNIT_POWERS_15 = (1, 2, 4, 7, 8, 11, 13, 14)


class CapExceeded(RuntimeError):
    """An order or degree bound stopped a computation before an answer."""


class Caps:
    """Bounds shared by the searches: order iteration, map degree,
    twist-search degree, and the largest root-of-unity conductor the
    CLI will construct."""

    __slots__ = ('order_cap', 'degree_bound', 'root_degree_bound', 'conductor_cap')

    def __init__(self, order_cap: int = 64, degree_bound: int = DEGREE_BOUND,
                 root_degree_bound: int = 3, conductor_cap: int = 1200) -> None:
        for name, value in (('order_cap', order_cap), ('degree_bound', degree_bound),
                            ('root_degree_bound', root_degree_bound),
                            ('conductor_cap', conductor_cap)):
            if not isinstance(value, int) or value < 1:
                raise ValueError(f'{name} must be a positive integer')
        self.order_cap = order_cap
        self.degree_bound = degree_bound
        self.root_degree_bound = root_degree_bound
        self.conductor_cap = conductor_cap

    @staticmethod
    def from_dict(data: dict) -> 'Caps':
        known = {'order_cap', 'degree_bound', 'root_degree_bound', 'conductor_cap'}
        extra = set(data) - known
        if extra:
            raise ValueError(f'unknown config keys: {sorted(extra)}')
        return Caps(**data)


ParsedMap = Union[BirMapP2, BirMapP1P1, JonqElement, MonomialAut]


class MapExpr:
    """A parsed map together with its source text; surface-bound
    automorphisms also carry their surface."""

    __slots__ = ('source', 'parsed', 'surface')

    def __init__(self, source: str, parsed: ParsedMap,
                 surface: Optional[WeightedHypersurface] = None) -> None:
        if isinstance(parsed, MonomialAut) and surface is None:
            raise ValueError('a monomial automorphism needs its surface')
        self.source = source
        self.parsed = parsed
        self.surface = surface

    def __repr__(self) -> str:
        return f'MapExpr({self.parsed})'


def parse_map(text: str) -> MapExpr:
    """Parse arrow-form text into a plane or quadric map.

    The printed form of the result reparses to an equal object, which
    is what makes these expressions usable as fixture inputs.
    """
    return MapExpr(text, _parse_map_text(text))


_SURFACE_BUILDERS = ('SF', 'S15', 'DP1(<f4>, <f6>)', 'CUBIC(<f>)')


def parse_surface(text: str) -> WeightedHypersurface:
    """Resolve a surface name: the Fermat cubic ``SF``, the marked
    degree-one surface ``S15``, or parametrised families ``DP1(f4, f6)``
    (binary forms in x, y) and ``CUBIC(f)`` (a smooth ternary cubic)."""
    text = text.strip()
    if text == 'SF':
        return fermat_cubic()
    if text == 'S15':
        return surface_s15()
    if text.startswith('DP1(') and text.endswith(')'):
        body = text[4:-1]
        parts = body.split(',')
        if len(parts) != 2:
            raise MapSyntaxError('DP1 takes two binary forms separated by a comma')
        f4 = parse_polynomial(parts[0], ('x', 'y'))
        f6 = parse_polynomial(parts[1], ('x', 'y'))
        return dp1_surface(f4, f6)
    if text.startswith('CUBIC(') and text.endswith(')'):
        f = parse_polynomial(text[6:-1], ('x', 'y', 'z'))
        return cubic_cover(f)
    raise MapSyntaxError(f'unknown surface {text!r}; expected one of {_SURFACE_BUILDERS}')


def parse_aut(surface_text: str, aut_text: str) -> MapExpr:
    """Parse a coordinate quadruple like ``(w : x : zeta(3)*y : z)``
    into a monomial automorphism bound to the named surface."""
    surface = parse_surface(surface_text)
    comps = parse_quadruple(aut_text)
    perm = []
    scales = []
    for pos, comp in enumerate(comps):
        if len(comp.terms) != 1:
            raise MapSyntaxError(f'component {pos} is not a scaled coordinate')
        exp, coeff = next(iter(comp.terms.items()))
        if sum(exp) != 1:
            raise MapSyntaxError(f'component {pos} is not a scaled coordinate')
        name = comp.variables[exp.index(1)]
        perm.append(('w', 'x', 'y', 'z').index(name))
        scales.append(coeff)
    aut = MonomialAut(tuple(perm), tuple(scales), surface)
    return MapExpr(f'{aut} on {surface}', aut, surface)


class ClassReport:
    """The answer for one order: the count, representatives with
    verified orders, and separating certificates.

    Certificates are dicts with keys ``pair``, ``invariant``,
    ``values``, and either ``checked: True`` or ``cited: <note>``; the
    two values of any certificate must differ, and every
    representative's verified order must equal the report order.
    """

    __slots__ = ('order', 'count', 'representatives', 'certificates')

    def __init__(self, order: int, count: Union[int, str],
                 representatives: list, certificates: list) -> None:
        if count != 'infinite' and (not isinstance(count, int) or count < 1):
            raise ValueError("count must be a positive integer or 'infinite'")
        for name, _obj, verified in representatives:
            if verified != order:
                raise ValueError(f'representative {name} has order {verified}, '
                                 f'not {order}')
        for cert in certificates:
            a, b = cert['values']
            if a == b:
                raise ValueError(f'certificate for {cert["pair"]} does not separate')
            if not (cert.get('checked') is True or cert.get('cited')):
                raise ValueError('certificate is neither checked nor cited')
        self.order = order
        self.count = count
        self.representatives = list(representatives)
        self.certificates = list(certificates)

    def as_dict(self) -> dict:
        return {
            'order': self.order,
            'count': self.count,
            'representatives': [
                {'name': name, 'map': str(obj), 'order': verified}
                for name, obj, verified in self.representatives],
            'certificates': [dict(cert) for cert in self.certificates],
        }

    def __repr__(self) -> str:
        return (f'ClassReport(order={self.order}, count={self.count}, '
                f'{len(self.representatives)} representatives)')


def _proper_divisors(n: int) -> list:
    return [k for k in range(1, n) if n % k == 0]


def _jonq_self_power(f: JonqElement, k: int) -> JonqElement:
    out = f
    for _ in range(k - 1):
        out = jonq_compose(out, f)
    return out


def _birmap_self_power(f, k: int):
    out = f
    for _ in range(k - 1):
        out = compose(out, f)
    return out


def _genus_list(curve_report) -> list:
    out = []
    for factor, _mult in curve_report.components:
        g = component_genus(factor)
        if g is not None and g >= 1:
            out.append((g, factor))
    return out


def _half_power_genus(rep: JonqElement, n: int) -> int:
    """Genus of the non-rational curve fixed by the order-2 power."""
    half = _jonq_self_power(rep, n // 2) if n > 2 else rep
    found = _genus_list(fixed_curve(to_birmap(half)))
    if len(found) != 1:
        raise RuntimeError(f'expected one non-rational fixed curve, found {len(found)}')
    return found[0][0]


def _even_representative(n: int, d: int, caps: Caps) -> JonqElement:
    """The d-th member of the order-n family, with the twisting
    polynomial's degree strictly increasing in d.

    The constructive recipes cover two, four and eight times an odd
    number in their applicable ranges; the remaining two-power
    multiples fall back to the seed search, which may come up empty.
    """
    m = n
    a = 0
    while m % 2 == 0:
        m //= 2
        a += 1
    x = MultiPoly.variable('x')
    h = x ** (2 * d) + x + 1 if m == 1 else x ** d + x + 1
    if a == 1:
        seed = root_construct(h, m)
        return jonq_compose(seed, seed)
    if a == 2:
        return root_construct(h, m)
    if a == 3 and m == 1:
        return order8_twist(d)
    g = x ** (n * d) - MultiPoly.constant(4)
    found = root_search(g, n, degree_bound=caps.root_degree_bound)
    if found is None:
        raise CapExceeded(f'no seed of order {n} found for degree {n * d} '
                          f'within the search bounds')
    return found


def _even_family(n: int, family_size: int, caps: Caps) -> ClassReport:
    reps = []
    genera = []
    for d in range(1, family_size + 1):
        rep = _even_representative(n, d, caps)
        verified = jonq_order(rep, cap=caps.order_cap)
        if verified != n:
            raise RuntimeError(f'family member {d} has order {verified}, expected {n}')
        genus = _half_power_genus(rep, n)
        reps.append((f'jonq-g{genus:03d}', rep, verified))
        genera.append(genus)
    if any(b <= a for a, b in zip(genera, genera[1:])):
        raise RuntimeError(f'fixed-curve genera {genera} are not strictly increasing')
    certificates = [
        {'pair': (reps[i][0], reps[i + 1][0]),
         'invariant': 'fixed-curve genus of the half-order power',
         'values': (str(genera[i]), str(genera[i + 1])),
         'checked': True}
        for i in range(len(reps) - 1)]
    return ClassReport(n, 'infinite', reps, certificates)


def _elliptic_parameters(family_size: int) -> list:
    pairs = [(1, 1), (1, 2), (2, 1)]
    k = 3
    while len(pairs) < family_size:
        pairs.append((1, k))
        k += 1
    return pairs[:family_size]


def _distinct_j_certificates(reps: list, jvals: list, invariant: str) -> list:
    certificates = []
    for i in range(len(reps)):
        for k in range(i + 1, len(reps)):
            if jvals[i] == jvals[k]:
                raise RuntimeError(f'representatives {reps[i][0]} and {reps[k][0]} '
                                   f'share the j-invariant {jvals[i]}')
            certificates.append({'pair': (reps[i][0], reps[k][0]),
                                 'invariant': invariant,
                                 'values': (str(jvals[i]), str(jvals[k])),
                                 'checked': True})
    return certificates


def _fixed_elliptic_j(aut: MonomialAut, surface: WeightedHypersurface) -> CycNumber:
    curves = [c for c in fixed_locus(aut, surface)
              if c.kind == 'curve' and c.genus == 1 and c.j is not None]
    if len(curves) != 1:
        raise RuntimeError(f'expected one fixed elliptic curve, found {len(curves)}')
    return curves[0].j


def _order3_family(family_size: int, caps: Caps) -> ClassReport:
    x, y, z = (MultiPoly.variable(v) for v in ('x', 'y', 'z'))
    reps = []
    jvals = []
    for a, b in _elliptic_parameters(family_size):
        f = y ** 2 * z - x ** 3 - a * (x * z ** 2) - b * z ** 3
        surface = cubic_cover(f)
        deck = MonomialAut((0, 1, 2, 3),
                           (root_of_unity(3), CycNumber(1), CycNumber(1), CycNumber(1)),
                           surface)
        verified = aut_order(deck, surface, cap=caps.order_cap)
        jvals.append(_fixed_elliptic_j(deck, surface))
        reps.append((f'cover-{a}-{b}', deck, verified))
    certificates = _distinct_j_certificates(
        reps, jvals, 'j-invariant of the fixed elliptic curve')
    return ClassReport(3, 'infinite', reps, certificates)


def _order5_family(family_size: int, caps: Caps) -> ClassReport:
    x, y = MultiPoly.variable('x'), MultiPoly.variable('y')
    reps = []
    jvals = []
    for a, b in _elliptic_parameters(family_size):
        f4 = a * x ** 4
        f6 = b * x ** 6 + x * y ** 5
        if not smooth_dp1(f4, f6):
            raise RuntimeError(f'surface parameters ({a}, {b}) give a singular surface')
        surface = dp1_surface(f4, f6)
        rot = MonomialAut((0, 1, 2, 3),
                          (CycNumber(1), CycNumber(1), root_of_unity(5), CycNumber(1)),
                          surface)
        verified = aut_order(rot, surface, cap=caps.order_cap)
        jvals.append(_fixed_elliptic_j(rot, surface))
        reps.append((f'dp1-{a}-{b}', rot, verified))
    certificates = _distinct_j_certificates(
        reps, jvals, 'j-invariant of the fixed elliptic curve')
    return ClassReport(5, 'infinite', reps, certificates)


def _linear_rotation(n: int) -> BirMapP2:
    x, y, z = (MultiPoly.variable(v) for v in ('x', 'y', 'z'))
    return BirMapP2((x, y, root_of_unity(n) * z))


def _cube_fixed_genus_birmap(f: BirMapP2) -> int:
    cube = _birmap_self_power(f, 3)
    found = _genus_list(fixed_curve(cube))
    return max((g for g, _ in found), default=0)


def _order9_report(caps: Caps) -> ClassReport:
    surface = fermat_cubic()
    linear = _linear_rotation(9)
    linear_order = birmap_order(linear, cap=caps.order_cap,
                                degree_bound=caps.degree_bound)
    reps = [('alpha9', linear, linear_order)]
    twists = {}
    for which in (1, 2):
        aut = fermat_order9(which)
        reps.append((f'rho{which}', aut, aut_order(aut, surface, cap=caps.order_cap)))
        twists[which] = aut
    certificates = []
    linear_genus = _cube_fixed_genus_birmap(linear)
    cube_genus = {}
    for which in (1, 2):
        cube = aut_power(twists[which], 3)
        curves = [c for c in fixed_locus(cube, surface)
                  if c.kind == 'curve' and c.genus is not None]
        cube_genus[which] = max((c.genus for c in curves), default=0)
        certificates.append({
            'pair': ('alpha9', f'rho{which}'),
            'invariant': 'maximal genus among curves fixed by the cube',
            'values': (str(linear_genus), str(cube_genus[which])),
            'checked': True})
        if cube_genus[which] < 1:
            raise RuntimeError(f'the cube of rho{which} fixes no non-rational curve')
    m1 = eigenvalue_multiset(aut_power(twists[1], 3))
    m2 = eigenvalue_multiset(aut_power(twists[2], 3))
    if multisets_scalar_related(m1, m2):
        raise RuntimeError('the cube eigenvalue multisets are scalar-related')
    certificates.append({
        'pair': ('rho1', 'rho2'),
        'invariant': 'eigenvalue multiset of the cube modulo scalars',
        'values': (str(m1), str(m2)),
        'checked': True})
    return ClassReport(9, 3, reps, certificates)


def _order15_report(caps: Caps) -> ClassReport:
    surface = surface_s15()
    x, y = MultiPoly.variable('x'), MultiPoly.variable('y')
    group = dp1_diagonal_auts(MultiPoly(), x ** 6 + x * y ** 5)
    if group.structure != (30,):
        raise RuntimeError(f'expected a cyclic group of order 30, got {group.structure}')
    linear = _linear_rotation(15)
    linear_order = birmap_order(linear, cap=caps.order_cap,
                                degree_bound=caps.degree_bound)
    reps = [('alpha15', linear, linear_order)]
    generator = s15_order15()
    powers = {}
    for k in UNIT_POWERS_15:
        aut = aut_power(generator, k)
        powers[k] = aut
        reps.append((f'theta{k:02d}', aut,
                     aut_order(aut, surface, cap=caps.order_cap)))
    certificates = []
    # the order-5 part of the linear class fixes only rational curves
    linear_five = _birmap_self_power(linear, 3)
    linear_genus = max((g for g, _ in _genus_list(fixed_curve(linear_five))), default=0)
    for k in UNIT_POWERS_15:
        five = aut_power(powers[k], 3)
        curves = [c for c in fixed_locus(five, surface)
                  if c.kind == 'curve' and c.genus is not None]
        genus = max((c.genus for c in curves), default=0)
        if genus < 1:
            raise RuntimeError(f'the order-5 part of theta^{k} fixes no '
                               f'non-rational curve')
        certificates.append({
            'pair': ('alpha15', f'theta{k:02d}'),
            'invariant': 'maximal genus among curves fixed by the order-5 part',
            'values': (str(linear_genus), str(genus)),
            'checked': True})
    for i, k1 in enumerate(UNIT_POWERS_15):
        for k2 in UNIT_POWERS_15[i + 1:]:
            s1, s2 = str(powers[k1].scales), str(powers[k2].scales)
            if s1 == s2:
                raise RuntimeError(f'powers {k1} and {k2} share eigenvalue data')
            certificates.append({
                'pair': (f'theta{k1:02d}', f'theta{k2:02d}'),
                'invariant': 'eigenvalue data within the verified cyclic group',
                'values': (s1, s2),
                'cited': CITED_SEPARATION})
    return ClassReport(15, 9, reps, certificates)


def _single_linear_class(n: int, caps: Caps) -> ClassReport:
    linear = _linear_rotation(n)
    verified = birmap_order(linear, cap=max(caps.order_cap, n + 1),
                            degree_bound=caps.degree_bound)
    if verified != n:
        raise RuntimeError(f'the linear rotation has order {verified}, expected {n}')
    return ClassReport(n, 1, [(f'alpha{n}', linear, verified)], [])


def classify_order(n: int, family_size: int = 3,
                   caps: Optional[Caps] = None) -> ClassReport:
    """Class count and certified representatives for order n.

    Even orders and orders three and five return ``'infinite'`` with
    ``family_size`` members of pairwise distinct invariants; order nine
    returns three classes, order fifteen nine, and every other odd
    order the single linear class.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError('the order must be a positive integer')
    if family_size < 2:
        raise ValueError('family_size must be at least 2')
    caps = caps or Caps()
    if n % 2 == 0:
        return _even_family(n, family_size, caps)
    if n == 3:
        return _order3_family(family_size, caps)
    if n == 5:
        return _order5_family(family_size, caps)
    if n == 9:
        return _order9_report(caps)
    if n == 15:
        return _order15_report(caps)
    return _single_linear_class(n, caps)


# ===== Invariant records for user-supplied maps =====

def _unwrap(m) -> tuple:
    if isinstance(m, MapExpr):
        return m.parsed, m.surface
    if isinstance(m, tuple) and len(m) == 2 and isinstance(m[0], MonomialAut):
        return m
    return m, None


def _curve_entries_birmap(power_map) -> tuple:
    entries = []
    unrecognized = []
    for factor, _mult in fixed_curve(power_map).components:
        genus = component_genus(factor)
        if genus is None:
            unrecognized.append(str(factor))
        elif genus >= 1:
            entries.append({'genus': genus, 'j': None, 'equation': str(factor)})
    return entries, unrecognized


def _curve_entries_aut(aut: MonomialAut, surface: WeightedHypersurface) -> list:
    entries = []
    for comp in fixed_locus(aut, surface):
        if comp.kind == 'curve' and comp.genus is not None and comp.genus >= 1:
            entries.append({'genus': comp.genus,
                            'j': None if comp.j is None else str(comp.j),
                            'equation': str(comp.equation)})
    return entries


def invariants_of(m, caps: Optional[Caps] = None) -> dict:
    """Conjugacy-invariant record of a finite-order map.

    The record lists the verified order and, for every proper divisor
    k, the curves of genus at least one fixed pointwise by the k-th
    power, with j-invariants where the curve shape determines one.
    Powers whose fixed locus the machinery cannot inspect are marked
    ``computed: False`` rather than reported empty.
    """
    caps = caps or Caps()
    obj, surface = _unwrap(m)
    if isinstance(obj, JonqElement):
        n = jonq_order(obj, cap=caps.order_cap)
        if n is None:
            raise CapExceeded(f'order not found within {caps.order_cap} iterations')
        work: ParsedMap = to_birmap(obj)
        is_aut = False
    elif isinstance(obj, (BirMapP2, BirMapP1P1)):
        n = birmap_order(obj, cap=caps.order_cap, degree_bound=caps.degree_bound)
        if n is None:
            raise CapExceeded(f'order not found within caps (order {caps.order_cap}, '
                              f'degree {caps.degree_bound})')
        work = obj
        is_aut = False
    elif isinstance(obj, MonomialAut):
        if surface is None:
            raise ValueError('a monomial automorphism needs its surface')
        try:
            n = aut_order(obj, surface, cap=caps.order_cap)
        except ValueError as err:
            if 'cap' in str(err):
                raise CapExceeded(str(err)) from err
            raise
        work = obj
        is_aut = True
    else:
        raise TypeError(f'cannot analyse {type(obj).__name__}')

    powers = []
    for k in _proper_divisors(n):
        if is_aut:
            pk = aut_power(work, k)
            if pk.is_diagonal:
                powers.append({'power': k, 'computed': True,
                               'curves': _curve_entries_aut(pk, surface)})
            else:
                powers.append({'power': k, 'computed': False, 'curves': []})
        else:
            pk = _birmap_self_power(work, k)
            entries, unrecognized = _curve_entries_birmap(pk)
            entry = {'power': k, 'computed': True, 'curves': entries}
            if unrecognized:
                entry['unrecognized'] = unrecognized
            powers.append(entry)
    return {'order': n, 'map': str(obj), 'powers': powers}
