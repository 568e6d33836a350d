"""Plane maps preserving the pencil of lines through a point.

Such a map sends lines of the pencil to lines of the pencil, so it is
determined by a constant Mobius action on the base coordinate together
with a Mobius matrix over the rational function field of the base acting
on the fibre coordinate.  We store exactly that pair and push it to an
honest birational map of the plane or the quadric only on demand.

Composition substitutes the base action of the right factor into the
fibre matrix of the left factor; the convention is pinned down by
requiring `to_birmap` to be a homomorphism.

The second half of the file works inside the subalgebra of fibre
matrices of the shape [[a, b*g], [b, a]].  These commute with each
other, form a torus worth of elements for fixed g, and carry a norm map
that underlies the search for roots of the involution y -> g/y.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product as _iterproduct
from math import isqrt
from typing import Optional, Sequence, Union

from .birmaps import BirMapP1P1, BirMapP2
from .cyclotomic import CycNumber, cyc_sqrt, root_of_unity
from .polynomials import MultiPoly, RatFunc, homogenize, is_squarefree, poly_gcd

Scalarish = Union[int, Fraction, CycNumber]
Funcish = Union[int, Fraction, CycNumber, MultiPoly, RatFunc]

BASE_VAR = 'x'


def _as_ratfunc(value: Funcish) -> RatFunc:
    if isinstance(value, RatFunc):
        if value.var != BASE_VAR:
            raise ValueError(f"fibre entries live over {BASE_VAR!r}, got {value.var!r}")
        return value
    return RatFunc(value, 1, var=BASE_VAR)


def _check_base_poly(g: MultiPoly) -> MultiPoly:
    if not isinstance(g, MultiPoly):
        g = MultiPoly.constant(g)
    if g.is_zero:
        raise ValueError("zero twisting polynomial")
    if any(v != BASE_VAR for v in g.variables):
        raise ValueError(f"twisting polynomial must be univariate in {BASE_VAR!r}")
    return g


class Mobius2:
    """An invertible 2x2 matrix over C(x), stored projectively.

    Scaling the matrix does not change the fractional-linear action on
    the fibre, so storage is the polynomial matrix obtained by clearing
    denominators, stripping the gcd of the entries, and making the first
    nonzero entry monic; equality is then plain entry equality, and
    iterated products stay small because the gcd strip runs after every
    multiplication.
    """

    __slots__ = ('_rows',)

    def __init__(self, rows: Sequence[Sequence[Funcish]]):
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("expected a 2x2 matrix")
        funcs = [_as_ratfunc(e) for row in rows for e in row]
        denom = MultiPoly.constant(1)
        for e in funcs:
            denom = (denom * e.den).divexact(poly_gcd(denom, e.den)).monic()
        entries = [e.num * denom.divexact(e.den) for e in funcs]
        a, b, c, d = entries
        if (a * d - b * c).is_zero:
            raise ValueError("fibre matrix is singular")
        content = MultiPoly()
        for e in entries:
            if not e.is_zero:
                content = e.monic() if content.is_zero else poly_gcd(content, e)
        entries = [e.divexact(content) for e in entries]
        scale = next(e for e in entries if not e.is_zero).leading_coeff().inverse()
        a, b, c, d = (e * scale for e in entries)
        self._rows = ((a, b), (c, d))

    @staticmethod
    def identity() -> 'Mobius2':
        return Mobius2(((1, 0), (0, 1)))

    @property
    def rows(self) -> tuple[tuple[MultiPoly, MultiPoly],
                            tuple[MultiPoly, MultiPoly]]:
        return self._rows

    def is_identity(self) -> bool:
        return self == Mobius2.identity()

    def mul(self, other: 'Mobius2') -> 'Mobius2':
        (a, b), (c, d) = self._rows
        (p, q), (r, s) = other._rows
        return Mobius2(((a * p + b * r, a * q + b * s),
                        (c * p + d * r, c * q + d * s)))

    def substitute(self, value: Union[RatFunc, MultiPoly]) -> 'Mobius2':
        """Compose every entry with the given base change x -> value."""
        if isinstance(value, RatFunc) and value.is_polynomial():
            value = value.num
        if isinstance(value, MultiPoly):
            return Mobius2(tuple(tuple(e.substitute({BASE_VAR: value})
                                       for e in row) for row in self._rows))
        return Mobius2(tuple(tuple(RatFunc(e).substitute(value) for e in row)
                             for row in self._rows))

    def det(self) -> MultiPoly:
        (a, b), (c, d) = self._rows
        return a * d - b * c

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mobius2):
            return NotImplemented
        return self._rows == other._rows

    def __str__(self) -> str:
        (a, b), (c, d) = self._rows
        return f"[[{a}, {b}], [{c}, {d}]]"

    def __repr__(self) -> str:
        return f"Mobius2({self})"


def _as_scalar(value: Scalarish) -> CycNumber:
    return value if isinstance(value, CycNumber) else CycNumber(value)


class JonqElement:
    """A pencil-preserving map: base Mobius action plus fibre matrix.

    The base action is a constant invertible 2x2 matrix (p, q; r, s)
    acting as x -> (p x + q)/(r x + s); it is normalised projectively
    the same way as the fibre matrix.
    """

    __slots__ = ('_vertical', '_horizontal')

    def __init__(self, vertical: Mobius2,
                 horizontal: Sequence[Sequence[Scalarish]]):
        if not isinstance(vertical, Mobius2):
            raise TypeError("vertical part must be a Mobius2")
        if len(horizontal) != 2 or any(len(r) != 2 for r in horizontal):
            raise ValueError("expected a 2x2 base matrix")
        p, q = _as_scalar(horizontal[0][0]), _as_scalar(horizontal[0][1])
        r, s = _as_scalar(horizontal[1][0]), _as_scalar(horizontal[1][1])
        if (p * s - q * r).is_zero:
            raise ValueError("base matrix is singular")
        pivot = next(e for e in (p, q, r, s) if not e.is_zero).inverse()
        self._vertical = vertical
        self._horizontal = ((p * pivot, q * pivot), (r * pivot, s * pivot))

    @staticmethod
    def identity() -> 'JonqElement':
        return JonqElement(Mobius2.identity(), ((1, 0), (0, 1)))

    @property
    def vertical(self) -> Mobius2:
        return self._vertical

    @property
    def horizontal(self) -> tuple[tuple[CycNumber, CycNumber],
                                  tuple[CycNumber, CycNumber]]:
        return self._horizontal

    def base_action(self) -> RatFunc:
        """The induced Mobius map of the base, as an element of C(x)."""
        (p, q), (r, s) = self._horizontal
        x = MultiPoly.variable(BASE_VAR)
        return RatFunc(x * p + MultiPoly.constant(q),
                       x * r + MultiPoly.constant(s))

    def is_identity(self) -> bool:
        return self == JonqElement.identity()

    def __eq__(self, other) -> bool:
        if not isinstance(other, JonqElement):
            return NotImplemented
        return (self._horizontal == other._horizontal
                and self._vertical == other._vertical)

    def __str__(self) -> str:
        (a, b), (c, d) = self._vertical.rows
        return (f"(x, y) -> ({self.base_action()}, "
                f"(({a})*y + ({b})) / (({c})*y + ({d})))")

    def __repr__(self) -> str:
        return f"JonqElement(base={self.base_action()}, fibre={self._vertical})"


def jonq_compose(f: JonqElement, h: JonqElement) -> JonqElement:
    """The map applying h first and f second.

    The fibre matrix of the composite evaluates f's fibre matrix along
    h's base action before multiplying by h's fibre matrix; any other
    order fails to commute with `to_birmap`.
    """
    (p, q), (r, s) = f.horizontal
    (P, Q), (R, S) = h.horizontal
    horizontal = ((p * P + q * R, p * Q + q * S),
                  (r * P + s * R, r * Q + s * S))
    vertical = f.vertical.substitute(h.base_action()).mul(h.vertical)
    return JonqElement(vertical, horizontal)


def jonq_order(f: JonqElement, cap: int = 64) -> Optional[int]:
    """Order by iteration; None once the cap is passed."""
    current = f
    for n in range(1, cap + 1):
        if current.is_identity():
            return n
        current = jonq_compose(current, f)
    return None


def jonq_twist(nu: Funcish, g: MultiPoly, n: int) -> JonqElement:
    """The map (x, y) -> (z x, (nu y + g)/(y + nu)) with z an n-th root of 1.

    Requires g invariant under the base rotation and nu^2 != g, which is
    exactly invertibility of the fibre matrix.
    """
    g = _check_base_poly(g)
    nu = _as_ratfunc(nu)
    if n < 1:
        raise ValueError("rotation order must be positive")
    zeta = root_of_unity(n)
    x = MultiPoly.variable(BASE_VAR)
    if g.substitute({BASE_VAR: x * zeta}) != g:
        raise ValueError("twisting polynomial is not rotation invariant")
    if (nu * nu - RatFunc(g)).is_zero:
        raise ValueError("fibre matrix is singular")
    vertical = Mobius2(((nu, RatFunc(g)), (1, nu)))
    return JonqElement(vertical, ((zeta, 0), (0, 1)))


def jonq_power(nu: Funcish, g: MultiPoly, n: int) -> Mobius2:
    """Fibre matrix of the n-th power of the twist (x, y) -> (z x, (nu y + g)/(y + nu)).

    All n factors lie in the commutative algebra spanned by the identity
    and J = [[0, g], [1, 0]], so the product is computed as a pair
    (even, odd) with (a + b J)(c + d J) = (a c + b d g) + (a d + b c) J.
    """
    g = _check_base_poly(g)
    nu = _as_ratfunc(nu)
    if n < 1:
        raise ValueError("power must be positive")
    zeta = root_of_unity(n)
    x = MultiPoly.variable(BASE_VAR)
    if g.substitute({BASE_VAR: x * zeta}) != g:
        raise ValueError("twisting polynomial is not rotation invariant")
    if (nu * nu - RatFunc(g)).is_zero:
        raise ValueError("fibre matrix is singular")
    # Each factor is num + den*J with J = [[0, g], [1, 0]]; J^2 = g makes
    # the subalgebra commutative, so the product is a polynomial pair.
    even, odd = MultiPoly.constant(1), MultiPoly()
    for i in range(n):
        rotation = {BASE_VAR: x * root_of_unity(n, i)}
        num = nu.num.substitute(rotation)
        den = nu.den.substitute(rotation)
        even, odd = even * num + odd * den * g, even * den + odd * num
    return Mobius2(((even, odd * g), (odd, even)))


_TARGETS = ('P2', 'P1xP1')


def to_birmap(f: JonqElement, target: str = 'P1xP1'):
    """Realise the pair as a birational map of the plane or the quadric.

    On the quadric, (x1 : x2) carries the base and (y1 : y2) the fibre.
    On the plane the pencil is the lines through (0 : 1 : 0); the affine
    chart is x = X/Z, y = Y/Z.
    """
    if target not in _TARGETS:
        raise ValueError(f"target must be one of {_TARGETS}")
    (p, q), (r, s) = f.horizontal
    numerators = [e for row in f.vertical.rows for e in row]
    degree = max(n.total_degree() for n in numerators)
    if target == 'P1xP1':
        x1 = MultiPoly.variable('x1')
        x2 = MultiPoly.variable('x2')
        y1 = MultiPoly.variable('y1')
        y2 = MultiPoly.variable('y2')
        a_h, b_h, c_h, d_h = (
            homogenize(n.substitute({BASE_VAR: x1}), 'x1', 'x2', degree)
            for n in numerators)
        return BirMapP1P1(((x1 * p + x2 * q, x1 * r + x2 * s),
                           (a_h * y1 + b_h * y2, c_h * y1 + d_h * y2)))
    X = MultiPoly.variable('x')
    Y = MultiPoly.variable('y')
    Z = MultiPoly.variable('z')
    a_h, b_h, c_h, d_h = (homogenize(n, 'x', 'z', degree) for n in numerators)
    base_num = X * p + Z * q
    base_den = X * r + Z * s
    fibre_num = a_h * Y + b_h * Z
    fibre_den = c_h * Y + d_h * Z
    return BirMapP2((base_num * fibre_den, fibre_num * base_den,
                     base_den * fibre_den))


class TorusElement:
    """An element a + b J of the commutative fibre algebra with J^2 = g.

    Stored projectively: the pair (a, b) over C(x) matters only up to a
    common scalar, matching the Mobius matrix [[a, b g], [b, a]] it
    represents.  For canonical storage the later of the two entries that
    is nonzero gets a monic numerator.
    """

    __slots__ = ('_alpha', '_beta', '_g')

    def __init__(self, alpha: Funcish, beta: Funcish, g: MultiPoly):
        g = _check_base_poly(g)
        if not is_squarefree(g):
            raise ValueError("twisting polynomial must be squarefree")
        alpha, beta = _as_ratfunc(alpha), _as_ratfunc(beta)
        if alpha.is_zero and beta.is_zero:
            raise ValueError("zero element of the fibre algebra")
        pivot = beta if not beta.is_zero else alpha
        scale = pivot.num.leading_coeff().inverse()
        self._alpha = alpha * scale
        self._beta = beta * scale
        self._g = g

    @property
    def alpha(self) -> RatFunc:
        return self._alpha

    @property
    def beta(self) -> RatFunc:
        return self._beta

    @property
    def g(self) -> MultiPoly:
        return self._g

    def to_mobius(self) -> Mobius2:
        return Mobius2(((self._alpha, self._beta * RatFunc(self._g)),
                        (self._beta, self._alpha)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        if self._g != other._g:
            return False
        return self._alpha * other._beta == other._alpha * self._beta

    def __str__(self) -> str:
        return f"({self._alpha}) + ({self._beta})*J"

    def __repr__(self) -> str:
        return f"TorusElement({self._alpha!r}, {self._beta!r}, g={self._g})"


def torus_mul(s: TorusElement, t: TorusElement) -> TorusElement:
    if s.g != t.g:
        raise ValueError("elements live over different twisting polynomials")
    g = RatFunc(s.g)
    return TorusElement(s.alpha * t.alpha + s.beta * t.beta * g,
                        s.alpha * t.beta + s.beta * t.alpha, s.g)


def torus_norm(t: TorusElement, n: int) -> TorusElement:
    """Product of the rotation conjugates of t over the order-n rotation.

    Requires g invariant under x -> z x; the result then has both
    entries fixed by the rotation, which is checked rather than trusted.
    """
    if n < 1:
        raise ValueError("rotation order must be positive")
    x = MultiPoly.variable(BASE_VAR)
    zeta = root_of_unity(n)
    if t.g.substitute({BASE_VAR: x * zeta}) != t.g:
        raise ValueError("twisting polynomial is not rotation invariant")
    result = t
    for i in range(1, n):
        shift = x * root_of_unity(n, i)
        conjugate = TorusElement(t.alpha.substitute(shift),
                                 t.beta.substitute(shift), t.g)
        result = torus_mul(result, conjugate)
    rotated_alpha = result.alpha.substitute(x * zeta)
    rotated_beta = result.beta.substitute(x * zeta)
    if (rotated_alpha * result.beta != rotated_beta * result.alpha):
        raise ValueError("norm is not rotation invariant")
    return result


def root_construct(h: Funcish, m: int) -> JonqElement:
    """A map of order 4m squaring to (x, y) -> (z x, g(x)/y) with z of order m.

    Here g = -h(x^m) h(-x^m).  The recipe fails, with an error, exactly
    when h(x^m) + h(-x^m) or h(x^m) vanishes, since then the fibre
    matrix would be singular.
    """
    if m < 1 or m % 2 == 0:
        raise ValueError("the base rotation order must be odd and positive")
    h = _as_ratfunc(h)
    x = MultiPoly.variable(BASE_VAR)
    h_pos = h.substitute(MultiPoly((BASE_VAR,), {(m,): CycNumber(1)}))
    h_neg = h_pos.substitute(-x)
    if h_pos.is_zero or (h_pos + h_neg).is_zero:
        raise ValueError("degenerate seed; the fibre matrix would be singular")
    vertical = Mobius2(((h_pos, -(h_pos * h_neg)), (1, h_pos)))
    return JonqElement(vertical, ((root_of_unity(2 * m), 0), (0, 1)))


_ORDER8_SQUARES = {1: (1,), 2: (1, 16), 3: (1, 4, 9)}


def order8_twist(d: int) -> JonqElement:
    """An order-8 twist whose fourth power is (x, y) -> (x, g(x)/y),
    where g runs over prod(x^4 - r) for the d-th stored square set.

    The fibre seed comes from a norm equation.  Writing u = x^2 and
    w = c * prod(u + sqrt(r)), the product w * (w + w(-u)) is expressed
    as q^2 + u p^2 by composing one norm pair per linear factor, and the
    seed is nu = w + q + i*p*x.  The stored square sets are chosen so
    that every square root the factorisation needs lies in a cyclotomic
    field; the fourth-power identity is re-verified on each call rather
    than trusted.
    """
    squares = _ORDER8_SQUARES.get(d)
    if squares is None:
        raise ValueError(f"no stored square set for index {d}; "
                         f"available: {sorted(_ORDER8_SQUARES)}")
    from .curves import exact_roots
    u = MultiPoly.variable('u')
    x = MultiPoly.variable(BASE_VAR)
    i_unit = root_of_unity(4)
    lead = CycNumber(1) if d % 2 else i_unit
    w = MultiPoly.constant(lead)
    for r in squares:
        w = w * (u + MultiPoly.constant(isqrt(r)))
    mirrored = w.substitute({'u': -u})
    total = w * (w + mirrored)
    # One norm pair (q, p) with q^2 + u p^2 = factor, per linear factor.
    pairs = [(MultiPoly.constant(cyc_sqrt(CycNumber(isqrt(r)))),
              MultiPoly.constant(1)) for r in squares]
    linears = MultiPoly.constant(1)
    for r in squares:
        linears = linears * (u + MultiPoly.constant(isqrt(r)))
    even_part = w + mirrored
    if not even_part.is_constant:
        for root in exact_roots(even_part):
            pairs.append((MultiPoly.constant(cyc_sqrt(-root)),
                          MultiPoly.constant(1)))
            linears = linears * (u - MultiPoly.constant(root))
    constant = total.divexact(linears)
    pairs.append((MultiPoly.constant(cyc_sqrt(constant.constant_value())),
                  MultiPoly()))
    q, p = MultiPoly.constant(1), MultiPoly()
    for q2, p2 in pairs:
        q, p = q * q2 - u * p * p2, q * p2 + q2 * p
    if q * q + u * p * p != total:
        raise RuntimeError("norm pair composition failed")
    at_x = {'u': x * x}
    nu = w.substitute(at_x) + q.substitute(at_x) + p.substitute(at_x) * x * i_unit
    g = MultiPoly.constant(1)
    for r in squares:
        g = g * (x ** 4 - MultiPoly.constant(r))
    if jonq_power(nu, g, 4) != Mobius2(((0, RatFunc(g)), (1, 0))):
        raise RuntimeError("fourth power of the seed is not the expected involution")
    return jonq_twist(nu, g, 4)


def _coefficient_pool(n: int) -> list[CycNumber]:
    pool = [CycNumber(1), CycNumber(-1), CycNumber(2), CycNumber(-2)]
    for k in range(1, n):
        candidate = root_of_unity(n, k)
        if all(candidate != seen for seen in pool):
            pool.append(candidate)
    return pool


def root_search(g: MultiPoly, n: int,
                degree_bound: int = 3) -> Optional[JonqElement]:
    """Search for a twist whose n-th power is (x, y) -> (x, g(x)/y).

    Candidates nu run over sparse polynomials of degree at most
    degree_bound with coefficients in a small pool built from integers
    and n-th roots of unity; the search is deterministic and a None
    result only means the pool was exhausted, not that no root exists.
    """
    g = _check_base_poly(g)
    if not is_squarefree(g):
        raise ValueError("twisting polynomial must be squarefree")
    if n < 1:
        raise ValueError("power must be positive")
    x = MultiPoly.variable(BASE_VAR)
    if g.substitute({BASE_VAR: x * root_of_unity(n)}) != g:
        raise ValueError("twisting polynomial is not rotation invariant")
    target = Mobius2(((0, RatFunc(g)), (1, 0)))

    def accept(nu: MultiPoly) -> Optional[JonqElement]:
        nu_rat = RatFunc(nu)
        if (nu_rat * nu_rat - RatFunc(g)).is_zero:
            return None
        if jonq_power(nu_rat, g, n) == target:
            return jonq_twist(nu_rat, g, n)
        return None

    found = accept(MultiPoly.constant(0))
    if found is not None:
        return found
    pool = _coefficient_pool(n)
    exponents = range(degree_bound + 1)
    for size in range(1, degree_bound + 2):
        for positions in combinations(exponents, size):
            for coeffs in _iterproduct(pool, repeat=size):
                nu = MultiPoly((BASE_VAR,),
                               {(e,): c for e, c in zip(positions, coeffs)})
                found = accept(nu)
                if found is not None:
                    return found
    return None
