"""Sparse multivariate polynomials and rational functions over Q(zeta).

Terms map exponent tuples to nonzero CycNumber coefficients; the
variable list is the sorted tuple of names actually used, so equal
polynomials have identical representations.  The term order everywhere
is graded lexicographic: higher total degree first, ties broken by the
exponent tuple with earlier variables weighing more.

gcd follows the classical content / primitive-part recursion over the
last variable, with a subresultant pseudo-remainder sequence in the
multivariate step and a plain monic Euclidean algorithm in the
univariate base case.  Resultants are Sylvester determinants evaluated
by Bareiss fraction-free elimination, so every intermediate division is
exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .cyclotomic import CycNumber, ONE as CYC_ONE, ZERO as CYC_ZERO

Scalarish = Union[int, Fraction, CycNumber]
Polyish = Union[int, Fraction, CycNumber, 'MultiPoly']


def _as_cyc(value: Scalarish) -> CycNumber:
    return value if isinstance(value, CycNumber) else CycNumber(value)


class MultiPoly:
    """Immutable sparse polynomial with cyclotomic coefficients."""

    __slots__ = ('_vars', '_terms')

    def __init__(self, variables: Sequence[str] = (), terms: Optional[Mapping[tuple, Scalarish]] = None):
        cleaned: dict[tuple[int, ...], CycNumber] = {}
        variables = tuple(variables)
        if terms:
            for exp, coeff in terms.items():
                c = _as_cyc(coeff)
                if c.is_zero:
                    continue
                exp = tuple(int(e) for e in exp)
                if len(exp) != len(variables):
                    raise ValueError("exponent arity does not match variable list")
                if exp in cleaned:
                    c = cleaned[exp] + c
                    if c.is_zero:
                        del cleaned[exp]
                        continue
                cleaned[exp] = c
        # Drop unused variables, then sort the survivors.
        used = [i for i in range(len(variables)) if any(e[i] for e in cleaned)]
        names = tuple(variables[i] for i in used)
        order = tuple(sorted(range(len(names)), key=lambda i: names[i]))
        self._vars = tuple(names[i] for i in order)
        self._terms = {}
        for exp, c in cleaned.items():
            key = tuple(exp[used[i]] for i in order)
            self._terms[key] = c

    # -- constructors --

    @staticmethod
    def constant(value: Scalarish) -> 'MultiPoly':
        c = _as_cyc(value)
        if c.is_zero:
            return MultiPoly()
        return MultiPoly((), {(): c})

    @staticmethod
    def variable(name: str) -> 'MultiPoly':
        return MultiPoly((name,), {(1,): CYC_ONE})

    @staticmethod
    def _coerce(value: Polyish) -> Optional['MultiPoly']:
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, (int, Fraction, CycNumber)):
            return MultiPoly.constant(value)
        return None

    # -- structure --

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[tuple[int, ...], CycNumber]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._vars

    def constant_value(self) -> CycNumber:
        if self._vars:
            raise ValueError(f"not a constant: {self}")
        return self._terms.get((), CYC_ZERO)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, var: str) -> int:
        if var not in self._vars:
            return 0 if self._terms else -1
        i = self._vars.index(var)
        return max((e[i] for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self._terms}
        return len(degrees) <= 1

    def _grlex_key(self, exp: tuple[int, ...]):
        return (sum(exp), exp)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], CycNumber]]:
        """Terms in descending graded-lex order, leading term first."""
        return sorted(self._terms.items(), key=lambda kv: self._grlex_key(kv[0]), reverse=True)

    def leading(self) -> tuple[tuple[int, ...], CycNumber]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=self._grlex_key)
        return exp, self._terms[exp]

    def leading_coeff(self) -> CycNumber:
        return self.leading()[1]

    def monic(self) -> 'MultiPoly':
        """Scale so the graded-lex leading coefficient is 1."""
        if self.is_zero:
            return self
        _, c = self.leading()
        if c == CYC_ONE:
            return self
        return self * c.inverse()

    # -- arithmetic --

    def _aligned_terms(self, other: 'MultiPoly') -> tuple[tuple[str, ...], dict, dict]:
        if self._vars == other._vars:
            return self._vars, self._terms, other._terms
        allvars = tuple(sorted(set(self._vars) | set(other._vars)))

        def remap(poly: 'MultiPoly') -> dict:
            idx = [poly._vars.index(v) if v in poly._vars else None for v in allvars]
            out = {}
            for exp, c in poly._terms.items():
                out[tuple(exp[i] if i is not None else 0 for i in idx)] = c
            return out

        return allvars, remap(self), remap(other)

    def __add__(self, other):
        o = MultiPoly._coerce(other)
        if o is None:
            return NotImplemented
        allvars, a, b = self._aligned_terms(o)
        merged = dict(a)
        for exp, c in b.items():
            merged[exp] = merged.get(exp, CYC_ZERO) + c
        return MultiPoly(allvars, merged)

    __radd__ = __add__

    def __neg__(self) -> 'MultiPoly':
        out = MultiPoly()
        out._vars = self._vars
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __sub__(self, other):
        o = MultiPoly._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = MultiPoly._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = MultiPoly._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_constant:
            c = o.constant_value()
            if c.is_zero:
                return MultiPoly()
            out = MultiPoly()
            out._vars = self._vars
            out._terms = {e: k * c for e, k in self._terms.items()}
            return out
        if self.is_constant:
            return o * self
        allvars, a, b = self._aligned_terms(o)
        prod: dict[tuple[int, ...], CycNumber] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                acc = prod.get(key)
                prod[key] = c1 * c2 if acc is None else acc + c1 * c2
        return MultiPoly(allvars, prod)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'MultiPoly':
        if exponent < 0:
            raise ValueError("negative exponent on a polynomial")
        result = MultiPoly.constant(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = MultiPoly._coerce(other)
        if o is None:
            return NotImplemented
        return self._vars == o._vars and self._terms == o._terms

    def __hash__(self):
        return hash((self._vars, frozenset(self._terms.items())))

    def divexact(self, divisor: Polyish) -> 'MultiPoly':
        """Exact quotient; raises ArithmeticError when the division is inexact."""
        d = MultiPoly._coerce(divisor)
        if d is None or d.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if d.is_constant:
            return self * d.constant_value().inverse()
        if self.is_zero:
            return MultiPoly()
        allvars, a, b = self._aligned_terms(d)
        rem = dict(a)
        lead_exp = max(b, key=lambda e: (sum(e), e))
        lead_coeff = b[lead_exp]
        quot: dict[tuple[int, ...], CycNumber] = {}
        while rem:
            exp = max(rem, key=lambda e: (sum(e), e))
            shift = tuple(x - y for x, y in zip(exp, lead_exp))
            if any(s < 0 for s in shift):
                raise ArithmeticError("inexact polynomial division")
            c = rem[exp] / lead_coeff
            quot[shift] = c
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(shift, e2))
                acc = rem.get(key, CYC_ZERO) - c * c2
                if acc.is_zero:
                    rem.pop(key, None)
                else:
                    rem[key] = acc
        return MultiPoly(allvars, quot)

    # -- substitution and evaluation --

    def substitute(self, assignment: Mapping[str, Polyish]) -> 'MultiPoly':
        """Exact substitution; variables missing from the assignment stay."""
        values: dict[str, MultiPoly] = {}
        for var in self._vars:
            if var in assignment:
                v = MultiPoly._coerce(assignment[var])
                if v is None:
                    raise TypeError(f"cannot substitute {assignment[var]!r}")
                values[var] = v
        if not values:
            return self
        powcache: dict[str, dict[int, MultiPoly]] = {v: {0: MultiPoly.constant(1)} for v in values}
        out = MultiPoly()
        for exp, coeff in self._terms.items():
            term = MultiPoly.constant(coeff)
            for i, e in enumerate(exp):
                if not e:
                    continue
                var = self._vars[i]
                if var in values:
                    cache = powcache[var]
                    if e not in cache:
                        best = max(k for k in cache if k <= e)
                        acc = cache[best]
                        for k in range(best + 1, e + 1):
                            acc = acc * values[var]
                            cache[k] = acc
                    term = term * cache[e]
                else:
                    term = term * MultiPoly((var,), {(e,): CYC_ONE})
            out = out + term
        return out

    def evaluate(self, point: Mapping[str, Scalarish]) -> CycNumber:
        """Value at a full scalar assignment."""
        out = CYC_ZERO
        vals = {v: _as_cyc(point[v]) for v in self._vars}
        for exp, coeff in self._terms.items():
            term = coeff
            for i, e in enumerate(exp):
                if e:
                    term = term * vals[self._vars[i]] ** e
            out = out + term
        return out

    def derivative(self, var: str) -> 'MultiPoly':
        if var not in self._vars:
            return MultiPoly()
        i = self._vars.index(var)
        out: dict[tuple[int, ...], CycNumber] = {}
        for exp, c in self._terms.items():
            if exp[i]:
                key = exp[:i] + (exp[i] - 1,) + exp[i + 1:]
                out[key] = c * exp[i]
        return MultiPoly(self._vars, out)

    # -- dense views along one variable --

    def dense_in(self, var: str) -> list['MultiPoly']:
        """Coefficients in var, ascending; each free of var."""
        deg = self.degree_in(var)
        if deg < 0:
            return []
        if var not in self._vars:
            return [self]
        i = self._vars.index(var)
        rest = self._vars[:i] + self._vars[i + 1:]
        buckets: list[dict] = [dict() for _ in range(deg + 1)]
        for exp, c in self._terms.items():
            key = exp[:i] + exp[i + 1:]
            buckets[exp[i]][key] = c
        return [MultiPoly(rest, b) for b in buckets]

    @staticmethod
    def from_dense(coeffs: Sequence[Polyish], var: str) -> 'MultiPoly':
        x = MultiPoly.variable(var)
        out = MultiPoly()
        for e, c in enumerate(coeffs):
            cp = MultiPoly._coerce(c)
            if cp is not None and not cp.is_zero:
                out = out + cp * x ** e
        return out

    # -- printing --

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        pieces: list[str] = []
        for exp, coeff in self.sorted_terms():
            mono = '*'.join(
                v if e == 1 else f'{v}^{e}'
                for v, e in zip(self._vars, exp) if e
            )
            if coeff.is_rational:
                q = coeff.as_fraction()
                neg = q < 0
                mag = -q if neg else q
                if not mono:
                    body = str(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f'{mag}*{mono}'
            else:
                neg = False
                body = f'({coeff})' + (f'*{mono}' if mono else '')
            if not pieces:
                pieces.append(('-' if neg else '') + body)
            else:
                pieces.append((' - ' if neg else ' + ') + body)
        return ''.join(pieces)

    def __repr__(self) -> str:
        return str(self)


ZERO_POLY = MultiPoly()
ONE_POLY = MultiPoly.constant(1)


# ===== gcd, squarefree part, resultant =====

def _uni_divmod(a: list[CycNumber], b: list[CycNumber]) -> tuple[list[CycNumber], list[CycNumber]]:
    a = list(a)
    db = len(b) - 1
    lead = b[db]
    q = [CYC_ZERO] * max(1, len(a) - db)
    for i in range(len(a) - db - 1, -1, -1):
        c = a[i + db] / lead
        if not c.is_zero:
            q[i] = c
            for j in range(db + 1):
                a[i + j] = a[i + j] - c * b[j]
    return q, a[:db] if db else [CYC_ZERO]


def _uni_trim(a: list[CycNumber]) -> list[CycNumber]:
    while a and a[-1].is_zero:
        a.pop()
    return a


def _uni_gcd(a: list[CycNumber], b: list[CycNumber]) -> list[CycNumber]:
    a, b = _uni_trim(list(a)), _uni_trim(list(b))
    while b:
        _, r = _uni_divmod(a, b)
        a, b = b, _uni_trim(r)
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _dense_deg(coeffs: list[MultiPoly]) -> int:
    for i in range(len(coeffs) - 1, -1, -1):
        if not coeffs[i].is_zero:
            return i
    return -1


def _dense_trim(coeffs: list[MultiPoly]) -> list[MultiPoly]:
    while coeffs and coeffs[-1].is_zero:
        coeffs.pop()
    return coeffs


def _pseudo_rem(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    """Pseudo-remainder of dense coefficient lists: lc(b)^(da-db+1) * a mod b."""
    da, db = len(a) - 1, len(b) - 1
    lead = b[db]
    r = list(a)
    e = da - db + 1
    while True:
        dr = _dense_deg(r)
        if dr < db:
            break
        top = r[dr]
        r = [lead * c for c in r]
        for j in range(db + 1):
            r[dr - db + j] = r[dr - db + j] - top * b[j]
        r = r[:dr]
        e -= 1
    scale = lead ** e if e > 0 else None
    if scale is not None:
        r = [scale * c for c in r]
    return _dense_trim(r)


def _content_and_pp(p: MultiPoly, var: str) -> tuple[MultiPoly, list[MultiPoly]]:
    coeffs = p.dense_in(var)
    nonzero = [c for c in coeffs if not c.is_zero]
    content = nonzero[0]
    for c in nonzero[1:]:
        if content.is_constant:
            break
        content = poly_gcd(content, c)
    content = content.monic()
    if content.is_constant:
        return ONE_POLY, coeffs
    return content, [c.divexact(content) if not c.is_zero else c for c in coeffs]


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic gcd under graded-lex normalization."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcd of two zero polynomials")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    if a.is_constant or b.is_constant:
        return ONE_POLY
    allvars = tuple(sorted(set(a.variables) | set(b.variables)))
    if len(allvars) == 1:
        var = allvars[0]
        g = _uni_gcd(_scalar_dense(a, var), _scalar_dense(b, var))
        return MultiPoly.from_dense(g, var)
    var = allvars[-1]
    # When one side is free of the last variable, the gcd divides the
    # other side's content with respect to it.
    if a.degree_in(var) <= 0:
        cb, _ = _content_and_pp(b, var)
        return ONE_POLY if cb.is_constant else poly_gcd(a, cb)
    if b.degree_in(var) <= 0:
        ca, _ = _content_and_pp(a, var)
        return ONE_POLY if ca.is_constant else poly_gcd(b, ca)
    ca, pa = _content_and_pp(a, var)
    cb, pb = _content_and_pp(b, var)
    cont = poly_gcd(ca, cb) if not (ca.is_constant and cb.is_constant) else ONE_POLY
    if _dense_deg(pa) < _dense_deg(pb):
        pa, pb = pb, pa
    g = ONE_POLY
    h = ONE_POLY
    while True:
        delta = _dense_deg(pa) - _dense_deg(pb)
        rem = _pseudo_rem(pa, pb)
        if not rem:
            break
        if _dense_deg(rem) == 0:
            pb = [ONE_POLY]
            break
        scale = g * h ** delta
        pa, pb = pb, [c.divexact(scale) if not c.is_zero else c for c in rem]
        g = pa[_dense_deg(pa)]
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g ** delta).divexact(h ** (delta - 1))
    if _dense_deg(pb) == 0:
        part = ONE_POLY
    else:
        _, pp = _content_and_pp(MultiPoly.from_dense(pb, var), var)
        part = MultiPoly.from_dense(pp, var)
    return (cont * part).monic()


def _scalar_dense(p: MultiPoly, var: str) -> list[CycNumber]:
    return [c.constant_value() for c in p.dense_in(var)]


def squarefree_part(g: MultiPoly) -> MultiPoly:
    """g / gcd(g, g') for univariate g, leading coefficient 1."""
    if g.is_zero:
        raise ValueError("zero polynomial")
    if g.is_constant:
        return ONE_POLY
    if len(g.variables) != 1:
        raise ValueError("squarefree part is defined for univariate input")
    var = g.variables[0]
    d = poly_gcd(g, g.derivative(var))
    return g.divexact(d).monic()


def is_squarefree(g: MultiPoly) -> bool:
    return squarefree_part(g) == g.monic()


def squarefree_decomposition(g: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Yun's algorithm: monic pairwise-coprime squarefree factors with
    their multiplicities, for univariate g.  The constant content is
    dropped."""
    if g.is_zero:
        raise ValueError("zero polynomial")
    if g.is_constant:
        return []
    if len(g.variables) != 1:
        raise ValueError("squarefree decomposition needs univariate input")
    var = g.variables[0]
    g = g.monic()
    d = poly_gcd(g, g.derivative(var))
    if d.is_constant:
        return [(g, 1)]
    w = g.divexact(d)
    y = g.derivative(var).divexact(d)
    out: list[tuple[MultiPoly, int]] = []
    i = 1
    while not w.is_constant:
        z = y - w.derivative(var)
        if z.is_zero:
            out.append((w.monic(), i))
            break
        a = poly_gcd(w, z)
        if not a.is_constant:
            out.append((a.monic(), i))
        w = w.divexact(a)
        y = z.divexact(a)
        i += 1
    return out


def common_zero_exists(polys: Sequence[MultiPoly]) -> bool:
    """Whether a system of polynomials in at most two variables has a
    common affine zero over the complex numbers.  Decided exactly by
    resultant elimination plus gcd arguments; raises ValueError when a
    needed root is not expressible in the supported radical forms."""
    from .curves import exact_roots

    active = [p for p in polys if not p.is_zero]
    if not active:
        return True
    if any(p.is_constant for p in active):
        return False
    allvars = sorted(set().union(*(p.variables for p in active)))
    if len(allvars) > 2:
        raise ValueError("common-zero decision supports at most two variables")
    if len(allvars) == 1:
        g = active[0]
        for p in active[1:]:
            g = poly_gcd(g, p)
        return not g.is_constant
    u, v = allvars
    if len(active) == 1:
        return True  # a plane curve always has points
    # Eliminate v: pairwise resultants plus any polynomial already free of v.
    elim: list[MultiPoly] = [p for p in active if p.degree_in(v) == 0]
    with_v = [p for p in active if p.degree_in(v) > 0]
    base = with_v[0]
    for p in with_v[1:]:
        elim.append(resultant(base, p, v))
    nonzero = [p for p in elim if not p.is_zero]
    if not nonzero:
        # Every eliminant vanished: the pencil shares a v-dependent factor.
        g = with_v[0]
        for p in with_v[1:]:
            g = poly_gcd(g, p)
        if not g.is_constant:
            free = [p for p in active if p.degree_in(v) == 0]
            if not free:
                return True
            # The shared curve must also meet the v-free constraints.
            return common_zero_exists(free + [g])
        raise ValueError("degenerate elimination; cannot certify")
    g = nonzero[0]
    for p in nonzero[1:]:
        g = poly_gcd(g, p)
    if g.is_constant:
        return False
    for u0 in exact_roots(g):
        vals = [p.substitute({u: u0}) for p in active]
        if any(p.is_constant and not p.is_zero for p in vals):
            continue
        rest = [p for p in vals if not p.is_zero]
        if not rest:
            return True
        h = rest[0]
        for p in rest[1:]:
            h = poly_gcd(h, p)
        if not h.is_constant:
            return True
    return False


def resultant(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    """Sylvester determinant in var, first argument's rows on top."""
    if a.is_zero and b.is_zero:
        raise ValueError("resultant of two zero polynomials")
    if a.is_zero or b.is_zero:
        return ZERO_POLY
    da, db = a.degree_in(var), b.degree_in(var)
    if da == 0 and db == 0:
        return ONE_POLY
    if da == 0:
        return a ** db
    if db == 0:
        return b ** da
    ac = [c for c in a.dense_in(var)]
    bc = [c for c in b.dense_in(var)]
    n = da + db
    rows: list[list[MultiPoly]] = []
    for i in range(db):
        row = [ZERO_POLY] * n
        for j, c in enumerate(reversed(ac)):
            row[i + j] = c
        rows.append(row)
    for i in range(da):
        row = [ZERO_POLY] * n
        for j, c in enumerate(reversed(bc)):
            row[i + j] = c
        rows.append(row)
    return _bareiss_det(rows)


def _bareiss_det(m: list[list[MultiPoly]]) -> MultiPoly:
    n = len(m)
    sign = 1
    prev = ONE_POLY
    for k in range(n - 1):
        if m[k][k].is_zero:
            pivot = next((r for r in range(k + 1, n) if not m[r][k].is_zero), None)
            if pivot is None:
                return ZERO_POLY
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.divexact(prev) if not num.is_zero else ZERO_POLY
            m[i][k] = ZERO_POLY
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def substitute(p: MultiPoly, assignment: Mapping[str, Polyish]) -> MultiPoly:
    return p.substitute(assignment)


def homogenize(p: MultiPoly, var: str, cover: str, degree: Optional[int] = None) -> MultiPoly:
    """Replace var^i by var^i * cover^(d-i), d = max(degree, deg p)."""
    coeffs = p.dense_in(var)
    d = max(len(coeffs) - 1, degree if degree is not None else 0)
    x1 = MultiPoly.variable(var)
    x2 = MultiPoly.variable(cover)
    out = MultiPoly()
    for i, c in enumerate(coeffs):
        if not c.is_zero:
            out = out + c * x1 ** i * x2 ** (d - i)
    return out


# ===== Rational functions of one variable =====

class RatFunc:
    """Reduced fraction of univariate polynomials, monic denominator."""

    __slots__ = ('_var', '_num', '_den')

    def __init__(self, num: Polyish, den: Polyish = 1, var: Optional[str] = None):
        n = MultiPoly._coerce(num)
        d = MultiPoly._coerce(den)
        if n is None or d is None:
            raise TypeError("numerator and denominator must be polynomials")
        if d.is_zero:
            raise ZeroDivisionError("zero denominator")
        used = set(n.variables) | set(d.variables)
        if len(used) > 1:
            raise ValueError(f"rational function in more than one variable: {sorted(used)}")
        if var is None:
            var = next(iter(used)) if used else 'x'
        elif used and used != {var}:
            raise ValueError(f"variable mismatch: declared {var}, found {sorted(used)}")
        self._var = var
        if n.is_zero:
            self._num, self._den = ZERO_POLY, ONE_POLY
            return
        g = poly_gcd(n, d)
        if not g.is_constant:
            n, d = n.divexact(g), d.divexact(g)
        lead = d.leading_coeff()
        if lead != CYC_ONE:
            inv = lead.inverse()
            n, d = n * inv, d * inv
        self._num, self._den = n, d

    @property
    def var(self) -> str:
        return self._var

    @property
    def num(self) -> MultiPoly:
        return self._num

    @property
    def den(self) -> MultiPoly:
        return self._den

    @property
    def is_zero(self) -> bool:
        return self._num.is_zero

    def is_polynomial(self) -> bool:
        return self._den == ONE_POLY

    @staticmethod
    def _coerce(value, var: str) -> Optional['RatFunc']:
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, (int, Fraction, CycNumber, MultiPoly)):
            return RatFunc(value, 1, var=var)
        return None

    def _opvar(self, other: 'RatFunc') -> str:
        # A constant side defers to the other side's variable.
        if not (self._num.variables or self._den.variables):
            if other._num.variables or other._den.variables:
                return other._var
        return self._var

    def __add__(self, other):
        o = RatFunc._coerce(other, self._var)
        if o is None:
            return NotImplemented
        return RatFunc(self._num * o._den + o._num * self._den, self._den * o._den, var=self._opvar(o))

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(RatFunc)
        out._var, out._num, out._den = self._var, -self._num, self._den
        return out

    def __sub__(self, other):
        o = RatFunc._coerce(other, self._var)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = RatFunc._coerce(other, self._var)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = RatFunc._coerce(other, self._var)
        if o is None:
            return NotImplemented
        return RatFunc(self._num * o._num, self._den * o._den, var=self._opvar(o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc._coerce(other, self._var)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self._num * o._den, self._den * o._num, var=self._opvar(o))

    def __rtruediv__(self, other):
        o = RatFunc._coerce(other, self._var)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int) -> 'RatFunc':
        if e < 0:
            return (RatFunc(1, 1, var=self._var) / self) ** (-e)
        return RatFunc(self._num ** e, self._den ** e, var=self._var)

    def __eq__(self, other) -> bool:
        o = RatFunc._coerce(other, self._var)
        if o is None:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def substitute(self, value: Union['RatFunc', Polyish]) -> 'RatFunc':
        """Composition: this function evaluated at the given inner value."""
        inner = RatFunc._coerce(value, self._var)
        if inner is None:
            raise TypeError(f"cannot substitute {value!r}")
        num = _poly_at_ratfunc(self._num, self._var, inner)
        den = _poly_at_ratfunc(self._den, self._var, inner)
        return num / den

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self._num)
        return f'({self._num})/({self._den})'

    def __repr__(self) -> str:
        return str(self)


def _poly_at_ratfunc(p: MultiPoly, var: str, inner: RatFunc) -> RatFunc:
    coeffs = p.dense_in(var)
    if not coeffs:
        return RatFunc(0, 1, var=inner.var)
    d = len(coeffs) - 1
    num = MultiPoly()
    for i, c in enumerate(coeffs):
        if not c.is_zero:
            num = num + c * inner.num ** i * inner.den ** (d - i)
    return RatFunc(num, inner.den ** d, var=inner.var)
