"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value is stored against the power basis 1, t, ..., t^(phi(N)-1) of
Q[t]/(Phi_N(t)), where Phi_N is the N-th cyclotomic polynomial, with
``Fraction`` coefficients.  Every construction minimizes the conductor:
a value lying in a proper cyclotomic subfield is re-expressed at the
smaller conductor, so equality and hashing reduce to comparing the pair
(conductor, coefficient tuple).  Conductors congruent to 2 mod 4 are
never stored (those fields coincide with their odd half).

No floating point is used anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Union

Rationalish = Union[int, Fraction]

# ===== Cyclotomic polynomials and power-basis reduction tables =====

_CYCLO: dict[int, tuple[int, ...]] = {}
_POWROWS: dict[int, list[tuple[int, ...]]] = {}
_LIFTS: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {}
_SOLVERS: dict[tuple[int, int], tuple[tuple[int, ...], tuple[tuple[Fraction, ...], ...], tuple[tuple[int, ...], ...]]] = {}


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _poly_mul_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divexact_int(a: list[int], b: list[int]) -> list[int]:
    # b must be monic; remainder must come out zero.
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - db - 1, -1, -1):
        c = a[i + db]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return q


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending, computed by exact division
    of t^n - 1 by the product of Phi_d over proper divisors d."""
    cached = _CYCLO.get(n)
    if cached is not None:
        return cached
    if n == 1:
        poly = (-1, 1)
    else:
        num = [0] * (n + 1)
        num[0], num[n] = -1, 1
        den = [1]
        for d in _divisors(n)[:-1]:
            den = _poly_mul_int(den, list(cyclotomic_polynomial(d)))
        poly = tuple(_poly_divexact_int(num, den))
    _CYCLO[n] = poly
    return poly


def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _power_row(n: int, m: int) -> tuple[int, ...]:
    """t^m reduced modulo Phi_n, as an integer coefficient tuple."""
    rows = _POWROWS.get(n)
    if rows is None:
        deg = _phi(n)
        row0 = tuple(1 if i == 0 else 0 for i in range(deg))
        rows = [row0]
        _POWROWS[n] = rows
    deg = _phi(n)
    poly = cyclotomic_polynomial(n)
    while len(rows) <= m:
        shifted = [0] + list(rows[-1])
        lead = shifted.pop()
        if lead:
            for j in range(deg):
                shifted[j] -= lead * poly[j]
        rows.append(tuple(shifted))
    return rows[m]


def _lift_rows(n: int, bigger: int) -> tuple[tuple[int, ...], ...]:
    """Images of the conductor-n basis powers inside conductor `bigger`."""
    key = (n, bigger)
    cached = _LIFTS.get(key)
    if cached is None:
        step = bigger // n
        cached = tuple(_power_row(bigger, step * j) for j in range(_phi(n)))
        _LIFTS[key] = cached
    return cached


def _mat_inverse(a: list[list[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _subfield_solver(n: int, m: int):
    """Pivot columns, inverse pivot block, and basis-image rows for testing
    membership of conductor-n vectors in the conductor-m subfield."""
    key = (n, m)
    cached = _SOLVERS.get(key)
    if cached is not None:
        return cached
    step = n // m
    rows = tuple(_power_row(n, step * j) for j in range(_phi(m)))
    work = [[Fraction(v) for v in row] for row in rows]
    pivcols: list[int] = []
    rank = 0
    for col in range(_phi(n)):
        src = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if src is None:
            continue
        work[rank], work[src] = work[src], work[rank]
        inv = Fraction(1) / work[rank][col]
        work[rank] = [v * inv for v in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [v - f * w for v, w in zip(work[r], work[rank])]
        pivcols.append(col)
        rank += 1
        if rank == len(rows):
            break
    block = [[Fraction(rows[i][c]) for c in pivcols] for i in range(len(rows))]
    cached = (tuple(pivcols), _mat_inverse(block), rows)
    _SOLVERS[key] = cached
    return cached


def _normalize(n: int, coeffs: list[Fraction]) -> tuple[int, tuple[Fraction, ...]]:
    """Minimal-conductor canonical form of a reduced coefficient vector."""
    if n == 1:
        return 1, (coeffs[0],)
    if all(c == 0 for c in coeffs[1:]):
        return 1, (coeffs[0],)
    for m in _divisors(n)[:-1]:
        if m <= 2 or m % 4 == 2:
            continue
        pivcols, inv, rows = _subfield_solver(n, m)
        k = len(rows)
        sel = [coeffs[c] for c in pivcols]
        x = [sum(sel[i] * inv[i][j] for i in range(k)) for j in range(k)]
        ok = True
        for c in range(len(coeffs)):
            if sum(x[j] * rows[j][c] for j in range(k)) != coeffs[c]:
                ok = False
                break
        if ok:
            return m, tuple(x)
    return n, tuple(coeffs)


# ===== Field elements =====

class CycNumber:
    """An element of some Q(zeta_N), held at its minimal conductor.

    Immutable and hashable.  Arithmetic between different conductors
    lifts both operands to the least common multiple first.
    """

    __slots__ = ('_n', '_c')

    def __init__(self, value: Union[Rationalish, 'CycNumber'] = 0):
        if isinstance(value, CycNumber):
            self._n = value._n
            self._c = value._c
        else:
            self._n = 1
            self._c = (Fraction(value),)

    @staticmethod
    def _raw(n: int, coeffs: tuple[Fraction, ...]) -> 'CycNumber':
        obj = object.__new__(CycNumber)
        obj._n = n
        obj._c = coeffs
        return obj

    @staticmethod
    def _new(n: int, coeffs: list[Fraction]) -> 'CycNumber':
        m, c = _normalize(n, coeffs)
        return CycNumber._raw(m, c)

    # -- basic structure --

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def is_zero(self) -> bool:
        return self._n == 1 and self._c[0] == 0

    @property
    def is_rational(self) -> bool:
        return self._n == 1

    def as_fraction(self) -> Fraction:
        if self._n != 1:
            raise ValueError(f"not a rational number: {self}")
        return self._c[0]

    def canonical_key(self) -> tuple:
        """Deterministic sort key: conductor first, then coefficients."""
        return (self._n, self._c)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __hash__(self) -> int:
        if self._n == 1:
            return hash(self._c[0])
        return hash((self._n, self._c))

    # -- arithmetic --

    @staticmethod
    def _coerce(value) -> Optional['CycNumber']:
        if isinstance(value, CycNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return CycNumber(value)
        return None

    def _aligned(self, other: 'CycNumber') -> tuple[int, list[Fraction], list[Fraction]]:
        big = lcm(self._n, other._n)
        return big, self._lift_to(big), other._lift_to(big)

    def _lift_to(self, big: int) -> list[Fraction]:
        if big == self._n:
            return list(self._c)
        rows = _lift_rows(self._n, big)
        out = [Fraction(0)] * _phi(big)
        for j, cj in enumerate(self._c):
            if cj:
                row = rows[j]
                for col in range(len(out)):
                    if row[col]:
                        out[col] += cj * row[col]
        return out

    def __add__(self, other):
        o = CycNumber._coerce(other)
        if o is None:
            return NotImplemented
        if self._n == 1 and o._n == 1:
            return CycNumber._raw(1, (self._c[0] + o._c[0],))
        big, a, b = self._aligned(o)
        return CycNumber._new(big, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> 'CycNumber':
        return CycNumber._raw(self._n, tuple(-c for c in self._c))

    def __sub__(self, other):
        o = CycNumber._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = CycNumber._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = CycNumber._coerce(other)
        if o is None:
            return NotImplemented
        if self._n == 1 and o._n == 1:
            return CycNumber._raw(1, (self._c[0] * o._c[0],))
        if self._n == 1:
            q = self._c[0]
            if q == 0:
                return CycNumber(0)
            return CycNumber._new(o._n, [q * c for c in o._c])
        if o._n == 1:
            return o.__mul__(self)
        big, a, b = self._aligned(o)
        deg = _phi(big)
        conv = [Fraction(0)] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:deg]
        for m in range(deg, len(conv)):
            cm = conv[m]
            if cm:
                row = _power_row(big, m)
                for col in range(deg):
                    if row[col]:
                        out[col] += cm * row[col]
        return CycNumber._new(big, out)

    __rmul__ = __mul__

    def inverse(self) -> 'CycNumber':
        if self.is_zero:
            raise ZeroDivisionError("division by zero")
        if self._n == 1:
            return CycNumber._raw(1, (Fraction(1) / self._c[0],))
        phi = [Fraction(c) for c in cyclotomic_polynomial(self._n)]
        inv = _poly_invmod(list(self._c), phi)
        deg = _phi(self._n)
        inv = inv[:deg] + [Fraction(0)] * (deg - len(inv))
        return CycNumber._new(self._n, inv)

    def __truediv__(self, other):
        o = CycNumber._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = CycNumber._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> 'CycNumber':
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycNumber(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = CycNumber._coerce(other)
        if o is None:
            return NotImplemented
        return self._n == o._n and self._c == o._c

    # -- printing --

    def __str__(self) -> str:
        if self._n == 1:
            return str(self._c[0])
        pieces: list[str] = []
        for j, c in enumerate(self._c):
            if c == 0:
                continue
            if j == 0:
                base = None
            elif j == 1:
                base = f"zeta({self._n})"
            else:
                base = f"zeta({self._n})^{j}"
            mag = -c if c < 0 else c
            if base is None:
                body = str(mag)
            elif mag == 1:
                body = base
            else:
                body = f"{mag}*{base}"
            if not pieces:
                pieces.append(('-' if c < 0 else '') + body)
            else:
                pieces.append((' - ' if c < 0 else ' + ') + body)
        return ''.join(pieces)

    def __repr__(self) -> str:
        return str(self)


def _poly_degree(a: list[Fraction]) -> int:
    for i in range(len(a) - 1, -1, -1):
        if a[i] != 0:
            return i
    return -1


def _poly_divmod_frac(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = _poly_degree(b)
    lead = b[db]
    q = [Fraction(0)] * max(1, len(a) - db)
    for i in range(_poly_degree(a) - db, -1, -1):
        c = a[i + db] / lead
        if c:
            q[i] = c
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    return q, a[:max(1, db)]


def _poly_invmod(a: list[Fraction], modulus: list[Fraction]) -> list[Fraction]:
    """Inverse of a modulo an irreducible monic polynomial, by the
    extended Euclidean algorithm over Q(zeta)-free rational arithmetic."""
    r0, r1 = list(modulus), list(a)
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while _poly_degree(r1) > 0:
        q, r = _poly_divmod_frac(r0, r1)
        r0, r1 = r1, r
        qs = _poly_mul_frac(q, s1)
        s0, s1 = s1, _poly_sub_frac(s0, qs)
    d = _poly_degree(r1)
    if d < 0:
        raise ZeroDivisionError("division by zero")
    c = r1[0]
    return [v / c for v in s1]


def _poly_mul_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_sub_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


# ===== Roots of unity, orders, square roots =====

ZERO = CycNumber(0)
ONE = CycNumber(1)
MINUS_ONE = CycNumber(-1)

_ROOT_CACHE: dict[tuple[int, int], CycNumber] = {}


def root_of_unity(n: int, k: int = 1) -> CycNumber:
    """zeta_n^k as an exact cyclotomic number, at minimal conductor."""
    if n < 1:
        raise ValueError("order must be a positive integer")
    k %= n
    key = (n, k)
    cached = _ROOT_CACHE.get(key)
    if cached is not None:
        return cached
    if k == 0:
        val = ONE
    else:
        d = gcd(n, k)
        order, e = n // d, k // d
        if order == 1:
            val = ONE
        elif order == 2:
            val = MINUS_ONE
        elif order % 4 == 2:
            # zeta_{2m}^e = -zeta_m^j with m + 2j = e mod 2m (e odd, m odd)
            m = order // 2
            j = ((e - m) // 2) % m
            val = -root_of_unity(m, j)
        else:
            row = _power_row(order, e)
            val = CycNumber._raw(order, tuple(Fraction(v) for v in row))
    _ROOT_CACHE[key] = val
    return val


def cyc_arith(a: CycNumber, b: CycNumber, op: str) -> CycNumber:
    """Dispatch one of add|sub|mul|div on two cyclotomic numbers."""
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    if op == 'div':
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def order_of(a: CycNumber) -> Optional[int]:
    """Multiplicative order of a, or None when a is not a root of unity.

    The torsion of Q(zeta_N)* is the group of lcm(2,N)-th roots of unity,
    so it suffices to compare a against each of those.
    """
    if a.is_zero:
        raise ValueError("zero has no multiplicative order")
    torsion = lcm(2, a.conductor)
    for e in range(torsion):
        if a == root_of_unity(torsion, e):
            return torsion // gcd(torsion, e) if e else 1
    return None


def _factor_int(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _sqrt_prime(p: int) -> CycNumber:
    """A square root of the prime p, via quadratic Gauss sums."""
    if p == 2:
        return root_of_unity(8, 1) - root_of_unity(8, 3)
    acc = CycNumber(0)
    for k in range(1, p):
        if pow(k, (p - 1) // 2, p) == 1:
            acc = acc + root_of_unity(p, k)
        else:
            acc = acc - root_of_unity(p, k)
    if p % 4 == 1:
        return acc
    return acc * root_of_unity(4, 3)


def _sqrt_rational(q: Fraction) -> CycNumber:
    if q == 0:
        return ZERO
    mag = abs(q)
    n, d = mag.numerator, mag.denominator
    square, squarefree = 1, 1
    for p, e in _factor_int(n * d).items():
        square *= p ** (e // 2)
        if e % 2:
            squarefree *= p
    out = CycNumber(Fraction(square, d))
    for p in _factor_int(squarefree):
        out = out * _sqrt_prime(p)
    if q < 0:
        out = out * root_of_unity(4, 1)
    return out


def cyc_sqrt(a: CycNumber) -> CycNumber:
    """A square root of a, when a is a rational multiple of a root of
    unity; raises ValueError otherwise.  The result squares to a exactly
    (verified before returning)."""
    if a.is_rational:
        root = _sqrt_rational(a.as_fraction())
    else:
        torsion = lcm(2, a.conductor)
        root = None
        for e in range(torsion):
            candidate = a * root_of_unity(torsion, torsion - e)
            if candidate.is_rational:
                root = _sqrt_rational(candidate.as_fraction()) * root_of_unity(2 * torsion, e)
                break
        if root is None:
            raise ValueError(f"no cyclotomic square root implemented for {a}")
    if root * root != a:
        raise ValueError(f"no cyclotomic square root implemented for {a}")
    return root
