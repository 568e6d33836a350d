"""Integer lattices of blown-up planes and their isometries.

The divisor classes of a plane blown up in ``r`` points form the lattice
``Z^{1+r}`` with the diagonal form ``(1, -1, ..., -1)`` and distinguished
canonical vector ``(-3, 1, ..., 1)``.  This module enumerates the classes
of self-intersection and canonical degree both ``-1``, builds the
reflections in roots and the isometries they generate, and checks the
orbit constraints that a finite isometry with one-dimensional invariant
sublattice must satisfy: orbit sizes on the enumerated classes divisible
by ``9 - r``, and every orbit sum a negative multiple of the canonical
vector.

Everything is exact.  Matrices carry plain integers; the only rational
arithmetic is the kernel-rank computation behind :func:`invariant_rank`,
which runs over ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Union

__all__ = [
    'PicLattice',
    'DivisorClass',
    'LatticeIsometry',
    'inner',
    'exceptional_classes',
    'weyl_reflection',
    'simple_reflections',
    'weyl_word',
    'isometry_compose',
    'isometry_inverse',
    'isometry_power',
    'isometry_order',
    'invariant_rank',
    'orbits',
    'rank_one_orbit_check',
    'coxeter_element',
    'coxeter_corpus',
]

ORDER_CAP = 10_000


class PicLattice:
    """The lattice ``Z^{1+r}`` with form ``diag(1, -1, ..., -1)``."""

    __slots__ = ('r',)

    def __init__(self, r: int) -> None:
        if not isinstance(r, int) or not 1 <= r <= 8:
            raise ValueError('the number of blown-up points must be between 1 and 8')
        self.r = r

    @property
    def dim(self) -> int:
        return self.r + 1

    @property
    def degree(self) -> int:
        """Self-intersection of the canonical class, ``9 - r``."""
        return 9 - self.r

    @property
    def canonical(self) -> 'DivisorClass':
        return DivisorClass((-3,) + (1,) * self.r)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PicLattice) and other.r == self.r

    def __hash__(self) -> int:
        return hash(('PicLattice', self.r))

    def __repr__(self) -> str:
        return f'PicLattice(r={self.r})'


class DivisorClass:
    """An integer vector ``(d0; d1, ..., dr)`` in a blow-up lattice."""

    __slots__ = ('coords',)

    def __init__(self, coords: Iterable[int]) -> None:
        tup = tuple(coords)
        if not tup or not all(isinstance(c, int) for c in tup):
            raise ValueError('coordinates must be a nonempty integer sequence')
        self.coords = tup

    def __add__(self, other: 'DivisorClass') -> 'DivisorClass':
        if len(other.coords) != len(self.coords):
            raise ValueError('rank mismatch')
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: 'DivisorClass') -> 'DivisorClass':
        return self + (-other)

    def __neg__(self) -> 'DivisorClass':
        return DivisorClass(tuple(-a for a in self.coords))

    def __rmul__(self, n: int) -> 'DivisorClass':
        if not isinstance(n, int):
            return NotImplemented
        return DivisorClass(tuple(n * a for a in self.coords))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DivisorClass) and other.coords == self.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        head, *tail = self.coords
        return f'({head}; {", ".join(str(t) for t in tail)})'


def inner(a: DivisorClass, b: DivisorClass, lattice: PicLattice) -> int:
    """Intersection number ``a0*b0 - a1*b1 - ... - ar*br``."""
    n = lattice.dim
    if len(a.coords) != n or len(b.coords) != n:
        raise ValueError(f'rank mismatch: expected vectors of length {n}')
    return a.coords[0] * b.coords[0] - sum(
        x * y for x, y in zip(a.coords[1:], b.coords[1:]))


def _basis_vector(i: int, n: int) -> DivisorClass:
    return DivisorClass(tuple(1 if j == i else 0 for j in range(n)))


def exceptional_classes(lattice: PicLattice) -> list:
    """All classes with self-intersection -1 and canonical degree -1.

    The two constraints read ``d0^2 - sum(di^2) = -1`` and
    ``sum(di) = 1 - 3*d0``; Cauchy-Schwarz then bounds ``d0`` by 6 for
    every rank up to eight, so a depth-first search over the tail entries
    with running sum and square-sum bounds enumerates everything.  Classes
    come back sorted lexicographically by coordinates.
    """
    r = lattice.r
    found = []

    def extend(prefix: list, sum_left: int, sq_left: int) -> None:
        k = r + 1 - len(prefix)
        if k == 0:
            if sum_left == 0 and sq_left == 0:
                found.append(tuple(prefix))
            return
        # k entries must reach sum_left with square-sum sq_left
        if sum_left * sum_left > k * sq_left:
            return
        bound = int(sq_left ** 0.5) + 1
        for d in range(-bound, bound + 1):
            if d * d <= sq_left:
                extend(prefix + [d], sum_left - d, sq_left - d * d)

    for d0 in range(0, 7):
        extend([d0], 1 - 3 * d0, d0 * d0 + 1)

    return [DivisorClass(c) for c in sorted(found)]


class LatticeIsometry:
    """An integer matrix preserving the form and fixing the canonical class.

    Acts on classes by matrix-times-column-vector.  Construction verifies
    both defining conditions, so any arithmetic built from these objects
    stays inside the isometry group.
    """

    __slots__ = ('matrix', 'lattice')

    def __init__(self, matrix: Iterable[Iterable[int]], lattice: PicLattice) -> None:
        n = lattice.dim
        rows = tuple(tuple(row) for row in matrix)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError(f'expected a {n} x {n} matrix')
        if not all(isinstance(e, int) for row in rows for e in row):
            raise ValueError('matrix entries must be integers')
        self.matrix = rows
        self.lattice = lattice
        sign = (1,) + (-1,) * lattice.r
        for i in range(n):
            for j in range(i, n):
                # columns i and j must pair like the basis vectors
                got = rows[0][i] * rows[0][j] - sum(
                    rows[k][i] * rows[k][j] for k in range(1, n))
                want = sign[i] if i == j else 0
                if got != want:
                    raise ValueError('the matrix does not preserve the intersection form')
        if self.apply(lattice.canonical) != lattice.canonical:
            raise ValueError('the matrix does not fix the canonical class')

    @staticmethod
    def identity(lattice: PicLattice) -> 'LatticeIsometry':
        n = lattice.dim
        return LatticeIsometry(
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)),
            lattice)

    def apply(self, d: DivisorClass) -> DivisorClass:
        n = self.lattice.dim
        if len(d.coords) != n:
            raise ValueError(f'rank mismatch: expected a vector of length {n}')
        return DivisorClass(tuple(
            sum(self.matrix[i][k] * d.coords[k] for k in range(n)) for i in range(n)))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, LatticeIsometry)
                and other.lattice == self.lattice
                and other.matrix == self.matrix)

    def __hash__(self) -> int:
        return hash((self.lattice, self.matrix))

    def __repr__(self) -> str:
        body = '; '.join(' '.join(str(e) for e in row) for row in self.matrix)
        return f'<isometry of {self.lattice!r}: [{body}]>'


def weyl_reflection(root: DivisorClass, lattice: PicLattice) -> LatticeIsometry:
    """Reflection ``x -> x + (x . root) root`` in a class of square -2.

    Rejects any vector that is not a root, meaning self-intersection -2
    and canonical degree 0; those two conditions make the formula an
    involutive isometry fixing the canonical class.
    """
    if inner(root, root, lattice) != -2 or inner(root, lattice.canonical, lattice) != 0:
        raise ValueError(f'not a root: {root!r}')
    n = lattice.dim
    cols = []
    for j in range(n):
        e = _basis_vector(j, n)
        cols.append((e + inner(e, root, lattice) * root).coords)
    matrix = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return LatticeIsometry(matrix, lattice)


def simple_reflections(lattice: PicLattice) -> list:
    """Reflections in the standard simple roots, in index order.

    Root ``s0 = e0 - e1 - e2 - e3`` exists once three points are blown up;
    ``si = ei - e(i+1)`` for ``1 <= i < r``.  At ``r = 1`` the lattice has
    no roots at all and the list is empty.
    """
    n = lattice.dim
    roots = []
    if lattice.r >= 3:
        roots.append(DivisorClass((1, -1, -1, -1) + (0,) * (lattice.r - 3)))
    for i in range(1, lattice.r):
        coords = [0] * n
        coords[i], coords[i + 1] = 1, -1
        roots.append(DivisorClass(tuple(coords)))
    return [weyl_reflection(root, lattice) for root in roots]


def weyl_word(word: Union[str, Iterable[str]], lattice: PicLattice) -> LatticeIsometry:
    """Compose reflections named by tokens like ``"s0 s2 s1"``.

    Tokens apply left to right as written, so the leftmost acts last.
    ``s0`` through ``s{r-1}`` are accepted, ``s0`` only when the lattice
    has rank at least four.
    """
    tokens = word.split() if isinstance(word, str) else list(word)
    named = {}
    refs = simple_reflections(lattice)
    offset = 0 if lattice.r >= 3 else 1
    for pos, ref in enumerate(refs):
        named[f's{pos + offset}'] = ref
    out = LatticeIsometry.identity(lattice)
    for tok in tokens:
        if tok not in named:
            raise ValueError(f'unknown reflection {tok!r}; '
                             f'expected one of {sorted(named)}')
        out = isometry_compose(out, named[tok])
    return out


def isometry_compose(f: LatticeIsometry, g: LatticeIsometry) -> LatticeIsometry:
    """The isometry applying ``g`` first, then ``f``."""
    if f.lattice != g.lattice:
        raise ValueError('isometries live on different lattices')
    n = f.lattice.dim
    matrix = tuple(
        tuple(sum(f.matrix[i][k] * g.matrix[k][j] for k in range(n)) for j in range(n))
        for i in range(n))
    return LatticeIsometry(matrix, f.lattice)


def isometry_inverse(f: LatticeIsometry) -> LatticeIsometry:
    # form preservation gives the inverse as J f^T J with J the form matrix
    n = f.lattice.dim
    sign = (1,) + (-1,) * f.lattice.r
    matrix = tuple(
        tuple(sign[i] * f.matrix[j][i] * sign[j] for j in range(n))
        for i in range(n))
    return LatticeIsometry(matrix, f.lattice)


def isometry_power(f: LatticeIsometry, n: int) -> LatticeIsometry:
    if n < 0:
        return isometry_power(isometry_inverse(f), -n)
    out = LatticeIsometry.identity(f.lattice)
    step = f
    while n:
        if n & 1:
            out = isometry_compose(out, step)
        n >>= 1
        if n:
            step = isometry_compose(step, step)
    return out


def isometry_order(f: LatticeIsometry, cap: int = ORDER_CAP) -> int:
    one = LatticeIsometry.identity(f.lattice)
    cur = f
    for k in range(1, cap + 1):
        if cur == one:
            return k
        cur = isometry_compose(cur, f)
    raise ValueError(f'order exceeds the cap of {cap}')


def _as_generators(g) -> list:
    gens = [g] if isinstance(g, LatticeIsometry) else list(g)
    if not gens:
        raise ValueError('at least one isometry is required')
    if any(h.lattice != gens[0].lattice for h in gens[1:]):
        raise ValueError('isometries live on different lattices')
    return gens


def invariant_rank(g) -> int:
    """Rank of the common fixed sublattice of one isometry or several.

    Stacks ``M - I`` over all generators and subtracts the rank of the
    stack, computed over the rationals, from the ambient dimension.
    """
    gens = _as_generators(g)
    n = gens[0].lattice.dim
    rows = []
    for h in gens:
        for i in range(n):
            rows.append([Fraction(h.matrix[i][j] - (1 if i == j else 0))
                         for j in range(n)])
    return n - _rank(rows)


def _rank(rows: list) -> int:
    if not rows:
        return 0
    rank = 0
    cols = len(rows[0])
    pivot_row = 0
    for c in range(cols):
        hit = next((i for i in range(pivot_row, len(rows)) if rows[i][c] != 0), None)
        if hit is None:
            continue
        rows[pivot_row], rows[hit] = rows[hit], rows[pivot_row]
        lead = rows[pivot_row][c]
        rows[pivot_row] = [x / lead for x in rows[pivot_row]]
        for i in range(len(rows)):
            if i != pivot_row and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[pivot_row])]
        pivot_row += 1
        rank += 1
        if pivot_row == len(rows):
            break
    return rank


def orbits(g, classes: Iterable[DivisorClass]) -> list:
    """Partition a class list into orbits under one isometry or several.

    The generators must permute the list; a class carried outside it is
    an error.  Orbits come back in first-encounter order, each listing
    its elements in breadth-first order from the earliest member.
    """
    gens = _as_generators(g)
    pool = list(classes)
    index = {d.coords: pos for pos, d in enumerate(pool)}
    if len(index) != len(pool):
        raise ValueError('duplicate classes in the orbit input')
    seen = set()
    parts = []
    for d in pool:
        if d.coords in seen:
            continue
        orbit = [d]
        seen.add(d.coords)
        queue = [d]
        while queue:
            cur = queue.pop(0)
            for h in gens:
                nxt = h.apply(cur)
                if nxt.coords not in index:
                    raise ValueError(f'the isometry does not permute the given classes: '
                                     f'{cur!r} maps to {nxt!r}')
                if nxt.coords not in seen:
                    seen.add(nxt.coords)
                    orbit.append(nxt)
                    queue.append(nxt)
        parts.append(orbit)
    return parts


def rank_one_orbit_check(g) -> dict:
    """Orbit constraints forced by a one-dimensional invariant sublattice.

    When the invariant rank of the group generated by ``g`` (one isometry
    or a list) is one, every orbit on the enumerated classes of square -1
    must have size divisible by ``9 - r``, and the orbit sum must be a
    negative integer multiple of the canonical class.  Both facts are
    asserted; a violation raises, since it would contradict the
    constraints this check exists to witness.  The report carries one
    ``(size, multiple)`` pair per orbit, plus the group order and its
    divisibility by ``9 - r`` when a single generator makes the group
    cyclic.

    With invariant rank above one the hypothesis fails and the report
    says so instead of inspecting any orbits.
    """
    gens = _as_generators(g)
    lattice = gens[0].lattice
    rank = invariant_rank(gens)
    if rank != 1:
        return {'applies': False, 'invariant_rank': rank, 'reason': 'hypothesis not met'}

    degree = lattice.degree
    kvec = lattice.canonical
    report = []
    for orbit in orbits(gens, exceptional_classes(lattice)):
        size = len(orbit)
        if size % degree != 0:
            raise RuntimeError(f'orbit size {size} is not divisible by {degree}')
        total = orbit[0]
        for d in orbit[1:]:
            total = total + d
        if total.coords[0] % -3 != 0:
            raise RuntimeError(f'orbit sum {total!r} is not a multiple of the canonical class')
        multiple = total.coords[0] // -3
        if multiple >= 0 or multiple * kvec != total:
            raise RuntimeError(f'orbit sum {total!r} is not a negative multiple '
                               f'of the canonical class')
        report.append((size, multiple))

    group_order: Optional[int] = None
    if len(gens) == 1:
        group_order = isometry_order(gens[0])
        if group_order % degree != 0:
            raise RuntimeError(f'group order {group_order} is not divisible by {degree}')
    return {'applies': True, 'invariant_rank': 1,
            'orbits': report, 'group_order': group_order}


def coxeter_element(lattice: PicLattice) -> LatticeIsometry:
    """Product of all simple reflections, in index order."""
    refs = simple_reflections(lattice)
    if not refs:
        raise ValueError('the lattice has no roots')
    out = refs[0]
    for ref in refs[1:]:
        out = isometry_compose(out, ref)
    return out


def coxeter_corpus(lattice: PicLattice) -> list:
    """Powers of the Coxeter element with invariant rank one.

    A deterministic supply of finite-order isometries satisfying the
    hypothesis of :func:`rank_one_orbit_check`: at ranks 4, 6 and 8 the
    Coxeter element has order 5, 12 and 30, and the qualifying powers
    number 4, 8 and 29.
    """
    c = coxeter_element(lattice)
    h = isometry_order(c)
    out = []
    power = c
    for _ in range(1, h):
        if invariant_rank(power) == 1:
            out.append(power)
        power = isometry_compose(power, c)
    return out
