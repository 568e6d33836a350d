"""Text form of maps and polynomials.

The accepted grammar matches what the __str__ methods print, so parsing
a printed object gives the object back.  Expressions are sums of
products over integers, fractions, zeta(N) powers, and coordinate
names; '^' is exponentiation.  Plane maps read

    (x:y:z) -> (y*z : x*z : x*y)

and quadric maps

    ((x1:x2),(y1:y2)) -> ((x2 : x1), (y1 : y2))
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional, Sequence, Union

from .cyclotomic import CycNumber, root_of_unity
from .polynomials import MultiPoly, RatFunc
from .birmaps import BirMapP1P1, BirMapP2


class MapSyntaxError(ValueError):
    """Raised on malformed input text, with a coarse position hint."""


_TOKEN = re.compile(r"\s*(->|\d+|[A-Za-z_][A-Za-z_0-9]*|[():,+\-*/^])")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == '':
                break
            raise MapSyntaxError(f"unreadable input near '{text[pos:pos + 12]}'")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    """Recursive descent over the token list; produces small tuple
    trees that the domain evaluators walk."""

    def __init__(self, tokens: list[str]):
        self._toks = tokens
        self._i = 0

    def peek(self) -> Optional[str]:
        return self._toks[self._i] if self._i < len(self._toks) else None

    def take(self, expected: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None:
            raise MapSyntaxError("unexpected end of input")
        if expected is not None and tok != expected:
            raise MapSyntaxError(f"expected '{expected}', found '{tok}'")
        self._i += 1
        return tok

    def done(self) -> bool:
        return self._i >= len(self._toks)

    def expr(self):
        node = self.term()
        while self.peek() in ('+', '-'):
            op = self.take()
            node = ('add' if op == '+' else 'sub', node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek() in ('*', '/'):
            op = self.take()
            node = ('mul' if op == '*' else 'div', node, self.unary())
        return node

    def unary(self):
        if self.peek() == '-':
            self.take()
            return ('neg', self.unary())
        if self.peek() == '+':
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        while self.peek() == '^':
            self.take()
            node = ('pow', node, self.exponent())
        return node

    def exponent(self) -> int:
        sign = 1
        if self.peek() == '-':
            self.take()
            sign = -1
        tok = self.take()
        if not tok.isdigit():
            raise MapSyntaxError(f"exponent expected, found '{tok}'")
        return sign * int(tok)

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            return ('num', Fraction(int(tok)))
        if tok == '(':
            node = self.expr()
            self.take(')')
            return node
        if tok == 'zeta':
            self.take('(')
            n = self.take()
            if not n.isdigit() or int(n) < 1:
                raise MapSyntaxError("zeta needs a positive integer")
            self.take(')')
            return ('zeta', int(n))
        if re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", tok):
            return ('var', tok)
        raise MapSyntaxError(f"unexpected token '{tok}'")


def _eval_poly(node, allowed: Optional[Sequence[str]]) -> MultiPoly:
    kind = node[0]
    if kind == 'num':
        return MultiPoly.constant(node[1])
    if kind == 'zeta':
        return MultiPoly.constant(root_of_unity(node[1]))
    if kind == 'var':
        if allowed is not None and node[1] not in allowed:
            raise MapSyntaxError(f"variable '{node[1]}' is not allowed here")
        return MultiPoly.variable(node[1])
    if kind == 'neg':
        return -_eval_poly(node[1], allowed)
    if kind == 'add':
        return _eval_poly(node[1], allowed) + _eval_poly(node[2], allowed)
    if kind == 'sub':
        return _eval_poly(node[1], allowed) - _eval_poly(node[2], allowed)
    if kind == 'mul':
        return _eval_poly(node[1], allowed) * _eval_poly(node[2], allowed)
    if kind == 'div':
        den = _eval_poly(node[2], allowed)
        if not den.is_constant or den.is_zero:
            raise MapSyntaxError("division only by nonzero constants here")
        num = _eval_poly(node[1], allowed)
        return num * den.constant_value().inverse()
    if kind == 'pow':
        base = _eval_poly(node[1], allowed)
        e = node[2]
        if e >= 0:
            return base ** e
        if not base.is_constant or base.is_zero:
            raise MapSyntaxError("negative powers only of nonzero constants here")
        return MultiPoly.constant(base.constant_value().inverse() ** (-e))
    raise MapSyntaxError("malformed expression")


def _eval_ratfunc(node, var: str) -> RatFunc:
    kind = node[0]
    if kind == 'num':
        return RatFunc(MultiPoly.constant(node[1]), 1, var)
    if kind == 'zeta':
        return RatFunc(MultiPoly.constant(root_of_unity(node[1])), 1, var)
    if kind == 'var':
        if node[1] != var:
            raise MapSyntaxError(f"only '{var}' may appear here")
        return RatFunc(MultiPoly.variable(var), 1, var)
    if kind == 'neg':
        return -_eval_ratfunc(node[1], var)
    if kind == 'add':
        return _eval_ratfunc(node[1], var) + _eval_ratfunc(node[2], var)
    if kind == 'sub':
        return _eval_ratfunc(node[1], var) - _eval_ratfunc(node[2], var)
    if kind == 'mul':
        return _eval_ratfunc(node[1], var) * _eval_ratfunc(node[2], var)
    if kind == 'div':
        return _eval_ratfunc(node[1], var) / _eval_ratfunc(node[2], var)
    if kind == 'pow':
        return _eval_ratfunc(node[1], var) ** node[2]
    raise MapSyntaxError("malformed expression")


def parse_polynomial(text: str, variables: Optional[Sequence[str]] = None) -> MultiPoly:
    """Parse an expression into a polynomial.  When variables is given,
    names outside it are rejected."""
    p = _Parser(_tokenize(text))
    node = p.expr()
    if not p.done():
        raise MapSyntaxError(f"trailing input from '{p.peek()}'")
    return _eval_poly(node, variables)


def parse_ratfunc(text: str, var: str = 'x') -> RatFunc:
    """Parse an expression into a rational function of one variable."""
    p = _Parser(_tokenize(text))
    node = p.expr()
    if not p.done():
        raise MapSyntaxError(f"trailing input from '{p.peek()}'")
    return _eval_ratfunc(node, var)


def _parse_header_names(p: _Parser, names: Sequence[str]) -> None:
    for i, name in enumerate(names):
        if i:
            p.take(':')
        p.take(name)


def parse_map(text: str) -> Union[BirMapP2, BirMapP1P1]:
    """Parse a plane or quadric map in arrow form.  The header fixes
    the coordinate system; component expressions follow it."""
    p = _Parser(_tokenize(text))
    p.take('(')
    if p.peek() == '(':
        p.take('(')
        _parse_header_names(p, ('x1', 'x2'))
        p.take(')')
        p.take(',')
        p.take('(')
        _parse_header_names(p, ('y1', 'y2'))
        p.take(')')
        p.take(')')
        p.take('->')
        p.take('(')
        pairs = []
        for k in range(2):
            p.take('(')
            a = _eval_poly(p.expr(), ('x1', 'x2', 'y1', 'y2'))
            p.take(':')
            b = _eval_poly(p.expr(), ('x1', 'x2', 'y1', 'y2'))
            p.take(')')
            pairs.append((a, b))
            if k == 0:
                p.take(',')
        p.take(')')
        if not p.done():
            raise MapSyntaxError(f"trailing input from '{p.peek()}'")
        return BirMapP1P1(pairs)
    _parse_header_names(p, ('x', 'y', 'z'))
    p.take(')')
    p.take('->')
    p.take('(')
    comps = []
    for k in range(3):
        if k:
            p.take(':')
        comps.append(_eval_poly(p.expr(), ('x', 'y', 'z')))
    p.take(')')
    if not p.done():
        raise MapSyntaxError(f"trailing input from '{p.peek()}'")
    return BirMapP2(comps)


def parse_quadruple(text: str, variables: Sequence[str] = ('w', 'x', 'y', 'z')) -> list[MultiPoly]:
    """Parse '(e1 : e2 : e3 : e4)', optionally preceded by a
    '(w:x:y:z) ->' header, into four polynomials."""
    p = _Parser(_tokenize(text))
    p.take('(')
    probe = p._i
    try:
        _parse_header_names(p, variables)
        if p.peek() != ')':
            raise MapSyntaxError("not a header")
        p.take(')')
        p.take('->')
        p.take('(')
    except MapSyntaxError:
        p._i = probe
    comps = []
    for k in range(len(variables)):
        if k:
            p.take(':')
        comps.append(_eval_poly(p.expr(), variables))
    p.take(')')
    if not p.done():
        raise MapSyntaxError(f"trailing input from '{p.peek()}'")
    return comps
