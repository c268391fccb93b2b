"""Exact multivariate polynomials over the rationals.

Polynomials are sparse maps from exponent tuples to :class:`fractions.Fraction`
coefficients.  Zero coefficients are never stored, so two equal polynomials
always have equal term dictionaries.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import comb, prod

from .multiindex import sub_indices


def _grlex_key(exp):
    # graded lexicographic, highest first
    return (-sum(exp), tuple(-e for e in exp))


def format_rational(q) -> str:
    """Rational as ``"p/q"``; the sign always sits on the numerator."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


class Poly:
    """Polynomial in ``n`` variables with exact rational coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} does not have length {n}")
                c = Fraction(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        self.terms = clean

    @classmethod
    def _raw(cls, n, terms):
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.n = n
        p.terms = terms
        return p

    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls._raw(n, {})

    @classmethod
    def const(cls, n: int, c) -> "Poly":
        c = Fraction(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        """The coordinate x_{i+1} (``i`` is 0-based)."""
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for n={n}")
        return cls._raw(n, {tuple(1 if k == i else 0 for k in range(n)): Fraction(1)})

    @classmethod
    def monomial(cls, exp, c=1) -> "Poly":
        exp = tuple(exp)
        return cls(len(exp), {exp: c})

    # -- ring structure ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.n != self.n:
                raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly._raw(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, q) -> "Poly":
        q = Fraction(q)
        if not q:
            return Poly.zero(self.n)
        return Poly._raw(self.n, {e: c * q for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(self.n, other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.n, Fraction(0))

    def xderiv(self, a) -> "Poly":
        return xderiv(self, a)

    def __call__(self, *point):
        """Evaluate at a point of n rationals."""
        if len(point) != self.n:
            raise ValueError(f"expected {self.n} coordinates")
        return sum(
            (c * prod(Fraction(x) ** k for x, k in zip(point, e)) for e, c in self.terms.items()),
            Fraction(0),
        )

    # -- printing / serialization -----------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(exp) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({self.n}, '{self}')"

    def to_json(self) -> list:
        return [
            {"exp": list(exp), "coeff": format_rational(c)} for exp, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data, n: int) -> "Poly":
        terms = {}
        for item in data:
            exp = tuple(int(k) for k in item["exp"])
            if len(exp) != n:
                raise ValueError(f"exponent {list(exp)} does not have length {n}")
            terms[exp] = terms.get(exp, 0) + parse_rational(item["coeff"])
        return cls(n, terms)


def xderiv(f: Poly, a) -> Poly:
    """Normalized derivative X^a f = (1/a!) d^a f."""
    a = tuple(a)
    if len(a) != f.n:
        raise ValueError(f"dimension mismatch: {f.n} vs {len(a)}")
    if not any(a):
        return f
    out = {}
    for exp, c in f.terms.items():
        if any(k < j for k, j in zip(exp, a)):
            continue
        factor = prod(comb(k, j) for k, j in zip(exp, a))
        out[tuple(k - j for k, j in zip(exp, a))] = c * factor
    return Poly._raw(f.n, out)


def mul(f: Poly, g: Poly) -> Poly:
    return f * g


def add(f: Poly, g: Poly) -> Poly:
    return f + g


def scale(f: Poly, q) -> Poly:
    return f.scale(q)


def leibniz_terms(a):
    """Pairs (a - s, s) for all 0 <= s <= a, as used by X^a(fg)."""
    a = tuple(a)
    return [(tuple(x - y for x, y in zip(a, s)), s) for s in sub_indices(a)]


# -- parser ---------------------------------------------------------------


class PolySyntaxError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based character offset."""

    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or not m.group(0).strip():
            break
        start = m.start(0) + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("var", int(m.group(2)), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", start)
            tokens.append((ch, None, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, n):
        self.text = text
        self.n = n
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(self.text[tok[2]])
            raise PolySyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolySyntaxError(f"unexpected {self.text[tok[2]]!r}", tok[2])
        return result

    def expr(self):
        acc = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            if op == "*":
                acc = acc * self.unary()
            else:
                tok = self.take("num")
                if tok[1] == 0:
                    raise PolySyntaxError("division by zero", tok[2])
                acc = acc.scale(Fraction(1, tok[1]))
        return acc

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("num")
            base = base ** tok[1]
        return base

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            return Poly.const(self.n, value)
        if kind == "var":
            self.take()
            if not 1 <= value <= self.n:
                raise PolySyntaxError(
                    f"variable x{value} out of range for n={self.n}", pos
                )
            return Poly.var(self.n, value - 1)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(self.text[pos])
        raise PolySyntaxError(f"unexpected {what}", pos)


def parse_poly(text: str, n: int) -> Poly:
    """Parse ``"x1*x2 + 1/2"``-style text into a :class:`Poly` in n variables.

    Accepts integers, ``p/q`` rationals, variables ``x1..xn``, ``+ - * ^``
    (nonnegative integer exponents), division by an integer literal and
    parentheses.  Whitespace is ignored.
    """
    return _Parser(text, n).parse()


def random_poly(rng, n: int, max_degree: int, max_terms: int = 4, coeff_range: int = 3) -> Poly:
    """Random polynomial with small integer coefficients; ``rng`` is a ``random.Random``."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_degree)
        exp = [0] * n
        for _ in range(deg):
            exp[rng.randrange(n)] += 1
        c = rng.choice([c for c in range(-coeff_range, coeff_range + 1) if c])
        terms[tuple(exp)] = terms.get(tuple(exp), 0) + c
    return Poly(n, terms)
