"""Differential Hochschild cochains with polynomial coefficients.

A p-cochain is stored as a sparse map ``key -> Poly`` where ``key`` is a
p-tuple of exponent tuples ``(a1, ..., ap)``, standing for
``Phi_{a1...ap} X^{a1} (x) ... (x) X^{ap}``.

The coboundary acts on the basis symbols only: coefficient polynomials are
never differentiated by ``delta`` or ``delta_T``.
"""
from __future__ import annotations

from fractions import Fraction

from .multiindex import proper_splittings
from .poly import Poly, xderiv


def _is_zero_index(a) -> bool:
    return not any(a)


class Cochain:
    """Sparse differential p-cochain in n variables."""

    __slots__ = ("arity", "n", "terms")

    def __init__(self, arity: int, n: int, terms=None):
        if arity < 0:
            raise ValueError("arity must be >= 0")
        self.arity = arity
        self.n = n
        self.terms = {}
        if terms:
            for key, poly in terms.items():
                key = tuple(tuple(a) for a in key)
                if len(key) != arity or any(len(a) != n for a in key):
                    raise ValueError(f"key {key} does not match arity {arity}, n={n}")
                if isinstance(poly, (int, Fraction)):
                    poly = Poly.const(n, poly)
                self._accumulate(key, poly)

    def _accumulate(self, key, poly):
        if not poly:
            return
        cur = self.terms.get(key)
        new = poly if cur is None else cur + poly
        if new:
            self.terms[key] = new
        else:
            del self.terms[key]

    @classmethod
    def basis(cls, key, n: int, coeff=1) -> "Cochain":
        """Single basis symbol X^{a1} (x) ... (x) X^{ap} with a coefficient."""
        key = tuple(tuple(a) for a in key)
        return cls(len(key), n, {key: coeff})

    @classmethod
    def zero(cls, arity: int, n: int) -> "Cochain":
        return cls(arity, n)

    @property
    def is_tilde(self) -> bool:
        """True when no key contains the zero multi-index."""
        return all(not any(_is_zero_index(a) for a in key) for key in self.terms)

    def coefficient(self, key) -> Poly:
        key = tuple(tuple(a) for a in key)
        return self.terms.get(key, Poly.zero(self.n))

    def keys(self):
        return sorted(self.terms)

    def _check(self, other):
        if not isinstance(other, Cochain):
            raise TypeError(f"expected Cochain, got {type(other).__name__}")
        if other.arity != self.arity or other.n != self.n:
            raise ValueError(
                f"arity/dimension mismatch: ({self.arity},{self.n}) vs ({other.arity},{other.n})"
            )

    def __add__(self, other):
        self._check(other)
        out = Cochain(self.arity, self.n)
        out.terms = dict(self.terms)
        for key, poly in other.terms.items():
            out._accumulate(key, poly)
        return out

    def __neg__(self):
        out = Cochain(self.arity, self.n)
        out.terms = {k: -v for k, v in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Multiply every coefficient by a rational or a polynomial."""
        out = Cochain(self.arity, self.n)
        if isinstance(other, (int, Fraction)):
            if other:
                out.terms = {k: v.scale(other) for k, v in self.terms.items()}
            return out
        if isinstance(other, Poly):
            for k, v in self.terms.items():
                out._accumulate(k, v * other)
            return out
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.arity, self.n, self.terms) == (other.arity, other.n, other.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return f"Cochain(arity={self.arity}, n={self.n}, 0)"
        parts = []
        for key in self.keys():
            sym = "(x)".join("X" + str(list(a)) for a in key)
            parts.append(f"({self.terms[key]})*{sym}")
        return f"Cochain(arity={self.arity}, n={self.n}, " + " + ".join(parts) + ")"

    def restrict(self, predicate) -> "Cochain":
        out = Cochain(self.arity, self.n)
        out.terms = {k: v for k, v in self.terms.items() if predicate(k)}
        return out

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "terms": [
                {"key": [list(a) for a in key], "poly": self.terms[key].to_json()}
                for key in self.keys()
            ],
        }

    @classmethod
    def from_json(cls, data, n: int) -> "Cochain":
        arity = int(data["arity"])
        out = cls(arity, n)
        for item in data["terms"]:
            key = tuple(tuple(int(x) for x in a) for a in item["key"])
            if len(key) != arity or any(len(a) != n for a in key):
                raise ValueError(f"key {item['key']} does not match arity {arity}, n={n}")
            out._accumulate(key, Poly.from_json(item["poly"], n))
        return out


def apply(phi: Cochain, fs) -> Poly:
    """Evaluate the cochain on p polynomials."""
    fs = list(fs)
    if len(fs) != phi.arity:
        raise ValueError(f"cochain of arity {phi.arity} applied to {len(fs)} arguments")
    cache = {}
    total = Poly.zero(phi.n)
    for key, coeff in phi.terms.items():
        term = coeff
        for slot, (a, f) in enumerate(zip(key, fs)):
            d = cache.get((slot, a))
            if d is None:
                d = cache[(slot, a)] = xderiv(f, a)
            term = term * d
            if not term:
                break
        total = total + term
    return total


def _delta_slot(a):
    """Nonzero entries of Q^a_{bc}: pairs ((b, c), sign)."""
    if _is_zero_index(a):
        return (((a, a), 1),)
    return tuple((pair, -1) for pair in proper_splittings(a))


def delta(phi: Cochain) -> Cochain:
    """Hochschild coboundary: arity p -> p + 1."""
    p = phi.arity
    if p < 1:
        raise ValueError("delta is defined here for arity >= 1")
    out = Cochain(p + 1, phi.n)
    for key, coeff in phi.terms.items():
        for k in range(p):
            sign = 1 if k % 2 == 0 else -1
            head, tail = key[:k], key[k + 1:]
            for (b, c), q in _delta_slot(key[k]):
                out._accumulate(head + (b, c) + tail, coeff.scale(sign * q))
    return out


def delta_T(psi: Cochain) -> Cochain:
    """Adjoint of ``delta`` for the fiberwise inner product: arity p + 1 -> p."""
    p = psi.arity - 1
    if p < 1:
        raise ValueError("delta_T needs a cochain of arity >= 2")
    out = Cochain(p, psi.n)
    for key, coeff in psi.terms.items():
        for k in range(p):
            b, c = key[k], key[k + 1]
            q = -1 + _is_zero_index(b) + _is_zero_index(c)
            if not q:
                continue
            sign = 1 if k % 2 == 0 else -1
            merged = tuple(x + y for x, y in zip(b, c))
            out._accumulate(key[:k] + (merged,) + key[k + 2:], coeff.scale(sign * q))
    return out


def inner(phi: Cochain, psi: Cochain) -> Poly:
    """Fiberwise inner product: sum over shared keys of coefficient products."""
    if phi.arity != psi.arity:
        raise ValueError(f"arity mismatch: {phi.arity} vs {psi.arity}")
    total = Poly.zero(phi.n)
    small, big = (phi, psi) if len(phi) <= len(psi) else (psi, phi)
    for key, coeff in small.terms.items():
        other = big.terms.get(key)
        if other is not None:
            total = total + coeff * other
    return total


def key_degree(key) -> tuple:
    return tuple(map(sum, zip(*key)))


def degree_split(phi: Cochain) -> dict:
    """Partition terms by total multi-index l = a1 + ... + ap."""
    parts = {}
    for key, coeff in phi.terms.items():
        l = key_degree(key)
        part = parts.get(l)
        if part is None:
            part = parts[l] = Cochain(phi.arity, phi.n)
        part.terms[key] = coeff
    return parts


def flip(phi: Cochain) -> Cochain:
    """Reverse the slot order: (f, g) -> (g, f), (f, g, h) -> (h, g, f)."""
    out = Cochain(phi.arity, phi.n)
    out.terms = {key[::-1]: v for key, v in phi.terms.items()}
    return out


def flip_split(phi: Cochain):
    """Return (symmetric part, antisymmetric part) under slot reversal."""
    if phi.arity not in (2, 3):
        raise ValueError(f"flip_split needs arity 2 or 3, got {phi.arity}")
    half = Fraction(1, 2)
    r = flip(phi)
    return (phi + r) * half, (phi - r) * half
