"""Multi-index arithmetic and enumeration.

A multi-index ``a = (a1, ..., an)`` labels the normalized derivative
``X^a = (1/a!) d^|a|``.  Multi-indices are plain tuples of naturals; the
:class:`MultiIndex` subclass only adds a few conveniences, and every function
here accepts ordinary tuples too (they hash and compare identically).
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, prod


class MultiIndex(tuple):
    """Exponent vector of naturals with fixed length ``n``."""

    def __new__(cls, components):
        comps = tuple(int(c) for c in components)
        if any(c < 0 for c in comps):
            raise ValueError(f"negative component in multi-index {comps}")
        return super().__new__(cls, comps)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def order(self) -> int:
        return sum(self)

    def is_zero(self) -> bool:
        return not any(self)

    def __add__(self, other):  # componentwise, not concatenation
        return add(self, other)

    def __repr__(self):
        return f"MultiIndex({tuple(self)})"


def zero(n: int) -> MultiIndex:
    return MultiIndex((0,) * n)


def unit(i: int, n: int) -> MultiIndex:
    """The unit vector e_i (0-based ``i``)."""
    if not 0 <= i < n:
        raise IndexError(f"unit index {i} out of range for n={n}")
    return MultiIndex(1 if k == i else 0 for k in range(n))


def _check_dims(a, b):
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")


def add(a, b) -> MultiIndex:
    _check_dims(a, b)
    return MultiIndex(x + y for x, y in zip(a, b))


def sub(a, b) -> MultiIndex:
    """Componentwise difference; raises if any component would go negative."""
    _check_dims(a, b)
    return MultiIndex(x - y for x, y in zip(a, b))


def leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def order(a) -> int:
    return sum(a)


def nu(a) -> int:
    """Number of proper splittings a = (a - s) + s, i.e. prod(a_i + 1) - 2.

    Returns -1 for the zero multi-index; callers must not rely on that value.
    """
    return prod(x + 1 for x in a) - 2


def norm_binom(v, c) -> int:
    """Factor in X^v X^c = norm_binom(v, c) X^(v+c)."""
    _check_dims(v, c)
    return prod(comb(x + y, x) for x, y in zip(v, c))


@lru_cache(maxsize=None)
def sub_indices(a: tuple) -> tuple:
    """All s with 0 <= s <= a componentwise, in lexicographic order."""
    return tuple(itertools.product(*(range(x + 1) for x in a)))


@lru_cache(maxsize=None)
def proper_splittings(a: tuple) -> tuple:
    """Pairs (a - s, s) with s != 0 and s != a, in lexicographic order of s."""
    a = tuple(a)
    z = (0,) * len(a)
    return tuple(
        (tuple(x - y for x, y in zip(a, s)), s)
        for s in sub_indices(a)
        if s != z and s != a
    )


@lru_cache(maxsize=None)
def _compositions(l: tuple, p: int, nonzero: bool) -> tuple:
    z = (0,) * len(l)
    if p == 1:
        return () if (nonzero and l == z) else ((l,),)
    out = []
    for first in sub_indices(l):
        if nonzero and first == z:
            continue
        rest = tuple(x - y for x, y in zip(l, first))
        for tail in _compositions(rest, p - 1, nonzero):
            out.append((first,) + tail)
    return tuple(out)


def enumerate_compositions(l, p: int, nonzero: bool = False) -> list:
    """All p-tuples of multi-indices summing to ``l``.

    Tuples come in lexicographic order of their concatenated components.  With
    ``nonzero`` set, tuples containing the zero multi-index are dropped.
    ``p == 0`` yields the single empty tuple when ``l`` is zero.
    """
    l = tuple(l)
    if p < 0:
        raise ValueError("p must be >= 0")
    if p == 0:
        return [()] if not any(l) else []
    return [tuple(MultiIndex(a) for a in t) for t in _compositions(l, p, nonzero)]


def count_compositions(l, p: int) -> int:
    """Stars-and-bars count of all p-compositions of ``l``."""
    return prod(comb(x + p - 1, p - 1) for x in l)


def indices_of_order(n: int, d: int) -> list:
    """All multi-indices of length n and total order d, lexicographic."""
    return [MultiIndex(t) for t in itertools.product(range(d + 1), repeat=n) if sum(t) == d]


def indices_up_to(n: int, d: int) -> list:
    return [a for k in range(d + 1) for a in indices_of_order(n, k)]
