"""Order-by-order construction of star products.

Associativity of ``f * g = fg + sum_k t^k Pi^k(f, g)`` at order k reads
``delta Pi^k = Omega^k`` where Omega^k only involves Pi^1 ... Pi^{k-1}.  Each
order is solved block by block with the exact pseudoinverse of delta; the
default (zero) gauge picks the minimal-norm Pi^k.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import blocksolve
from .cochain import Cochain, apply, degree_split
from .errors import InvalidPoisson, InvariantViolation, ObstructionError
from .multiindex import norm_binom, sub_indices
from .poly import Poly, xderiv

log = logging.getLogger(__name__)


def _unit(i, n):
    return tuple(1 if k == i else 0 for k in range(n))


@dataclass
class PoissonStructure:
    """Bivector {x_i, x_j} = omega_ij on R^n; stored for i < j only (0-based)."""

    n: int
    omega: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), w in self.omega.items():
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"index pair ({i}, {j}) out of range for n={self.n}")
            if i == j:
                if w:
                    raise ValueError("omega_ii must vanish")
                continue
            if not isinstance(w, Poly):
                w = Poly.const(self.n, w)
            if w.n != self.n:
                raise ValueError("coefficient dimension mismatch")
            if i > j:
                i, j, w = j, i, -w
            w = clean.get((i, j), Poly.zero(self.n)) + w
            if w:
                clean[(i, j)] = w
            else:
                clean.pop((i, j), None)
        self.omega = clean

    def __call__(self, i, j) -> Poly:
        """omega_ij with antisymmetry applied."""
        if i == j:
            return Poly.zero(self.n)
        if i < j:
            return self.omega.get((i, j), Poly.zero(self.n))
        return -self.omega.get((j, i), Poly.zero(self.n))

    def is_constant(self) -> bool:
        return all(w.degree <= 0 for w in self.omega.values())

    def matrix(self):
        """Constant structure as an n x n list of rationals."""
        if not self.is_constant():
            raise ValueError("structure has non-constant coefficients")
        return [[self(i, j).constant_term() for j in range(self.n)] for i in range(self.n)]

    def to_json(self) -> dict:
        return {
            "dimension": self.n,
            "omega": [
                {"i": i + 1, "j": j + 1, "poly": w.to_json()}
                for (i, j), w in sorted(self.omega.items())
            ],
        }

    @classmethod
    def from_json(cls, data) -> "PoissonStructure":
        n = int(data["dimension"])
        omega = {}
        for item in data.get("omega", []):
            i, j = int(item["i"]), int(item["j"])
            if not i < j:
                raise ValueError(f"omega entries must have i < j, got ({i}, {j})")
            if not (1 <= i and j <= n):
                raise ValueError(f"pair ({i}, {j}) out of range for dimension {n}")
            if "poly" in item:
                w = Poly.from_json(item["poly"], n)
            else:
                from .poly import parse_poly
                w = parse_poly(item["expr"], n)
            omega[(i - 1, j - 1)] = omega.get((i - 1, j - 1), Poly.zero(n)) + w
        return cls(n, omega)

    # reference structures

    @classmethod
    def moyal(cls, n: int = 2) -> "PoissonStructure":
        """Canonical constant structure: omega_{2i-1, 2i} = 1."""
        if n % 2:
            raise ValueError("the canonical structure needs even n")
        return cls(n, {(2 * i, 2 * i + 1): 1 for i in range(n // 2)})

    @classmethod
    def so3(cls) -> "PoissonStructure":
        x1, x2, x3 = (Poly.var(3, i) for i in range(3))
        return cls(3, {(0, 1): x3, (0, 2): -x2, (1, 2): x1})

    @classmethod
    def heisenberg(cls) -> "PoissonStructure":
        return cls(3, {(0, 1): Poly.var(3, 2)})


def jacobi_residual(ps: PoissonStructure) -> dict:
    """Nonzero Jacobi residuals, keyed by 0-based triples i < j < k."""
    n = ps.n
    du = [_unit(m, n) for m in range(n)]
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                r = Poly.zero(n)
                for m in range(n):
                    r = r + xderiv(ps(i, k), du[m]) * ps(m, j)
                    r = r + xderiv(ps(k, j), du[m]) * ps(m, i)
                    r = r + xderiv(ps(j, i), du[m]) * ps(m, k)
                if r:
                    out[(i, j, k)] = r
    return out


def pi1(ps: PoissonStructure) -> Cochain:
    """First-order cochain: (1/2) omega_ij X^{e_i} (x) X^{e_j}."""
    n = ps.n
    out = Cochain(2, n)
    half = Fraction(1, 2)
    for i in range(n):
        for j in range(n):
            w = ps(i, j)
            if w:
                out.terms[(_unit(i, n), _unit(j, n))] = w.scale(half)
    return out


def _splittings3(a):
    """All (u, v, w) with u + v + w = a."""
    out = []
    for u in sub_indices(a):
        rest = tuple(x - y for x, y in zip(a, u))
        for v in sub_indices(rest):
            out.append((u, v, tuple(x - y for x, y in zip(rest, v))))
    return out


def _insert(outer: Cochain, inner: Cochain, left: bool) -> Cochain:
    if outer.arity != 2 or inner.arity != 2:
        raise ValueError("insertions are defined for 2-cochains")
    if outer.n != inner.n:
        raise ValueError("dimension mismatch")
    out = Cochain(3, outer.n)
    deriv_cache = {}
    split_cache = {}
    for (a, b), phi in outer.terms.items():
        target = a if left else b
        splits = split_cache.get(target)
        if splits is None:
            splits = split_cache[target] = _splittings3(target)
        for (c, d), psi in inner.terms.items():
            for u, v, w in splits:
                du = deriv_cache.get((c, d, u))
                if du is None:
                    du = deriv_cache[(c, d, u)] = xderiv(psi, u)
                if not du:
                    continue
                factor = norm_binom(v, c) * norm_binom(w, d)
                vc = tuple(x + y for x, y in zip(v, c))
                wd = tuple(x + y for x, y in zip(w, d))
                key = (vc, wd, b) if left else (a, vc, wd)
                out._accumulate(key, (phi * du).scale(factor))
    return out


def insert_left(outer: Cochain, inner: Cochain) -> Cochain:
    """3-cochain (f, g, h) -> outer(inner(f, g), h)."""
    return _insert(outer, inner, left=True)


def insert_right(outer: Cochain, inner: Cochain) -> Cochain:
    """3-cochain (f, g, h) -> outer(f, inner(g, h))."""
    return _insert(outer, inner, left=False)


def omega_k(pis) -> Cochain:
    """Right-hand side of delta Pi^k = Omega^k for k = len(pis) + 1."""
    pis = list(pis)
    if not pis:
        raise ValueError("omega_k needs at least Pi^1")
    k = len(pis) + 1
    n = pis[0].n
    out = Cochain(3, n)
    for m in range(1, k):
        out = out + insert_left(pis[k - m - 1], pis[m - 1])
        out = out - insert_right(pis[m - 1], pis[k - m - 1])
    return out


@dataclass
class StarProduct:
    """Truncated star product: Pi^1 ... Pi^K for a Poisson structure."""

    structure: PoissonStructure
    pis: list = field(default_factory=list)
    gauge: list = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.pis)

    @property
    def n(self) -> int:
        return self.structure.n

    def pi(self, k: int) -> Cochain:
        """Pi^k for k >= 1 (1-based, like the t exponent)."""
        return self.pis[k - 1]

    def to_json(self) -> dict:
        gauges = set(self.gauge[1:]) or {"zero"}
        return {
            "n": self.n,
            "omega": self.structure.to_json()["omega"],
            "order": self.order,
            "gauge": "zero" if gauges == {"zero"} else "custom",
            "pi": [{"k": k + 1, **pi.to_json()} for k, pi in enumerate(self.pis)],
        }

    @classmethod
    def from_json(cls, data) -> "StarProduct":
        n = int(data["n"])
        ps = PoissonStructure.from_json({"dimension": n, "omega": data["omega"]})
        items = sorted(data["pi"], key=lambda item: item["k"])
        if [item["k"] for item in items] != list(range(1, len(items) + 1)):
            raise ValueError("pi entries must cover k = 1..K")
        pis = [Cochain.from_json({"arity": item.get("arity", 2), "terms": item["terms"]}, n)
               for item in items]
        if int(data.get("order", len(pis))) != len(pis):
            raise ValueError("order does not match the number of pi entries")
        g = data.get("gauge", "zero")
        return cls(ps, pis, [g] * len(pis))


def _solve_one_block(args):
    l, psi = args
    return l, blocksolve.solve_cochain_block(psi, l, tilde=True)


def _check_support(cochain: Cochain, lo: int, hi: int, what: str):
    for key in cochain.terms:
        deg = sum(sum(a) for a in key)
        if not lo <= deg <= hi:
            raise InvariantViolation(f"{what} has a term of degree {deg} outside [{lo}, {hi}]")


def _gauge_term(gamma: Cochain, k: int) -> Cochain:
    if gamma.arity != 2:
        raise ValueError(f"gauge for order {k} must be a 2-cochain")
    if not gamma.is_tilde:
        raise ValueError(f"gauge for order {k} must not use the zero multi-index")
    out = Cochain(2, gamma.n)
    for l, part in sorted(degree_split(gamma).items()):
        basis = blocksolve.block_basis(2, l, True)
        vec = blocksolve.cochain_to_vector(part, basis)
        proj = blocksolve.projectors(2, l, True).ker.apply(vec)
        out = out + blocksolve.vector_to_cochain(proj, basis, gamma.n)
    return out


def solve_order(state: StarProduct, k: int, gauge=None, jobs: int = 1) -> Cochain:
    """Compute Pi^k from Pi^1 ... Pi^{k-1}.

    ``gauge`` is an optional tilde 2-cochain Gamma^k; its Ker(delta) projection is
    added to the minimal-norm solution.
    """
    if k < 2 or state.order < k - 1:
        raise ValueError(f"need Pi^1..Pi^{k - 1} to solve order {k}")
    rhs = omega_k(state.pis[: k - 1])
    _check_support(rhs, 3, 2 * k, f"Omega^{k}")
    blocks = sorted(degree_split(rhs).items())
    log.debug("order %d: %d blocks", k, len(blocks))
    try:
        if jobs > 1 and len(blocks) > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=jobs) as pool:
                solved = list(pool.map(_solve_one_block, blocks))
        else:
            solved = [_solve_one_block(b) for b in blocks]
    except ObstructionError as exc:
        raise exc.with_order(k) from None
    result = Cochain(2, state.n)
    for _, part in solved:
        result = result + part
    if gauge is not None:
        result = result + _gauge_term(gauge, k)
    _check_support(result, 2, 2 * k, f"Pi^{k}")
    return result


def build(ps: PoissonStructure, K: int, gauge=None, jobs: int = 1) -> StarProduct:
    """Star product up to order K.

    ``gauge`` may be None / ``"zero"`` or a mapping ``k -> Cochain`` of
    user-chosen tilde 2-cochains for orders k >= 2.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    if gauge in (None, "zero"):
        gauge = {}
    elif not hasattr(gauge, "get"):
        raise ValueError(f"unknown gauge {gauge!r}")
    if K >= 2:
        res = jacobi_residual(ps)
        if res:
            raise InvalidPoisson(res)
    state = StarProduct(ps, [pi1(ps)], ["zero"])
    for k in range(2, K + 1):
        gamma = gauge.get(k)
        state.pis.append(solve_order(state, k, gamma, jobs=jobs))
        state.gauge.append("zero" if gamma is None else "custom")
    return state


def star_eval(S: StarProduct, f: Poly, g: Poly) -> list:
    """Coefficients of t^0 ... t^K in f * g."""
    if f.n != S.n or g.n != S.n:
        raise ValueError(f"dimension mismatch: star product on R^{S.n}")
    return [f * g] + [apply(pi, (f, g)) for pi in S.pis]


def _bi(S, k, f, g):
    return f * g if k == 0 else apply(S.pis[k - 1], (f, g))


def associator(S: StarProduct, f: Poly, g: Poly, h: Poly) -> list:
    """Coefficients of t^0 ... t^K in (f * g) * h - f * (g * h)."""
    K = S.order
    fg = [_bi(S, j, f, g) for j in range(K + 1)]
    gh = [_bi(S, j, g, h) for j in range(K + 1)]
    out = []
    for k in range(K + 1):
        acc = Poly.zero(S.n)
        for i in range(k + 1):
            j = k - i
            acc = acc + _bi(S, i, fg[j], h) - _bi(S, i, f, gh[j])
        out.append(acc)
    return out
