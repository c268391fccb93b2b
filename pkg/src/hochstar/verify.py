"""Independent oracles used to cross-check the block machinery.

Nothing here is on the production path.  Each oracle takes a route that does
not share code with the routine it checks: the pseudoinverse oracle works
through sympy's exact matrices instead of the rank factorization, and the
Moyal cochains come from expanding the exponential series rather than from
solving the associativity equations.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import factorial, prod

import sympy

from . import blocksolve
from .blocksolve import BlockMatrix
from .cochain import Cochain
from .multiindex import nu
from .poly import Poly, xderiv


@dataclass
class OracleReport:
    name: str
    passed: bool
    details: str
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.details}"


# -- pseudoinverse oracle ------------------------------------------------------


def _to_sympy(m: BlockMatrix) -> sympy.Matrix:
    return sympy.Matrix(m.nrows, m.ncols,
                        lambda r, c: sympy.Rational(m.entries[r][c].numerator,
                                                    m.entries[r][c].denominator))


def pinv_oracle(m: BlockMatrix) -> BlockMatrix:
    """Moore-Penrose inverse through the normal equations.

    For each unit vector y: project y onto the column space of M with the Gram
    projector B (B^T B)^-1 B^T (B = a column basis), then take the minimal-norm
    preimage x = M^T z where (M M^T) z = P y.
    """
    if m.nrows == 0 or m.ncols == 0 or m.is_zero():
        return BlockMatrix.from_rows(blocksolve.zeros(m.ncols, m.nrows), m.ncols, m.nrows)
    a = _to_sympy(m)
    basis = a.columnspace()
    b = sympy.Matrix.hstack(*basis)
    proj = b * (b.T * b).inv() * b.T
    gram = a * a.T
    cols = []
    for j in range(m.nrows):
        target = proj[:, j]
        sol, params = gram.gauss_jordan_solve(target)
        sol = sol.subs({p: 0 for p in params})
        cols.append(a.T * sol)
    result = sympy.Matrix.hstack(*cols)
    rows = [[Fraction(int(result[r, c].p), int(result[r, c].q)) for c in range(m.nrows)]
            for r in range(m.ncols)]
    return BlockMatrix.from_rows(rows, m.ncols, m.nrows)


# -- reference cochains --------------------------------------------------------


def _unit(i, n):
    return tuple(1 if k == i else 0 for k in range(n))


def _pair(i, j, n):
    return tuple(a + b for a, b in zip(_unit(i, n), _unit(j, n)))


def x_antisym3(i, j, k, n) -> Cochain:
    """(1/2)(X^{e_i} (x) X^{e_j} (x) X^{e_k} - X^{e_k} (x) X^{e_j} (x) X^{e_i})."""
    half = Fraction(1, 2)
    e = lambda m: _unit(m, n)  # noqa: E731
    return (Cochain.basis((e(i), e(j), e(k)), n, half)
            - Cochain.basis((e(k), e(j), e(i)), n, half))


def x_sym2(i, j, k, n) -> Cochain:
    """(1/2)(X^{e_i+e_j} (x) X^{e_k} + X^{e_k} (x) X^{e_i+e_j})."""
    half = Fraction(1, 2)
    ij, ek = _pair(i, j, n), _unit(k, n)
    return Cochain.basis((ij, ek), n, half) + Cochain.basis((ek, ij), n, half)


def _dw_w(ps, a, b, c):
    """sum_m d_m omega_ab * omega_mc."""
    n = ps.n
    total = Poly.zero(n)
    for m in range(n):
        total = total + xderiv(ps(a, b), _unit(m, n)) * ps(m, c)
    return total


def _distinct_triples(n):
    return list(itertools.combinations(range(n), 3))


def closed_form_omega2_block(ps) -> Cochain:
    """Closed-form e_i+e_j+e_k part of Omega^2: 1/4 sum of rho_ijk over cyclic shifts.

    With the half-normalized X^{ijk} this is exactly half of the true Omega^2
    block; see the tests.
    """
    n = ps.n
    out = Cochain(3, n)
    for i, j, k in _distinct_triples(n):
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            out = out + x_antisym3(a, b, c, n) * (_dw_w(ps, a, c, b) * Fraction(1, 4))
    return out


def closed_form_pi2_block(ps) -> Cochain:
    """Closed-form e_i+e_j+e_k part of Pi^2 (mu = 0) with the 1/24 prefactor.

    phi_ijk(f, g) = c_i (d^i f d^j d^k g + d^j d^k f d^i g),
    c_i = (1/24) sum_l (d_l omega_ij omega_lk + d_l omega_ik omega_lj).
    For distinct j, k the second derivative d^j d^k is X^{e_j+e_k}.
    """
    n = ps.n
    out = Cochain(2, n)
    for i, j, k in _distinct_triples(n):
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            coeff = (_dw_w(ps, a, b, c) + _dw_w(ps, a, c, b)) * Fraction(1, 24)
            ea, ebc = _unit(a, n), _pair(b, c, n)
            out = out + Cochain.basis((ea, ebc), n, coeff) + Cochain.basis((ebc, ea), n, coeff)
    return out


def distinct_index_blocks(phi: Cochain) -> Cochain:
    """Terms of phi whose degree is e_i + e_j + e_k with i, j, k distinct."""
    def keep(key):
        l = [sum(col) for col in zip(*key)]
        return sum(l) == 3 and max(l) == 1
    return phi.restrict(keep)


def moyal_pi(k: int, omega) -> Cochain:
    """Order-k Moyal cochain for a constant antisymmetric matrix ``omega``.

    Pi^k = (1/k!) (1/2)^k sum omega_{i1 j1} ... omega_{ik jk} d_{i1..ik} (x) d_{j1..jk};
    in the normalized basis d^alpha = alpha! X^alpha.
    """
    n = len(omega)
    omega = [[Fraction(x) for x in row] for row in omega]
    if k == 0:
        return Cochain.basis(((0,) * n, (0,) * n), n, 1)
    acc = {}
    pref = Fraction(1, factorial(k) * 2 ** k)
    for pairs in itertools.product(itertools.product(range(n), repeat=2), repeat=k):
        w = prod(omega[i][j] for i, j in pairs)
        if not w:
            continue
        alpha = [0] * n
        beta = [0] * n
        for i, j in pairs:
            alpha[i] += 1
            beta[j] += 1
        key = (tuple(alpha), tuple(beta))
        acc[key] = acc.get(key, 0) + w
    out = {}
    for (alpha, beta), w in acc.items():
        c = pref * w * prod(factorial(x) for x in alpha) * prod(factorial(x) for x in beta)
        if c:
            out[(alpha, beta)] = c
    return Cochain(2, n, out)


# -- the u-formula for the degree-1 pseudoinverse ---------------------------------


def _u_candidate(l, sign) -> BlockMatrix:
    """sign * u * delta^T on C^1_l, where u X^a = -(1/nu(a)) X^a off unit vectors."""
    d = blocksolve.delta_matrix(1, tuple(l), True)
    dT = d.T
    if sum(l) <= 1:
        scale = Fraction(0)
    else:
        scale = sign * Fraction(-1, nu(l))
    rows = [[x * scale for x in row] for row in dT.entries]
    return BlockMatrix.from_rows(rows, dT.nrows, dT.ncols)


def check_u_formula(n: int, degrees) -> OracleReport:
    """Test both signs of the degree-1 formula delta^(1)+ = u delta^(1)T.

    ``"minus"`` is u X^a = -(1/nu(a)) X^a, ``"plus"`` uses +1/nu(a).  The
    report passes when exactly one candidate satisfies the Moore-Penrose
    identities on every listed degree.
    """
    per_degree = []
    wins = {"minus": True, "plus": True}
    for l in degrees:
        l = tuple(l)
        if len(l) != n:
            raise ValueError(f"degree {l} does not have length {n}")
        d = blocksolve.delta_matrix(1, l, True)
        row = {"l": list(l), "nu": nu(l), "rows": d.nrows, "cols": d.ncols}
        for name, sign in (("minus", 1), ("plus", -1)):
            ok = blocksolve.is_moore_penrose(d, _u_candidate(l, sign))
            row[name] = ok
            wins[name] = wins[name] and ok
        per_degree.append(row)
    winners = [name for name, ok in wins.items() if ok]
    passed = len(winners) == 1
    sign = {"minus": "-1/nu(a)", "plus": "+1/nu(a)"}
    if passed:
        details = f"u X^a = {sign[winners[0]]} X^a satisfies all four identities on {len(degrees)} degrees"
    else:
        details = f"candidates passing everywhere: {winners or 'none'}"
    failures = [r["l"] for r in per_degree if not r["minus"]]
    if failures:
        details += f"; the minus sign fails on {len(failures)} degrees, first {failures[0]}"
    return OracleReport(
        name="u-formula",
        passed=passed,
        details=details,
        data={"winner": winners[0] if passed else None,
              "winning_factor": sign[winners[0]] if passed else None,
              "n": n, "degrees": per_degree},
    )
