"""Linear algebra on degree blocks of the Hochschild complex.

The coboundary maps ``C^p_l -> C^{p+1}_l`` are finite integer matrices.  This
module assembles them in canonical bases, pseudoinverts them exactly, and
solves ``delta Phi = Psi`` one block at a time.

Orientation: columns are indexed by the source basis (p-tuples), rows by the
target basis ((p+1)-tuples), so ``delta`` acts on column vectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cochain import Cochain
from .errors import ObstructionError
from .multiindex import enumerate_compositions
from .poly import Poly, format_rational, parse_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


# -- dense exact matrices ----------------------------------------------------


def zeros(r, c):
    return [[_ZERO] * c for _ in range(r)]


def identity(k):
    m = zeros(k, k)
    for i in range(k):
        m[i][i] = _ONE
    return m


def transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    """Product of dense row-major matrices with nonempty inner dimension."""
    if not a:
        return []
    k = len(b)
    ncols = len(b[0])
    out = []
    for row in a:
        acc = [_ZERO] * ncols
        for j in range(k):
            x = row[j]
            if x:
                brow = b[j]
                for c in range(ncols):
                    y = brow[c]
                    if y:
                        acc[c] += x * y
        out.append(acc)
    return out


def matsub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)


def rref(a):
    """Reduced row echelon form and pivot columns, exact."""
    m = [list(row) for row in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(a) -> int:
    return len(rref(a)[1]) if a and a[0] else 0


def inverse(a):
    """Inverse of a nonsingular square matrix by Gauss-Jordan."""
    k = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(k))]
    red, pivots = rref(aug)
    if pivots[:k] != list(range(k)):
        raise ZeroDivisionError("matrix is singular")
    return [row[k:] for row in red]


def pinv_dense(a, nrows=None, ncols=None):
    """Exact Moore-Penrose inverse via a full-rank factorization.

    With ``a = F G`` (F = pivot columns of ``a``, G = nonzero rows of its
    reduced echelon form), ``a+ = G^T (G G^T)^-1 (F^T F)^-1 F^T``.
    """
    nrows = len(a) if nrows is None else nrows
    ncols = (len(a[0]) if a else 0) if ncols is None else ncols
    if nrows == 0 or ncols == 0:
        return zeros(ncols, nrows)
    red, pivots = rref(a)
    r = len(pivots)
    if r == 0:
        return zeros(ncols, nrows)
    f = [[row[c] for c in pivots] for row in a]
    g = red[:r]
    ft, gt = transpose(f), transpose(g)
    left = matmul(gt, inverse(matmul(g, gt)))
    right = matmul(inverse(matmul(ft, f)), ft)
    return matmul(left, right)


# -- bases and block matrices --------------------------------------------------


@dataclass(frozen=True)
class BlockBasis:
    """Canonical basis X^{a1} (x) ... (x) X^{ap} of the block C^p_l (or its tilde part)."""

    p: int
    l: tuple
    tilde: bool
    tuples: tuple
    index: dict = field(compare=False, repr=False, hash=False)

    def __len__(self):
        return len(self.tuples)


@lru_cache(maxsize=None)
def block_basis(p: int, l: tuple, tilde: bool = True) -> BlockBasis:
    l = tuple(l)
    tuples = tuple(
        tuple(tuple(a) for a in t) for t in enumerate_compositions(l, p, nonzero=tilde)
    )
    return BlockBasis(p, l, tilde, tuples, {t: i for i, t in enumerate(tuples)})


@dataclass(frozen=True)
class BlockMatrix:
    """Exact rational matrix on one degree block, with its row/column bases."""

    entries: tuple
    nrows: int
    ncols: int
    row_basis: BlockBasis | None = None
    col_basis: BlockBasis | None = None

    @classmethod
    def from_rows(cls, rows, nrows=None, ncols=None, row_basis=None, col_basis=None):
        nrows = len(rows) if nrows is None else nrows
        ncols = (len(rows[0]) if rows else 0) if ncols is None else ncols
        if ncols == 0:
            rows = [()] * nrows
        return cls(tuple(tuple(Fraction(x) for x in r) for r in rows), nrows, ncols,
                   row_basis, col_basis)

    def rows(self):
        return [list(r) for r in self.entries]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def T(self) -> "BlockMatrix":
        return BlockMatrix.from_rows(transpose(self.rows(), self.ncols), self.ncols, self.nrows,
                                     self.col_basis, self.row_basis)

    def __matmul__(self, other: "BlockMatrix") -> "BlockMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.ncols == 0 or other.ncols == 0:
            prod = zeros(self.nrows, other.ncols)
        else:
            prod = matmul(self.rows(), other.rows())
        return BlockMatrix.from_rows(prod, self.nrows, other.ncols, self.row_basis,
                                     other.col_basis)

    def __sub__(self, other: "BlockMatrix") -> "BlockMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return BlockMatrix.from_rows(matsub(self.rows(), other.rows()), self.nrows, self.ncols,
                                     self.row_basis, self.col_basis)

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        rows = [[x + y for x, y in zip(a, b)] for a, b in zip(self.entries, other.entries)]
        return BlockMatrix.from_rows(rows, self.nrows, self.ncols, self.row_basis, self.col_basis)

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def is_zero(self) -> bool:
        return is_zero_matrix(self.entries)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and self == self.T

    def rank(self) -> int:
        return rank(self.rows()) if self.nrows and self.ncols else 0

    def sparse(self):
        return [(r, c, x) for r, row in enumerate(self.entries) for c, x in enumerate(row) if x]

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries],
                        dtype=float).reshape(self.nrows, self.ncols)

    def apply(self, vec):
        """Matrix times a vector of :class:`Poly` or rational entries; ``None`` marks zero."""
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)} for {self.shape} matrix")
        out = []
        for row in self.entries:
            acc = None
            for x, v in zip(row, vec):
                if x and v:
                    t = v * x
                    acc = t if acc is None else acc + t
            out.append(acc if acc else None)
        return out

    def to_json(self, p=None, l=None, tilde=None) -> dict:
        rb, cb = self.row_basis, self.col_basis
        basis = cb or rb
        return {
            "p": p if p is not None else (basis.p if basis else None),
            "l": list(l if l is not None else (basis.l if basis else [])),
            "tilde": tilde if tilde is not None else (basis.tilde if basis else None),
            "shape": [self.nrows, self.ncols],
            "rows": [[list(a) for a in t] for t in rb.tuples] if rb else [],
            "cols": [[list(a) for a in t] for t in cb.tuples] if cb else [],
            "entries": [[r, c, format_rational(x)] for r, c, x in self.sparse()],
        }

    @classmethod
    def from_json(cls, data) -> "BlockMatrix":
        nrows, ncols = data["shape"]
        rows = zeros(nrows, ncols)
        for r, c, x in data["entries"]:
            rows[r][c] = parse_rational(x)
        return cls.from_rows(rows, nrows, ncols)


def _q(a, b, c) -> int:
    """Q^a_{bc} = -[a = b + c] + [b = 0][c = a] + [c = 0][b = a]."""
    q = 0
    if all(x == y + z for x, y, z in zip(a, b, c)):
        q -= 1
    if not any(b) and c == a:
        q += 1
    if not any(c) and b == a:
        q += 1
    return q


def _delta_entry(A, B) -> int:
    """Matrix element of delta between source p-tuple A and target (p+1)-tuple B."""
    p = len(A)
    total = 0
    for k in range(p):
        if A[:k] != B[:k] or A[k + 1:] != B[k + 2:]:
            continue
        q = _q(A[k], B[k], B[k + 1])
        if q:
            total += q if k % 2 == 0 else -q
    return total


@lru_cache(maxsize=None)
def delta_matrix(p: int, l: tuple, tilde: bool = True) -> BlockMatrix:
    """Matrix of delta: C^p_l -> C^{p+1}_l, built entrywise from the Q formula."""
    if p < 0:
        raise ValueError("p must be >= 0")
    l = tuple(l)
    src = block_basis(p, l, tilde)
    dst = block_basis(p + 1, l, tilde)
    rows = [[Fraction(_delta_entry(A, B)) for A in src.tuples] for B in dst.tuples]
    return BlockMatrix.from_rows(rows, len(dst), len(src), dst, src)


def pinv(m: BlockMatrix) -> BlockMatrix:
    """Exact Moore-Penrose pseudoinverse of a block matrix."""
    rows = pinv_dense(m.rows(), m.nrows, m.ncols)
    return BlockMatrix.from_rows(rows, m.ncols, m.nrows, m.col_basis, m.row_basis)


@lru_cache(maxsize=None)
def delta_pinv(p: int, l: tuple, tilde: bool = True) -> BlockMatrix:
    return pinv(delta_matrix(p, tuple(l), tilde))


def pinv_tikhonov(m: BlockMatrix, alpha) -> np.ndarray:
    """Floating-point (alpha^2 I + M^T M)^-1 M^T; a convergence cross-check only."""
    alpha = float(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    a = m.to_numpy()
    gram = alpha * alpha * np.eye(m.ncols) + a.T @ a
    return np.linalg.solve(gram, a.T)


def is_moore_penrose(m: BlockMatrix, mp: BlockMatrix) -> bool:
    """Exact check of the four Moore-Penrose identities."""
    if mp.shape != (m.ncols, m.nrows):
        return False
    mm = m @ mp
    pm = mp @ m
    return (mm @ m == m and pm @ mp == mp and mm.is_symmetric() and pm.is_symmetric())


@dataclass(frozen=True)
class Projectors:
    ker: BlockMatrix
    ker_perp: BlockMatrix
    im: BlockMatrix
    harmonic: BlockMatrix

    def __iter__(self):
        return iter((self.ker, self.ker_perp, self.im, self.harmonic))


@lru_cache(maxsize=None)
def projectors(p: int, l: tuple, tilde: bool = True) -> Projectors:
    """Orthogonal projectors on C^p_l onto Ker, Ker^perp, Im and the harmonic part."""
    l = tuple(l)
    d = delta_matrix(p, l, tilde)
    dp = delta_pinv(p, l, tilde)
    basis = block_basis(p, l, tilde)
    eye = BlockMatrix.from_rows(identity(len(basis)), len(basis), len(basis), basis, basis)
    ker_perp = dp @ d
    ker = eye - ker_perp
    if p >= 1:
        prev = delta_matrix(p - 1, l, tilde)
        im = prev @ delta_pinv(p - 1, l, tilde)
    else:
        im = BlockMatrix.from_rows(zeros(len(basis), len(basis)), len(basis), len(basis))
    harmonic = ker - im
    return Projectors(ker, ker_perp, im, harmonic)


def cohomology_dim(p: int, l: tuple, tilde: bool = True) -> int:
    return projectors(p, tuple(l), tilde).harmonic.rank()


def cochain_to_vector(phi: Cochain, basis: BlockBasis) -> list:
    """Coefficient vector of a single-block cochain in the given basis."""
    vec = [None] * len(basis)
    for key, coeff in phi.terms.items():
        i = basis.index.get(key)
        if i is None:
            raise ValueError(f"key {key} is not in the ({basis.p}, {basis.l}) block basis")
        vec[i] = coeff
    return vec


def vector_to_cochain(vec, basis: BlockBasis, n: int) -> Cochain:
    out = Cochain(basis.p, n)
    for t, v in zip(basis.tuples, vec):
        if v:
            out.terms[t] = v if isinstance(v, Poly) else Poly.const(n, v)
    return out


def solve_block(p: int, l, psi, tilde: bool = True, n: int | None = None):
    """Minimal-norm solution of delta Phi = Psi on the (p, l) block.

    ``psi`` is a coefficient vector (Poly or rational entries, ``None`` for zero)
    over the canonical (p+1)-basis.  Returns the coefficient vector of
    ``Delta+ Psi`` after checking exactly that ``Delta Delta+ Psi == Psi``.

    Raises :class:`ObstructionError` with the residual ``(I - Delta Delta+) Psi``
    when Psi is not in the image.
    """
    l = tuple(l)
    d = delta_matrix(p, l, tilde)
    dp = delta_pinv(p, l, tilde)
    if len(psi) != d.nrows:
        raise ValueError(f"Psi has length {len(psi)}, block needs {d.nrows}")
    phi = dp.apply(psi)
    back = d.apply(phi)
    residual = []
    for a, b in zip(psi, back):
        if a is None:
            r = None if b is None else -b
        else:
            r = a if b is None else a - b
        residual.append(r if r else None)
    if any(r is not None for r in residual):
        if n is None:
            n = len(l)
        raise ObstructionError(l, vector_to_cochain(residual, d.row_basis, n), p=p)
    return phi


def solve_cochain_block(psi: Cochain, l, tilde: bool = True) -> Cochain:
    """Solve delta Phi = Psi for a cochain supported on a single degree block."""
    l = tuple(l)
    p = psi.arity - 1
    basis = block_basis(psi.arity, l, tilde)
    vec = cochain_to_vector(psi, basis)
    phi = solve_block(p, l, vec, tilde, n=psi.n)
    return vector_to_cochain(phi, block_basis(p, l, tilde), psi.n)
