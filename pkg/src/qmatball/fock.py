"""The Fock realization of the quantum matrix ball algebra.

The representation space is spanned by the normal-ordered holomorphic
monomials acting on a vacuum vector that every starred generator kills.
It is graded by total degree; the component of degree k has dimension
binomial(k + m*n - 1, m*n - 1).

An unstarred generator acts by left multiplication (degree +1); a starred
generator acts by pushing through the monomial with the exchange rule and
dropping every branch that still carries a starred letter (degree -1).
Blocks of both kinds are exact sparse matrices over Q(q); numeric copies
at a fixed q in (0,1) are cached per (m, n, q) for the integral and
kernel modules.

The scalar product of two basis monomials is the identity coefficient of
(right monomial)* (left monomial); its Gram matrices are symmetric,
positive definite for q in (0,1), and make the starred block the adjoint
of the unstarred one.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .algebra import Element, Monomial, get_algebra, _letters
from .scalar import QRational

__all__ = [
    "fock_basis",
    "fock_dim",
    "FockBlock",
    "theta_gen_block",
    "theta_apply",
    "gram",
    "gamma_weight",
    "gamma_exponent",
    "NumericRep",
    "gram_cholesky_mp",
    "truncated_generator_matrix_norm",
]

_ZERO = QRational.zero()
_ONE = QRational.one()

_BASIS_CACHE: dict = {}
_BASIS_POS_CACHE: dict = {}
_BLOCK_CACHE: dict = {}
_GRAM_CACHE: dict = {}


def fock_dim(m: int, n: int, k: int) -> int:
    if k < 0:
        return 0
    return math.comb(k + m * n - 1, m * n - 1)


def fock_basis(m: int, n: int, k: int):
    """Degree-k multi-indices in the canonical (descending lexicographic) order."""
    key = (m, n, k)
    hit = _BASIS_CACHE.get(key)
    if hit is not None:
        return hit
    size = m * n
    if k < 0:
        basis = ()
    else:
        basis = tuple(
            sorted(_compositions(k, size), reverse=True)
        )
    _BASIS_CACHE[key] = basis
    return basis


def _compositions(k: int, size: int):
    if size == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, size - 1):
            yield (first,) + rest


def _basis_pos(m: int, n: int, k: int) -> dict:
    key = (m, n, k)
    hit = _BASIS_POS_CACHE.get(key)
    if hit is None:
        hit = {idx: i for i, idx in enumerate(fock_basis(m, n, k))}
        _BASIS_POS_CACHE[key] = hit
    return hit


class FockBlock:
    """An exact sparse matrix of a graded map between homogeneous components."""

    __slots__ = ("rows", "cols", "src_degree", "dst_degree", "entries")

    def __init__(self, rows, cols, src_degree, dst_degree, entries):
        self.rows = rows
        self.cols = cols
        self.src_degree = src_degree
        self.dst_degree = dst_degree
        self.entries = {k: v for k, v in entries.items() if v}

    @staticmethod
    def identity(dim: int, degree: int) -> "FockBlock":
        return FockBlock(dim, dim, degree, degree, {(i, i): _ONE for i in range(dim)})

    @staticmethod
    def zeros(rows, cols, src_degree, dst_degree) -> "FockBlock":
        return FockBlock(rows, cols, src_degree, dst_degree, {})

    def matmul(self, other: "FockBlock") -> "FockBlock":
        if self.cols != other.rows:
            raise ValueError("block shapes do not compose")
        by_col: dict = {}
        for (i, j), v in self.entries.items():
            by_col.setdefault(j, []).append((i, v))
        out: dict = {}
        for (j, l), w in other.entries.items():
            for i, v in by_col.get(j, ()):
                key = (i, l)
                s = out.get(key, _ZERO) + v * w
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return FockBlock(self.rows, other.cols, other.src_degree, self.dst_degree, out)

    def add(self, other: "FockBlock") -> "FockBlock":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("block shapes differ")
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k, _ZERO) + v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return FockBlock(self.rows, self.cols, self.src_degree, self.dst_degree, out)

    def scale(self, c: QRational) -> "FockBlock":
        if not c:
            return FockBlock.zeros(self.rows, self.cols, self.src_degree, self.dst_degree)
        return FockBlock(
            self.rows, self.cols, self.src_degree, self.dst_degree,
            {k: c * v for k, v in self.entries.items()},
        )

    def transpose(self) -> "FockBlock":
        return FockBlock(
            self.cols, self.rows, self.dst_degree, self.src_degree,
            {(j, i): v for (i, j), v in self.entries.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, FockBlock):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def is_identity_times(self, c: QRational) -> bool:
        if self.rows != self.cols:
            return False
        expected = {(i, i): c for i in range(self.rows)} if c else {}
        return self.entries == expected

    def to_numpy(self, q0: float) -> np.ndarray:
        out = np.zeros((self.rows, self.cols))
        for (i, j), v in self.entries.items():
            out[i, j] = v.eval_float(q0)
        return out

    def to_strings(self):
        return [
            [self.entries.get((i, j), _ZERO).to_string() for j in range(self.cols)]
            for i in range(self.rows)
        ]

    def __repr__(self):
        return f"FockBlock({self.rows}x{self.cols}, deg {self.src_degree}->{self.dst_degree})"


def theta_gen_block(m, n, a, alpha, k, starred=False) -> FockBlock:
    """Exact block of one generator on the degree-k component (1-based a, alpha)."""
    if not (1 <= alpha <= m and 1 <= a <= n):
        raise ValueError("generator index out of range")
    if k < 0:
        raise ValueError("degree must be nonnegative")
    key = (m, n, a, alpha, k, starred)
    hit = _BLOCK_CACHE.get(key)
    if hit is not None:
        return hit
    alg = get_algebra(m, n)
    g = (a - 1) * m + (alpha - 1)
    basis = fock_basis(m, n, k)
    if starred:
        dst = k - 1
        pos = _basis_pos(m, n, dst) if dst >= 0 else {}
        entries = {}
        for j, idx in enumerate(basis):
            consumed, _ = alg.push_star(g, idx)
            for kk, c in consumed.items():
                entries[(pos[kk], j)] = c
        block = FockBlock(fock_dim(m, n, dst), len(basis), k, dst, entries)
    else:
        dst = k + 1
        pos = _basis_pos(m, n, dst)
        unit = [0] * (m * n)
        unit[g] = 1
        unit = tuple(unit)
        entries = {}
        for j, idx in enumerate(basis):
            for kk, c in alg.z_mul(unit, idx).items():
                entries[(pos[kk], j)] = c
        block = FockBlock(fock_dim(m, n, dst), len(basis), k, dst, entries)
    _BLOCK_CACHE[key] = block
    return block


def _block_for_letter(m, n, g, starred, k) -> FockBlock:
    return theta_gen_block(m, n, g // m + 1, g % m + 1, k, starred)


def theta_apply(f: Element, k: int) -> dict:
    """Blocks of the represented element from the degree-k component.

    Returns {target degree: FockBlock}; a homogeneous input produces a
    single entry.  Branches that would pass below degree 0 vanish.
    """
    m, n = f.m, f.n
    dim = fock_dim(m, n, k)
    out: dict = {}
    for (kz, lz), c in f.terms.items():
        sdeg = sum(lz)
        if sdeg > k:
            continue
        block = FockBlock.identity(dim, k)
        cur = k
        for g in reversed(_letters(lz)):
            block = _block_for_letter(m, n, g, True, cur).matmul(block)
            cur -= 1
        for g in reversed(_letters(kz)):
            block = _block_for_letter(m, n, g, False, cur).matmul(block)
            cur += 1
        block = block.scale(c)
        if cur in out:
            out[cur] = out[cur].add(block)
        else:
            out[cur] = block
    return {deg: b for deg, b in out.items() if b.entries} or {
        k: FockBlock.zeros(dim, dim, k, k)
    }


def gram(m: int, n: int, k: int) -> FockBlock:
    """Exact Gram matrix of the degree-k basis monomials."""
    key = (m, n, k)
    hit = _GRAM_CACHE.get(key)
    if hit is not None:
        return hit
    alg = get_algebra(m, n)
    basis = fock_basis(m, n, k)
    entries = {}
    for u, ku in enumerate(basis):
        for v in range(u, len(basis)):
            val = alg.pairing(ku, basis[v])
            if val:
                entries[(u, v)] = val
                if u != v:
                    entries[(v, u)] = val
    block = FockBlock(len(basis), len(basis), k, k, entries)
    _GRAM_CACHE[key] = block
    return block


def gamma_exponent(m: int, n: int, idx) -> int:
    """Exponent e with weight q**(-2e): e = sum of k[a,alpha]*(m+n+1-a-alpha)."""
    N = m + n
    total = 0
    for g, e in enumerate(idx):
        if e:
            a, alpha = divmod(g, m)
            total += e * (N - 1 - a - alpha)  # 1-based: N+1-(a+1)-(alpha+1)
    return total


def gamma_weight(m: int, n: int, idx) -> QRational:
    """Diagonal weight of the invariant-integral density on a basis monomial."""
    return QRational.q_power(-2 * gamma_exponent(m, n, idx))


# ---------------------------------------------------------------------------
# numeric layer
# ---------------------------------------------------------------------------


class NumericRep:
    """Cached double-precision blocks of the representation at a fixed q."""

    _registry: dict = {}

    def __init__(self, m: int, n: int, q0: float):
        if not (0.0 < q0 < 1.0):
            raise ValueError("q must lie in (0,1)")
        self.m = m
        self.n = n
        self.q0 = q0
        self._blocks: dict = {}
        self._mono_mats: dict = {}
        self._grams: dict = {}

    @classmethod
    def get(cls, m, n, q0) -> "NumericRep":
        key = (m, n, q0)
        rep = cls._registry.get(key)
        if rep is None:
            rep = cls(m, n, q0)
            cls._registry[key] = rep
        return rep

    def block(self, g: int, starred: bool, k: int) -> np.ndarray:
        key = (g, starred, k)
        hit = self._blocks.get(key)
        if hit is None:
            hit = _block_for_letter(self.m, self.n, g, starred, k).to_numpy(self.q0)
            self._blocks[key] = hit
        return hit

    def mono_matrix(self, kz: tuple, lz: tuple, k: int) -> np.ndarray:
        """Matrix of z^kz zs^lz from degree k (empty if it underflows degree 0)."""
        key = (kz, lz, k)
        hit = self._mono_mats.get(key)
        if hit is not None:
            return hit
        dim = fock_dim(self.m, self.n, k)
        mat = np.eye(dim)
        cur = k
        for g in reversed(_letters(lz)):
            mat = self.block(g, True, cur) @ mat
            cur -= 1
        for g in reversed(_letters(kz)):
            mat = self.block(g, False, cur) @ mat
            cur += 1
        self._mono_mats[key] = mat
        return mat

    def gram(self, k: int) -> np.ndarray:
        hit = self._grams.get(k)
        if hit is None:
            hit = gram(self.m, self.n, k).to_numpy(self.q0)
            self._grams[k] = hit
        return hit

    def weight_vector(self, k: int, lam: float) -> np.ndarray:
        """Per-basis-vector weights q**(2*sum k_g*(lam - w_g)) at degree k."""
        basis = fock_basis(self.m, self.n, k)
        out = np.empty(len(basis))
        for i, idx in enumerate(basis):
            out[i] = self.q0 ** (2.0 * (lam * k - gamma_exponent(self.m, self.n, idx)))
        return out


def gram_cholesky_mp(m: int, n: int, k: int, q0) -> "object":
    """Cholesky factor of the degree-k Gram at q0 in working precision.

    Raises ValueError if the matrix fails to be positive definite.
    """
    import mpmath

    from .scalar import get_working_dps

    block = gram(m, n, k)
    with mpmath.workdps(get_working_dps()):
        q = mpmath.mpf(q0)
        A = mpmath.zeros(block.rows, block.cols)
        for (i, j), v in block.entries.items():
            A[i, j] = v.eval_mpf(q)
        try:
            return mpmath.cholesky(A)
        except ValueError as exc:
            raise ValueError(f"Gram({k}) is not positive definite at q={q0}") from exc


def truncated_generator_matrix_norm(m: int, n: int, q0: float, max_degree: int) -> float:
    """Operator norm of the truncated generator-matrix symbol.

    Assembles the m x n array of generator blocks in the row-rescaled
    convention Z[alpha, a] = (-q)^(alpha-1) z[a, m+1-alpha], compressed to
    total degree <= max_degree, expressed in the Gram-orthonormalized
    basis, viewed as one map from n copies to m copies of the truncated
    space.  The untruncated operator is a contraction, so the value must
    not exceed 1.
    """
    dims = [fock_dim(m, n, k) for k in range(max_degree + 1)]
    offsets = np.concatenate(([0], np.cumsum(dims)))
    V = int(offsets[-1])
    rep = NumericRep.get(m, n, q0)

    chol = []
    chol_inv_t = []
    for k in range(max_degree + 1):
        L = np.linalg.cholesky(rep.gram(k))
        chol.append(L)
        chol_inv_t.append(np.linalg.solve(L.T, np.eye(dims[k])))

    big = np.zeros((m * V, n * V))
    for alpha_row in range(1, m + 1):
        sign_scale = (-q0) ** (alpha_row - 1)
        alpha_gen = m + 1 - alpha_row
        for a in range(1, n + 1):
            g = (a - 1) * m + (alpha_gen - 1)
            blk = np.zeros((V, V))
            for k in range(max_degree):
                B = rep.block(g, False, k)
                Bon = chol[k + 1].T @ B @ chol_inv_t[k]
                blk[offsets[k + 1]:offsets[k + 2], offsets[k]:offsets[k + 1]] = Bon
            big[(alpha_row - 1) * V:alpha_row * V, (a - 1) * V:a * V] = sign_scale * blk
    return float(np.linalg.norm(big, 2))
