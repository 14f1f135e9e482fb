"""Reproducing kernels for the quantum matrix ball.

Kernels live in the completed tensor product of the holomorphic
subalgebra with the opposite multiplication and the antiholomorphic
subalgebra: a term is a pair (z-monomial, z*-monomial) with a coefficient
polynomial in the auxiliary variable u = q**(2 lambda).  Every kernel in
scope is bidegree balanced (left degree = right degree) and the class
enforces that.

Building blocks are the invariant elements

    chi_k = sum over all k x k minor pairs  M (x) M*,       k = 1..m,

which commute pairwise.  The finite products

    K_l = prod_{j=l}^{-1} (1 + sum_k (-q**(2j))**k chi_k),    l <= -1,

extend to a unique kernel K(u) polynomial in u with K(q**(2l)) = K_l.
K(u) is computed here degree by degree from the functional equation
K(u) = (1 + sum_k (-u)**k chi_k) * K(q**2 u): for bidegree d and u-power
j >= 1 the coefficient is fixed by dividing by (1 - q**(2j)), and the
u**0 coefficient by the normalization K(1) = 1.

Specializing u = q**(2 lambda) gives the q-Bergman kernel; pairing its
right leg with the invariant integral reproduces holomorphic polynomials
and annihilates antiholomorphic ones.  A brute-force Gram projection onto
the holomorphic subspace serves as the independent oracle.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .algebra import Element, Monomial, get_algebra, mul as alg_mul, star as alg_star
from .fock import fock_basis
from .integral import IntegralParams, nu_lambda
from .scalar import QRational, UPoly

__all__ = [
    "KernelElement",
    "chi",
    "kernel_mul",
    "kernel_invert",
    "K_finite",
    "K_poly",
    "K_lambda",
    "commutator_check",
    "bergman_apply",
    "bergman_oracle",
]

_ZERO = QRational.zero()
_ONE = QRational.one()


class KernelElement:
    """A truncated, bidegree-balanced element of the kernel algebra."""

    __slots__ = ("m", "n", "trunc", "terms")

    def __init__(self, m, n, trunc, terms):
        if trunc < 0:
            raise ValueError("truncation order must be nonnegative")
        self.m = m
        self.n = n
        self.trunc = trunc
        clean = {}
        for (kz, lz), poly in terms.items():
            if sum(kz) != sum(lz):
                raise ValueError("kernel terms must be bidegree balanced")
            if sum(kz) > trunc:
                continue
            if isinstance(poly, QRational):
                poly = UPoly.constant(poly)
            if poly:
                clean[(kz, lz)] = poly
        self.terms = clean

    @staticmethod
    def one(m, n, trunc) -> "KernelElement":
        size = m * n
        zero_idx = (0,) * size
        return KernelElement(m, n, trunc, {(zero_idx, zero_idx): UPoly.constant(_ONE)})

    @staticmethod
    def zero(m, n, trunc) -> "KernelElement":
        return KernelElement(m, n, trunc, {})

    def is_zero(self) -> bool:
        return not self.terms

    def constant_coefficient(self) -> UPoly:
        size = self.m * self.n
        zero_idx = (0,) * size
        return self.terms.get((zero_idx, zero_idx), UPoly.zero())

    def __add__(self, other):
        if not isinstance(other, KernelElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for key, poly in other.terms.items():
            s = out.get(key, UPoly.zero()) + poly
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return KernelElement(self.m, self.n, min(self.trunc, other.trunc), out)

    def __neg__(self):
        return KernelElement(self.m, self.n, self.trunc,
                             {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, KernelElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "KernelElement":
        if isinstance(c, QRational):
            c = UPoly.constant(c)
        return KernelElement(self.m, self.n, self.trunc,
                             {k: v * c for k, v in self.terms.items()})

    def _check(self, other):
        if self.m != other.m or self.n != other.n:
            raise ValueError("dimension mismatch between kernels")

    def bidegree_part(self, d: int) -> "KernelElement":
        return KernelElement(self.m, self.n, self.trunc,
                             {k: v for k, v in self.terms.items() if sum(k[0]) == d})

    def max_bidegree(self) -> int:
        return max((sum(k) for (k, _) in self.terms), default=0)

    def subst_u(self, u0: QRational) -> "KernelElement":
        """Substitute a QRational value for u in every coefficient."""
        out = {}
        for key, poly in self.terms.items():
            val = poly.eval(u0)
            if val:
                out[key] = UPoly.constant(val)
        return KernelElement(self.m, self.n, self.trunc, out)

    def scale_u(self, factor: QRational) -> "KernelElement":
        """Substitute u -> factor*u in every coefficient."""
        return KernelElement(self.m, self.n, self.trunc,
                             {k: v.scale_u(factor) for k, v in self.terms.items()})

    def eval_numeric(self, q0: float, u0: float) -> dict:
        """Coefficients as floats at fixed q and u; keys are (kz, lz)."""
        out = {}
        for key, poly in self.terms.items():
            v = poly.eval_float(q0, u0)
            if v:
                out[key] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, KernelElement):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and self.terms == other.terms

    def to_json(self) -> dict:
        m = self.m
        items = []
        for (kz, lz), poly in sorted(self.terms.items()):
            items.append({
                "left": [[g // m + 1, g % m + 1, e] for g, e in enumerate(kz) if e],
                "right": [[g // m + 1, g % m + 1, e] for g, e in enumerate(lz) if e],
                "coeff_u": poly.to_strings(),
            })
        return {"m": self.m, "n": self.n, "trunc": self.trunc, "terms": items}

    @staticmethod
    def from_json(data) -> "KernelElement":
        m, n = data["m"], data["n"]
        size = m * n
        terms = {}
        for t in data["terms"]:
            kz = [0] * size
            lz = [0] * size
            for a, alpha, e in t.get("left", []):
                kz[(a - 1) * m + (alpha - 1)] += e
            for a, alpha, e in t.get("right", []):
                lz[(a - 1) * m + (alpha - 1)] += e
            terms[(tuple(kz), tuple(lz))] = UPoly.from_strings(t["coeff_u"])
        return KernelElement(m, n, data["trunc"], terms)

    def __repr__(self):
        return f"KernelElement({self.m}x{self.n}, trunc={self.trunc}, {len(self.terms)} terms)"


def chi(m: int, n: int, k: int) -> KernelElement:
    """The invariant kernel of bidegree (k, k) built from all k x k minors."""
    if not (1 <= k <= m):
        raise ValueError(f"need 1 <= k <= m = {m}")
    alg = get_algebra(m, n)
    terms: dict = {}
    for rows in itertools.combinations(range(1, m + 1), k):
        for cols in itertools.combinations(range(1, n + 1), k):
            minor = alg.qminor(rows, cols)
            mstar = alg.star(minor)
            for (kz, _), c1 in minor.terms.items():
                for (_, lz), c2 in mstar.terms.items():
                    key = (kz, lz)
                    s = terms.get(key, _ZERO) + c1 * c2
                    if s:
                        terms[key] = s
                    elif key in terms:
                        del terms[key]
    return KernelElement(m, n, k, {k2: UPoly.constant(v) for k2, v in terms.items()})


def kernel_mul(A: KernelElement, B: KernelElement, trunc: int) -> KernelElement:
    """Product in the kernel algebra, truncated at the given bidegree.

    Left legs multiply in the opposite order (the left factor carries the
    opposite algebra structure); right legs multiply normally.  Both sides
    are re-normal-ordered with the single-species commutation relations.
    """
    A._check(B)
    alg = get_algebra(A.m, A.n)
    out: dict = {}
    for (k1, l1), p1 in A.terms.items():
        d1 = sum(k1)
        for (k2, l2), p2 in B.terms.items():
            if d1 + sum(k2) > trunc:
                continue
            poly = p1 * p2
            for kz, cz in alg.z_mul(k2, k1).items():
                for lw, cw in alg.w_mul(l1, l2).items():
                    key = (kz, lw)
                    s = out.get(key, UPoly.zero()) + poly * (cz * cw)
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
    return KernelElement(A.m, A.n, trunc, out)


def kernel_invert(A: KernelElement, trunc: int) -> KernelElement:
    """Inverse of 1 + (terms of bidegree >= 1), as a truncated geometric series."""
    size = A.m * A.n
    zero_idx = (0,) * size
    const = A.terms.get((zero_idx, zero_idx))
    if const is None or const != UPoly.constant(_ONE):
        raise ValueError("not invertible in truncated form: constant term is not 1")
    higher = KernelElement(A.m, A.n, trunc,
                           {k: v for k, v in A.terms.items() if sum(k[0]) > 0})
    out = KernelElement.one(A.m, A.n, trunc)
    power = KernelElement.one(A.m, A.n, trunc)
    sign = -1
    for _ in range(1, trunc + 1):
        power = kernel_mul(power, higher, trunc)
        if power.is_zero():
            break
        out = out + (power.scale(QRational.from_rational(sign)))
        sign = -sign
    return out


def _one_plus_signed_chi(m: int, n: int, base: QRational, trunc: int) -> KernelElement:
    """1 + sum_{k=1}^{m} (-base)**k chi_k, truncated."""
    out = KernelElement.one(m, n, trunc)
    for k in range(1, m + 1):
        if k > trunc:
            break
        coeff = QRational.from_rational((-1) ** k) * base ** k
        out = out + chi(m, n, k).scale(coeff)
    return out


def K_finite(m: int, n: int, l: int, trunc: int) -> KernelElement:
    """The finite product kernel for a negative integer parameter l."""
    if l > -1:
        raise ValueError("l must be a negative integer")
    out = KernelElement.one(m, n, trunc)
    for j in range(l, 0):
        out = kernel_mul(out, _one_plus_signed_chi(m, n, QRational.q_power(2 * j), trunc),
                         trunc)
    return out


_K_POLY_CACHE: dict = {}


def K_poly(m: int, n: int, trunc: int) -> KernelElement:
    """The unique u-polynomial kernel interpolating the finite products.

    Solved degreewise from K(u) = (1 + sum_k (-u)**k chi_k) K(q**2 u) with
    the normalization that every positive-bidegree component vanishes at
    u = 1.
    """
    key = (m, n, trunc)
    hit = _K_POLY_CACHE.get(key)
    if hit is not None:
        return hit
    alg = get_algebra(m, n)
    q2 = QRational.q_power(2)
    chis = [None] + [chi(m, n, k) for k in range(1, m + 1)]
    size = m * n
    zero_idx = (0,) * size
    parts: list = [dict() for _ in range(trunc + 1)]
    parts[0][(zero_idx, zero_idx)] = UPoly.constant(_ONE)
    for d in range(1, trunc + 1):
        rhs: dict = {}
        for k in range(1, min(m, d) + 1):
            sign = QRational.from_rational((-1) ** k)
            for (k1, l1), c1 in chis[k].terms.items():
                for (k2, l2), p2 in parts[d - k].items():
                    # (-u)^k chi_k * K_{d-k}(q^2 u)
                    poly = (p2.scale_u(q2) * (sign * c1.coeffs[0])).shift_u(k)
                    for kz, cz in alg.z_mul(k2, k1).items():
                        for lw, cw in alg.w_mul(l1, l2).items():
                            key2 = (kz, lw)
                            s = rhs.get(key2, UPoly.zero()) + poly * (cz * cw)
                            if s:
                                rhs[key2] = s
                            elif key2 in rhs:
                                del rhs[key2]
        for key2, r in rhs.items():
            coeffs = list(r.coeffs)
            if coeffs and coeffs[0]:
                raise AssertionError("functional equation lost its u^0 consistency")
            solved = [_ZERO]
            total = _ZERO
            for j in range(1, len(coeffs)):
                cj = coeffs[j] / QRational.from_terms({0: 1, 2 * j: -1})
                solved.append(cj)
                total = total + cj
            solved[0] = -total
            parts[d][key2] = UPoly(solved)
    merged: dict = {}
    for part in parts:
        merged.update(part)
    out = KernelElement(m, n, trunc, merged)
    _K_POLY_CACHE[key] = out
    return out


def K_lambda(m: int, n: int, lam, trunc: int, q0: float = None):
    """The q-Bergman kernel at the given weight.

    With 2*lam an integer (and q0 omitted) the substitution u = q**(2 lam)
    is exact and a KernelElement is returned; otherwise q0 must be given
    and the result is a {(left, right): float} coefficient table.
    """
    poly = K_poly(m, n, trunc)
    two_lam = Fraction(lam) * 2
    if q0 is None:
        if two_lam.denominator != 1:
            raise ValueError("exact substitution needs 2*lambda integral; pass q0 for numerics")
        return poly.subst_u(QRational.q_power(int(two_lam)))
    return poly.eval_numeric(q0, q0 ** (2.0 * float(lam)))


def commutator_check(m: int, n: int, j: int, k: int, trunc: int):
    """Whether chi_j and chi_k commute up to the truncation; returns (bool, residual)."""
    if not (1 <= j <= m and 1 <= k <= m):
        raise ValueError("chi indices out of range")
    if trunc < j + k:
        raise ValueError("truncation too small to see the product")
    a = chi(m, n, j)
    b = chi(m, n, k)
    residual = kernel_mul(a, b, trunc) - kernel_mul(b, a, trunc)
    return residual.is_zero(), residual


# ---------------------------------------------------------------------------
# Bergman projection
# ---------------------------------------------------------------------------


def _antiholomorphic_element(m: int, n: int, lz: tuple) -> Element:
    size = m * n
    return Element(m, n, {Monomial((0,) * size, lz): _ONE})


def _holomorphic_element(m: int, n: int, kz: tuple) -> Element:
    size = m * n
    return Element(m, n, {Monomial(kz, (0,) * size): _ONE})


def bergman_apply(f: Element, params: IntegralParams, trunc: int) -> dict:
    """Integral-operator form of the Bergman projection.

    Pairs the right leg of the kernel at u = q**(2 lambda) with the
    integral of (right leg) * f and collects the left legs.  Returns the
    projected holomorphic polynomial as {z multi-index: float}.
    """
    m, n = f.m, f.n
    numeric = K_poly(m, n, trunc).eval_numeric(params.q0, params.q0 ** (2.0 * params.lam))
    out: dict = {}
    for (kz, lz), cv in numeric.items():
        r = _antiholomorphic_element(m, n, lz)
        val = cv * nu_lambda(alg_mul(r, f), params)
        if val:
            out[kz] = out.get(kz, 0.0) + val
    return {k: v for k, v in out.items() if v != 0.0}


def bergman_oracle(f: Element, params: IntegralParams, d_hol: int,
                   d_full: int = None) -> dict:
    """Brute-force orthogonal projection onto holomorphic polynomials.

    Builds the Gram matrix of the holomorphic monomials of degree up to
    d_hol under the lambda-integral pairing (block diagonal by degree),
    solves the normal equations for f, and returns the projection as
    {z multi-index: float}.  Independent of the kernel machinery.
    """
    m, n = f.m, f.n
    if d_full is not None:
        params = IntegralParams(params.q0, params.lam, params.eps,
                                max(params.max_degree, d_full))
    out: dict = {}
    for d in range(d_hol + 1):
        basis = fock_basis(m, n, d)
        dim = len(basis)
        G = np.empty((dim, dim))
        b = np.empty(dim)
        star_basis = [alg_star(_holomorphic_element(m, n, kz)) for kz in basis]
        for i, si in enumerate(star_basis):
            b[i] = nu_lambda(alg_mul(si, f), params)
            for j, kz in enumerate(basis):
                G[i, j] = nu_lambda(alg_mul(si, _holomorphic_element(m, n, kz)), params)
        x = np.linalg.solve(G, b)
        for kz, coeff in zip(basis, x):
            if coeff != 0.0:
                out[kz] = out.get(kz, 0.0) + float(coeff)
    return {k: v for k, v in out.items() if abs(v) > 1e-300}
