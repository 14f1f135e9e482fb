"""Invariant integrals on the quantum matrix ball.

The normalized positive functional with parameter lambda > m+n-1 is a
weighted trace over the Fock space: the represented integrand, the
lambda-th power of the distinguished element y (which acts as q**(2k)
on the degree-k component), and the diagonal density with weight
q**(-2*sum k[a,alpha]*(N+1-a-alpha)), all multiplied by the normalizing
constant

    C(lambda) = prod_{j=0}^{n-1} prod_{k=0}^{m-1}
                   (1 - q**(2(lambda+1-N)) * q**(2(j+k))).

For the constant integrand the trace collapses to geometric series and
has the closed product value 1/C(lambda); the series evaluator below sums
the same weights degree by degree with a verified geometric tail bound
and serves as the numeric cross-check.

General integrands are handled numerically: per degree, the diagonal of
the represented integrand is folded against the combined weight
q**(2*sum k_g*(lambda - w_g)).  Integrands whose bidegree components are
all unbalanced vanish identically and short-circuit to exact zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import Element
from .fock import NumericRep, fock_basis, gamma_exponent
from .scalar import QRational, UPoly

__all__ = [
    "ConvergenceError",
    "IntegralParams",
    "c_lambda",
    "c_lambda_numeric",
    "trace_y_closed",
    "trace_y_series",
    "trace_y_series_info",
    "nu_lambda",
    "nu_lambda_info",
]


class ConvergenceError(RuntimeError):
    """Raised when a degree-by-degree sum fails its geometric tail test."""


@dataclass(frozen=True)
class IntegralParams:
    """Numeric integration parameters.

    lam must exceed m+n-1 for convergence; eps is the tail tolerance and
    max_degree the hard cap on the graded summation.
    """

    q0: float
    lam: float
    eps: float = 1e-14
    max_degree: int = 160

    def validate(self, N: int) -> None:
        if not (0.0 < self.q0 < 1.0):
            raise ValueError("q must lie in (0,1)")
        if self.lam <= N - 1:
            raise ValueError(f"lambda must exceed N-1 = {N - 1}")
        if self.eps <= 0:
            raise ValueError("tail tolerance must be positive")


class SumInfo(NamedTuple):
    value: float
    tail_bound: float
    degrees_used: int


def c_lambda(m: int, n: int, u=None):
    """The normalizing constant as a polynomial in u = q**(2 lambda).

    With u omitted returns the UPoly
    prod (1 - u*q**(2(1-N))*q**(2(j+k))); with a QRational u substitutes
    it exactly.
    """
    N = m + n
    one = QRational.one()
    if u is None:
        poly = UPoly.constant(one)
        for j in range(n):
            for k in range(m):
                factor = UPoly((one, -QRational.q_power(2 * (1 - N + j + k))))
                poly = poly * factor
        return poly
    if isinstance(u, QRational):
        out = one
        for j in range(n):
            for k in range(m):
                out = out * (one - u * QRational.q_power(2 * (1 - N + j + k)))
        return out
    raise TypeError("u must be None (polynomial) or a QRational")


def c_lambda_numeric(m: int, n: int, q0: float, lam: float) -> float:
    N = m + n
    out = 1.0
    for j in range(n):
        for k in range(m):
            out *= 1.0 - q0 ** (2.0 * (lam + 1 - N + j + k))
    return out


def trace_y_closed(m: int, n: int, q0: float, lam: float) -> float:
    """Closed product value of the weighted trace of y**lambda."""
    N = m + n
    if not (0.0 < q0 < 1.0):
        raise ValueError("q must lie in (0,1)")
    out = 1.0
    for j in range(n):
        for k in range(m):
            factor = 1.0 - q0 ** (2.0 * (lam + 1 - N + j + k))
            if factor <= 0.0:
                raise ValueError("divergent parameter: lambda must exceed N-1")
            out /= factor
    return out


def _tail_ratio(q0: float, lam: float, N: int) -> float:
    # dominant geometric ratio of the per-degree contributions, with the
    # polynomial-growth allowance of 1.5 (clamped below 1)
    return min(q0 ** (2.0 * (lam + 1 - N)) * 1.5, 0.9)


def _controlled_sum(contribs, ratio: float, eps: float, max_degree: int,
                    min_degree: int) -> SumInfo:
    """Sum contribs(k) for k = 0.. until three consecutive contributions
    decay geometrically with the given ratio and the last is below eps."""
    total = 0.0
    window: list = []
    for k in range(max_degree + 1):
        t = contribs(k)
        total += t
        window.append(abs(t))
        if len(window) > 3:
            window.pop(0)
        if k >= min_degree and len(window) == 3:
            decaying = (
                window[1] <= ratio * window[0] + 1e-300
                and window[2] <= ratio * window[1] + 1e-300
            )
            if decaying and window[2] < eps:
                bound = window[2] * ratio / (1.0 - ratio)
                return SumInfo(total, bound, k)
    raise ConvergenceError("series not converging")


def trace_y_series_info(m: int, n: int, q0: float, lam: float,
                        eps: float = 1e-14, max_degree: int = 160) -> SumInfo:
    N = m + n
    if not (0.0 < q0 < 1.0):
        raise ValueError("q must lie in (0,1)")
    if lam <= N - 1:
        raise ValueError(f"lambda must exceed N-1 = {N - 1}")

    def per_degree(k: int) -> float:
        total = 0.0
        for idx in fock_basis(m, n, k):
            total += q0 ** (2.0 * (lam * k - gamma_exponent(m, n, idx)))
        return total

    return _controlled_sum(per_degree, _tail_ratio(q0, lam, N), eps, max_degree, 3)


def trace_y_series(m: int, n: int, q0: float, lam: float,
                   eps: float = 1e-14, max_degree: int = 160) -> float:
    return trace_y_series_info(m, n, q0, lam, eps, max_degree).value


def _balanced_monomials(f: Element):
    out = []
    for mono, c in f.terms.items():
        if mono.zdeg() == mono.sdeg():
            out.append((mono, c))
    return out


def nu_lambda_info(f: Element, p: IntegralParams) -> SumInfo:
    """Numeric value of the invariant integral with its tail certificate."""
    m, n = f.m, f.n
    N = m + n
    p.validate(N)
    balanced = _balanced_monomials(f)
    if not balanced:
        return SumInfo(0.0, 0.0, 0)
    rep = NumericRep.get(m, n, p.q0)
    coeffs = [(mono, c.eval_float(p.q0)) for mono, c in balanced]
    c_norm = c_lambda_numeric(m, n, p.q0, p.lam)
    min_degree = max(mono.sdeg() for mono, _ in balanced) + 1

    def per_degree(k: int) -> float:
        weights = rep.weight_vector(k, p.lam)
        total = 0.0
        for mono, cv in coeffs:
            if mono.sdeg() > k:
                continue
            diag = np.diagonal(rep.mono_matrix(mono.z, mono.zstar, k))
            total += cv * float(np.dot(diag, weights))
        return total

    info = _controlled_sum(per_degree, _tail_ratio(p.q0, p.lam, N), p.eps,
                           p.max_degree, min_degree)
    return SumInfo(c_norm * info.value, c_norm * info.tail_bound, info.degrees_used)


def nu_lambda(f: Element, p: IntegralParams) -> float:
    return nu_lambda_info(f, p).value
