"""Acceptance suite: every desk-scale identity the engine must verify.

Each criterion function returns (ok, detail); run() executes all of them,
prints one pass/fail line per criterion, and reports overall success.
Tolerances and parameter grids are pinned here and nowhere else.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction

import numpy as np

from .algebra import Element, Monomial, build_y, classical_eval, mul
from .fock import (
    fock_basis,
    gram,
    gram_cholesky_mp,
    theta_apply,
    theta_gen_block,
    truncated_generator_matrix_norm,
)
from .integral import IntegralParams, trace_y_closed, trace_y_series
from .kernels import K_finite, K_poly, bergman_apply, bergman_oracle, chi, commutator_check, kernel_mul
from .scalar import QRational, UPoly

_SEED = 20260809


def _random_contraction(rng, m, n):
    A = np.array([[rng.gauss(0, 1) + 1j * rng.gauss(0, 1) for _ in range(n)] for _ in range(m)])
    s = np.linalg.norm(A, 2)
    return (rng.uniform(0.1, 0.95) / s) * A


def _random_element(rng, m, n, max_each=2, nterms=4) -> Element:
    size = m * n
    terms = {}
    for _ in range(nterms):
        z = [0] * size
        s = [0] * size
        for _ in range(rng.randint(0, max_each)):
            z[rng.randrange(size)] += 1
        for _ in range(rng.randint(0, max_each)):
            s[rng.randrange(size)] += 1
        coeff = QRational.from_rational(rng.randint(-3, 3)) * QRational.q_power(rng.randint(-2, 2))
        if coeff:
            key = Monomial(tuple(z), tuple(s))
            terms[key] = terms.get(key, QRational.zero()) + coeff
    return Element(m, n, terms)


def criterion_1():
    """Exact commutation of every generator with y, four shapes, < 30 s."""
    shapes = [(1, 1), (1, 2), (2, 2), (2, 3)]
    qm2 = QRational.q_power(-2)
    q2 = QRational.q_power(2)
    for m, n in shapes:
        y = build_y(m, n)
        for a in range(1, n + 1):
            for alpha in range(1, m + 1):
                z = Element.generator(m, n, a, alpha)
                zs = Element.generator(m, n, a, alpha, starred=True)
                if mul(z, y) != mul(y, z).scale(qm2):
                    return False, f"z[{a},{alpha}] y != q^-2 y z at (m,n)=({m},{n})"
                if mul(zs, y) != mul(y, zs).scale(q2):
                    return False, f"zs[{a},{alpha}] y != q^2 y zs at (m,n)=({m},{n})"
    return True, f"exact for (m,n) in {shapes}"


def criterion_2():
    """y acts as q**(2k) identity on each graded component, k <= 4, < 60 s."""
    shapes = [(1, 1), (1, 2), (2, 2)]
    for m, n in shapes:
        y = build_y(m, n)
        for k in range(5):
            blocks = theta_apply(y, k)
            if set(blocks) != {k}:
                return False, f"y does not preserve degree {k} at ({m},{n})"
            if not blocks[k].is_identity_times(QRational.q_power(2 * k)):
                return False, f"block at degree {k}, (m,n)=({m},{n}) is not q^(2k) I"
    return True, f"q^(2k) identity exact for k <= 4, (m,n) in {shapes}"


def criterion_3():
    """Series and closed product traces agree to 1e-10 relative."""
    shapes = [(1, 1), (1, 2), (2, 2)]
    worst = 0.0
    for m, n in shapes:
        lam = (m + n) + 0.5
        for q0 in (0.3, 0.5, 0.7):
            c = trace_y_closed(m, n, q0, lam)
            s = trace_y_series(m, n, q0, lam, eps=1e-14)
            rel = abs(c - s) / abs(c)
            worst = max(worst, rel)
            if rel > 1e-10:
                return False, f"relative error {rel:.2e} at (m,n,q)=({m},{n},{q0})"
    return True, f"worst relative error {worst:.2e} over {shapes} x q in (0.3,0.5,0.7)"


def criterion_4():
    """Gram positivity (Cholesky at q=0.5, k <= 4) and exact adjointness (k <= 3)."""
    shapes = [(1, 1), (1, 2), (2, 2)]
    for m, n in shapes:
        for k in range(5):
            gram_cholesky_mp(m, n, k, 0.5)
        for k in range(4):
            gk = gram(m, n, k)
            gk1 = gram(m, n, k + 1)
            for a in range(1, n + 1):
                for alpha in range(1, m + 1):
                    B = theta_gen_block(m, n, a, alpha, k)
                    A = theta_gen_block(m, n, a, alpha, k + 1, starred=True)
                    if gk1.matmul(B) != A.transpose().matmul(gk):
                        return False, f"adjointness fails at ({m},{n}), k={k}, gen ({a},{alpha})"
    return True, f"Cholesky k<=4 and exact adjointness k<=3 for {shapes}"


def criterion_5():
    """Pairwise commutativity of the invariant kernels, truncation j+k+1, < 5 min."""
    for m, n in [(2, 2), (2, 3)]:
        for j in range(1, m + 1):
            for k in range(1, m + 1):
                ok, residual = commutator_check(m, n, j, k, j + k + 1)
                if not ok:
                    return False, f"[chi_{j}, chi_{k}] != 0 at ({m},{n}): {len(residual.terms)} terms"
    return True, "all commutators vanish exactly at (2,2) and (2,3)"


def criterion_6():
    """Polynomial kernel: specialization, recursion, and u-degree bound."""
    trunc = 3
    for m, n in [(1, 1), (1, 2), (2, 2)]:
        kp = K_poly(m, n, trunc)
        for l in (-1, -2, -3):
            if kp.subst_u(QRational.q_power(2 * l)) != K_finite(m, n, l, trunc):
                return False, f"K(q^(2l)) != K_l at l={l}, (m,n)=({m},{n})"
        for l in (-2, -3):
            lhs = K_finite(m, n, l, trunc)
            step = kernel_mul(
                _factor(m, n, l, trunc), K_finite(m, n, l + 1, trunc), trunc
            )
            if lhs != step:
                return False, f"recursion fails at l={l}, (m,n)=({m},{n})"
        for (kz, _), poly in kp.terms.items():
            if poly.degree() > sum(kz):
                return False, f"u-degree bound violated at bidegree {sum(kz)}, (m,n)=({m},{n})"
    return True, "specialization at l in (-1,-2,-3), recursion, and deg_u <= d (bidegree <= 3)"


def _factor(m, n, l, trunc):
    from .kernels import _one_plus_signed_chi

    return _one_plus_signed_chi(m, n, QRational.q_power(2 * l), trunc)


def _as_vector(coeffs: dict, keys):
    return np.array([coeffs.get(k, 0.0) for k in keys])


def criterion_7():
    """Bergman projection reproduces holomorphics and matches the oracle, 1e-8."""
    rng = random.Random(_SEED)
    worst = 0.0
    for m, n in [(1, 1), (1, 2)]:
        lam = (m + n) + 1.0
        params = IntegralParams(0.6, lam, eps=1e-15)
        size = m * n
        # holomorphic monomials of degree <= 2 must reproduce
        for d in range(3):
            for kz in fock_basis(m, n, d):
                f = Element(m, n, {Monomial(kz, (0,) * size): QRational.one()})
                got = bergman_apply(f, params, d + 1)
                keys = set(got) | {kz}
                ref = {kz: 1.0}
                diff = max(abs(got.get(k, 0.0) - ref.get(k, 0.0)) for k in keys)
                worst = max(worst, diff)
                if diff > 1e-8:
                    return False, f"monomial {kz} not reproduced at ({m},{n}): err {diff:.2e}"
        # antiholomorphic generators project to zero
        for g in range(size):
            lz = [0] * size
            lz[g] = 1
            f = Element(m, n, {Monomial((0,) * size, tuple(lz)): QRational.one()})
            got = bergman_apply(f, params, 2)
            diff = max((abs(v) for v in got.values()), default=0.0)
            worst = max(worst, diff)
            if diff > 1e-8:
                return False, f"zs input not annihilated at ({m},{n}): err {diff:.2e}"
        # random mixed-bidegree inputs agree with the brute-force projection
        for _ in range(20):
            f = _random_element(rng, m, n)
            if f.is_zero():
                continue
            trunc = f.max_zdeg() + f.max_sdeg()
            got = bergman_apply(f, params, max(trunc, 1))
            want = bergman_oracle(f, params, max(f.max_zdeg(), 1))
            keys = set(got) | set(want)
            diff = max((abs(got.get(k, 0.0) - want.get(k, 0.0)) for k in keys), default=0.0)
            worst = max(worst, diff)
            if diff > 1e-8:
                return False, f"apply/oracle disagree at ({m},{n}): err {diff:.2e}"
    return True, f"worst deviation {worst:.2e} over (1,1) and (1,2), q=0.6, lambda=N+1"


def criterion_8():
    """Classical limit of y equals det(I - Z Z*) to 1e-12, 20 random Z."""
    rng = random.Random(_SEED + 8)
    shapes = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]
    count = 0
    worst = 0.0
    while count < 20:
        m, n = shapes[count % len(shapes)]
        Z = _random_contraction(rng, m, n)
        got = classical_eval(build_y(m, n), Z.tolist())
        want = np.linalg.det(np.eye(m) - Z @ Z.conj().T)
        err = abs(got - want)
        worst = max(worst, err)
        if err > 1e-12:
            return False, f"classical limit off by {err:.2e} at ({m},{n})"
        count += 1
    return True, f"20 random contractions, worst |error| {worst:.2e}"


def criterion_9():
    """Truncated generator-matrix symbol is a contraction at q=0.5, degree 6."""
    worst = 0.0
    for m, n in [(1, 1), (1, 2), (2, 2)]:
        val = truncated_generator_matrix_norm(m, n, 0.5, 6)
        worst = max(worst, val)
        if val > 1.0 + 1e-9:
            return False, f"norm {val!r} exceeds 1 + 1e-9 at ({m},{n})"
    return True, f"largest truncated norm {worst:.12f} <= 1 + 1e-9"


def criterion_10():
    """Disc kernel coefficients: exact q-binomial form and classical limit."""
    trunc = 5
    kp = K_poly(1, 1, trunc)
    one = QRational.one()
    for d in range(trunc + 1):
        got = kp.terms.get(((d,), (d,)), UPoly.zero())
        num = UPoly.constant(one)
        for i in range(d):
            num = num * UPoly((one, -QRational.q_power(2 * i)))
        den = one
        for i in range(1, d + 1):
            den = den * QRational.from_terms({0: 1, 2 * i: -1})
        expect = num * den.inverse()
        if got != expect:
            return False, f"coefficient at bidegree {d} differs from the q-binomial product"
    # numeric agreement with an independent product evaluation near q = 1,
    # and the exact q -> 1 limit must be the classical binomial coefficient
    q0 = 0.999
    for lam in (2, 3):
        u0 = QRational.q_power(2 * lam)
        for d in range(trunc + 1):
            coeff = kp.terms.get(((d,), (d,)), UPoly.zero()).eval(u0)
            indep = 1.0
            for i in range(d):
                indep *= (1.0 - q0 ** (2 * lam + 2 * i)) / (1.0 - q0 ** (2 + 2 * i))
            diff = abs(coeff.eval_float(q0) - indep)
            if diff > 1e-6:
                return False, f"numeric mismatch {diff:.2e} at d={d}, lambda={lam}, q={q0}"
            limit = coeff.eval_fraction(1)
            if limit != Fraction(math.comb(lam + d - 1, d)):
                return False, f"q->1 limit at d={d}, lambda={lam} is {limit}, not binomial"
    return True, "q-binomial coefficients exact (d <= 5); q->1 limit equals binomial(lambda+d-1, d)"


CRITERIA = [
    ("criterion-1", "generator commutation with y", criterion_1, 30.0),
    ("criterion-2", "graded action of y is q^(2k) I", criterion_2, 60.0),
    ("criterion-3", "trace series vs closed product", criterion_3, 60.0),
    ("criterion-4", "Gram positivity and adjointness", criterion_4, None),
    ("criterion-5", "kernel generators commute", criterion_5, 300.0),
    ("criterion-6", "polynomial kernel specialization", criterion_6, None),
    ("criterion-7", "Bergman projection vs oracle", criterion_7, 300.0),
    ("criterion-8", "classical limit of y", criterion_8, None),
    ("criterion-9", "truncated symbol norm bound", criterion_9, None),
    ("criterion-10", "disc kernel closed forms", criterion_10, None),
]


def run(quick: bool = False, out=print):
    """Run every criterion; returns True when all pass.

    quick currently runs the identical pinned checks; the flag is kept for
    interface stability and reporting.
    """
    all_ok = True
    for name, title, fn, limit in CRITERIA:
        t0 = time.time()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        elapsed = time.time() - t0
        if ok and limit is not None and elapsed > limit:
            ok, detail = False, f"passed but exceeded runtime limit {limit}s ({elapsed:.1f}s)"
        all_ok = all_ok and ok
        status = "PASS" if ok else "FAIL"
        out(f"{status} {name} ({title}): {detail} [{elapsed:.1f}s]")
    return all_ok
