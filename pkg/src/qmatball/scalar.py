"""Exact coefficient arithmetic for the quantum matrix ball.

Every coefficient produced by the normal-ordering relations lives in the
field Q(q) of rational functions of the deformation parameter q.  A value
is kept in the canonical form

    value  =  q**shift * num(q) / den(q)

where num and den are polynomials over Q with nonzero constant terms,
den is monic, and gcd(num, den) = 1.  Pulling the q-power out front makes
the overwhelmingly common case (Laurent monomials and short Laurent
polynomials, den = 1) cheap: no polynomial gcd runs while den = 1.

Polynomials are dense tuples of Fractions in ascending powers with no
trailing zeros; () is the zero polynomial.

The module also provides UPoly, polynomials in an auxiliary interpolation
variable u with QRational coefficients (u stands for q**(2*lambda) in the
kernel constructions), Lagrange interpolation for them, and numeric
evaluation at a fixed q in (0,1) through mpmath at a configurable working
precision (default 50 significant digits).
"""

from __future__ import annotations

import os
from fractions import Fraction

import mpmath

__all__ = [
    "PoleError",
    "QRational",
    "UPoly",
    "qr_normalize",
    "qr_eval",
    "upoly_interpolate",
    "set_working_dps",
    "get_working_dps",
]


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a zero of its denominator."""


_WORKING_DPS = int(os.environ.get("QMATBALL_DPS", "50"))


def set_working_dps(dps: int) -> None:
    """Set the significant decimal digits used by numeric evaluation."""
    global _WORKING_DPS
    if dps < 5:
        raise ValueError("working precision must be at least 5 digits")
    _WORKING_DPS = dps


def get_working_dps() -> int:
    return _WORKING_DPS


# ---------------------------------------------------------------------------
# dense polynomial helpers over Q (tuples of Fraction, ascending powers)
# ---------------------------------------------------------------------------

_F0 = Fraction(0)
_F1 = Fraction(1)

P_ZERO: tuple = ()
P_ONE = (_F1,)


def _ptrim(c: list) -> tuple:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] += x
    return _ptrim(c)


def _pneg(a):
    return tuple(-x for x in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return P_ZERO
    if len(a) == 1:
        s = a[0]
        return tuple(s * x for x in b)
    if len(b) == 1:
        s = b[0]
        return tuple(s * x for x in a)
    c = [_F0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return _ptrim(c)


def _pscale(a, s: Fraction):
    if not s:
        return P_ZERO
    return tuple(s * x for x in a)


def _pdivmod(a, b):
    """Polynomial division over Q; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if len(a) < len(b):
        return P_ZERO, a
    r = list(a)
    q = [_F0] * (len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        f = r[i + len(b) - 1] * inv
        if f:
            q[i] = f
            for j, y in enumerate(b):
                r[i + j] -= f * y
    return _ptrim(q), _ptrim(r)


def _pgcd(a, b):
    """Monic gcd over Q by the Euclidean algorithm."""
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return P_ZERO
    if a[-1] != 1:
        inv = 1 / a[-1]
        a = tuple(inv * x for x in a)
    return a


def _plow(a) -> int:
    """Index of the lowest nonzero coefficient."""
    for i, x in enumerate(a):
        if x:
            return i
    raise ValueError("zero polynomial has no valuation")


def _peval_fraction(a, x: Fraction) -> Fraction:
    acc = _F0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _peval_float(a, x: float) -> float:
    acc = 0.0
    for c in reversed(a):
        acc = acc * x + float(c)
    return acc


def _peval_mpf(a, x):
    acc = mpmath.mpf(0)
    for c in reversed(a):
        acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
    return acc


def _as_poly(obj) -> tuple:
    """Coerce a coefficient container into the internal dense tuple form.

    Accepts a sequence of coefficients in ascending powers, a dict mapping
    power -> coefficient (powers must be >= 0 here), an int/Fraction
    constant, or an existing tuple.
    """
    if isinstance(obj, tuple) and all(isinstance(x, Fraction) for x in obj):
        return _ptrim(list(obj))
    if isinstance(obj, dict):
        if not obj:
            return P_ZERO
        deg = max(obj)
        if min(obj) < 0:
            raise ValueError("negative powers are not allowed in a plain polynomial")
        c = [_F0] * (deg + 1)
        for k, v in obj.items():
            c[k] += Fraction(v)
        return _ptrim(c)
    if isinstance(obj, (int, Fraction)):
        return _ptrim([Fraction(obj)])
    if isinstance(obj, (list, tuple)):
        return _ptrim([Fraction(x) for x in obj])
    raise TypeError(f"cannot interpret {obj!r} as a polynomial in q")


# ---------------------------------------------------------------------------
# QRational
# ---------------------------------------------------------------------------


class QRational:
    """A rational function of q in canonical form q**shift * num/den.

    Invariants: num and den have nonzero constant terms, den is monic,
    gcd(num, den) = 1; the zero element is (0, (), (1,)).  Equality and
    hashing are structural on the canonical form.
    """

    __slots__ = ("shift", "num", "den")

    def __init__(self, shift: int, num: tuple, den: tuple, *, _normalized: bool = False):
        if _normalized:
            self.shift, self.num, self.den = shift, num, den
            return
        if not den:
            raise ZeroDivisionError("division by zero polynomial")
        if not num:
            self.shift, self.num, self.den = 0, P_ZERO, P_ONE
            return
        vn = _plow(num)
        vd = _plow(den)
        if vn:
            num = num[vn:]
        if vd:
            den = den[vd:]
        shift += vn - vd
        if den != P_ONE:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                inv = 1 / lead
                num = tuple(inv * x for x in num)
                den = tuple(inv * x for x in den)
        self.shift, self.num, self.den = shift, num, den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "QRational":
        return _QR_ZERO

    @staticmethod
    def one() -> "QRational":
        return _QR_ONE

    @staticmethod
    def from_rational(r) -> "QRational":
        r = Fraction(r)
        if not r:
            return _QR_ZERO
        return QRational(0, (r,), P_ONE, _normalized=True)

    @staticmethod
    def q_power(k: int) -> "QRational":
        """The Laurent monomial q**k."""
        return QRational(k, P_ONE, P_ONE, _normalized=True)

    @staticmethod
    def from_terms(terms: dict) -> "QRational":
        """Build a Laurent polynomial from {power: coefficient} (powers may be negative)."""
        if not terms:
            return _QR_ZERO
        lo = min(terms)
        c = [_F0] * (max(terms) - lo + 1)
        for k, v in terms.items():
            c[k - lo] += Fraction(v)
        return QRational(lo, _ptrim(c), P_ONE)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_one(self) -> bool:
        return self.shift == 0 and self.num == P_ONE and self.den == P_ONE

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QRational):
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        s = min(self.shift, other.shift)
        if self.den == P_ONE and other.den == P_ONE:
            a = self.num if self.shift == s else (_F0,) * (self.shift - s) + self.num
            b = other.num if other.shift == s else (_F0,) * (other.shift - s) + other.num
            return QRational(s, _padd(a, b), P_ONE)
        a = _pmul(self.num, other.den)
        if self.shift != s:
            a = (_F0,) * (self.shift - s) + a
        b = _pmul(other.num, self.den)
        if other.shift != s:
            b = (_F0,) * (other.shift - s) + b
        return QRational(s, _padd(a, b), _pmul(self.den, other.den))

    def __neg__(self):
        if not self.num:
            return self
        return QRational(self.shift, _pneg(self.num), self.den, _normalized=True)

    def __sub__(self, other):
        if not isinstance(other, QRational):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QRational):
            return NotImplemented
        if not self.num or not other.num:
            return _QR_ZERO
        if self.den == P_ONE and other.den == P_ONE:
            return QRational(
                self.shift + other.shift, _pmul(self.num, other.num), P_ONE, _normalized=True
            )
        return QRational(
            self.shift + other.shift,
            _pmul(self.num, other.num),
            _pmul(self.den, other.den),
        )

    def inverse(self) -> "QRational":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return QRational(-self.shift, self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, QRational):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int):
        if k == 0:
            return _QR_ONE
        if k < 0:
            return self.inverse() ** (-k)
        out = _QR_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, QRational):
            return NotImplemented
        return self.shift == other.shift and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.shift, self.num, self.den))

    # -- evaluation --------------------------------------------------------

    def eval_mpf(self, q0):
        """Evaluate at q = q0 with the working precision; PoleError at a pole."""
        with mpmath.workdps(_WORKING_DPS):
            x = mpmath.mpf(q0) if not isinstance(q0, str) else mpmath.mpf(q0)
            d = _peval_mpf(self.den, x)
            if d == 0:
                raise PoleError("pole at evaluation point")
            n = _peval_mpf(self.num, x)
            if self.shift and x == 0:
                raise PoleError("pole at evaluation point")
            return (x ** self.shift) * n / d

    def eval_float(self, q0: float) -> float:
        """Fast double-precision evaluation at q = q0 in (0,1]."""
        d = _peval_float(self.den, q0)
        if d == 0.0:
            raise PoleError("pole at evaluation point")
        return (q0 ** self.shift) * _peval_float(self.num, q0) / d

    def eval_fraction(self, x) -> Fraction:
        """Exact evaluation at a rational point; PoleError at a pole."""
        x = Fraction(x)
        d = _peval_fraction(self.den, x)
        if not d:
            raise PoleError("pole at evaluation point")
        if self.shift < 0 and not x:
            raise PoleError("pole at evaluation point")
        return x ** self.shift * _peval_fraction(self.num, x) / d

    # -- printing / parsing ------------------------------------------------

    def _laurent_terms(self) -> dict:
        return {self.shift + i: c for i, c in enumerate(self.num) if c}

    def to_string(self) -> str:
        """Canonical string "num(q)" or "num(q)/den(q)" with sparse c*q^k terms."""
        if not self.num:
            return "0"
        num = _terms_to_string(self._laurent_terms())
        if self.den == P_ONE:
            return num
        den = _terms_to_string({i: c for i, c in enumerate(self.den) if c})
        return f"({num})/({den})"

    @staticmethod
    def parse(text: str) -> "QRational":
        """Inverse of to_string (exact round trip)."""
        text = text.strip()
        if text == "0":
            return _QR_ZERO
        if text.startswith("(") and ")/(" in text and text.endswith(")"):
            left, right = text[1:-1].split(")/(")
            nterms = _parse_terms(left)
            dterms = _parse_terms(right)
            lo_n = min(nterms)
            lo_d = min(dterms)
            num = [_F0] * (max(nterms) - lo_n + 1)
            for k, v in nterms.items():
                num[k - lo_n] = v
            den = [_F0] * (max(dterms) - lo_d + 1)
            for k, v in dterms.items():
                den[k - lo_d] = v
            return QRational(lo_n - lo_d, _ptrim(num), _ptrim(den))
        return QRational.from_terms(_parse_terms(text))

    def __repr__(self):
        return self.to_string()


_QR_ZERO = QRational(0, P_ZERO, P_ONE, _normalized=True)
_QR_ONE = QRational(0, P_ONE, P_ONE, _normalized=True)


def _term_to_string(k: int, c: Fraction) -> str:
    if k == 0:
        return str(c)
    if c == 1:
        return f"q^{k}"
    if c == -1:
        return f"-q^{k}"
    return f"{c}*q^{k}"


def _terms_to_string(terms: dict) -> str:
    parts = []
    for k in sorted(terms):
        s = _term_to_string(k, terms[k])
        if not parts:
            parts.append(s)
        elif s.startswith("-"):
            parts.append(f" - {s[1:]}")
        else:
            parts.append(f" + {s}")
    return "".join(parts)


def _parse_terms(text: str) -> dict:
    text = text.replace(" - ", " + -").strip()
    terms: dict = {}
    for chunk in text.split(" + "):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "q^" in chunk:
            head, _, exp = chunk.partition("q^")
            k = int(exp)
            head = head.rstrip("*")
            if head in ("", "+"):
                c = _F1
            elif head == "-":
                c = -_F1
            else:
                c = Fraction(head)
        elif chunk == "q":
            k, c = 1, _F1
        elif chunk == "-q":
            k, c = 1, -_F1
        else:
            k, c = 0, Fraction(chunk)
        terms[k] = terms.get(k, _F0) + c
    return {k: v for k, v in terms.items() if v}


# ---------------------------------------------------------------------------
# spec-level operations
# ---------------------------------------------------------------------------


def qr_normalize(num, den) -> QRational:
    """Canonical reduced quotient of two polynomials in q.

    num and den may be coefficient sequences, {power: coeff} dicts, or
    constants.  Raises ZeroDivisionError on a zero denominator.
    """
    n = _as_poly(num)
    d = _as_poly(den)
    if not d:
        raise ZeroDivisionError("division by zero polynomial")
    return QRational(0, n, d)


def qr_eval(x: QRational, q0):
    """High-precision value of x at q = q0 (mpmath, working precision)."""
    return x.eval_mpf(q0)


# ---------------------------------------------------------------------------
# UPoly: polynomials in u over Q(q)
# ---------------------------------------------------------------------------


class UPoly:
    """Polynomial in the interpolation variable u with QRational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1].is_zero():
            c.pop()
        self.coeffs = tuple(c)

    @staticmethod
    def zero() -> "UPoly":
        return UPoly(())

    @staticmethod
    def constant(c: QRational) -> "UPoly":
        return UPoly((c,))

    @staticmethod
    def u() -> "UPoly":
        return UPoly((QRational.zero(), QRational.one()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def degree(self) -> int:
        """Degree in u; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __add__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, x in enumerate(b):
            c[i] = c[i] + x
        return UPoly(c)

    def __neg__(self):
        return UPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QRational):
            return UPoly(tuple(other * x for x in self.coeffs))
        if not isinstance(other, UPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UPoly(())
        zero = QRational.zero()
        c = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        c[i + j] = c[i + j] + x * y
        return UPoly(c)

    __rmul__ = __mul__

    def shift_u(self, k: int) -> "UPoly":
        """Multiply by u**k."""
        if not self.coeffs or k == 0:
            return self if self.coeffs else UPoly(())
        zero = QRational.zero()
        return UPoly((zero,) * k + self.coeffs)

    def scale_u(self, factor: QRational) -> "UPoly":
        """Substitute u -> factor*u (coefficient j picks up factor**j)."""
        out = []
        p = QRational.one()
        for j, c in enumerate(self.coeffs):
            if j:
                p = p * factor
            out.append(c * p)
        return UPoly(out)

    def eval(self, u0: QRational) -> QRational:
        acc = QRational.zero()
        for c in reversed(self.coeffs):
            acc = acc * u0 + c
        return acc

    def eval_float(self, q0: float, u0: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * u0 + c.eval_float(q0)
        return acc

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def to_strings(self) -> list:
        return [c.to_string() for c in self.coeffs]

    @staticmethod
    def from_strings(strings) -> "UPoly":
        return UPoly(tuple(QRational.parse(s) for s in strings))

    def __repr__(self):
        if not self.coeffs:
            return "UPoly(0)"
        parts = [f"({c.to_string()})*u^{j}" for j, c in enumerate(self.coeffs) if c]
        return "UPoly(" + " + ".join(parts) + ")"


def upoly_interpolate(points) -> UPoly:
    """The unique polynomial through the given (u0, value) pairs (Lagrange).

    Abscissae must be pairwise distinct QRationals; the result has degree
    < len(points).
    """
    pts = list(points)
    seen = set()
    for x, _ in pts:
        if x in seen:
            raise ValueError("duplicate interpolation abscissae")
        seen.add(x)
    one = QRational.one()
    total = UPoly.zero()
    for i, (xi, yi) in enumerate(pts):
        if yi.is_zero():
            continue
        basis = UPoly.constant(one)
        denom = one
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            basis = basis * UPoly((-xj, one))
            denom = denom * (xi - xj)
        total = total + basis * (yi / denom)
    return total
