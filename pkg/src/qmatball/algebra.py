"""The q-deformed *-algebra of polynomial functions on m x n matrices.

Generators z[a, alpha] (column a = 1..n, row alpha = 1..m) and their
adjoints zs[a, alpha] obey:

  * same column (a = b, alpha < beta) or same row (a < b, alpha = beta):
        z[a,alpha] z[b,beta] = q z[b,beta] z[a,alpha]
  * alpha < beta and a > b:  the generators commute
  * alpha < beta and a < b:
        z[a,alpha] z[b,beta] - z[b,beta] z[a,alpha]
            = (q - q^-1) z[a,beta] z[b,alpha]
  * a starred generator moves right through an unstarred one via the
    R-matrix exchange rule
        zs[b,beta] z[a,alpha] = q^2 sum R(b,a; b',a') R(beta,alpha; beta',alpha')
                                  z[a',alpha'] zs[b',beta']
                                + (1 - q^2) delta(a,b) delta(alpha,beta)
    with R(i,j; k,l) = q^-1 if i != j, i = k, j = l; 1 if i = j = k = l;
    -(q^-2 - 1) if i = j, k = l, l > j; 0 otherwise.

Normal form: all unstarred letters first, sorted by (column, row)
ascending, then all starred letters in the same order.  The normal-ordered
monomials form a linear (PBW) basis; an Element is a finite map from such
monomials to QRational coefficients.

The rewrite engine comes in two flavours: a plain worklist reducer over
free words (normal_form, used directly and for confluence cross-checks,
with a selectable reduction strategy) and memoized structured routines
(products of sorted words, single-star pushes) that the heavier modules
build on.  Both produce identical Elements; the test suite checks that.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import NamedTuple

from .scalar import QRational

__all__ = [
    "Monomial",
    "Element",
    "Algebra",
    "get_algebra",
    "normal_form",
    "mul",
    "star",
    "qminor",
    "build_y",
    "bidegree_split",
    "classical_eval",
    "word_from_tokens",
]

_ZERO = QRational.zero()
_ONE = QRational.one()
_Q = QRational.q_power(1)
_Q2 = QRational.q_power(2)
_QINV = QRational.q_power(-1)
_ONE_MINUS_Q2 = QRational.from_terms({0: 1, 2: -1})          # 1 - q^2
_ONE_MINUS_QM2 = QRational.from_terms({0: 1, -2: -1})        # -(q^-2 - 1)
_Q_MINUS_QINV = QRational.from_terms({1: 1, -1: -1})         # q - q^-1
_QINV_MINUS_Q = QRational.from_terms({-1: 1, 1: -1})         # q^-1 - q


class Monomial(NamedTuple):
    """A normal-ordered monomial: exponent multi-indices for z and z*.

    Both tuples have length m*n, indexed by generator id
    g = (a-1)*m + (alpha-1) in the column-major generator order.
    """

    z: tuple
    zstar: tuple

    def zdeg(self) -> int:
        return sum(self.z)

    def sdeg(self) -> int:
        return sum(self.zstar)

    def bidegree(self) -> tuple:
        return (sum(self.z), -sum(self.zstar))


def _letters(exp: tuple) -> tuple:
    """Generator ids of a multi-index, ascending, with multiplicity."""
    out = []
    for g, e in enumerate(exp):
        out.extend([g] * e)
    return tuple(out)


def _exp_from_letters(letters, size: int) -> tuple:
    e = [0] * size
    for g in letters:
        e[g] += 1
    return tuple(e)


class Element:
    """A finite QRational-weighted sum of normal-ordered monomials."""

    __slots__ = ("m", "n", "terms")

    def __init__(self, m: int, n: int, terms: dict):
        self.m = m
        self.n = n
        self.terms = {k: v for k, v in terms.items() if v}

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def zero(m, n) -> "Element":
        return Element(m, n, {})

    @staticmethod
    def one(m, n) -> "Element":
        size = m * n
        mono = Monomial((0,) * size, (0,) * size)
        return Element(m, n, {mono: _ONE})

    @staticmethod
    def generator(m, n, a, alpha, starred=False) -> "Element":
        if not (1 <= alpha <= m and 1 <= a <= n):
            raise ValueError(f"generator index ({a},{alpha}) out of range for {m}x{n}")
        size = m * n
        g = (a - 1) * m + (alpha - 1)
        e = [0] * size
        e[g] = 1
        mono = Monomial(((0,) * size if starred else tuple(e)),
                        (tuple(e) if starred else (0,) * size))
        return Element(m, n, {mono: _ONE})

    def _check(self, other: "Element"):
        if self.m != other.m or self.n != other.n:
            raise ValueError("dimension mismatch between elements")

    # -- linear structure ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, _ZERO) + v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return Element(self.m, self.n, out)

    def __neg__(self):
        return Element(self.m, self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, c: QRational) -> "Element":
        if not c:
            return Element.zero(self.m, self.n)
        return Element(self.m, self.n, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, QRational):
            return self.scale(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(QRational.from_rational(other))
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Element):
            return get_algebra(self.m, self.n).mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(QRational.from_rational(other))
        if isinstance(other, QRational):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.m == other.m and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def star(self) -> "Element":
        return get_algebra(self.m, self.n).star(self)

    def constant_term(self) -> QRational:
        size = self.m * self.n
        mono = Monomial((0,) * size, (0,) * size)
        return self.terms.get(mono, _ZERO)

    def max_zdeg(self) -> int:
        return max((m.zdeg() for m in self.terms), default=0)

    def max_sdeg(self) -> int:
        return max((m.sdeg() for m in self.terms), default=0)

    # -- grading ---------------------------------------------------------------

    def bidegree_split(self) -> dict:
        """Split into homogeneous parts, keyed by (z-degree, -z*-degree)."""
        parts: dict = {}
        for mono, c in self.terms.items():
            parts.setdefault(mono.bidegree(), {})[mono] = c
        return {bd: Element(self.m, self.n, t) for bd, t in parts.items()}

    # -- classical limit ---------------------------------------------------------

    def classical_eval(self, Z) -> complex:
        """Evaluate at q = 1 with z[a,alpha] -> Z[alpha-1][a-1], all commuting."""
        rows = len(Z)
        cols = len(Z[0]) if rows else 0
        if rows != self.m or cols != self.n:
            raise ValueError("matrix shape does not match algebra dimensions")
        total = 0j
        for mono, c in self.terms.items():
            val = complex(c.eval_fraction(1))
            for g, e in enumerate(mono.z):
                if e:
                    a, alpha = divmod(g, self.m)
                    val *= complex(Z[alpha][a]) ** e
            for g, e in enumerate(mono.zstar):
                if e:
                    a, alpha = divmod(g, self.m)
                    val *= complex(Z[alpha][a]).conjugate() ** e
            total += val
        return total

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for mono, c in sorted(self.terms.items()):
            zpart = [[g // self.m + 1, g % self.m + 1, e] for g, e in enumerate(mono.z) if e]
            spart = [[g // self.m + 1, g % self.m + 1, e] for g, e in enumerate(mono.zstar) if e]
            terms.append({"z": zpart, "zstar": spart, "coeff": c.to_string()})
        return {"m": self.m, "n": self.n, "terms": terms}

    @staticmethod
    def from_json(data) -> "Element":
        if isinstance(data, str):
            data = json.loads(data)
        m, n = data["m"], data["n"]
        size = m * n
        terms = {}
        for t in data["terms"]:
            z = [0] * size
            s = [0] * size
            for a, alpha, e in t.get("z", []):
                z[(a - 1) * m + (alpha - 1)] += e
            for a, alpha, e in t.get("zstar", []):
                s[(a - 1) * m + (alpha - 1)] += e
            mono = Monomial(tuple(z), tuple(s))
            c = QRational.parse(t["coeff"])
            prev = terms.get(mono, _ZERO) + c
            if prev:
                terms[mono] = prev
            elif mono in terms:
                del terms[mono]
        return Element(m, n, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono, c in sorted(self.terms.items()):
            factors = []
            for g, e in enumerate(mono.z):
                if e:
                    a, alpha = divmod(g, self.m)
                    factors.append(f"z[{a+1},{alpha+1}]" + (f"^{e}" if e > 1 else ""))
            for g, e in enumerate(mono.zstar):
                if e:
                    a, alpha = divmod(g, self.m)
                    factors.append(f"zs[{a+1},{alpha+1}]" + (f"^{e}" if e > 1 else ""))
            word = "*".join(factors) if factors else "1"
            bits.append(f"({c.to_string()})*{word}")
        return " + ".join(bits)


def _r_pairs(i: int, j: int, size: int):
    """Nonzero entries (k, l) -> value of the exchange R-matrix, lower indices (i, j).

    Indices are 0-based here; `size` is the index range (n for columns,
    m for rows).
    """
    if i != j:
        return (((i, j), _QINV),)
    out = [((i, i), _ONE)]
    for l in range(i + 1, size):
        out.append(((l, l), _ONE_MINUS_QM2))
    return tuple(out)


class Algebra:
    """Rewrite engine and memo caches for one pair of dimensions (m, n).

    Letters are pairs (g, starred) with generator id g = a*m + alpha in
    0-based column-major order.  All caches are insert-only dicts keyed by
    small tuples, so concurrent readers are safe.
    """

    def __init__(self, m: int, n: int):
        # the rewrite rules are valid for any shape; m <= n is only
        # required where the distinguished element and integrals enter
        if m < 1 or n < 1:
            raise ValueError("dimensions must be positive")
        self.m = m
        self.n = n
        self.size = m * n
        self._pair_rules = {}
        self._sort_cache = {}
        self._push_cache = {}
        self._merge_cache = {}
        self._gram_entry_cache = {}
        self._build_pair_rules()

    # -- local rewrite table -------------------------------------------------

    def _build_pair_rules(self):
        m = self.m
        rules = self._pair_rules
        for gx in range(self.size):
            ax, ix = divmod(gx, m)
            for gy in range(self.size):
                ay, iy = divmod(gy, m)
                if gx > gy:
                    # out-of-order unstarred pair z_x z_y
                    if ax == ay or ix == iy:
                        zz = ((_QINV, ((gy, False), (gx, False))),)
                    elif ix < iy:
                        zz = ((_ONE, ((gy, False), (gx, False))),)
                    else:
                        low = ay * m + ix
                        high = ax * m + iy
                        zz = (
                            (_ONE, ((gy, False), (gx, False))),
                            (_QINV_MINUS_Q, ((low, False), (high, False))),
                        )
                    rules[((gx, False), (gy, False))] = zz
                    # starred pairs follow the reversed relations: q -> q^-1
                    if ax == ay or ix == iy:
                        ss = ((_Q, ((gy, True), (gx, True))),)
                    elif ix < iy:
                        ss = ((_ONE, ((gy, True), (gx, True))),)
                    else:
                        low = ay * m + ix
                        high = ax * m + iy
                        ss = (
                            (_ONE, ((gy, True), (gx, True))),
                            (_Q_MINUS_QINV, ((low, True), (high, True))),
                        )
                    rules[((gx, True), (gy, True))] = ss
                # starred letter to the left of an unstarred one
                b, beta = ax, ix
                a, alpha = ay, iy
                out = []
                if gx == gy:
                    out.append((_ONE_MINUS_Q2, ()))
                for (bp, ap), r1 in _r_pairs(b, a, self.n):
                    for (betap, alphap), r2 in _r_pairs(beta, alpha, self.m):
                        coeff = _Q2 * r1 * r2
                        out.append(
                            (coeff, ((ap * m + alphap, False), (bp * m + betap, True)))
                        )
                rules[((gx, True), (gy, False))] = tuple(out)

    def _reducible_at(self, word, i) -> bool:
        (gx, sx), (gy, sy) = word[i], word[i + 1]
        if sx and not sy:
            return True
        return sx == sy and gx > gy

    # -- generic worklist reducer ------------------------------------------------

    def normal_form_word(self, word, strategy: str = "leftmost") -> Element:
        """Reduce a free word to its normal form.

        strategy selects the position of the next reduction: "leftmost"
        or "rightmost".  Any strategy yields the same Element; the
        randomized confluence tests exercise exactly this.
        """
        pending = {tuple(word): _ONE}
        done: dict = {}
        guard = 0
        while pending:
            w, c = pending.popitem()
            idxs = range(len(w) - 1)
            if strategy == "rightmost":
                idxs = range(len(w) - 2, -1, -1)
            pos = -1
            for i in idxs:
                if self._reducible_at(w, i):
                    pos = i
                    break
            if pos < 0:
                mono = self._word_to_mono(w)
                s = done.get(mono, _ZERO) + c
                if s:
                    done[mono] = s
                elif mono in done:
                    del done[mono]
                continue
            for rc, repl in self._pair_rules[(w[pos], w[pos + 1])]:
                nw = w[:pos] + repl + w[pos + 2:]
                s = pending.get(nw, _ZERO) + c * rc
                if s:
                    pending[nw] = s
                elif nw in pending:
                    del pending[nw]
            guard += 1
            if guard > 5_000_000:
                raise RuntimeError("rewrite did not terminate (guard tripped)")
        return Element(self.m, self.n, done)

    def _word_to_mono(self, word) -> Monomial:
        z = [0] * self.size
        s = [0] * self.size
        for g, st in word:
            (s if st else z)[g] += 1
        return Monomial(tuple(z), tuple(s))

    def normal_form(self, word_or_sum, strategy: str = "leftmost") -> Element:
        """Normal form of a word (list of letters) or of [(coeff, word), ...]."""
        if word_or_sum and isinstance(word_or_sum[0], tuple) and len(word_or_sum[0]) == 2 \
                and isinstance(word_or_sum[0][0], QRational):
            total = Element.zero(self.m, self.n)
            for c, w in word_or_sum:
                total = total + self.normal_form_word(w, strategy).scale(c)
            return total
        return self.normal_form_word(word_or_sum, strategy)

    # -- memoized structured paths -------------------------------------------------

    def sort_word(self, letters, starred: bool) -> dict:
        """Normal form of a single-species word; returns {multi-index: coeff}."""
        key = (tuple(letters), starred)
        hit = self._sort_cache.get(key)
        if hit is not None:
            return hit
        el = self.normal_form_word(tuple((g, starred) for g in letters))
        out = {}
        for mono, c in el.terms.items():
            out[mono.zstar if starred else mono.z] = c
        self._sort_cache[key] = out
        return out

    def z_mul(self, k1: tuple, k2: tuple) -> dict:
        """Product of two sorted z-monomials as {multi-index: coeff}."""
        return self.sort_word(_letters(k1) + _letters(k2), False)

    def w_mul(self, l1: tuple, l2: tuple) -> dict:
        """Product of two sorted z*-monomials as {multi-index: coeff}."""
        return self.sort_word(_letters(l1) + _letters(l2), True)

    def push_star(self, g: int, k: tuple):
        """Move one starred letter from the left of z^k to the right.

        Returns (consumed, moved): consumed maps a z multi-index of degree
        deg(k)-1 to its coefficient (the starred letter was absorbed by the
        exchange rule's scalar term), moved maps (z multi-index, h) to the
        coefficient of z^index * zs_h.
        """
        key = (g, k)
        hit = self._push_cache.get(key)
        if hit is not None:
            return hit
        if not any(k):
            result = ({}, {(k, g): _ONE})
            self._push_cache[key] = result
            return result
        f = next(i for i, e in enumerate(k) if e)
        k1 = list(k)
        k1[f] -= 1
        k1 = tuple(k1)
        consumed: dict = {}
        moved: dict = {}
        e_unit = [0] * self.size
        for rc, repl in self._pair_rules[((g, True), (f, False))]:
            if not repl:
                s = consumed.get(k1, _ZERO) + rc
                if s:
                    consumed[k1] = s
                continue
            (fp, _), (gp, _) = repl
            sub_c, sub_m = self.push_star(gp, k1)
            e_unit[fp] = 1
            front = tuple(e_unit)
            e_unit[fp] = 0
            for kk, cc in sub_c.items():
                w = rc * cc
                for kz, cz in self.z_mul(front, kk).items():
                    s = consumed.get(kz, _ZERO) + w * cz
                    if s:
                        consumed[kz] = s
                    elif kz in consumed:
                        del consumed[kz]
            for (kk, h), cc in sub_m.items():
                w = rc * cc
                for kz, cz in self.z_mul(front, kk).items():
                    kk2 = (kz, h)
                    s = moved.get(kk2, _ZERO) + w * cz
                    if s:
                        moved[kk2] = s
                    elif kk2 in moved:
                        del moved[kk2]
        result = (consumed, moved)
        self._push_cache[key] = result
        return result

    def merge_star_z(self, l: tuple, k: tuple) -> dict:
        """Normal form of zs^l * z^k; returns {(z index, zs index): coeff}."""
        key = (l, k)
        hit = self._merge_cache.get(key)
        if hit is not None:
            return hit
        if not any(l):
            result = {(k, l): _ONE}
            self._merge_cache[key] = result
            return result
        g = max(i for i, e in enumerate(l) if e)
        l1 = list(l)
        l1[g] -= 1
        l1 = tuple(l1)
        out: dict = {}
        consumed, moved = self.push_star(g, k)
        for kk, cc in consumed.items():
            for (kz, lz), c2 in self.merge_star_z(l1, kk).items():
                key2 = (kz, lz)
                s = out.get(key2, _ZERO) + cc * c2
                if s:
                    out[key2] = s
                elif key2 in out:
                    del out[key2]
        e_unit = [0] * self.size
        for (kk, h), cc in moved.items():
            e_unit[h] = 1
            tail = tuple(e_unit)
            e_unit[h] = 0
            for (kz, lz), c2 in self.merge_star_z(l1, kk).items():
                w = cc * c2
                for lw, c3 in self.w_mul(lz, tail).items():
                    key2 = (kz, lw)
                    s = out.get(key2, _ZERO) + w * c3
                    if s:
                        out[key2] = s
                    elif key2 in out:
                        del out[key2]
        self._merge_cache[key] = out
        return out

    # -- product, involution -------------------------------------------------------

    def mul(self, f: Element, g: Element) -> Element:
        if f.m != self.m or g.m != self.m or f.n != self.n or g.n != self.n:
            raise ValueError("dimension mismatch between elements")
        out: dict = {}
        for (k1, l1), c1 in f.terms.items():
            for (k2, l2), c2 in g.terms.items():
                c = c1 * c2
                for (km, lm), cm in self.merge_star_z(l1, k2).items():
                    ccm = c * cm
                    for kz, cz in self.z_mul(k1, km).items():
                        cf = ccm * cz
                        for lw, cw in self.w_mul(lm, l2).items():
                            mono = Monomial(kz, lw)
                            s = out.get(mono, _ZERO) + cf * cw
                            if s:
                                out[mono] = s
                            elif mono in out:
                                del out[mono]
        return Element(self.m, self.n, out)

    def star(self, f: Element) -> Element:
        """The involution: (z^k zs^l)* = z^(rev l) zs^(rev k), each side resorted.

        Coefficients are untouched: the ground field is real rationals in
        q, so conjugation acts trivially on them.
        """
        out: dict = {}
        for (k, l), c in f.terms.items():
            zc = self.sort_word(tuple(reversed(_letters(l))), False)
            wc = self.sort_word(tuple(reversed(_letters(k))), True)
            for kz, c1 in zc.items():
                for lw, c2 in wc.items():
                    mono = Monomial(kz, lw)
                    s = out.get(mono, _ZERO) + c * c1 * c2
                    if s:
                        out[mono] = s
                    elif mono in out:
                        del out[mono]
        return Element(self.m, self.n, out)

    # -- q-minors and the element y ---------------------------------------------------

    def qminor(self, rows, cols) -> Element:
        """The quantum minor over the given row and column sets.

        rows is a strictly increasing subset of 1..m, cols of 1..n; both of
        the same size k.  The minor is the signed sum over permutations s
        of (-q)^(inversions of s) z[a_1, alpha_s(1)] ... z[a_k, alpha_s(k)].
        """
        rows = tuple(rows)
        cols = tuple(cols)
        if len(rows) != len(cols) or not rows:
            raise ValueError("row and column sets must have equal positive size")
        if list(rows) != sorted(set(rows)) or list(cols) != sorted(set(cols)):
            raise ValueError("index sets must be strictly increasing")
        if rows[-1] > self.m or cols[-1] > self.n:
            raise ValueError("minor indices out of range")
        k = len(rows)
        words = []
        for perm in _permutations(k):
            inv = sum(
                1
                for i in range(k)
                for j in range(i + 1, k)
                if perm[i] > perm[j]
            )
            coeff = QRational.from_rational((-1) ** inv) * QRational.q_power(inv)
            word = tuple(
                ((cols[i] - 1) * self.m + (rows[perm[i]] - 1), False) for i in range(k)
            )
            words.append((coeff, word))
        return self.normal_form(words)

    def y_element(self) -> Element:
        """The distinguished self-adjoint element: the q-analogue of det(1 - Z Z*).

        1 + sum over k = 1..m of (-1)^k sum over all k x k minors M of
        M * M^*.
        """
        if self.m > self.n:
            raise ValueError("the distinguished element needs m <= n")
        total = Element.one(self.m, self.n)
        for k in range(1, self.m + 1):
            sign = QRational.from_rational((-1) ** k)
            for rows in _subsets(self.m, k):
                for cols in _subsets(self.n, k):
                    minor = self.qminor(rows, cols)
                    total = total + self.mul(minor, self.star(minor)).scale(sign)
        return total

    # -- Fock-space scalar product entry -------------------------------------------------

    def pairing(self, k_left: tuple, k_right: tuple) -> QRational:
        """<z^k_left, z^k_right>: the identity coefficient of (z^k_right)* z^k_left.

        Evaluated by pushing the reversed starred word of k_right through
        z^k_left and keeping only branches where every starred letter is
        absorbed; a starred letter that survives past all unstarred ones can
        never contribute to the identity monomial.
        """
        word = tuple(reversed(_letters(k_right)))
        return self._pair_word(word, k_left)

    def _pair_word(self, sword: tuple, k: tuple) -> QRational:
        if not sword:
            return _ONE if not any(k) else _ZERO
        if not any(k):
            return _ZERO
        key = (sword, k)
        hit = self._gram_entry_cache.get(key)
        if hit is not None:
            return hit
        g = sword[-1]
        rest = sword[:-1]
        total = _ZERO
        consumed, _ = self.push_star(g, k)
        for kk, cc in consumed.items():
            total = total + cc * self._pair_word(rest, kk)
        self._gram_entry_cache[key] = total
        return total


def _permutations(k: int):
    import itertools

    return itertools.permutations(range(k))


def _subsets(limit: int, k: int):
    import itertools

    return itertools.combinations(range(1, limit + 1), k)


_ALGEBRAS: dict = {}


def get_algebra(m: int, n: int) -> Algebra:
    key = (m, n)
    alg = _ALGEBRAS.get(key)
    if alg is None:
        alg = Algebra(m, n)
        _ALGEBRAS[key] = alg
    return alg


# ---------------------------------------------------------------------------
# spec-level operations (module functions over the registry)
# ---------------------------------------------------------------------------


def normal_form(word, m: int, n: int, strategy: str = "leftmost") -> Element:
    """Normal form of a free word given as ((a, alpha, starred), ...) 1-based."""
    alg = get_algebra(m, n)
    letters = []
    for a, alpha, starred in word:
        if not (1 <= alpha <= m and 1 <= a <= n):
            raise ValueError(f"generator index ({a},{alpha}) out of range")
        letters.append(((a - 1) * m + (alpha - 1), bool(starred)))
    return alg.normal_form_word(tuple(letters), strategy)


def mul(f: Element, g: Element) -> Element:
    if f.m != g.m or f.n != g.n:
        raise ValueError("dimension mismatch between elements")
    return get_algebra(f.m, f.n).mul(f, g)


def star(f: Element) -> Element:
    return get_algebra(f.m, f.n).star(f)


def qminor(m: int, n: int, rows, cols) -> Element:
    return get_algebra(m, n).qminor(rows, cols)


def build_y(m: int, n: int) -> Element:
    return get_algebra(m, n).y_element()


def bidegree_split(f: Element) -> dict:
    return f.bidegree_split()


def classical_eval(f: Element, Z) -> complex:
    return f.classical_eval(Z)


def word_from_tokens(text: str, m: int, n: int):
    """Parse a whitespace word of tokens z[a,alpha] / zs[a,alpha] (1-based)."""
    word = []
    for tok in text.split():
        starred = tok.startswith("zs[")
        if not (starred or tok.startswith("z[")) or not tok.endswith("]"):
            raise ValueError(f"bad token {tok!r}; expected z[a,alpha] or zs[a,alpha]")
        body = tok[3:-1] if starred else tok[2:-1]
        try:
            a_s, alpha_s = body.split(",")
            a, alpha = int(a_s), int(alpha_s)
        except Exception as exc:
            raise ValueError(f"bad token {tok!r}") from exc
        if not (1 <= a <= n and 1 <= alpha <= m):
            raise ValueError(f"token {tok!r} out of range for m={m}, n={n}")
        word.append((a, alpha, starred))
    return tuple(word)
