"""Truncated power series in q with coefficients in Q(zeta_n).

A QSeries of precision N is known modulo q^N.  Coefficients are held as an
N x phi(n) integer matrix over one common denominator; products go through a
Kronecker substitution (one big-integer multiplication per product) and are
reduced modulo Phi_n only once per q-power.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

from ..errors import DivisionByNonUnit, ExpOfUnit
from .cyclotomic import Cyclotomic, field_data


@lru_cache(maxsize=256)
def _bias(nslots: int, nbytes: int) -> int:
    return int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * nslots, "little")


def _pack(rows, nrows: int, width: int, nbytes: int) -> int:
    pos = bytearray(nrows * width * nbytes)
    neg = bytearray(nrows * width * nbytes)
    has_neg = False
    for i in range(nrows):
        base = i * width
        for j, x in enumerate(rows[i]):
            if x:
                off = (base + j) * nbytes
                if x > 0:
                    pos[off:off + nbytes] = x.to_bytes(nbytes, "little")
                else:
                    neg[off:off + nbytes] = (-x).to_bytes(nbytes, "little")
                    has_neg = True
    val = int.from_bytes(pos, "little")
    if has_neg:
        val -= int.from_bytes(neg, "little")
    return val


def _maxabs(rows, nrows: int) -> int:
    m = 0
    for i in range(nrows):
        for x in rows[i]:
            if x > m:
                m = x
            elif -x > m:
                m = -x
    return m


def _kron_mul(a_rows, b_rows, nrows: int, order: int) -> list[list[int]]:
    fd = field_data(order)
    phi = fd.phi
    ma = _maxabs(a_rows, nrows)
    mb = _maxabs(b_rows, nrows)
    if not ma or not mb:
        return [[0] * phi for _ in range(nrows)]
    if phi == 1:
        # rational coefficients: plain big-int convolution without reduction
        width = 1
    else:
        width = 2 * phi - 1
    bits = ma.bit_length() + mb.bit_length() + (nrows * phi).bit_length() + 2
    nbytes = (bits + 7) // 8
    pa = _pack(a_rows, nrows, width, nbytes)
    pb = pa if b_rows is a_rows else _pack(b_rows, nrows, width, nbytes)
    nslots = nrows * width
    total_bits = nslots * nbytes * 8
    mask = (1 << total_bits) - 1
    prod = ((pa * pb) & mask) + _bias(nslots, nbytes)
    data = (prod & mask).to_bytes(nslots * nbytes, "little")
    half = 1 << (nbytes * 8 - 1)
    from_bytes = int.from_bytes
    out = []
    for i in range(nrows):
        base = i * width * nbytes
        v = [from_bytes(data[base + j * nbytes: base + (j + 1) * nbytes], "little") - half
             for j in range(width)]
        out.append(fd.reduce(v) if width > phi else v)
    return out


class QSeries:
    """f = sum_{k < prec} c_k q^k (mod q^prec), c_k in Q(zeta_order)."""

    __slots__ = ("order", "prec", "rows", "den")

    def __init__(self, order: int, coeffs=(), prec: int | None = None):
        coeffs = list(coeffs)
        if prec is None:
            prec = len(coeffs)
        if prec < 1:
            raise ValueError("precision must be at least 1")
        phi = field_data(order).phi
        cyc = []
        for c in coeffs[:prec]:
            if not isinstance(c, Cyclotomic):
                c = Cyclotomic.scalar(order, c)
            elif c.order != order:
                raise ValueError("coefficient order mismatch")
            cyc.append(c)
        den = 1
        for c in cyc:
            den = den * c.den // gcd(den, c.den)
        rows = [[x * (den // c.den) for x in c.num] for c in cyc]
        rows += [[0] * phi for _ in range(prec - len(rows))]
        self.order = order
        self.prec = prec
        self.rows, self.den = _normalize(rows, den)

    @classmethod
    def _raw(cls, order: int, rows, den: int, prec: int) -> QSeries:
        obj = object.__new__(cls)
        obj.order = order
        obj.prec = prec
        obj.rows, obj.den = _normalize(rows, den)
        return obj

    # constructors
    @classmethod
    def zero(cls, order: int, prec: int) -> QSeries:
        phi = field_data(order).phi
        return cls._raw(order, [[0] * phi for _ in range(prec)], 1, prec)

    @classmethod
    def constant(cls, order: int, value, prec: int) -> QSeries:
        return cls(order, [value], prec)

    @classmethod
    def one(cls, order: int, prec: int) -> QSeries:
        return cls.constant(order, 1, prec)

    @classmethod
    def monomial(cls, order: int, k: int, coeff, prec: int) -> QSeries:
        coeffs = [0] * min(k, prec)
        if k < prec:
            coeffs.append(coeff)
        return cls(order, coeffs, prec)

    # access
    @property
    def coeffs(self) -> list[Cyclotomic]:
        return [Cyclotomic._raw(self.order, r, self.den) for r in self.rows]

    def __getitem__(self, k: int) -> Cyclotomic:
        if not 0 <= k < self.prec:
            raise IndexError(f"q^{k} is beyond precision {self.prec}")
        return Cyclotomic._raw(self.order, self.rows[k], self.den)

    def __len__(self):
        return self.prec

    def constant_term(self) -> Cyclotomic:
        return self[0]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def __bool__(self):
        return not self.is_zero()

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient (None for the zero series)."""
        for k, r in enumerate(self.rows):
            if any(r):
                return k
        return None

    def leading_coefficient(self) -> Cyclotomic | None:
        v = self.valuation()
        return None if v is None else self[v]

    def truncate(self, prec: int) -> QSeries:
        if prec >= self.prec:
            return self
        return QSeries._raw(self.order, self.rows[:prec], self.den, prec)

    def _coerce(self, other) -> QSeries | None:
        if isinstance(other, QSeries):
            if other.order != self.order:
                raise ValueError("q-series over different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return QSeries.constant(self.order, other, self.prec)
        return None

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        if self.den == o.den:
            rows = [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows[:prec], o.rows[:prec])]
            return QSeries._raw(self.order, rows, self.den, prec)
        g = gcd(self.den, o.den)
        fa, fb = o.den // g, self.den // g
        rows = [[x * fa + y * fb for x, y in zip(r, s)]
                for r, s in zip(self.rows[:prec], o.rows[:prec])]
        return QSeries._raw(self.order, rows, self.den * fa, prec)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw(self.order, [[-x for x in r] for r in self.rows], self.den, self.prec)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return QSeries._raw(self.order, [[x * other.numerator for x in r] for r in self.rows],
                                self.den * other.denominator, self.prec)
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError("q-series over different cyclotomic fields")
            fd = field_data(self.order)
            rows = [fd.mul(r, other.num) if any(r) else list(r) for r in self.rows]
            return QSeries._raw(self.order, rows, self.den * other.den, self.prec)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        rows = _kron_mul(self.rows, o.rows, prec, self.order)
        return QSeries._raw(self.order, rows, self.den * o.den, prec)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = QSeries.one(self.order, self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> QSeries:
        c0 = self[0]
        if c0.is_zero():
            raise DivisionByNonUnit("q-series with zero constant term is not a unit")
        inv = QSeries.constant(self.order, c0.inverse(), 1)
        p = 1
        while p < self.prec:
            p = min(2 * p, self.prec)
            a = self.truncate(p)
            b = QSeries._raw(self.order, inv.rows + [[0] * len(inv.rows[0])] * (p - inv.prec),
                             inv.den, p)
            inv = b * (2 - a * b)
        return inv

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByNonUnit("division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def derive(self) -> QSeries:
        """The operator q d/dq (keeps the precision)."""
        return QSeries._raw(self.order, [[k * x for x in r] for k, r in enumerate(self.rows)],
                            self.den, self.prec)

    def exp(self) -> QSeries:
        if not self[0].is_zero():
            raise ExpOfUnit("exp needs a series with zero constant term")
        n, prec = self.order, self.prec
        a = self.coeffs
        ja = [k * a[k] for k in range(prec)]
        e = [Cyclotomic.one(n)]
        for k in range(1, prec):
            acc = Cyclotomic.zero(n)
            for j in range(1, k + 1):
                if not ja[j].is_zero() and not e[k - j].is_zero():
                    acc = acc + ja[j] * e[k - j]
            e.append(acc * Fraction(1, k))
        return QSeries(n, e, prec)

    # comparison
    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, QSeries) else other
        if o is None:
            return NotImplemented
        if isinstance(other, QSeries) and other.order != self.order:
            return False
        d = self - o
        return d.is_zero()

    __hash__ = None

    # automorphisms and numerics
    def galois(self, u: int) -> QSeries:
        return QSeries(self.order, [c.galois(u) for c in self.coeffs], self.prec)

    def evaluate(self, q: complex) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        zp = [z ** j for j in range(len(self.rows[0]))]
        acc = 0j
        qk = 1.0 + 0j
        for r in self.rows:
            if any(r):
                acc += qk * sum(c * w for c, w in zip(r, zp) if c)
            qk *= q
        return acc / self.den

    def to_json(self) -> list[list[str]]:
        return [c.to_json() for c in self.coeffs]

    def __repr__(self):
        shown = []
        for k, c in enumerate(self.coeffs[:4]):
            if not c.is_zero():
                shown.append(f"({c!r})q^{k}")
        body = " + ".join(shown) if shown else "0"
        return f"QSeries[{self.order}]({body} + O(q^{self.prec}))"


def _normalize(rows, den: int):
    if den < 0:
        rows = [[-x for x in r] for r in rows]
        den = -den
    if den != 1:
        g = den
        for r in rows:
            for x in r:
                if x:
                    g = gcd(g, x)
                    if g == 1:
                        break
            if g == 1:
                break
        if g != 1:
            rows = [[x // g for x in r] for r in rows]
            den //= g
    return rows, den
