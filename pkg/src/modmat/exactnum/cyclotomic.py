"""Exact arithmetic in the cyclotomic field Q(zeta_n).

Elements are stored as an integer numerator vector of length phi(n) in the
power basis 1, zeta, ..., zeta^(phi-1) together with one positive common
denominator.  The vector is always reduced modulo the n-th cyclotomic
polynomial, so two elements are equal iff their stored data are equal.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

from ..errors import DivisionByNonUnit


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # both low-to-high, den monic
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_coeffs(d)))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_coeffs(n)) - 1


def cyclotomic_polynomial(n: int):
    """Phi_n as a one-variable BiPoly (powers of the first variable)."""
    from .bipoly import BiPoly

    return BiPoly({(i, 0): c for i, c in enumerate(cyclotomic_coeffs(n)) if c})


class _FieldData:
    """Per-order tables: reductions of x^m modulo Phi_n."""

    def __init__(self, n: int):
        self.n = n
        self.poly = cyclotomic_coeffs(n)
        self.phi = phi = len(self.poly) - 1
        top = max(2 * phi - 1, n)
        pows: list[tuple[int, ...]] = []
        cur = [0] * phi
        cur[0] = 1
        for m in range(top):
            pows.append(tuple(cur))
            # multiply by x and reduce
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                for j in range(phi):
                    cur[j] -= lead * self.poly[j]
        self.pows = pows
        # reductions of x^m for phi <= m < 2*phi - 1, used after multiplication
        self.high = [pows[m] for m in range(phi, 2 * phi - 1)]

    def reduce(self, v: list[int]) -> list[int]:
        phi = self.phi
        out = list(v[:phi])
        if len(out) < phi:
            out += [0] * (phi - len(out))
        for m in range(phi, len(v)):
            c = v[m]
            if c:
                row = self.pows[m % self.n]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return out

    def mul(self, a, b) -> list[int]:
        phi = self.phi
        res = [0] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        res[i + j] += x * y
        return self.reduce(res)


@lru_cache(maxsize=None)
def field_data(n: int) -> _FieldData:
    return _FieldData(n)


def _normalize(num, den):
    if den < 0:
        num = [-x for x in num]
        den = -den
    g = gcd(den, *num)
    if g != 1 and g != 0:
        num = [x // g for x in num]
        den //= g
    return tuple(num), den


class Cyclotomic:
    """An element of Q(zeta_n)."""

    __slots__ = ("order", "num", "den", "_hash")

    def __init__(self, order: int, coeffs=None):
        fd = field_data(order)
        if coeffs is None:
            coeffs = [0] * fd.phi
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != fd.phi:
            # accept any polynomial in zeta, reduce it
            den = 1
            for c in coeffs:
                den = den * c.denominator // gcd(den, c.denominator)
            num = fd.reduce(_wrap([int(c * den) for c in coeffs], order))
        else:
            den = 1
            for c in coeffs:
                den = den * c.denominator // gcd(den, c.denominator)
            num = [int(c * den) for c in coeffs]
        self.order = order
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, order: int, num, den: int = 1) -> Cyclotomic:
        obj = object.__new__(cls)
        obj.order = order
        obj.num, obj.den = _normalize(list(num), den)
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def zero(cls, order: int) -> Cyclotomic:
        return cls._raw(order, [0] * field_data(order).phi, 1)

    @classmethod
    def one(cls, order: int) -> Cyclotomic:
        return cls.scalar(order, 1)

    @classmethod
    def scalar(cls, order: int, value) -> Cyclotomic:
        value = Fraction(value)
        num = [0] * field_data(order).phi
        num[0] = value.numerator
        return cls._raw(order, num, value.denominator)

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> Cyclotomic:
        """zeta_n ** k for any integer k."""
        fd = field_data(order)
        return cls._raw(order, list(fd.pows[k % order]), 1)

    # access
    @property
    def phi(self) -> int:
        return len(self.num)

    @property
    def coeffs(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __bool__(self) -> bool:
        return any(self.num)

    def _coerce(self, other) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError(
                    f"cyclotomic orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.scalar(self.order, other)
        return None

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Cyclotomic._raw(self.order, [a + b for a, b in zip(self.num, o.num)], self.den)
        return Cyclotomic._raw(
            self.order,
            [a * o.den + b * self.den for a, b in zip(self.num, o.num)],
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, [-a for a in self.num], self.den)

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
            return Cyclotomic._raw(
                self.order, [a * other.numerator for a in self.num],
                self.den * other.denominator)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        fd = field_data(self.order)
        return Cyclotomic._raw(self.order, fd.mul(self.num, o.num), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise DivisionByNonUnit("inverse of zero in Q(zeta_%d)" % self.order)
        num, den = _inverse_int(self.order, self.num)
        # (num_self/den_self)^-1 = den_self * num/den
        return Cyclotomic._raw(self.order, [c * self.den for c in num], den)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByNonUnit("division by zero")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison
    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.order == other.order and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return (not any(self.num[1:]) and self.num[0] == other.numerator
                    and self.den == other.denominator)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.order, self.num, self.den))
        return self._hash

    # automorphisms and numerics
    def galois(self, u: int) -> Cyclotomic:
        """Image under zeta -> zeta^u (u a unit mod n)."""
        n = self.order
        if gcd(u, n) != 1:
            raise ValueError(f"{u} is not a unit mod {n}")
        fd = field_data(n)
        out = [0] * fd.phi
        for j, c in enumerate(self.num):
            if c:
                row = fd.pows[(u * j) % n]
                for i in range(fd.phi):
                    if row[i]:
                        out[i] += c * row[i]
        return Cyclotomic._raw(n, out, self.den)

    def conjugate(self) -> Cyclotomic:
        return self.galois(-1)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        acc = 0j
        for j, c in enumerate(self.num):
            if c:
                acc += c * z ** j
        return acc / self.den

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, order: int, data) -> Cyclotomic:
        return cls(order, [Fraction(x) for x in data])

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
                terms.append(f"{c}{'*' + mono if mono else ''}")
        body = " + ".join(terms) if terms else "0"
        return f"Cyclotomic[{self.order}]({body})"


def _wrap(v: list[int], n: int) -> list[int]:
    # fold exponents mod n before reduction (zeta^n = 1)
    if len(v) <= n:
        return v
    out = [0] * n
    for m, c in enumerate(v):
        out[m % n] += c
    return out


@lru_cache(maxsize=4096)
def _inverse_int(order: int, num: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Solve num * y = 1 in Q(zeta_n); returns y as (integer vector, denominator)."""
    from .linalg import solve_integer_system

    fd = field_data(order)
    phi = fd.phi
    # column j of the multiplication matrix is num * x^j
    cols = []
    for j in range(phi):
        e = [0] * phi
        e[j] = 1
        cols.append(fd.mul(num, e))
    rows = [[cols[j][i] for j in range(phi)] for i in range(phi)]
    rhs = [1] + [0] * (phi - 1)
    sol = solve_integer_system(rows, rhs)
    den = 1
    for c in sol:
        den = den * c.denominator // gcd(den, c.denominator)
    return tuple(int(c * den) for c in sol), den
