"""Sparse polynomials and rational functions in two indeterminates over Q.

BiPoly maps exponent pairs (i, j) to nonzero Fractions, for s^i t^j.  BiRat is
a quotient of two BiPolys; no polynomial gcd is ever computed.  Only integer
content and common monomial factors are removed, and equality is decided by
cross-multiplication.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..errors import DivisionByNonUnit


class BiPoly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = dict(terms)
        self.terms = {k: Fraction(v) for k, v in terms.items() if v != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> BiPoly:
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> BiPoly:
        c = Fraction(c)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def s(cls) -> BiPoly:
        return cls._raw({(1, 0): Fraction(1)})

    @classmethod
    def t(cls) -> BiPoly:
        return cls._raw({(0, 1): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def degrees(self) -> tuple[int, int]:
        return (max((i for i, _ in self.terms), default=-1),
                max((j for _, j in self.terms), default=-1))

    def leading(self):
        """Leading monomial and coefficient in lex order (s before t)."""
        m = max(self.terms)
        return m, self.terms[m]

    @staticmethod
    def _coerce(other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({k: -v for k, v in self.terms.items()})

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
            if other == 0:
                return BiPoly._raw({})
            return BiPoly._raw({k: v * other for k, v in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in o.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BiPoly._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __truediv__(self, other):
        return BiRat(self) / other

    def __rtruediv__(self, other):
        return other / BiRat(self)

    def divexact(self, other: BiPoly) -> BiPoly | None:
        """Quotient if other divides self exactly, else None."""
        if other.is_zero():
            raise DivisionByNonUnit("division by the zero polynomial")
        if self.is_zero():
            return BiPoly._raw({})
        if other.is_constant():
            c = other.terms[(0, 0)]
            return BiPoly._raw({k: v / c for k, v in self.terms.items()})
        (li, lj), lc = other.leading()
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            m = max(rem)
            if m[0] < li or m[1] < lj:
                return None
            c = rem[m] / lc
            dm = (m[0] - li, m[1] - lj)
            quot[dm] = c
            for (i, j), v in other.terms.items():
                k = (i + dm[0], j + dm[1])
                w = rem.get(k, 0) - c * v
                if w:
                    rem[k] = w
                else:
                    rem.pop(k, None)
        return BiPoly._raw(quot)

    def content(self) -> Fraction:
        """Positive rational c with self / c integral and primitive."""
        if not self.terms:
            return Fraction(0)
        den = 1
        for v in self.terms.values():
            den = den * v.denominator // gcd(den, v.denominator)
        g = 0
        for v in self.terms.values():
            g = gcd(g, int(v * den))
        return Fraction(g, den)

    def monomial_content(self) -> tuple[int, int]:
        return (min((i for i, _ in self.terms), default=0),
                min((j for _, j in self.terms), default=0))

    def shift(self, di: int, dj: int) -> BiPoly:
        return BiPoly._raw({(i + di, j + dj): v for (i, j), v in self.terms.items()})

    def evaluate(self, s, t=0):
        """Value at (s, t) in any ring containing Q."""
        if not self.terms:
            return s * 0 if not isinstance(s, (int, Fraction)) else Fraction(0)
        ispow: dict = {}
        tpow: dict = {}
        acc = None
        for (i, j), c in sorted(self.terms.items()):
            if i not in ispow:
                ispow[i] = s ** i if i else None
            if j not in tpow:
                tpow[j] = t ** j if j else None
            term = c
            if ispow[i] is not None:
                term = ispow[i] * term
            if tpow[j] is not None:
                term = tpow[j] * term
            acc = term if acc is None else acc + term
        return acc

    def compose(self, s, t):
        """Substitute rational functions (BiRat/BiPoly) for both variables."""
        return self.evaluate(s, t)

    def partial(self, var: int) -> BiPoly:
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[var]
            if e:
                out[(i - 1, j) if var == 0 else (i, j - 1)] = c * e
        return BiPoly._raw(out)

    def to_json(self) -> dict:
        return {f"{i},{j}": str(c) for (i, j), c in sorted(self.terms.items())}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(x for x in (
                "s" if i == 1 else f"s^{i}" if i else "",
                "t" if j == 1 else f"t^{j}" if j else "") if x)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)


class BiRat:
    """Rational function num/den in Q(s, t)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = BiPoly._coerce(num) if not isinstance(num, BiPoly) else num
        if den is None:
            den = BiPoly.const(1)
        elif not isinstance(den, BiPoly):
            den = BiPoly._coerce(den)
        if num is None or den is None:
            raise TypeError("BiRat expects BiPoly or rational arguments")
        if den.is_zero():
            raise DivisionByNonUnit("zero denominator")
        self.num, self.den = _reduce_pair(num, den)

    @classmethod
    def _raw(cls, num: BiPoly, den: BiPoly) -> BiRat:
        obj = object.__new__(cls)
        obj.num, obj.den = _reduce_pair(num, den)
        return obj

    @classmethod
    def s(cls) -> BiRat:
        return cls(BiPoly.s())

    @classmethod
    def t(cls) -> BiRat:
        return cls(BiPoly.t())

    @classmethod
    def const(cls, c) -> BiRat:
        return cls(BiPoly.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    @staticmethod
    def _coerce(other):
        if isinstance(other, BiRat):
            return other
        if isinstance(other, BiPoly):
            return BiRat(other)
        if isinstance(other, (int, Fraction)):
            return BiRat(BiPoly.const(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero():
            return o
        if o.num.is_zero():
            return self
        if self.den == o.den:
            return BiRat._raw(self.num + o.num, self.den)
        q = o.den.divexact(self.den)
        if q is not None:
            return BiRat._raw(self.num * q + o.num, o.den)
        q = self.den.divexact(o.den)
        if q is not None:
            return BiRat._raw(self.num + o.num * q, self.den)
        return BiRat._raw(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return BiRat._raw(-self.num, self.den)

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
            return BiRat._raw(self.num * other, self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return BiRat._raw(BiPoly(), BiPoly.const(1))
        n1, d2 = _cancel(self.num, o.den)
        n2, d1 = _cancel(o.num, self.den)
        return BiRat._raw(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> BiRat:
        if self.num.is_zero():
            raise DivisionByNonUnit("inverse of zero rational function")
        return BiRat._raw(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return BiRat._raw(self.num ** e, self.den ** e)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        raise TypeError("BiRat is unhashable (equality is by cross-multiplication)")

    def evaluate(self, s, t=0):
        d = self.den.evaluate(s, t)
        if d == 0:
            raise DivisionByNonUnit("denominator vanishes at the given point")
        return self.num.evaluate(s, t) / d

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self):
        if self.den.is_constant() and self.den.terms.get((0, 0)) == 1:
            return f"BiRat({self.num!r})"
        return f"BiRat(({self.num!r}) / ({self.den!r}))"


def _cancel(a: BiPoly, b: BiPoly) -> tuple[BiPoly, BiPoly]:
    # cheap cancellation: exact division in either direction
    if b.is_constant():
        return a, b
    q = a.divexact(b)
    if q is not None:
        return q, BiPoly.const(1)
    return a, b


def _reduce_pair(num: BiPoly, den: BiPoly) -> tuple[BiPoly, BiPoly]:
    if num.is_zero():
        return num, BiPoly.const(1)
    # common monomial factor
    ni, nj = num.monomial_content()
    di, dj = den.monomial_content()
    mi, mj = min(ni, di), min(nj, dj)
    if mi or mj:
        num = num.shift(-mi, -mj)
        den = den.shift(-mi, -mj)
    if den.is_constant():
        c = den.terms[(0, 0)]
        return num * (1 / c), BiPoly.const(1)
    # integer content: both integral, joint coefficient gcd 1, positive leading den
    lcm = 1
    for v in (*num.terms.values(), *den.terms.values()):
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    g = 0
    for v in (*num.terms.values(), *den.terms.values()):
        g = gcd(g, int(v * lcm))
    scale = Fraction(lcm, g)
    if den.leading()[1] < 0:
        scale = -scale
    if scale != 1:
        num = num * scale
        den = den * scale
    return num, den
