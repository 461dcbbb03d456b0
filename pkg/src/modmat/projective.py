"""Small helpers for points and lines of the projective plane over an exact field."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .exactnum import BiPoly, BiRat, Cyclotomic, Matrix, linear_solve


def is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()


def cross(p, q):
    """Cross product; the line through two points, or the meet of two lines."""
    return (p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0])


def dot(p, q):
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


def det3(p, q, r):
    return dot(cross(p, q), r)


def is_null(p) -> bool:
    return all(is_zero(x) for x in p)


def same_point(p, q) -> bool:
    """Projective equality (all 2x2 minors vanish)."""
    return is_null(cross(p, q))


def normalize(p):
    """Scale so that the first nonzero coordinate is 1."""
    p = tuple(Fraction(y) if isinstance(y, int) else y for y in p)
    for x in p:
        if not is_zero(x):
            if x == 1:
                return p
            inv = inverse(x)
            return tuple(y * inv for y in p)
    raise ValueError("(0:0:0) is not a projective point")


def inverse(x):
    if isinstance(x, (int, Fraction)):
        return 1 / Fraction(x)
    return x.inverse()


def field_name(x) -> str:
    if isinstance(x, (int, Fraction)):
        return "rational"
    if isinstance(x, Cyclotomic):
        return f"cyclotomic:{x.order}"
    if isinstance(x, (BiRat, BiPoly)):
        return "rational-function"
    return type(x).__name__


def frame_transform(p0, p1, p2, p3) -> Matrix:
    """The matrix sending the canonical frame e1, e2, e3, e1+e2+e3 to p0..p3."""
    cols = Matrix([[p0[i], p1[i], p2[i]] for i in range(3)])
    lam = linear_solve(cols, Matrix.column(p3))
    l0, l1, l2 = (lam[i, 0] for i in range(3))
    return Matrix([[p0[i] * l0, p1[i] * l1, p2[i] * l2] for i in range(3)])


def apply(m: Matrix, p):
    return m.apply(p)


def integer_scaled(p):
    """Rescale a rational or cyclotomic point to integral, primitive coordinates.

    Returns a list of coordinates; each is an int (rational field) or a list
    of ints (cyclotomic field, power-basis coefficients).
    """
    if all(isinstance(x, (int, Fraction)) for x in p):
        fr = [Fraction(x) for x in p]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in fr]
        g = gcd(*ints)
        return [x // g for x in ints]
    den = 1
    for x in p:
        den = den * x.den // gcd(den, x.den)
    vecs = [[c * (den // x.den) for c in x.num] for x in p]
    g = gcd(*[c for v in vecs for c in v])
    return [[c // g for c in v] for v in vecs]
