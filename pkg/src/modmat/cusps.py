"""Cyclotomic configurations attached to cusps of X_1(n).

``cusp_config`` gives the nodal-cubic realizations of T_n; the boundary
configurations (Boroczky for n = 2m, Ceva for n = 3m, and the n = 4m case)
are limits of the modular matrix at cusps outside the orbit of infinity.
All values are normalized by 2 pi i.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd

from .errors import DegenerateLevel, LevelTooSmall, NoReduction, NotAUnit, ZeroIndex
from .exactnum import Cyclotomic, Matrix
from .matroid import Configuration, general_position
from .projective import frame_transform, is_zero, normalize


def _zeta(n: int, k: int) -> Cyclotomic:
    return Cyclotomic.zeta(n, k % n)


def _require_unit(n: int, a: int) -> None:
    if gcd(a, n) != 1:
        raise NotAUnit(f"{a} is not a unit modulo {n}")


def cusp_config(n: int, a: int = 1) -> Configuration:
    """The realization of T_n over Q(zeta_n) attached to the cusp with root zeta^a."""
    if n < 10:
        raise LevelTooSmall("cusp configurations are defined for n >= 10")
    _require_unit(n, a)
    z = lambda k: _zeta(n, a * k)  # noqa: E731
    one = Cyclotomic.one(n)
    zero = Cyclotomic.zero(n)
    c2 = (1 - z(2)) * (1 + z(3)) / (1 - z(5))
    c3 = (1 - z(1) + z(2)) / (1 + z(2))
    pts = []
    for k in range(n):
        if k == 1:
            pts.append((zero, one, zero))
        elif k == 2:
            pts.append((zero, zero, one))
        elif k == n - 3:
            pts.append((zero, one, one))
        else:
            x2 = c2 * (1 - z(k)) * (1 - z(k + 2)) / ((1 - z(k - 1)) * (1 - z(k + 3)))
            x3 = c3 * (1 - z(k)) * (1 - z(k + 1)) / ((1 - z(k - 2)) * (1 - z(k + 3)))
            pts.append((one, x2, x3))
    return Configuration(tuple(pts), f"cyclotomic:{n}")


def sigma_at_cusp(n: int, k: int, c: int, d: int):
    """Limit of the normalized sigma_k at the cusp with bottom row (c, d).

    A rational number when n does not divide kc, otherwise an element of Q(zeta_n).
    """
    if k % n == 0:
        raise ZeroIndex("sigma_0 is not defined")
    if (k * c) % n:
        return Fraction((k * c) % n, n) - Fraction(1, 2)
    w = _zeta(n, k * d)
    return (w + 1) / (2 * (w - 1))


def modular_rows(n: int, sigma, one, zero) -> list:
    """Rows of the modular realization matrix from values k -> sigma_k.

    Rows 1, 2 and n-3 are (0,1,0), (0,0,1), (0,1,1); every other row is
    (1, a_k, b_k) with the common denominator s6 - s3 - s2 - s1.
    """
    s = lambda k: sigma(k % n)  # noqa: E731
    den = s(6) - s(3) - s(2) - s(1)
    inv = 1 / den if not hasattr(den, "inverse") else den.inverse()
    rows = []
    for k in range(n):
        if k == 1:
            rows.append((zero, one, zero))
        elif k == 2:
            rows.append((zero, zero, one))
        elif k == n - 3:
            rows.append((zero, one, one))
        elif k in (0, 3):
            rows.append((one, zero, zero) if k == 0 else (one, one, one))
        else:
            a = (s(k + 3) - s(k - 1) - s(3) - s(1)) * inv
            b = (s(k + 3) - s(k - 2) - s(3) - s(2)) * inv
            rows.append((one, a, b))
    return rows


def cusp_limit_config(n: int, c: int, d: int) -> Configuration:
    """Limit configuration at the cusp (c, d), valid when s6 - s3 - s2 - s1 has nonzero limit."""
    if gcd(c, d) != 1:
        raise NotAUnit("c and d must be coprime")

    def sig(k):
        v = sigma_at_cusp(n, k, c, d)
        return v if isinstance(v, Cyclotomic) else Cyclotomic.scalar(n, v)

    s = lambda k: sig(k % n)  # noqa: E731
    if (s(6) - s(3) - s(2) - s(1)).is_zero():
        raise DegenerateLevel("s6 - s3 - s2 - s1 vanishes at this cusp")
    rows = modular_rows(n, sig, Cyclotomic.one(n), Cyclotomic.zero(n))
    return Configuration(tuple(rows), f"cyclotomic:{n}")


# boundary configurations


def _check_level(n: int, m: int, nmin: int, what: str, d: int) -> None:
    if n % m or n < nmin:
        raise DegenerateLevel(f"{what} needs {m} | n and n >= {nmin}")
    _require_unit(n, d)


def boroczky_config(n: int, d: int = 1) -> Configuration:
    """Limit at the cusp c = n/2: even rows on x2 = 0, odd rows on a conic."""
    _check_level(n, 2, 10, "the Boroczky limit", d)
    z = lambda k: _zeta(n, k * d)  # noqa: E731
    one, zero = Cyclotomic.one(n), Cyclotomic.zero(n)
    pts = []
    for k in range(n):
        if k in (1, 2, n - 3):
            pts.append({1: (zero, one, zero), 2: (zero, zero, one)}.get(k, (zero, one, one)))
        elif k % 2 == 0:
            x3 = (1 - z(6)) * (1 - z(k)) / (z(2) * (1 - z(4)) * (1 - z(k - 2)))
            pts.append((one, zero, x3))
        else:
            x2 = (1 - z(2)) * (1 - z(6)) * z(k - 3) / ((1 - z(k - 1)) * (1 - z(k + 3)))
            x3 = (1 - z(6)) * (1 - z(k + 1)) / ((1 - z(4)) * (1 - z(k + 3)))
            pts.append((one, x2, x3))
    return Configuration(tuple(pts), f"cyclotomic:{n}")


def boroczky_conic(n: int, d: int, p):
    """The conic through the odd rows of boroczky_config, evaluated at p."""
    z = lambda k: _zeta(n, k * d)  # noqa: E731
    x1, x2, x3 = p
    e = 1 + z(2) + z(4)
    return ((x3 - x2) * x3 * z(2) * (1 + z(2)) ** 2 + x1 * x1 * e * e
            + x1 * x2 * z(2) * e - x1 * x3 * (1 + z(2)) ** 2 * e)


def ceva_config(n: int, d: int = 1) -> Configuration:
    """Limit at the cusp c = n/3.

    Row families by k mod 3: (1, u_k, u_k) with u_k = (1 - z^k)(1 + z^3)/(1 - z^(k+3)),
    (1, (1 + z^-3)(1 - z^(k+2))/(1 - z^(k-1)), 1 + z^3) and
    (1, 1 + z^-3, (1 + z^-3)(1 - z^(k+1))/(1 - z^(k-2))), where z = zeta^d.
    """
    _check_level(n, 3, 12, "the Ceva limit", d)
    z = lambda k: _zeta(n, k * d)  # noqa: E731
    one, zero = Cyclotomic.one(n), Cyclotomic.zero(n)
    pts = []
    for k in range(n):
        if k in (1, 2, n - 3):
            pts.append({1: (zero, one, zero), 2: (zero, zero, one)}.get(k, (zero, one, one)))
        elif k % 3 == 0:
            u = (1 - z(k)) * (1 + z(3)) / (1 - z(k + 3))
            pts.append((one, u, u))
        elif k % 3 == 1:
            pts.append((one, (1 + z(-3)) * (1 - z(k + 2)) / (1 - z(k - 1)), 1 + z(3)))
        else:
            pts.append((one, 1 + z(-3), (1 + z(-3)) * (1 - z(k + 1)) / (1 - z(k - 2))))
    return Configuration(tuple(pts), f"cyclotomic:{n}")


def ceva_points(n: int) -> list:
    """The 3m Ceva points (1:0:-w), (0:-w:1), (-w:1:0) for w = zeta^(3l), 0 <= l < m."""
    m = n // 3
    one, zero = Cyclotomic.one(n), Cyclotomic.zero(n)
    out = []
    for fam in range(3):
        for l in range(m):
            w = -_zeta(n, 3 * l)
            out.append(normalize([(one, zero, w), (zero, w, one), (w, one, zero)][fam]))
    return out


@dataclass
class CevaReduction:
    config: Configuration
    matrix: Matrix
    # label k -> index into ceva_points(n)
    bijection: dict

    def to_json(self) -> dict:
        return {"matrix": [[x.to_json() for x in row] for row in self.matrix.rows],
                "bijection": {str(k): v for k, v in sorted(self.bijection.items())}}


def ceva_reduction(n: int, d: int = 1) -> CevaReduction:
    """A projective map sending ceva_config(n, d) onto the Ceva point set.

    Two points of residue family 0 and two of family 1 form a frame; their
    images are searched among pairs of points on two distinct Ceva lines.
    """
    conf = ceva_config(n, d)
    target = ceva_points(n)
    m = n // 3
    index = {tuple(p): i for i, p in enumerate(target)}
    quad = (0, 3, 4, 7)
    if not general_position(conf, quad):
        raise NoReduction("frame points of the limit configuration are degenerate")
    src_inv = frame_transform(*(conf[j] for j in quad)).inverse()
    fams = [target[i * m:(i + 1) * m] for i in range(3)]
    for f0, f1 in permutations(range(3), 2):
        for a, b in permutations(range(m), 2):
            for c, e in permutations(range(m), 2):
                img = (fams[f0][a], fams[f0][b], fams[f1][c], fams[f1][e])
                if not _general(img):
                    continue
                g = frame_transform(*img) @ src_inv
                bij = {}
                for k, p in enumerate(conf.points):
                    q = tuple(normalize(g.apply(p)))
                    if q not in index:
                        break
                    bij[k] = index[q]
                else:
                    if len(set(bij.values())) == n:
                        return CevaReduction(conf, g, bij)
    raise NoReduction("no projective map onto the Ceva arrangement was found")


def _general(pts) -> bool:
    from .projective import det3
    return all(not is_zero(det3(pts[i], pts[j], pts[k]))
               for i, j, k in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)))


def fourm_config(n: int, d: int = 1) -> Configuration:
    """Limit at the cusp c = n/4, where s6 - s3 - s2 - s1 tends to 0."""
    _check_level(n, 4, 12, "the n = 4m limit", d)
    z = lambda k: _zeta(n, k * d)  # noqa: E731
    one, zero = Cyclotomic.one(n), Cyclotomic.zero(n)
    inv4 = (1 - z(4)).inverse()
    pts = []
    for k in range(n):
        r = k % 4
        if r == 0:
            pts.append((one, 1 - z(-k), (1 - z(-k)) * inv4))
        elif r == 3:
            pts.append((one, one, (1 - z(k + 1)) * inv4))
        elif r == 2:
            pts.append((zero, zero, one))
        else:
            pts.append((zero, one, (1 - z(1 - k)) * inv4))
    return Configuration(tuple(pts), f"cyclotomic:{n}")


def fourm_alt_row(n: int, d: int, k: int):
    """(1, a_k, b_k) at the cusp c = n/4 from the alternative a_k, b_k ratios (k = 0, 3 mod 4)."""
    c = n // 4

    def s(j):
        v = sigma_at_cusp(n, j % n, c, d)
        return v if isinstance(v, Cyclotomic) else Cyclotomic.scalar(n, v)

    a = (s(5) - 2 * s(3) + s(1)) / (s(k + 2) - s(k) + s(1) - s(3))
    b = (s(4) - 2 * s(3) + s(2)) / (s(k + 1) - s(k) + s(2) - s(3))
    return (Cyclotomic.one(n), a, b)
