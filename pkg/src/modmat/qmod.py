"""Laurent data of theta quotients as q-series over Q(zeta_n).

Everything is normalized by powers of 2 pi i: the variable is zh = 2 pi i z,
and a weight-w coefficient is divided by (2 pi i)^w.  With x = exp(2 pi i z)
and q = exp(2 pi i tau), the normalized log-derivative of theta is

    L(z) = -1/2 - x/(1-x) - sum_{N>=1} q^N sum_{m|N} (x^m - x^-m).

Expanding at z = a/n (x = zeta^a e^zh) and at z = 0 (pole removed) and
exponentiating the integrated difference gives

    r_a(zh) = 1/zh + sigma_a + tau_a zh + upsilon_a zh^2 + nu_a zh^3 + ...
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import IndexConstraintViolated, IndexDivisibleByN, NonconvergentInput
from .exactnum import Cyclotomic, QSeries
from .report import VerificationReport

DEFAULT_QPREC = 25
DEFAULT_ZPREC = 6


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """B_m with B_1 = -1/2."""
    if m == 0:
        return Fraction(1)
    return -sum(comb(m + 1, k) * bernoulli(k) for k in range(m)) / (m + 1)


def _divisors(N: int) -> list[int]:
    return [m for m in range(1, N + 1) if N % m == 0]


class ZQSeries:
    """sum_{j = zmin}^{zmin + len - 1} c_j zh^j with QSeries coefficients c_j."""

    __slots__ = ("zmin", "coeffs")

    def __init__(self, zmin: int, coeffs):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("a ZQSeries needs at least one coefficient")
        order, prec = coeffs[0].order, coeffs[0].prec
        if any(c.order != order or c.prec != prec for c in coeffs):
            raise ValueError("coefficients must share cyclotomic order and q-precision")
        self.zmin = zmin
        self.coeffs = coeffs

    @property
    def zprec(self) -> int:
        """One past the highest known zh-exponent."""
        return self.zmin + len(self.coeffs)

    @property
    def order(self) -> int:
        return self.coeffs[0].order

    @property
    def qprec(self) -> int:
        return self.coeffs[0].prec

    def __getitem__(self, j: int) -> QSeries:
        if not self.zmin <= j < self.zprec:
            raise IndexError(f"zh^{j} is outside the known range")
        return self.coeffs[j - self.zmin]

    def coefficient(self, j: int) -> QSeries:
        """Like indexing, but zero below zmin."""
        if j < self.zmin:
            return QSeries.zero(self.order, self.qprec)
        return self[j]

    def _zero(self):
        return QSeries.zero(self.order, self.qprec)

    def __add__(self, other: ZQSeries) -> ZQSeries:
        lo = min(self.zmin, other.zmin)
        hi = min(self.zprec, other.zprec)
        return ZQSeries(lo, [self.coefficient(j) + other.coefficient(j) for j in range(lo, hi)])

    def __neg__(self) -> ZQSeries:
        return ZQSeries(self.zmin, [-c for c in self.coeffs])

    def __sub__(self, other: ZQSeries) -> ZQSeries:
        return self + (-other)

    def scale(self, c) -> ZQSeries:
        """Multiply every coefficient by a zh-constant (QSeries or scalar)."""
        return ZQSeries(self.zmin, [x * c for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, ZQSeries):
            return self.scale(other)
        lo = self.zmin + other.zmin
        hi = min(self.zprec + other.zmin, other.zprec + self.zmin)
        out = []
        for m in range(lo, hi):
            acc = self._zero()
            for i in range(self.zmin, m - other.zmin + 1):
                acc = acc + self[i] * other[m - i]
            out.append(acc)
        return ZQSeries(lo, out)

    def derivative(self) -> ZQSeries:
        """d/dzh."""
        if self.zmin == 0:
            terms = [j * self[j] for j in range(1, self.zprec)]
            return ZQSeries(0, terms or [self._zero()])
        return ZQSeries(self.zmin - 1, [j * self[j] for j in range(self.zmin, self.zprec)])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def valuation(self) -> int | None:
        """Smallest q-order of a nonzero coefficient, over all zh-powers."""
        orders = [c.valuation() for c in self.coeffs]
        orders = [o for o in orders if o is not None]
        return min(orders) if orders else None

    def to_json(self) -> dict:
        return {"zmin": self.zmin, "coeffs": [c.to_json() for c in self.coeffs]}

    def __repr__(self):
        return f"ZQSeries(zmin={self.zmin}, zprec={self.zprec}, n={self.order}, qprec={self.qprec})"


# log-derivatives


def _zpow_series(n: int, a: int, zprec: int) -> list[Cyclotomic]:
    """zh-coefficients of x/(1-x) for x = zeta^a e^zh (a unit constant term)."""
    w = Cyclotomic.zeta(n, a % n)
    num = [w * Fraction(1, factorial(j)) for j in range(zprec)]
    den = [Cyclotomic.one(n) - w] + [-(w * Fraction(1, factorial(j))) for j in range(1, zprec)]
    inv0 = den[0].inverse()
    out = []
    for j in range(zprec):
        acc = num[j]
        for i in range(1, j + 1):
            acc = acc - den[i] * out[j - i]
        out.append(acc * inv0)
    return out


def theta_logderiv(n: int, a: int, zprec: int = DEFAULT_ZPREC,
                   qprec: int = DEFAULT_QPREC) -> ZQSeries:
    """Normalized log-derivative of theta at a/n + z, as a power series in zh."""
    if a % n == 0:
        raise IndexDivisibleByN(f"{a} is divisible by {n}")
    a %= n
    return _theta_logderiv(n, a, zprec, qprec)


@lru_cache(maxsize=4096)
def _theta_logderiv(n: int, a: int, zprec: int, qprec: int) -> ZQSeries:
    head = _zpow_series(n, a, zprec)
    zeta_pows = [Cyclotomic.zeta(n, (a * m) % n) for m in range(n)]
    coeffs = []
    for j in range(zprec):
        fj = Fraction(1, factorial(j))
        terms = [Fraction(-1, 2) - head[0]] if j == 0 else [-head[j]]
        for N in range(1, qprec):
            acc = Cyclotomic.zero(n)
            for m in _divisors(N):
                acc = acc + zeta_pows[m % n] * m ** j - zeta_pows[(-m) % n] * (-m) ** j
            terms.append(-acc * fj)
        coeffs.append(QSeries(n, terms, qprec))
    return ZQSeries(0, coeffs)


def _lambda0(n: int, zprec: int, qprec: int) -> ZQSeries:
    """Normalized log-derivative of theta at 0 with the 1/zh pole removed."""
    coeffs = []
    for j in range(zprec):
        terms = [Fraction(0)] * qprec
        if j % 2 == 1:
            k = (j + 1) // 2
            terms[0] = bernoulli(2 * k) / factorial(2 * k)
            for N in range(1, qprec):
                terms[N] = -2 * Fraction(sum(m ** j for m in _divisors(N)), factorial(j))
        coeffs.append(QSeries(n, terms, qprec))
    return ZQSeries(0, coeffs)


def sigma_series(n: int, a: int, qprec: int = DEFAULT_QPREC) -> QSeries:
    """sigma_a summed directly: (z^a+1)/(2(z^a-1)) - sum_d q^d sum_{k|d} (z^{ka} - z^{-ka})."""
    if a % n == 0:
        raise IndexDivisibleByN(f"{a} is divisible by {n}")
    w = Cyclotomic.zeta(n, a % n)
    terms = [(w + 1) / (2 * (w - 1))]
    for d in range(1, qprec):
        acc = Cyclotomic.zero(n)
        for k in _divisors(d):
            acc = acc + Cyclotomic.zeta(n, (k * a) % n) - Cyclotomic.zeta(n, (-k * a) % n)
        terms.append(-acc)
    return QSeries(n, terms, qprec)


def r_series(n: int, a: int, zprec: int = DEFAULT_ZPREC, qprec: int = DEFAULT_QPREC) -> ZQSeries:
    """Normalized r_a as a Laurent series in zh, from zh^-1 through zh^(zprec-1)."""
    if a % n == 0:
        raise IndexDivisibleByN(f"{a} is divisible by {n}")
    return _r_series(n, a % n, zprec, qprec)


@lru_cache(maxsize=4096)
def _r_series(n: int, a: int, zprec: int, qprec: int) -> ZQSeries:
    diff = _theta_logderiv(n, a, zprec, qprec) - _lambda0(n, zprec, qprec)
    # log(zh r_a) = sum_{j>=1} alpha_j zh^j with alpha_j = diff_{j-1} / j
    alpha = [None] + [diff[j - 1] * Fraction(1, j) for j in range(1, zprec + 1)]
    e = [QSeries.one(n, qprec)]
    for k in range(1, zprec + 1):
        acc = QSeries.zero(n, qprec)
        for j in range(1, k + 1):
            acc = acc + alpha[j] * e[k - j] * j
        e.append(acc * Fraction(1, k))
    return ZQSeries(-1, e)


@dataclass(frozen=True)
class LaurentData:
    n: int
    a: int
    sigma: QSeries
    tau: QSeries
    upsilon: QSeries
    nu: QSeries

    def to_json(self) -> dict:
        return {"n": self.n, "a": self.a, "qprec": self.sigma.prec,
                "sigma": self.sigma.to_json(), "tau": self.tau.to_json(),
                "upsilon": self.upsilon.to_json(), "nu": self.nu.to_json()}


def laurent_data(n: int, a: int, qprec: int = DEFAULT_QPREC) -> LaurentData:
    r = r_series(n, a, max(DEFAULT_ZPREC, 4), qprec)
    return LaurentData(n, a % n, r[0], r[1], r[2], r[3])


def sigma(n: int, a: int, qprec: int = DEFAULT_QPREC) -> QSeries:
    return r_series(n, a, DEFAULT_ZPREC, qprec)[0]


def wp_value(n: int, a: int, qprec: int = DEFAULT_QPREC) -> tuple[QSeries, QSeries]:
    """Normalized Weierstrass value and derivative at a/n."""
    d = laurent_data(n, a, qprec)
    s, t, u = d.sigma, d.tau, d.upsilon
    return s * s - 2 * t, -2 * s * s * s + 6 * s * t - 6 * u


# identity suites

_KINDS = ("ST", "RR", "MAIN", "BK", "AK1", "CUSPONLY", "SIGMA")


def _nz(n: int, *idx) -> bool:
    return all(i % n for i in idx)


def _st_residual(n, a, b, c, qprec):
    da, db, dc = (laurent_data(n, x, qprec) for x in (a, b, c))
    return (da.sigma * db.sigma + db.sigma * dc.sigma + dc.sigma * da.sigma
            + da.tau + db.tau + dc.tau)


def _main_product(n, a, b, k, qprec):
    s = lambda i: sigma(n, i, qprec)  # noqa: E731
    return (s(k + b - a) - s(k) - s(b) + s(a)) * (s(k + b) - s(k - a) - s(b) - s(a))


def _main_rhs(n, a, b, qprec):
    da, db = laurent_data(n, a, qprec), laurent_data(n, b, qprec)
    return db.sigma * db.sigma - da.sigma * da.sigma + 2 * da.tau - 2 * db.tau


def _bk_residual(n, k, qprec):
    s = lambda i: sigma(n, i, qprec)  # noqa: E731
    lhs = (s(4) - 2 * s(3) + s(2)) * (s(6) - s(3) - s(2) - s(1))
    rhs = (s(k + 1) - s(k) + s(2) - s(3)) * (s(k + 3) - s(k - 2) - s(3) - s(2))
    return lhs - rhs


def _ak1_residual(n, k, qprec):
    s = lambda i: sigma(n, i, qprec)  # noqa: E731
    lhs = (s(5) - 2 * s(3) + s(1)) * (s(6) - s(3) - s(2) - s(1))
    rhs = (s(k + 2) - s(k) + s(1) - s(3)) * (s(k + 3) - s(k - 1) - s(3) - s(1))
    return lhs - rhs


def _rr_residual(n, a, k, zprec, qprec):
    ra, rk, rak = (r_series(n, x, zprec, qprec) for x in (a, k, a + k))
    lhs = ra * rk
    rhs = -rak.derivative() + rak.scale(ra[0] + rk[0])
    top = min(lhs.zprec, rhs.zprec)
    lo = min(lhs.zmin, rhs.zmin)
    return ZQSeries(lo, [lhs.coefficient(j) - rhs.coefficient(j) for j in range(lo, top)])


def verify_identity(kind: str, n: int, indices=None, qprec: int = DEFAULT_QPREC,
                    zprec: int = DEFAULT_ZPREC) -> VerificationReport:
    """Check one identity family at level n.

    indices selects cases: ST (a, b, c); RR (a, k); MAIN and CUSPONLY (a, b, k);
    BK and AK1 (k,); SIGMA (a,).  With indices=None every admissible case is run
    (for MAIN and CUSPONLY: every admissible k for each pair a, b).
    """
    kind = kind.upper()
    if kind not in _KINDS:
        raise ValueError(f"unknown identity {kind!r}")
    rep = VerificationReport(kind, n, qprec)
    for case in (list(_all_cases(kind, n)) if indices is None else [tuple(indices)]):
        _check_case(kind, n, case, qprec, zprec, rep)
    return rep


def _check_case(kind, n, case, qprec, zprec, rep):
    if kind == "ST":
        a, b, c = case
        if not _nz(n, a, b, c) or (a + b + c) % n:
            raise IndexConstraintViolated("ST needs nonzero a, b, c with a + b + c = 0 mod n")
        rep.record(case, _st_residual(n, a, b, c, qprec))
    elif kind == "RR":
        a, k = case
        if not _nz(n, a, k, a + k):
            raise IndexConstraintViolated("RR needs a, k, a + k nonzero mod n")
        rep.record(case, _rr_residual(n, a, k, zprec, qprec), {"zh_order": zprec - 2})
    elif kind in ("MAIN", "CUSPONLY"):
        a, b, k = case
        if not _nz(n, a, b) or k % n in {(a - b) % n, 0, a % n, (-b) % n}:
            raise IndexConstraintViolated("need a, b nonzero and k not in {a-b, 0, a, -b}")
        if kind == "CUSPONLY" and ((a - b) % n == 0 or (a + b) % n == 0):
            raise IndexConstraintViolated("CUSPONLY needs a != +-b")
        if kind == "MAIN":
            rhs = _main_rhs(n, a, b, qprec)
        else:
            rhs = wp_value(n, b, qprec)[0] - wp_value(n, a, qprec)[0]
        rep.record(case, _main_product(n, a, b, k, qprec) - rhs)
    elif kind == "BK":
        (k,) = case
        if k % n in {(-3) % n, (-1) % n, 0, 2 % n} or n < 7:
            raise IndexConstraintViolated("BK needs k not in {-3, -1, 0, 2} and n >= 7")
        rep.record(case, _bk_residual(n, k, qprec))
    elif kind == "AK1":
        (k,) = case
        if k % n in {(-3) % n, (-2) % n, 0, 1} or n < 7:
            raise IndexConstraintViolated("AK1 needs k not in {-3, -2, 0, 1} and n >= 7")
        rep.record(case, _ak1_residual(n, k, qprec))
    else:  # SIGMA: the two routes to sigma_a agree
        (a,) = case
        if not _nz(n, a):
            raise IndexConstraintViolated("sigma_0 is not defined")
        rep.record(case, theta_logderiv(n, a, 1, qprec)[0] - sigma_series(n, a, qprec))


def _all_cases(kind: str, n: int):
    units = range(1, n)
    if kind == "ST":
        for a in units:
            for b in range(a, n):
                c = (-a - b) % n
                if c >= b:
                    yield (a, b, c)
    elif kind == "RR":
        for a in units:
            for k in range(a, n):
                if (a + k) % n:
                    yield (a, k)
    elif kind in ("MAIN", "CUSPONLY"):
        for a in units:
            for b in units:
                if kind == "CUSPONLY" and (a == b or (a + b) % n == 0):
                    continue
                if kind == "MAIN" and a == b:
                    continue
                for k in range(1, n):
                    if k % n not in {(a - b) % n, 0, a, (-b) % n}:
                        yield (a, b, k)
    elif kind == "BK":
        for k in range(n):
            if k not in {n - 3, n - 1, 0, 2}:
                yield (k,)
    elif kind == "AK1":
        for k in range(n):
            if k not in {n - 3, n - 2, 0, 1}:
                yield (k,)
    else:
        for a in units:
            yield (a,)


def main_k_independence(n: int, a: int, b: int, qprec: int = DEFAULT_QPREC) -> VerificationReport:
    """The MAIN product is the same series for every admissible k."""
    rep = VerificationReport("MAIN-k", n, qprec)
    ks = [k for k in range(1, n) if k not in {(a - b) % n, a % n, (-b) % n}]
    base = _main_product(n, a, b, ks[0], qprec)
    for k in ks[1:]:
        rep.record((a, b, ks[0], k), _main_product(n, a, b, k, qprec) - base)
    return rep


# numerical oracle


def theta_numeric(z: complex, tau: complex, terms: int = 60) -> complex:
    """Truncated product expansion of theta(z, tau) (double precision)."""
    if tau.imag <= 0:
        raise NonconvergentInput("Im(tau) must be positive")
    q = cmath.exp(2j * cmath.pi * tau)
    x = cmath.exp(2j * cmath.pi * z)
    val = cmath.exp(1j * cmath.pi * tau / 4) * 2 * cmath.sin(cmath.pi * z)
    ql = 1
    for _ in range(terms):
        ql *= q
        val *= (1 - ql) * (1 - ql * x) * (1 - ql / x)
    return val


def _theta_mp(z, tau, terms: int):
    import mpmath
    q = mpmath.exp(2j * mpmath.pi * tau)
    x = mpmath.exp(2j * mpmath.pi * z)
    val = mpmath.exp(1j * mpmath.pi * tau / 4) * 2 * mpmath.sin(mpmath.pi * z)
    ql = mpmath.mpc(1)
    for _ in range(terms):
        ql *= q
        val *= (1 - ql) * (1 - ql * x) * (1 - ql / x)
    return val


def numeric_laurent(n: int, a: int, tau: complex, terms: int = 60, dps: int = 40) -> dict:
    """sigma_a, the Weierstrass value and derivative at a/n, straight from theta.

    Values are normalized by powers of 2 pi i, to compare with the q-series.
    """
    import mpmath
    with mpmath.workdps(dps):
        tau_mp = mpmath.mpc(tau)
        z0 = mpmath.mpf(a) / n
        th = lambda z: _theta_mp(z, tau_mp, terms)  # noqa: E731
        logth = lambda z: mpmath.log(th(z))  # noqa: E731
        d1 = mpmath.diff(logth, z0, 1)
        d2 = mpmath.diff(logth, z0, 2)
        d3 = mpmath.diff(logth, z0, 3)
        t1 = mpmath.diff(th, 0, 1)
        t3 = mpmath.diff(th, 0, 3)
        tpi = 2j * mpmath.pi
        wp = -d2 + t3 / (3 * t1)
        return {"sigma": complex(d1 / tpi), "wp": complex(wp / tpi ** 2),
                "wp_prime": complex(-d3 / tpi ** 3)}


def evaluate_at(series: QSeries, tau: complex) -> complex:
    return series.evaluate(cmath.exp(2j * cmath.pi * tau))
