"""The modular realization matrix and its cross-checks.

Row k of the matrix is (1, a_k, b_k) with

    a_k = (s_{k+3} - s_{k-1} - s_3 - s_1) / D,   b_k = (s_{k+3} - s_{k-2} - s_3 - s_2) / D,
    D = s_6 - s_3 - s_2 - s_1,

except rows 1, 2, n-3 which are (0,1,0), (0,0,1), (0,1,1).  Entries are
q-series; their constant terms give the cusp configuration, and
s = a_{n-1}, t = a_{n-4} identify the matrix with the (s, t) chain.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .chain import ChainParams, closed_forms, cubic_through, node_residual
from .cusps import cusp_config, modular_rows
from .errors import (DenominatorNotUnit, FrameMismatch, IndexConstraintViolated, LevelTooSmall,
                     NoSolution, NoSolutionAtPrecision)
from .exactnum import Cyclotomic, QSeries
from .exactnum.linalg import Matrix, linear_solve
from .matroid import Configuration, tn_matroid
from .projective import cross, dot, same_point
from .qmod import DEFAULT_QPREC, sigma
from .report import VerificationReport


@dataclass(frozen=True)
class PsiMatrix:
    n: int
    qprec: int
    rows: tuple

    def __getitem__(self, k: int):
        return self.rows[k % self.n]

    def constant_configuration(self) -> Configuration:
        return Configuration(tuple(tuple(x[0] for x in r) for r in self.rows), f"cyclotomic:{self.n}")

    def det(self, i: int, j: int, k: int) -> QSeries:
        return dot(cross(self[i], self[j]), self[k])

    def to_json(self) -> dict:
        return {"n": self.n, "qprec": self.qprec,
                "rows": [[x.to_json() for x in r] for r in self.rows]}


def _sig(n: int, qprec: int):
    return lambda k: sigma(n, k % n, qprec)


def denominator(n: int, qprec: int = DEFAULT_QPREC) -> QSeries:
    s = _sig(n, qprec)
    return s(6) - s(3) - s(2) - s(1)


def psi_matrix(n: int, qprec: int = DEFAULT_QPREC) -> PsiMatrix:
    if n < 10:
        raise LevelTooSmall("the modular matrix is built for n >= 10")
    d = denominator(n, qprec)
    if d[0].is_zero():
        raise DenominatorNotUnit("s6 - s3 - s2 - s1 has zero constant term")
    one, zero = QSeries.one(n, qprec), QSeries.zero(n, qprec)
    return PsiMatrix(n, qprec, tuple(modular_rows(n, _sig(n, qprec), one, zero)))


def _alt_a(n: int, k: int, qprec: int):
    s = _sig(n, qprec)
    return s(5) - 2 * s(3) + s(1), s(k + 2) - s(k) + s(1) - s(3)


def _alt_b(n: int, k: int, qprec: int):
    s = _sig(n, qprec)
    return s(4) - 2 * s(3) + s(2), s(k + 1) - s(k) + s(2) - s(3)


def _a_excluded(n):
    return {n - 3, n - 2, 0, 1}


def _b_excluded(n):
    return {n - 3, n - 1, 0, 2}


def ak_bk_alt(n: int, k: int, qprec: int = DEFAULT_QPREC) -> tuple[QSeries, QSeries]:
    """(a_k, b_k) from the alternative ratios with k-independent numerators."""
    k %= n
    if k in _a_excluded(n) | _b_excluded(n):
        raise IndexConstraintViolated(f"k = {k} is excluded from the alternative formulas")
    a_num, a_den = _alt_a(n, k, qprec)
    b_num, b_den = _alt_b(n, k, qprec)
    if a_den[0].is_zero() or b_den[0].is_zero():
        raise IndexConstraintViolated(f"alternative denominator at k = {k} is not a unit")
    return a_num / a_den, b_num / b_den


def alt_check(m: PsiMatrix) -> VerificationReport:
    """The alternative ratios agree with the matrix entries (cross-multiplied)."""
    rep = VerificationReport("alt", m.n, m.qprec)
    n = m.n
    for k in range(n):
        if k in {1, 2, n - 3}:
            continue
        _, a, b = m[k]
        if k not in _a_excluded(n):
            a_num, a_den = _alt_a(n, k, m.qprec)
            rep.record(("a", k), a * a_den - a_num)
        if k not in _b_excluded(n):
            b_num, b_den = _alt_b(n, k, m.qprec)
            rep.record(("b", k), b * b_den - b_num)
    return rep


def collinearity_check(m: PsiMatrix, max_bases: int = 400) -> VerificationReport:
    """Non-basis determinants vanish; basis determinants have a nonzero leading term."""
    rep = VerificationReport("collinearity", m.n, m.qprec)
    mat = tn_matroid(m.n)
    for trip in sorted(mat.nonbases):
        rep.record(trip, m.det(*trip), {"kind": "nonbasis"})
    bases = list(mat.bases())
    if len(bases) > max_bases:
        step = len(bases) / max_bases
        bases = [bases[int(i * step)] for i in range(max_bases)]
    for trip in bases:
        d = m.det(*trip)
        v = d.valuation()
        if v is None:
            rep.expect(trip, False, {"kind": "basis", "reason": "determinant vanishes to truncation"})
        else:
            rep.expect(trip, True, {"kind": "basis", "leading_order": v})
    return rep


def recover_st(m: PsiMatrix) -> tuple[QSeries, QSeries]:
    """s = a_{n-1} and t = a_{n-4}; checks b_{n-1} = 0 and b_{n-4} = 1."""
    n = m.n
    r1, r4 = m[n - 1], m[n - 4]
    if not (r1[0] == 1 and r4[0] == 1):
        raise FrameMismatch("rows n-1 and n-4 do not start with 1")
    if not r1[2].is_zero():
        raise FrameMismatch("third entry of row n-1 is not 0")
    if not (r4[2] - 1).is_zero():
        raise FrameMismatch("third entry of row n-4 is not 1")
    return r1[1], r4[1]


def closed_form_check(m: PsiMatrix) -> VerificationReport:
    """Rows 4, 5, n-2, n-4 against the chain closed forms at (s, t) = recover_st(m)."""
    rep = VerificationReport("closed-forms", m.n, m.qprec)
    s, t = recover_st(m)
    cf = closed_forms(ChainParams(s, t))
    for k in (4, 5, -2, -4):
        residual = cross(m[k], cf[k])
        for i, r in enumerate(residual):
            rep.record((k % m.n, i), r)
    s0, t0 = s[0], t[0]
    rep.expect("node-locus", node_residual(ChainParams(s0, t0)).is_zero(),
              {"s0": s0.to_json(), "t0": t0.to_json()})
    return rep


def cubic_vanishing_check(m: PsiMatrix) -> VerificationReport:
    rep = VerificationReport("cubic", m.n, m.qprec)
    s, t = recover_st(m)
    f = cubic_through(ChainParams(s, t))
    for k in range(m.n):
        rep.record(k, f(m[k]))
    return rep


def cusp_constant_check(n: int, qprec: int = 5, units=None) -> VerificationReport:
    """Constant terms of the matrix equal cusp_config(n, 1); other units via Galois action."""
    rep = VerificationReport("cusp", n, qprec)
    m = psi_matrix(n, qprec)
    base = m.constant_configuration()
    rep.expect(1, base.same_as(cusp_config(n, 1)))
    if units is None:
        units = [u for u in range(2, n) if _coprime(u, n)]
    for u in units:
        rep.expect(u, base.galois(u).same_as(cusp_config(n, u)))
    return rep


def _coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1


# every s_i / D is a constant combination of the a_k and b_k


@dataclass
class PropAllSolution:
    n: int
    i: int
    qprec: int
    a_coeffs: dict
    b_coeffs: dict
    residual_order: int | None

    def to_json(self) -> dict:
        return {"n": self.n, "i": self.i, "qprec": self.qprec,
                "a": {str(k): str(v) for k, v in sorted(self.a_coeffs.items()) if v},
                "b": {str(k): str(v) for k, v in sorted(self.b_coeffs.items()) if v},
                "residual_order": self.residual_order}


def _series_vector(x: QSeries) -> list[Fraction]:
    return [Fraction(c, x.den) for row in x.rows for c in row]


def prop_all_solve(n: int, i: int, qprec: int = DEFAULT_QPREC, m: PsiMatrix | None = None) -> PropAllSolution:
    if i % n == 0:
        raise IndexConstraintViolated("i must be nonzero mod n")
    if m is None:
        m = psi_matrix(n, qprec)
    ks = [k for k in range(n) if k not in {1, 2, n - 3}]
    target = sigma(n, i, qprec) / denominator(n, qprec)
    cols = [_series_vector(m[k][1]) for k in ks] + [_series_vector(m[k][2]) for k in ks]
    rhs = _series_vector(target)
    a_mat = Matrix([[c[r] for c in cols] for r in range(len(rhs))])
    try:
        sol = linear_solve(a_mat, Matrix.column(rhs))
    except NoSolution as exc:
        raise NoSolutionAtPrecision(f"no rational combination for s_{i} at qprec {qprec}") from exc
    coeffs = [sol[r, 0] for r in range(len(cols))]
    ca = dict(zip(ks, coeffs[:len(ks)]))
    cb = dict(zip(ks, coeffs[len(ks):]))
    combo = QSeries.zero(n, qprec)
    for k in ks:
        if ca[k]:
            combo = combo + m[k][1] * ca[k]
        if cb[k]:
            combo = combo + m[k][2] * cb[k]
    residual = combo - target
    return PropAllSolution(n, i % n, qprec, ca, cb, residual.valuation())


# the formal span argument on sigma-index vectors


def sigma_vector(n: int, terms: dict) -> tuple:
    """Coordinates of sum c_i s_i in the basis s_1..s_{floor((n-1)/2)} using s_{-i} = -s_i.

    For even n, s_{n/2} = 0.
    """
    h = (n - 1) // 2
    v = [Fraction(0)] * h
    for idx, c in terms.items():
        j = idx % n
        if j == 0:
            raise IndexConstraintViolated("s_0 is not defined")
        if 2 * j == n:
            continue
        if j <= h:
            v[j - 1] += c
        else:
            v[n - j - 1] -= c
    return tuple(v)


def span_v(n: int) -> list[tuple]:
    """Generators of V: the numerators of a_k and b_k and the denominator."""
    gens = [sigma_vector(n, _acc({6: 1, 3: -1, 2: -1, 1: -1}))]
    for k in range(n):
        if k in {1, 2, n - 3}:
            continue
        gens.append(sigma_vector(n, _acc({k + 3: 1, k - 1: -1, 3: -1, 1: -1})))
        gens.append(sigma_vector(n, _acc({k + 3: 1, k - 2: -1, 3: -1, 2: -1})))
    return gens


def _acc(pairs: dict) -> dict:
    out: dict = {}
    for k, c in pairs.items():
        out[k] = out.get(k, 0) + c
    return out


def in_span_v(n: int, vec) -> bool:
    gens = span_v(n)
    a = Matrix([[g[r] for g in gens] for r in range(len(vec))])
    try:
        linear_solve(a, Matrix.column(list(vec)))
    except NoSolution:
        return False
    return True


def formal_span_check(n: int) -> VerificationReport:
    """Every s_i lies in V, using only s_{-i} = -s_i (no q-expansions)."""
    rep = VerificationReport("span-V", n, 0)
    for i in range(1, (n - 1) // 2 + 1):
        rep.expect(i, in_span_v(n, sigma_vector(n, {i: 1})))
    return rep


def constant_sigma(n: int, k: int) -> Cyclotomic:
    w = Cyclotomic.zeta(n, k % n)
    return (w + 1) / (2 * (w - 1))


def all_checks(n: int, qprec: int = DEFAULT_QPREC) -> dict:
    """Run every matrix check at level n; returns name -> report."""
    m = psi_matrix(n, qprec)
    return {
        "collinearity": collinearity_check(m),
        "alt": alt_check(m),
        "closed-forms": closed_form_check(m),
        "cubic": cubic_vanishing_check(m),
        "cusp": cusp_constant_check(n, min(qprec, 5)),
    }


def basis_triples(n: int):
    mat = tn_matroid(n)
    return [t for t in combinations(range(n), 3) if t not in mat.nonbases]
