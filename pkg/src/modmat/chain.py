"""The (s, t) point chain, its cubic, the node locus and the chord-tangent law.

Points p_k (k in Z) start from the canonical frame p_0..p_3 together with
p_{-1} = (1:s:0) and p_{-4} = (1:t:1); every other point is the meet of two
lines p_i p_j with i + j = -k.  The parameters may be rationals, cyclotomic
numbers, or the indeterminates themselves (BiPoly), in which case points are
kept as polynomial triples with integer content and monomial factors removed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd

from .errors import (DegenerateIntersection, DenominatorVanishes, ExcludedParameter,
                     NonFlexNeutral, NotOnCurve, PoleOfParametrization, SingularInput)
from .exactnum import BiPoly, BiRat
from .exactnum.linalg import determinant
from .projective import cross, dot, is_null, is_zero, normalize, same_point


def _lift(x):
    return Fraction(x) if isinstance(x, int) else x


@dataclass(frozen=True)
class ChainParams:
    s: object
    t: object

    def __post_init__(self):
        object.__setattr__(self, "s", _lift(self.s))
        object.__setattr__(self, "t", _lift(self.t))

    @classmethod
    def generic(cls) -> ChainParams:
        """The indeterminates s, t themselves."""
        return cls(BiPoly.s(), BiPoly.t())

    @property
    def symbolic(self) -> bool:
        return isinstance(self.s, (BiPoly, BiRat))

    def forbidden(self) -> list[str]:
        """Names of the non-degeneracy conditions that fail."""
        s, t = self.s, self.t
        checks = [("s", s), ("s-1", s - 1), ("t-1", t - 1), ("1+s-t", 1 + s - t),
                  ("1-t+st", 1 - t + s * t), ("s-t", s - t)]
        return [name for name, v in checks if is_zero(v)]

    def validate(self) -> None:
        bad = self.forbidden()
        if bad:
            raise ExcludedParameter("parameters violate " + ", ".join(f"{b} != 0" for b in bad))


# points


def _primitive(p):
    """Canonical scaling: first coordinate 1 over a field, primitive part over Q[s,t]."""
    if isinstance(p[0], BiPoly) or isinstance(p[1], BiPoly) or isinstance(p[2], BiPoly):
        q = [x if isinstance(x, BiPoly) else BiPoly.const(x) for x in p]
        nz = [x for x in q if not x.is_zero()]
        mi = min(x.monomial_content()[0] for x in nz)
        mj = min(x.monomial_content()[1] for x in nz)
        if mi or mj:
            q = [x.shift(-mi, -mj) if not x.is_zero() else x for x in q]
        g = Fraction(0)
        for x in nz:
            c = x.content()
            # gcd of two positive rationals
            g = Fraction(gcd(g.numerator * c.denominator, c.numerator * g.denominator),
                         g.denominator * c.denominator) if g else c
        lead = next(x for x in q if not x.is_zero()).leading()[1]
        if lead < 0:
            g = -g
        if g != 1:
            inv = 1 / g
            q = [x * inv for x in q]
        return tuple(q)
    return normalize(p)


def as_birat(p):
    """A projective point as a BiRat triple with first nonzero coordinate 1."""
    q = [x if isinstance(x, BiRat) else BiRat(x) for x in p]
    for x in q:
        if not x.is_zero():
            inv = x.inverse()
            return tuple(y * inv for y in q)
    raise ValueError("null point")


def closed_forms(params: ChainParams) -> dict:
    """p_{-4}..p_5 as displayed closed forms (first coordinate 1 where possible)."""
    s, t = params.s, params.t
    if params.symbolic:
        s, t = BiRat(s), BiRat(t)
    one = s ** 0
    zero = s - s
    return {
        -4: (one, t, one),
        -3: (zero, one, one),
        -2: (one, zero, s / (s - 1)),
        -1: (one, s, zero),
        0: (one, zero, zero),
        1: (zero, one, zero),
        2: (zero, zero, one),
        3: (one, one, one),
        4: (one, s * t / (t - 1), s / (t - 1)),
        5: (one, s * (t - 1) / ((s - 1) * (1 + s - t)), s * s / ((s - 1) * (1 + s - t))),
    }


@dataclass
class ChainWindow:
    params: ChainParams
    points: dict = field(default_factory=dict)
    # how each derived point was obtained: k -> ((i1, j1), (i2, j2))
    provenance: dict = field(default_factory=dict)

    @property
    def kmin(self) -> int:
        return min(self.points)

    @property
    def kmax(self) -> int:
        return max(self.points)

    def __getitem__(self, k: int):
        return self.points[k]

    def collinearity_violations(self) -> list:
        """Triples i < j < k (distinct labels) in the window with i+j+k = 0 that are not aligned."""
        ks = sorted(self.points)
        bad = []
        kset = set(ks)
        for a_idx, i in enumerate(ks):
            for j in ks[a_idx + 1:]:
                k = -i - j
                if k > j and k in kset:
                    if not is_zero(dot(cross(self.points[i], self.points[j]), self.points[k])):
                        bad.append((i, j, k))
        return bad

    def to_json(self) -> dict:
        return {"points": {str(k): [_json_scalar(x) for x in p]
                           for k, p in sorted(self.points.items())},
                "lines": {str(k): [list(pr) for pr in v] for k, v in sorted(self.provenance.items())}}


def _json_scalar(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return x.to_json()


def _pairs(m: int, known) -> list:
    """Index pairs (i, j), i < j, both known, i + j = -m, ordered by max(|i|, |j|)."""
    out = []
    for i in known:
        j = -m - i
        if i < j and j in known and m not in (i, j):
            out.append((i, j))
    out.sort(key=lambda pr: (max(abs(pr[0]), abs(pr[1])), pr))
    return out


def _meet(points, pairs):
    """Meet of the first two distinct lines among the candidate pairs."""
    chosen = []
    for i, j in pairs:
        line = cross(points[i], points[j])
        if is_null(line):
            continue
        if chosen and is_null(cross(chosen[0][1], line)):
            continue
        chosen.append(((i, j), line))
        if len(chosen) == 2:
            break
    if len(chosen) < 2:
        return None, None
    pt = cross(chosen[0][1], chosen[1][1])
    if is_null(pt):
        return None, None
    return _primitive(pt), (chosen[0][0], chosen[1][0])


def chain_extend(params: ChainParams, kmin: int = -4, kmax: int = 5) -> ChainWindow:
    """All points p_k for kmin <= k <= kmax.

    Missing labels are filled in order of increasing |k| (negative first on ties),
    each as the meet of two lines p_i p_j with i + j = -k.  Among the admissible
    pairs, those with smaller max(|i|, |j|) are preferred.
    """
    if kmin > -4 or kmax < 5:
        raise ValueError("the window must contain [-4, 5]")
    params.validate()
    s, t = params.s, params.t
    one = BiPoly.const(1) if params.symbolic else s ** 0
    zero = one - one
    seeds = {
        0: (one, zero, zero), 1: (zero, one, zero), 2: (zero, zero, one), 3: (one, one, one),
        -1: (one, s, zero), -4: (one, t, one),
    }
    pts = {k: _primitive(p) for k, p in seeds.items()}
    window = ChainWindow(params, {}, {})
    # labels on both sides are needed to reach far-out points, so work on a
    # symmetric range and slice afterwards
    reach = max(-kmin, kmax)
    missing = [k for k in range(-reach, reach + 1) if k not in pts]
    missing.sort(key=lambda k: (abs(k), k))
    while missing:
        progress = False
        for m in missing:
            pairs = _pairs(m, pts)
            if len(pairs) < 2:
                continue
            pt, used = _meet(pts, pairs)
            if pt is None:
                raise DegenerateIntersection(f"lines through p_{m} coincide or vanish")
            pts[m] = pt
            window.provenance[m] = used
            missing.remove(m)
            progress = True
            break
        if not progress:
            raise DegenerateIntersection(f"cannot reach labels {missing}")
    window.points = {k: pts[k] for k in sorted(pts) if kmin <= k <= kmax}
    window.provenance = {k: v for k, v in window.provenance.items() if kmin <= k <= kmax}
    return window


def window_agrees_with_closed_forms(window: ChainWindow) -> dict:
    """k -> bool for the ten displayed closed-form points."""
    cf = closed_forms(window.params)
    out = {}
    for k, q in cf.items():
        p = window.points[k]
        if window.params.symbolic:
            out[k] = same_point(as_birat(p), as_birat(q))
        else:
            out[k] = same_point(p, q)
    return out


def det_chain(window: ChainWindow, a: int, b: int, c: int):
    """det_{a,b,c} on representatives with first nonzero coordinate 1."""
    norm = as_birat if window.params.symbolic else normalize
    return dot(cross(norm(window[a]), norm(window[b])), norm(window[c]))


# cubic forms

MONOMIALS = tuple(sorted(
    (tuple(sum(1 for v in combo if v == i) for i in range(3))
     for combo in combinations_with_replacement(range(3), 3)),
    reverse=True))
"""Degree-3 exponent vectors in lexicographic order x1^3 > x1^2 x2 > ... > x3^3."""


def _mono(e, p):
    acc = None
    for x, k in zip(p, e):
        for _ in range(k):
            acc = x if acc is None else acc * x
    return acc


@dataclass(frozen=True)
class CubicForm:
    """sum of coeffs[e] * x^e over degree-3 exponent vectors e."""

    coeffs: tuple  # aligned with MONOMIALS

    def __post_init__(self):
        if len(self.coeffs) != 10:
            raise ValueError("a plane cubic has 10 coefficients")
        if all(is_zero(c) for c in self.coeffs):
            raise ValueError("the zero form is not a cubic")

    def coefficient(self, e) -> object:
        return self.coeffs[MONOMIALS.index(tuple(e))]

    def __call__(self, p):
        acc = None
        for c, e in zip(self.coeffs, MONOMIALS):
            if is_zero(c):
                continue
            term = c * _mono(e, p)
            acc = term if acc is None else acc + term
        return acc if acc is not None else p[0] * 0

    def partial(self, var: int) -> tuple:
        """Coefficients of dF/dx_var as a quadratic form: dict exponent -> coeff."""
        out = {}
        for c, e in zip(self.coeffs, MONOMIALS):
            if e[var] and not is_zero(c):
                f = list(e)
                f[var] -= 1
                out[tuple(f)] = c * e[var]
        return out

    def gradient(self, p) -> tuple:
        grads = []
        for var in range(3):
            acc = p[0] * 0
            for e, c in self.partial(var).items():
                acc = acc + c * _mono(e, p)
            grads.append(acc)
        return tuple(grads)

    def polar(self, p, q):
        """grad F(p) . q, the coefficient of lambda^2 mu in F(lambda p + mu q)."""
        return dot(self.gradient(p), q)

    def to_json(self) -> dict:
        return {"monomials": ["".join(f"x{i + 1}^{k}" for i, k in enumerate(e) if k)
                              for e in MONOMIALS],
                "coefficients": [_json_scalar(c) for c in self.coeffs]}


def cubic_through(params: ChainParams) -> CubicForm:
    """The cubic F_{s,t} through the chain points."""
    s, t = params.s, params.t
    zero = s - s
    table = {
        (2, 1, 0): -s * s,
        (1, 2, 0): s,
        (2, 0, 1): s * t,
        (1, 1, 1): s * s - s - t,
        (0, 2, 1): 1 - s,
        (1, 0, 2): t * (1 - s),
        (0, 1, 2): s - 1,
    }
    return CubicForm(tuple(table.get(e, zero) for e in MONOMIALS))


def node_residual(params: ChainParams):
    s, t = params.s, params.t
    return (-9 * s + 3 * s ** 2 + 5 * s ** 3 + s ** 4 + t + 10 * s * t - 11 * s * s * t - t * t)


def singular_point(params: ChainParams):
    s, t = params.s, params.t
    d = 4 - s + s * s - 3 * t
    if is_zero(d) or is_zero(s - 1):
        raise DenominatorVanishes("4 - s + s^2 - 3t or s - 1 vanishes")
    x2 = (3 * s + 4 * s * s + s ** 3 + t - 8 * s * t) / d
    x3 = (5 * s - 6 * s * s + s ** 3 - t + 2 * s * t) / ((s - 1) * d)
    return (s ** 0, x2, x3)


def param_r(r) -> ChainParams:
    r = _lift(r)
    d = 5 * r * r - 1
    if is_zero(d):
        raise PoleOfParametrization("5r^2 - 1 = 0")
    return ChainParams((r * r - 1) / d, 8 * (r - 3 * r * r + 4 * r ** 4) / (d * d))


def _w_denominator(w):
    return 1 + 10 * w ** 2 + 5 * w ** 4


def param_w(w) -> ChainParams:
    w = _lift(w)
    d = _w_denominator(w)
    if is_zero(d):
        raise PoleOfParametrization("1 + 10w^2 + 5w^4 = 0")
    w2 = w * w
    return ChainParams((w2 - 1) * (3 + w2) / d, 32 * w2 * w2 * (1 + w2) * (3 + w2) / (d * d))


def node_point_w(w):
    """The singular point of the cubic at param_w(w)."""
    w = _lift(w)
    w2 = w * w
    return (w ** 0, 4 * w2 * (3 + w2) / _w_denominator(w), (3 + w2) / (2 * (1 + w2)))


def smooth_param(v, w):
    """Point of the nodal cubic at param_w(w) with multiplicative coordinate v.

    v = 0 and v = infinity are the two branches at the node, v = 1 is p_0 and
    v = ((w-1)/(w+1))^k is p_k.  The point is returned with denominators
    cleared so that it stays defined where x2 or x3 has a pole.
    """
    v, w = _lift(v), _lift(w)
    w2 = w * w
    pw = _w_denominator(w)
    h = 2 * (1 + w2)
    if is_zero(pw) or is_zero(h):
        raise DenominatorVanishes("1 + 10w^2 + 5w^4 or 1 + w^2 vanishes")
    cub = -1 - v - 3 * w + 3 * v * w - 3 * w2 - 3 * v * w2 - w ** 3 + v * w ** 3
    a = 1 + v - w + v * w
    b = -1 + v + 2 * w + 2 * v * w - w2 + v * w2
    n2 = 4 * (v - 1) * (w - 1) * w2 * (1 + w) * (3 + w2) * (-1 + v - 2 * w - 2 * v * w - w2 + v * w2)
    n3 = (v - 1) * (w - 1) ** 2 * (1 + w) ** 2 * (-1 - v - w + v * w) * (3 + w2)
    # x2 = n2 / (a cub pw), x3 = n3 / (h b cub); multiply through by a b cub pw h
    pt = (a * b * cub * pw * h, n2 * b * h, n3 * a * pw)
    if is_null(pt):
        raise DenominatorVanishes("parametrization is undefined at this (v, w)")
    return pt


def periodicity_residual(params: ChainParams, n: int, labels=(0, 1, 2, 3)) -> list:
    """Two 2x2 minors of (p_k; p_{k+n}) per label k; all zero iff p_k = p_{k+n}."""
    if n < 10:
        raise ValueError("periodicity residuals are defined for n >= 10")
    window = chain_extend(params, -4, n + max(labels) if labels else n + 4)
    out = []
    for k in labels:
        p, q = window[k], window[k + n]
        piv = next(i for i in range(3) if not is_zero(p[i]))
        for j in range(3):
            if j != piv:
                out.append(p[piv] * q[j] - p[j] * q[piv])
    return out


# the 9 x 10 interpolation matrix


def interpolation_rows(params: ChainParams) -> list:
    """Cubic monomial values at p_{-3}..p_5 (closed forms, rows in label order)."""
    cf = closed_forms(params)
    return [[_mono(e, cf[k]) for e in MONOMIALS] for k in range(-3, 6)]


def interpolation_minors(params: ChainParams) -> list:
    """The ten 9x9 minors; entry c omits monomial column c (lexicographic order)."""
    if not params.symbolic:
        rows = interpolation_rows(params)
        return [determinant([r[:c] + r[c + 1:] for r in rows]) for c in range(10)]
    # scale each point by a common denominator L of its coordinates; its row
    # of cubic monomials then scales by L^3 and becomes polynomial
    cf = closed_forms(params)
    polyrows = []
    total = BiPoly.const(1)
    for k in range(-3, 6):
        lcm = BiPoly.const(1)
        for x in cf[k]:
            if lcm.divexact(x.den) is None:
                lcm = lcm * x.den
        pt = []
        for x in cf[k]:
            q = (x.num * lcm).divexact(x.den)
            if q is None:
                raise ArithmeticError("denominator clearing was not exact")
            pt.append(q)
        polyrows.append([_mono(e, pt) for e in MONOMIALS])
        total = total * lcm ** 3
    return [BiRat(_bareiss_poly([r[:c] + r[c + 1:] for r in polyrows]), total) for c in range(10)]


def _bareiss_poly(a) -> BiPoly:
    a = [list(r) for r in a]
    n = len(a)
    sign = 1
    prev = BiPoly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return BiPoly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q = num.divexact(prev)
                if q is None:
                    raise ArithmeticError("Bareiss step was not exact")
                a[i][j] = q
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def minor_target():
    """s^8 (1 - t + st) / ((s-1)^4 (1+s-t)^2 (t-1))."""
    s, t = BiRat.s(), BiRat.t()
    return s ** 8 * (1 - t + s * t) / ((s - 1) ** 4 * (1 + s - t) ** 2 * (t - 1))


def matching_minors(minors) -> list:
    """Columns whose minor is a nonzero constant multiple of minor_target()."""
    target = minor_target()
    probe = (Fraction(7, 3), Fraction(-5, 11))
    tv = target.evaluate(*probe)
    out = []
    for c, m in enumerate(minors):
        if m.is_zero():
            continue
        ratio = m.evaluate(*probe) / tv
        if ratio and m == target * ratio:
            out.append((c, ratio))
    return out


# chord-tangent group law


def _check_smooth_point(cubic: CubicForm, p, what: str):
    if not is_zero(cubic(p)):
        raise NotOnCurve(f"{what} is not on the cubic")
    if is_null(cubic.gradient(p)):
        raise SingularInput(f"{what} is a singular point of the cubic")


def third_point(cubic: CubicForm, p, q):
    """Third intersection of the line pq (tangent line if p = q) with the cubic."""
    if same_point(p, q):
        tangent = cubic.gradient(p)
        d = None
        for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            cand = cross(tangent, e)
            if not is_null(cand) and not same_point(cand, p):
                d = cand
                break
        # F(lam p + mu d) = mu^2 (lam * polar(d, p) + mu * F(d))
        a = cubic.polar(d, p)
        b = cubic(d)
        r = tuple(b * x - a * y for x, y in zip(p, d))
    else:
        g21 = cubic.polar(p, q)
        g12 = cubic.polar(q, p)
        r = tuple(g12 * x - g21 * y for x, y in zip(p, q))
    if is_null(r):
        raise SingularInput("the line is a component of the cubic")
    return normalize(r)


def chord_tangent_add(cubic: CubicForm, p, q, o):
    """p + q in the group of smooth points with neutral element the flex o."""
    for name, pt in (("P", p), ("Q", q), ("O", o)):
        _check_smooth_point(cubic, pt, name)
    if not same_point(third_point(cubic, o, o), o):
        raise NonFlexNeutral("the neutral point is not a flex")
    return third_point(cubic, third_point(cubic, p, q), o)


def chord_tangent_neg(cubic: CubicForm, p, o):
    return third_point(cubic, p, o)
