import cmath
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from modmat.errors import NoSolution
from modmat.exactnum import (BiPoly, BiRat, Cyclotomic, Matrix, QSeries, cyclotomic_coeffs,
                             cyclotomic_polynomial, determinant, euler_phi, linear_solve,
                             qseries_arith)


# independent oracle: Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}


def _mobius(m):
    out, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _pdiv(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        q[i] = a[i + len(b) - 1] // b[-1]
        for j, y in enumerate(b):
            a[i + j] -= q[i] * y
    assert not any(a)
    return q


def mobius_cyclotomic(n):
    num, den = [1], [1]
    for d in range(1, n + 1):
        if n % d == 0:
            mu = _mobius(n // d)
            f = [-1] + [0] * (d - 1) + [1]
            if mu == 1:
                num = _pmul(num, f)
            elif mu == -1:
                den = _pmul(den, f)
    return _pdiv(num, den)


@pytest.mark.parametrize("n", range(1, 41))
def test_cyclotomic_polynomial_matches_mobius_product(n):
    assert list(cyclotomic_coeffs(n)) == mobius_cyclotomic(n)


def test_cyclotomic_polynomial_small_cases():
    x = BiPoly.s()
    assert cyclotomic_polynomial(1) == x - 1
    assert cyclotomic_polynomial(4) == x ** 2 + 1
    assert cyclotomic_polynomial(12) == x ** 4 - x ** 2 + 1


ORDERS = [5, 7, 10, 12, 13, 14, 15]


@st.composite
def cyclo(draw, order=None):
    n = order or draw(st.sampled_from(ORDERS))
    coeffs = draw(st.lists(st.fractions(max_denominator=7, min_value=-5, max_value=5),
                           min_size=euler_phi(n), max_size=euler_phi(n)))
    return Cyclotomic(n, coeffs)


@st.composite
def cyclo_triple(draw):
    n = draw(st.sampled_from(ORDERS))
    return draw(cyclo(n)), draw(cyclo(n)), draw(cyclo(n))


@given(cyclo_triple())
def test_field_axioms(abc):
    a, b, c = abc
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(cyclo_triple())
def test_arithmetic_agrees_with_complex_embedding(abc):
    a, b, _ = abc
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-8
    assert abs((a + b).to_complex() - a.to_complex() - b.to_complex()) < 1e-9


@given(cyclo_triple(), st.integers(1, 60))
def test_galois_is_a_ring_homomorphism(abc, u):
    a, b, _ = abc
    n = a.order
    from math import gcd
    if gcd(u, n) != 1:
        with pytest.raises(ValueError):
            a.galois(u)
        return
    assert (a * b).galois(u) == a.galois(u) * b.galois(u)
    assert (a + b).galois(u) == a.galois(u) + b.galois(u)
    assert Cyclotomic.zeta(n).galois(u) == Cyclotomic.zeta(n, u)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 10, 12, 30])
def test_zeta_has_order_n(n):
    z = Cyclotomic.zeta(n)
    assert z ** n == 1
    for k in range(1, n):
        if n % k == 0:
            assert z ** k != 1
    assert sum((Cyclotomic.zeta(n, k) for k in range(n)), Cyclotomic.zero(n)) == (1 if n == 1 else 0)


def test_representation_is_canonical():
    z = Cyclotomic.zeta(10)
    # reduced modulo Phi_10 = x^4 - x^3 + x^2 - x + 1
    assert z ** 4 == z ** 3 - z ** 2 + z - 1
    assert Cyclotomic(10, [1, 0, 0, 0, 0, 1]) == 1 + z ** 5
    assert (1 + z ** 5).is_zero()


def test_json_round_trip():
    a = Cyclotomic(7, [Fraction(1, 3), -2, 0, 5, 0, Fraction(-7, 2)])
    assert Cyclotomic.from_json(7, a.to_json()) == a


# q-series


@st.composite
def qser(draw, order=7, prec=8, unit=False):
    coeffs = [draw(cyclo(order)) for _ in range(prec)]
    if unit and coeffs[0].is_zero():
        coeffs[0] = Cyclotomic.one(order)
    return QSeries(order, coeffs, prec)


@given(qser(), qser(unit=True))
def test_series_division_and_inverse(f, g):
    assert g * g.inverse() == 1
    assert (f / g) * g == f
    assert qseries_arith(f, g, "div") == f / g


@given(qser(), qser())
def test_derive_is_a_derivation(f, g):
    assert (f * g).derive() == f.derive() * g + f * g.derive()


@given(qser(), qser())
def test_exp_is_a_homomorphism(f, g):
    f = f - f[0]
    g = g - g[0]
    assert (f + g).exp() == f.exp() * g.exp()
    assert f.exp().derive() == f.derive() * f.exp()


def test_truncation_never_reports_terms_beyond_prec():
    x = QSeries.monomial(5, 1, 1, 6)
    assert (x ** 6).is_zero()
    assert (x ** 5)[5] == 1
    geo = (1 - x).inverse()
    assert all(geo[k] == 1 for k in range(6))
    with pytest.raises(IndexError):
        geo[6]


def test_series_evaluation_matches_closed_form():
    x = QSeries.monomial(5, 1, 1, 40)
    q = 0.3
    assert abs((1 - x).inverse().evaluate(q) - 1 / (1 - q)) < 1e-12
    assert abs(x.exp().evaluate(q) - cmath.exp(q)) < 1e-12


# linear algebra


def _leibniz(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(1)
        for i in range(n):
            term *= rows[i][perm[i]]
        total += -term if inv % 2 else term
    return total


small = st.fractions(min_value=-6, max_value=6, max_denominator=5)


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_leibniz(rows):
    assert determinant(rows) == _leibniz(rows)


@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n),
                        st.lists(small, min_size=n, max_size=n))))
def test_linear_solve_solves(system):
    rows, x = system
    a = Matrix(rows)
    b = a @ Matrix.column(x)
    sol = linear_solve(a, b)
    assert a @ sol == b


def test_linear_solve_inconsistent():
    with pytest.raises(NoSolution):
        linear_solve(Matrix([[1, 1], [2, 2]]), Matrix.column([1, 3]))


def test_linear_solve_over_cyclotomic_field():
    z = Cyclotomic.zeta(7)
    a = Matrix([[z, 1], [1, z ** 2]])
    x = [1 + z, z ** 3]
    b = a @ Matrix.column(x)
    sol = linear_solve(a, b)
    assert [sol[0, 0], sol[1, 0]] == x


def test_matrix_inverse():
    a = Matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    assert a @ a.inverse() == Matrix.identity(3)


# bivariate polynomials and rational functions


@st.composite
def bipoly(draw):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                                 st.integers(-4, 4), max_size=5))
    return BiPoly(terms)


points = st.tuples(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                   st.fractions(min_value=-5, max_value=5, max_denominator=4))


@given(bipoly(), bipoly(), points)
def test_bipoly_ring_operations_commute_with_evaluation(f, g, pt):
    s, t = pt
    assert (f * g).evaluate(s, t) == f.evaluate(s, t) * g.evaluate(s, t)
    assert (f - g).evaluate(s, t) == f.evaluate(s, t) - g.evaluate(s, t)


@given(bipoly(), bipoly())
def test_divexact(f, g):
    if g.is_zero():
        return
    assert (f * g).divexact(g) == f


@given(bipoly(), bipoly(), bipoly(), points)
def test_birat_field_operations(f, g, h, pt):
    if g.is_zero() or h.is_zero():
        return
    r = BiRat(f, g)
    u = BiRat(h, g + 1) if not (g + 1).is_zero() else BiRat(h)
    assert (r + u) - u == r
    if not u.is_zero():
        assert (r / u) * u == r
    s, t = pt
    if g.evaluate(s, t) == 0:
        return
    assert r.evaluate(s, t) == f.evaluate(s, t) / g.evaluate(s, t)


def test_birat_equality_by_cross_multiplication():
    s, t = BiRat.s(), BiRat.t()
    assert (s * s - t * t) / (s - t) == s + t
    assert (s / t) != (t / s)
