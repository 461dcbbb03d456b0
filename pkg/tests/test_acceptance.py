"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""
import random
import time
from fractions import Fraction
from math import gcd

import pytest

from modmat import psi
from modmat.chain import (ChainParams, chain_extend, chord_tangent_add, cubic_through,
                          interpolation_minors, matching_minors, node_residual,
                          param_r, param_w, singular_point, window_agrees_with_closed_forms)
from modmat.cusps import (boroczky_config, boroczky_conic, ceva_config, ceva_points,
                          ceva_reduction, cusp_config, fourm_config)
from modmat.errors import ExcludedParameter
from modmat.exactnum import BiRat, Cyclotomic
from modmat.matroid import check_realization, small_family, tn_matroid
from modmat.projective import is_null, is_zero, normalize, same_point
from modmat.qmod import (evaluate_at, main_k_independence, numeric_laurent, sigma,
                         verify_identity, wp_value)

EXCLUDED = {7: [0, 1], 8: [0, 1, -1], 9: [0, 1]}


def criterion_1():
    rng = random.Random(20240601)
    for n in (7, 8, 9):
        m = tn_matroid(n)
        count = 0
        while count < 20:
            t = Fraction(rng.randint(-99, 99), rng.randint(1, 30))
            if t in EXCLUDED[n]:
                continue
            if not check_realization(small_family(n, t), m).is_realization:
                return False, f"n={n}, t={t} does not realize"
            count += 1
        for t in EXCLUDED[n]:
            try:
                small_family(n, t)
                return False, f"n={n}, t={t} accepted"
            except ExcludedParameter:
                pass
            if not check_realization(small_family(n, Fraction(t), strict=False), m).degenerate_bases:
                return False, f"n={n}, excluded t={t} has no degenerate basis"
    for n in (5, 6):
        if not check_realization(small_family(n), tn_matroid(n)).is_realization:
            return False, f"constant family n={n} fails"
    return True, "60 random parameters realize; excluded parameters degenerate"


def criterion_2():
    params = ChainParams.generic()
    win = chain_extend(params, -4, 8)
    agree = window_agrees_with_closed_forms(win)
    if sorted(agree) != list(range(-4, 6)) or not all(agree.values()):
        return False, f"closed forms disagree: {agree}"
    f = cubic_through(params)
    for k in range(-4, 9):
        if not f(win[k]).is_zero():
            return False, f"F(p_{k}) != 0"
    match = matching_minors(interpolation_minors(params))
    if not match:
        return False, "no 9x9 minor is a constant multiple of the target"
    return True, f"p_-4..p_5 exact, F(p_k)=0 for -4..8, minors {[(i, str(c)) for i, c in match]} = c * target"


def criterion_3():
    x = BiRat.s()
    if not node_residual(param_r(x)).is_zero() or not node_residual(param_w(x)).is_zero():
        return False, "parametrization does not satisfy the node equation"
    for p in (param_r(3), param_r(-2), param_r(Fraction(7, 5)), param_w(2), param_w(Fraction(1, 3))):
        f = cubic_through(p)
        q = singular_point(p)
        if not is_zero(f(q)) or not is_null(f.gradient(q)):
            return False, f"gradient nonzero at singular point for {p}"
    return True, "both parametrizations exact; 5 singular points checked"


def criterion_4():
    count = 0
    for n in range(10, 21):
        m = tn_matroid(n)
        for a in range(1, n):
            if gcd(a, n) == 1:
                if not check_realization(cusp_config(n, a), m).is_realization:
                    return False, f"cusp_config({n},{a}) fails"
                count += 1
    return True, f"{count} configurations realize T_n exactly"


def criterion_5():
    for n in range(10, 15):
        for kind in ("ST", "MAIN", "BK", "AK1", "RR", "SIGMA"):
            rep = verify_identity(kind, n, qprec=25, zprec=6)
            if not rep.passed:
                return False, f"{kind} fails at n={n} (order {rep.residual_order})"
        for a in range(1, n):
            for b in range(a + 1, n):
                if (a + b) % n and (a - b) % n and not main_k_independence(n, a, b, 25).passed:
                    return False, f"MAIN k-dependence at n={n}, (a,b)=({a},{b})"
    return True, "ST, MAIN (+k-independence), BK, AK1, RR, sigma routes exact for n=10..14"


def criterion_6():
    for n in range(10, 15):
        m = psi.psi_matrix(n, 25)
        rep = psi.collinearity_check(m)
        if not rep.passed:
            return False, f"collinearity fails at n={n}"
        if not (m[n - 4][2] - 1).is_zero():
            return False, f"b_(n-4) != 1 at n={n}"
        if not (m[n - 3][0].is_zero() and m[n - 3][1] == 1 and m[n - 3][2] == 1):
            return False, f"row n-3 != (0,1,1) at n={n}"
    return True, "non-bases vanish, sampled bases nonzero, b_(n-4)=1, row n-3=(0,1,1) for n=10..14"


def criterion_7():
    for n in range(10, 17):
        m = psi.psi_matrix(n, 25)
        s, t = psi.recover_st(m)
        if not node_residual(ChainParams(s[0], t[0])).is_zero():
            return False, f"constant terms off the node locus at n={n}"
        for check in (psi.closed_form_check, psi.cubic_vanishing_check):
            if not check(m).passed:
                return False, f"{check.__name__} fails at n={n}"
        if not psi.cusp_constant_check(n).passed:
            return False, f"constant terms differ from cusp_config at n={n}"
    return True, "node locus, closed-form rows, cubic and cusp constants agree for n=10..16"


def criterion_8():
    for n in (10, 11, 12):
        m = psi.psi_matrix(n, 25)
        for i in range(1, n):
            sol = psi.prop_all_solve(n, i, 25, m=m)
            if sol.residual_order is not None:
                return False, f"residual at order {sol.residual_order} for n={n}, i={i}"
    return True, "exact rational combinations with zero residual for n=10,11,12"


def _fourm_expected(n, d, k):
    z = lambda j: Cyclotomic.zeta(n, d * j)  # noqa: E731
    r = k % 4
    if r == 0:
        return (1, 1 - z(-k), (1 - z(-k)) / (1 - z(4)))
    if r == 3:
        return (1, 1, (1 - z(k + 1)) / (1 - z(4)))
    if r == 2:
        return (0, 0, 1)
    return (0, 1, (1 - z(1 - k)) / (1 - z(4)))


def criterion_9():
    b = boroczky_config(14, 1)
    if not all(is_zero(b[k][1]) for k in range(0, 14, 2)):
        return False, "Boroczky even rows off x2 = 0"
    if not all(is_zero(boroczky_conic(14, 1, b[k])) for k in range(1, 14, 2)):
        return False, "Boroczky odd rows off the conic"
    c = ceva_config(12, 1)
    red = ceva_reduction(12, 1)
    image = {tuple(normalize(red.matrix.apply(p))) for p in c.points}
    if image != {tuple(p) for p in ceva_points(12)}:
        return False, "Ceva reduction does not hit the Ceva set"
    f = fourm_config(12, 1)
    if not all(same_point(f[k], _fourm_expected(12, 1, k)) for k in range(12)):
        return False, "n=4m rows differ from the four families"
    for name, conf, n in (("Boroczky", b, 14), ("Ceva", c, 12), ("4m", f, 12)):
        rep = check_realization(conf, tn_matroid(n))
        if rep.failed_nonbases or not rep.degenerate_bases:
            return False, f"{name}: failed non-bases {rep.failed_nonbases[:3]}, no degenerate basis"
    return True, "Boroczky line/conic, Ceva reduction, n=4m families; all boundary limits degenerate"


def criterion_10():
    worst = 0.0
    tau = 1.1j
    for n in (10, 13):
        for a in (1, 2):
            direct = numeric_laurent(n, a, tau)
            worst = max(worst, abs(evaluate_at(sigma(n, a, 30), tau) - direct["sigma"]))
        for a in range(1, n):
            direct = numeric_laurent(n, a, tau)
            wp, wpp = wp_value(n, a, 30)
            worst = max(worst, abs(evaluate_at(wp, tau) - direct["wp"]),
                        abs(evaluate_at(wpp, tau) - direct["wp_prime"]))
    return worst < 1e-9, f"max deviation {worst:.2e} (tolerance 1e-9)"


def criterion_11():
    n = 10
    c = cusp_config(n, 1)
    f = cubic_through(ChainParams(c[n - 1][1], c[n - 4][1]))
    o = c[0]
    for k in range(n):
        if not same_point(chord_tangent_add(f, c[k], c[1], o), c[(k + 1) % n]):
            return False, f"p_{k} + p_1 != p_{k + 1}"
        if not same_point(chord_tangent_add(f, c[k], c[(n - k) % n], o), o):
            return False, f"p_{k} + p_{n - k} != p_0"
    return True, "p_k + p_1 = p_(k+1) and p_k + p_(n-k) = p_0 over Q(zeta_10)"


CRITERIA = [
    (1, "matroid families", criterion_1, 5),
    (2, "chain closed forms", criterion_2, 30),
    (3, "node locus", criterion_3, 10),
    (4, "cusp configurations", criterion_4, 180),
    (5, "q-series identities", criterion_5, 300),
    (6, "psi matrix", criterion_6, 300),
    (7, "modular-chain-cusp triangle", criterion_7, None),
    (8, "linear combinations of a_k, b_k", criterion_8, None),
    (9, "boundary degenerations", criterion_9, None),
    (10, "numerical oracle", criterion_10, None),
    (11, "group law", criterion_11, None),
]


def evaluate(number, name, fn, budget):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed > budget:
        ok, detail = False, f"{detail}; took {elapsed:.1f} s, budget {budget} s"
    line = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {name}: {detail} ({elapsed:.2f} s)"
    return ok, line


@pytest.mark.parametrize("number,name,fn,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, name, fn, budget, capsys):
    ok, line = evaluate(number, name, fn, budget)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
