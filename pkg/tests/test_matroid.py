import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from modmat.cusps import cusp_config
from modmat.errors import (DegenerateFrame, ExcludedParameter, LabelOutOfRange, NoFrame,
                           NotEquivalent, SizeMismatch)
from modmat.exactnum import Matrix
from modmat.matroid import (Configuration, check_realization, det3, normalize_frame,
                            projective_equivalence, random_transform, small_family,
                            special_family, special_matroids, tn_matroid)


def brute_nonbases(n):
    return {t for t in combinations(range(n), 3) if sum(t) % n == 0}


@pytest.mark.parametrize("n", range(3, 31))
def test_tn_nonbases_match_enumeration(n):
    assert set(tn_matroid(n).nonbases) == brute_nonbases(n)


def test_tn_listed_nonbases():
    assert sorted(tn_matroid(8).nonbases) == [
        (0, 1, 7), (0, 2, 6), (0, 3, 5), (1, 2, 5), (1, 3, 4), (3, 6, 7), (4, 5, 7)]
    assert sorted(tn_matroid(5).nonbases) == [(0, 1, 4), (0, 2, 3)]
    m7 = tn_matroid(7)
    assert m7.is_nonbasis((6, 0, 1)) and not m7.is_nonbasis((0, 1, 2))


def test_det3_examples():
    s = Fraction(5, 3)
    c = Configuration.of([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, s, 0)])
    assert det3(c, 0, 1, 2) == 1
    assert det3(c, 0, 1, 4) == 0
    assert det3(c, 0, 1, 3) == 1
    with pytest.raises(LabelOutOfRange):
        det3(c, 0, 1, 9)


def test_configuration_normalizes_and_serializes():
    c = Configuration.of([(0, 2, 4), (3, 0, 0)])
    assert c[0] == (0, 1, 2) and c[1] == (1, 0, 0)
    back = Configuration.from_json(c.to_json())
    assert back.same_as(c)


def test_t7_family_examples():
    m = tn_matroid(7)
    assert check_realization(small_family(7, 2), m).is_realization
    with pytest.raises(ExcludedParameter):
        small_family(7, 1)
    rep = check_realization(small_family(7, 1, strict=False), m)
    assert rep.degenerate_bases and not rep.is_realization


def test_constant_families():
    c5 = small_family(5)
    assert c5[0] == (0, 1, 1)
    assert [c5[i] for i in range(1, 5)] == [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    c6 = small_family(6)
    assert c6[2] == (0, 1, 1) and c6[5] == (1, 1, 0)
    for n, c in ((5, c5), (6, c6)):
        assert check_realization(c, tn_matroid(n)).is_realization


@pytest.mark.parametrize("n,bad", [(7, [0, 1]), (8, [0, 1, -1]), (9, [0, 1])])
def test_small_family_random_parameters(n, bad):
    rng = random.Random(n)
    m = tn_matroid(n)
    good = 0
    while good < 20:
        t = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        if t in bad:
            continue
        assert check_realization(small_family(n, t), m).is_realization
        good += 1
    for t in bad:
        with pytest.raises(ExcludedParameter):
            small_family(n, t)
        assert check_realization(small_family(n, Fraction(t), strict=False), m).degenerate_bases


def test_special_matroids():
    t5 = special_matroids("T5prime")
    assert t5.ground_size == 7 and len(t5.nonbases) == 5
    assert (0, 5, 6) in t5.nonbases  # atoms {1,6,7}
    t6 = special_matroids("T6prime")
    assert t6.ground_size == 15
    assert all(tr in t6.nonbases for tr in combinations(range(5), 3))
    assert t6.atom_names[0] == 1 and t6.atom_names[-1] == 15


def test_special_families():
    c = special_family("T5prime", 2)
    assert c[6] == (0, 1, 3)
    assert check_realization(c, special_matroids("T5prime")).is_realization
    c6 = special_family("T6prime", 3)
    assert len(c6) == 15
    rep = check_realization(c6, special_matroids("T6prime"))
    assert rep.is_realization and rep.atom_names[0] == 1
    for t in (0, 1, -1):
        with pytest.raises(ExcludedParameter):
            special_family("T5prime", t)
    for t in (0, 1, -1, Fraction(-1, 2)):
        with pytest.raises(ExcludedParameter):
            special_family("T6prime", t)


@given(st.fractions(min_value=-30, max_value=30, max_denominator=9))
def test_t6prime_family_realizes(t):
    if t in (0, 1, -1, Fraction(-1, 2)):
        return
    assert check_realization(special_family("T6prime", t), special_matroids("T6prime")).is_realization


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        check_realization(small_family(5), tn_matroid(6))


def test_repeated_point_is_degenerate():
    c = Configuration.of([(1, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert check_realization(c, tn_matroid(4)).degenerate_bases


@given(st.integers(0, 10_000), st.fractions(min_value=2, max_value=40, max_denominator=7))
def test_realization_is_projectively_invariant(seed, t):
    c = small_family(8, t)
    g = random_transform(random.Random(seed))
    m = tn_matroid(8)
    a, b = check_realization(c, m), check_realization(c.transform(g), m)
    assert a.failed_nonbases == b.failed_nonbases
    assert a.degenerate_bases == b.degenerate_bases


@given(st.integers(0, 10_000))
def test_normalize_frame_round_trip(seed):
    c = small_family(7, 2)
    moved = c.transform(random_transform(random.Random(seed)))
    back = normalize_frame(moved, 0, 1, 2, 3)
    assert back.same_as(c)
    assert normalize_frame(back, 0, 1, 2, 3).same_as(back)


def test_normalize_frame_fixes_cusp_configuration():
    c = cusp_config(11, 1)
    assert normalize_frame(c, 0, 1, 2, 3).same_as(c)


def test_degenerate_frame():
    with pytest.raises(DegenerateFrame):
        normalize_frame(small_family(5), 0, 1, 2, 3)  # labels 0, 2, 3 lie on x1 = 0


def test_projective_equivalence():
    c = small_family(7, 2)
    assert projective_equivalence(c, c) == Matrix.identity(3)
    g = random_transform(random.Random(3))
    h = projective_equivalence(c, c.transform(g))
    assert c.transform(h).same_as(c.transform(g))
    # h agrees with g up to a scalar
    ratio = next(h[i, j] / g[i, j] for i in range(3) for j in range(3) if g[i, j])
    assert all(h[i, j] == ratio * g[i, j] for i in range(3) for j in range(3))
    with pytest.raises(NotEquivalent):
        projective_equivalence(c, small_family(7, 3))
    line = Configuration.of([(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 0)])
    with pytest.raises(NoFrame):
        projective_equivalence(line, line)
