"""Rank-3 matroids, labeled point configurations and realization checks.

Labels are 0-based throughout.  Matroids that come with 1-based atoms
(T5', T6') are shifted down by one; the original atom names are kept in
``Matroid3.atom_names``.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import (DegenerateFrame, ExcludedParameter, LabelOutOfRange, NoFrame,
                     NotEquivalent, SizeMismatch)
from .exactnum import Cyclotomic, Matrix
from .projective import (cross, det3 as _det3, dot, field_name, frame_transform,
                         integer_scaled, is_zero, normalize, same_point)


@dataclass(frozen=True)
class Matroid3:
    ground_size: int
    nonbases: frozenset
    name: str = ""
    atom_names: tuple = ()

    def __post_init__(self):
        cleaned = set()
        for nb in self.nonbases:
            trip = tuple(sorted(nb))
            if len(set(trip)) != 3 or len(trip) != 3:
                raise ValueError(f"non-basis {nb} does not have 3 distinct elements")
            if not all(0 <= x < self.ground_size for x in trip):
                raise LabelOutOfRange(f"non-basis {nb} outside 0..{self.ground_size - 1}")
            cleaned.add(trip)
        object.__setattr__(self, "nonbases", frozenset(cleaned))
        if not self.atom_names:
            object.__setattr__(self, "atom_names", tuple(range(self.ground_size)))

    def is_nonbasis(self, triple) -> bool:
        return tuple(sorted(triple)) in self.nonbases

    def bases(self):
        for trip in combinations(range(self.ground_size), 3):
            if trip not in self.nonbases:
                yield trip


def tn_matroid(n: int) -> Matroid3:
    """T_n: ground set Z/nZ, non-bases the 3-subsets summing to 0 mod n."""
    if n < 3:
        raise ValueError("T_n needs n >= 3")
    nbs = frozenset(t for t in combinations(range(n), 3) if sum(t) % n == 0)
    return Matroid3(n, nbs, name=f"T{n}")


_T5P_BLOCKS = [(1, 6, 7), (2, 3, 7), (2, 4, 6), (3, 5, 6), (4, 5, 7)]
_T6P_BLOCKS = [
    (1, 12, 13), (3, 6, 15), (3, 8, 12), (5, 8, 10), (1, 2, 3, 4, 5), (1, 6, 7, 8, 9),
    (2, 6, 10, 11, 12), (3, 7, 10, 13, 14), (4, 8, 11, 13, 15), (5, 9, 12, 14, 15),
]


def special_matroids(which: str) -> Matroid3:
    """T5' (7 atoms) or T6' (15 atoms), with atoms shifted to 0-based labels."""
    if which == "T5prime":
        blocks, size = _T5P_BLOCKS, 7
    elif which == "T6prime":
        blocks, size = _T6P_BLOCKS, 15
    else:
        raise ValueError(f"unknown special matroid {which!r}")
    nbs = set()
    for block in blocks:
        for trip in combinations(sorted(block), 3):
            nbs.add(tuple(x - 1 for x in trip))
    return Matroid3(size, frozenset(nbs), name=which, atom_names=tuple(range(1, size + 1)))


@dataclass(frozen=True)
class Configuration:
    """Labeled points of P^2; label i is ``points[i]``.

    Points are stored with first nonzero coordinate equal to 1.
    """

    points: tuple
    field: str = ""

    def __post_init__(self):
        pts = tuple(normalize(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not self.field:
            object.__setattr__(self, "field", field_name(pts[0][0]) if pts else "rational")

    @classmethod
    def of(cls, points) -> Configuration:
        return cls(tuple(tuple(p) for p in points))

    def __len__(self):
        return len(self.points)

    def __getitem__(self, label: int):
        if not 0 <= label < len(self.points):
            raise LabelOutOfRange(f"label {label} not in 0..{len(self.points) - 1}")
        return self.points[label]

    def transform(self, m: Matrix) -> Configuration:
        return Configuration(tuple(m.apply(p) for p in self.points), self.field)

    def same_as(self, other: Configuration) -> bool:
        return len(self) == len(other) and all(
            same_point(p, q) for p, q in zip(self.points, other.points))

    def galois(self, u: int) -> Configuration:
        return Configuration(tuple(tuple(x.galois(u) for x in p) for p in self.points),
                             self.field)

    def to_json(self) -> dict:
        return {"field": self.field, "points": [
            [str(c) if isinstance(c, int) else [str(x) for x in c] for c in integer_scaled(p)]
            for p in self.points]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> Configuration:
        if isinstance(data, str):
            data = json.loads(data)
        fld = data["field"]
        pts = []
        for p in data["points"]:
            if fld == "rational":
                pts.append(tuple(Fraction(int(c)) for c in p))
            elif fld.startswith("cyclotomic:"):
                n = int(fld.split(":", 1)[1])
                pts.append(tuple(Cyclotomic(n, [Fraction(int(x)) for x in c]) for c in p))
            else:
                raise ValueError(f"unsupported field {fld!r}")
        return cls(tuple(pts), fld)


@dataclass
class RealizationReport:
    failed_nonbases: list = field(default_factory=list)
    degenerate_bases: list = field(default_factory=list)
    atom_names: tuple = ()

    @property
    def is_realization(self) -> bool:
        return not self.failed_nonbases and not self.degenerate_bases

    def to_json(self) -> dict:
        return {
            "is_realization": self.is_realization,
            "failed_nonbases": [list(t) for t in self.failed_nonbases],
            "degenerate_bases": [list(t) for t in self.degenerate_bases],
            "atom_names": list(self.atom_names),
        }


def det3(c: Configuration, a: int, b: int, k: int):
    """Determinant of the stored representatives of points a, b, k."""
    if len({a, b, k}) != 3:
        raise ValueError("det3 needs three distinct labels")
    return _det3(c[a], c[b], c[k])


def check_realization(c: Configuration, m: Matroid3) -> RealizationReport:
    if len(c) != m.ground_size:
        raise SizeMismatch(f"{len(c)} points for a matroid on {m.ground_size} atoms")
    pts = c.points
    size = len(pts)
    report = RealizationReport(atom_names=m.atom_names)
    # det(i, j, k) = (p_i x p_j) . p_k; each cross product is reused
    for i in range(size):
        for j in range(i + 1, size):
            line = cross(pts[i], pts[j])
            for k in range(j + 1, size):
                zero = is_zero(dot(line, pts[k]))
                trip = (i, j, k)
                if trip in m.nonbases:
                    if not zero:
                        report.failed_nonbases.append(trip)
                elif zero:
                    report.degenerate_bases.append(trip)
    return report


def nonbasis_vanishing(c: Configuration, m: Matroid3) -> list:
    """Non-bases whose determinant is nonzero (empty when all vanish)."""
    return [t for t in sorted(m.nonbases) if not is_zero(det3(c, *t))]


def general_position(c: Configuration, labels) -> bool:
    return all(not is_zero(det3(c, *t)) for t in combinations(labels, 3))


def normalize_frame(c: Configuration, j1: int, j2: int, j3: int, j4: int) -> Configuration:
    """Apply the unique projective map sending points j1..j4 to the canonical frame."""
    return c.transform(frame_matrix(c, (j1, j2, j3, j4)))


def frame_matrix(c: Configuration, labels) -> Matrix:
    if not general_position(c, labels):
        raise DegenerateFrame(f"points {tuple(labels)} are not in general position")
    return frame_transform(*(c[j] for j in labels)).inverse()


def find_frame(c: Configuration):
    for quad in combinations(range(len(c)), 4):
        if general_position(c, quad):
            return quad
    raise NoFrame("no four points in general position")


def projective_equivalence(a: Configuration, b: Configuration) -> Matrix:
    """The projective map g with g(a) = b as labeled configurations."""
    if len(a) != len(b):
        raise NotEquivalent("different label sets")
    quad = find_frame(a)
    if not general_position(b, quad):
        raise NotEquivalent(f"frame {quad} degenerates in the target")
    ta = frame_transform(*(a[j] for j in quad))
    tb = frame_transform(*(b[j] for j in quad))
    g = tb @ ta.inverse()
    if not a.transform(g).same_as(b):
        raise NotEquivalent("configurations differ after matching a frame")
    return g


def random_transform(rng: random.Random, bound: int = 5) -> Matrix:
    """A random invertible 3x3 integer matrix (for round-trip tests and demos)."""
    while True:
        m = Matrix([[Fraction(rng.randint(-bound, bound)) for _ in range(3)] for _ in range(3)])
        if m.det() != 0:
            return m


# closed-form families


def _canonical():
    return [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]


def _check_excluded(t, polys, what):
    for name, f in polys:
        if is_zero(f(t)):
            raise ExcludedParameter(f"{what}: parameter is a root of {name}")


_SMALL_EXCLUDED = {
    7: [("t", lambda t: t), ("t-1", lambda t: t - 1)],
    8: [("t", lambda t: t), ("t-1", lambda t: t - 1), ("t+1", lambda t: t + 1)],
    9: [("t", lambda t: t), ("t-1", lambda t: t - 1), ("t^2-t+1", lambda t: t * t - t + 1)],
}


def small_family(n: int, t=None, strict: bool = True) -> Configuration:
    """The closed-form realizations of T_n for 5 <= n <= 9.

    With ``strict=False`` excluded parameters are not rejected, which lets
    callers inspect the degenerate configuration they produce.
    """
    if n == 5:
        fr = _canonical()
        return Configuration.of([(0, 1, 1)] + fr)
    if n == 6:
        e1, e2, e3, e4 = _canonical()
        return Configuration.of([e1, e2, (0, 1, 1), e3, e4, (1, 1, 0)])
    if n not in _SMALL_EXCLUDED:
        raise ValueError("small_family covers 5 <= n <= 9")
    if t is None:
        raise ValueError(f"n={n} needs a parameter t")
    if isinstance(t, int):
        t = Fraction(t)
    if strict:
        _check_excluded(t, _SMALL_EXCLUDED[n], f"T{n} family")
    one = t ** 0
    zero = t - t
    if n == 7:
        pts = _canonical() + [(zero, one, one), (one, zero, t), (t - 1, t, zero)]
    elif n == 8:
        pts = [(1, 0, 0), (0, 1, 0), (1, 1, 1), (0, 0, 1),
               (zero, t, -one), (one, zero, one), (one, t, t), (one, t, zero)]
    else:
        pts = [(1, 0, 0), (0, 1, 0), (1, 1, 1), (0, 0, 1), (t, t, t - 1),
               (zero, t, t - 1), (one, zero, one), (one, t, t), (one, t, zero)]
    return Configuration.of([tuple(x * one for x in p) for p in pts])


_T5P_EXCLUDED = [("t", lambda t: t), ("t-1", lambda t: t - 1), ("t+1", lambda t: t + 1)]
_T6P_EXCLUDED = [
    ("x+1", lambda x: x + 1), ("x", lambda x: x), ("2x+1", lambda x: 2 * x + 1),
    ("x-1", lambda x: x - 1), ("x^2+x+1", lambda x: x * x + x + 1),
    ("x^2-x-1", lambda x: x * x - x - 1),
]


def t6prime_points(t):
    """The six 5-fold points of a T6' line arrangement."""
    one = t ** 0
    zero = t - t
    return [(zero, zero, one), (zero, one, zero), (-one, one, one),
            (t, zero, one), (-t, one, zero), (-t - 1, one, one)]


def special_family(which: str, t) -> Configuration:
    """Dual-point realizations of T5' and T6'.

    For T6' the atom labelled by the pair (i, j) (pairs in lexicographic
    order) is the dual of the line through the i-th and j-th 5-fold point.
    """
    if isinstance(t, int):
        t = Fraction(t)
    if which == "T5prime":
        _check_excluded(t, _T5P_EXCLUDED, "T5' family")
        one = t ** 0
        return Configuration.of(
            [tuple(x * one for x in p) for p in _canonical()]
            + [(t + 1, one, 1 - t * t), (t + 1, one, t + 1), (0 * t, one, t + 1)])
    if which == "T6prime":
        _check_excluded(t, _T6P_EXCLUDED, "T6' family")
        pts = t6prime_points(t)
        lines = [cross(pts[i], pts[j]) for i, j in combinations(range(6), 2)]
        return Configuration.of(lines)
    raise ValueError(f"unknown special family {which!r}")


T6PRIME_PAIRS = tuple(combinations(range(6), 2))
