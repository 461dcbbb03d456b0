"""Realize T_n for small n and watch the excluded parameters break it."""
from fractions import Fraction

from modmat.errors import ExcludedParameter
from modmat.matroid import check_realization, small_family, tn_matroid


def main():
    for n in range(5, 10):
        m = tn_matroid(n)
        print(f"T_{n}: {len(m.nonbases)} non-bases")
        t = None if n < 7 else Fraction(3, 7)
        rep = check_realization(small_family(n, t), m)
        print(f"  family at t={t}: realization={rep.is_realization}")

    m = tn_matroid(8)
    for t in (0, 1, -1):
        try:
            small_family(8, t)
        except ExcludedParameter as exc:
            rep = check_realization(small_family(8, Fraction(t), strict=False), m)
            print(f"  n=8, t={t}: rejected ({exc}); {len(rep.degenerate_bases)} bases collapse")


if __name__ == "__main__":
    main()
