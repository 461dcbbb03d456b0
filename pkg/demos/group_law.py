"""Step around the cubic through the cusp configuration with chord and tangent."""
from modmat.chain import ChainParams, chord_tangent_add, cubic_through
from modmat.cusps import boroczky_config, cusp_config
from modmat.matroid import check_realization, tn_matroid
from modmat.projective import same_point


def main(n=10):
    c = cusp_config(n, 1)
    f = cubic_through(ChainParams(c[n - 1][1], c[n - 4][1]))
    p = c[0]
    for k in range(1, n + 1):
        p = chord_tangent_add(f, p, c[1], c[0])
        print(f"  {k} * p_1 == p_{k % n}: {same_point(p, c[k % n])}")

    rep = check_realization(boroczky_config(14), tn_matroid(14))
    print(f"Boroczky limit at n=14: non-bases hold={not rep.failed_nonbases}, "
          f"collapsed bases={len(rep.degenerate_bases)}")


if __name__ == "__main__":
    main()
