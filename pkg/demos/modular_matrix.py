"""Build the q-expanded realization at level 10 and tie it back to the chain."""
from modmat import psi
from modmat.chain import ChainParams, node_residual
from modmat.cusps import cusp_config


def main(n=10, qprec=20):
    m = psi.psi_matrix(n, qprec)
    s, t = psi.recover_st(m)
    print(f"level {n}, q-precision {qprec}")
    print("  s(q) leading coefficients:", [str(c) for c in s.coeffs[:4]])
    print("  t(q) leading coefficients:", [str(c) for c in t.coeffs[:4]])
    print("  constant terms on the node locus:", node_residual(ChainParams(s[0], t[0])).is_zero())

    for check in (psi.collinearity_check, psi.closed_form_check, psi.cubic_vanishing_check):
        print(f"  {check.__name__}: {check(m).status}")

    c = cusp_config(n)
    print("  cusp point p_4 at q=0:", [str(x) for x in c[4]])

    sol = psi.prop_all_solve(n, 1, qprec, m=m)
    terms = {f"a_{k}": str(v) for k, v in sol.a_coeffs.items() if v}
    terms.update({f"b_{k}": str(v) for k, v in sol.b_coeffs.items() if v})
    print("  a_1 as a combination:", terms)


if __name__ == "__main__":
    main()
