"""Sup and L2 errors of S_n(g), the Legendre projection and the truncated inverse, as n grows.

Setup: c = a = 5 pi, beta = 3, alpha = 0. Writes CSV to stdout.
"""

import argparse
import csv
import math
import sys

from laplace_prolate import approx
from laplace_prolate.eigensystem import ProblemParams
from laplace_prolate.quadrature import gauss_jacobi_rule
from laplace_prolate.spectrum import compute_spectrum


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=40)
    ap.add_argument("--beta", type=float, default=3.0)
    args = ap.parse_args()

    c = 5 * math.pi
    sp = compute_spectrum(ProblemParams(c, 0.0), max(args.nmax, 60))
    rule = gauss_jacobi_rule(0.0, 400)
    tp = approx.test_pair(c, args.beta, c)
    grid = approx.sup_grid()
    g_grid, g_nodes = tp.g(grid), tp.g(rule.nodes)
    f_grid, f_nodes = tp.f(grid), tp.f(rule.nodes)
    bg = approx.expand(tp.g, sp, rule, args.nmax + 1)
    fwd = approx.forward_coeffs(approx.expand(tp.f, sp, rule, args.nmax + 1), sp)

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "S_sup", "S_L2", "Pi_sup", "Pi_L2", "inv_sup", "inv_L2"])
    for n in range(2, args.nmax + 1, 2):
        row = [
            approx.sup_error(approx.project(bg, sp, n, grid), g_grid),
            approx.l2_error(approx.project(bg, sp, n, rule.nodes), g_nodes, rule),
            approx.sup_error(approx.legendre_project(tp.g, 0.0, n, rule, grid), g_grid),
            approx.l2_error(approx.legendre_project(tp.g, 0.0, n, rule, rule.nodes), g_nodes, rule),
            approx.sup_error(approx.invert(fwd, sp, n, grid), f_grid),
            approx.l2_error(approx.invert(fwd, sp, n, rule.nodes), f_nodes, rule),
        ]
        w.writerow([n] + [f"{v:.6e}" for v in row])


if __name__ == "__main__":
    main()
