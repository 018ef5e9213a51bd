"""Print nu_0 for c = k*pi, k = 1..5, alpha in {-3/4, 1}, next to the reference values."""

import math
import time

from laplace_prolate.cli import TABLE1_REFERENCE, agrees_5_digits
from laplace_prolate.eigensystem import ProblemParams
from laplace_prolate.spectrum import compute_spectrum


def main():
    t0 = time.perf_counter()
    print(f"{'c':>5} {'alpha':>6} {'computed':>22} {'reference':>12}  5 digits")
    for (k, alpha), ref in sorted(TABLE1_REFERENCE.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        nu0 = compute_spectrum(ProblemParams(k * math.pi, alpha), 0).nu[0]
        print(f"{k}pi {alpha:>7.2f} {nu0:>22.15e} {ref:>12.5E}  {'ok' if agrees_5_digits(nu0, ref) else 'MISMATCH'}")
    print(f"elapsed {time.perf_counter() - t0:.2f} s")


if __name__ == "__main__":
    main()
