"""Compare log nu_n with the super-exponential upper bound and print the smallest margin per (c, alpha)."""

import math

from laplace_prolate.bounds import log_nu_upper_bound
from laplace_prolate.eigensystem import ProblemParams
from laplace_prolate.spectrum import compute_spectrum

N_MAX = 60

for alpha in (-0.75, 0.0, 1.0):
    for k in range(1, 6):
        params = ProblemParams(k * math.pi, alpha)
        sp = compute_spectrum(params, N_MAX)
        margins = []
        for n in range(N_MAX + 1):
            lb = log_nu_upper_bound(params, n)
            if lb is not None:
                margins.append((lb - sp.log_nu[n], n))
        m, n = min(margins)
        print(f"alpha={alpha:+.2f} c={k}pi: {len(margins)} indices gated in, "
              f"min log margin {m:.2f} at n={n}, log nu_60 = {sp.log_nu[N_MAX]:.1f}")
