"""How fast (D_n g)' approaches g' in L1, and where the remainder lives."""

import numpy as np

from bernvar import lookup
from bernvar.analysis import b_component_norms, decay_slope, stein_ratio, verify_rate, verify_remainder

ns = [4, 8, 16, 32, 64, 128, 256]
for name in ("sin2pi", "exp"):
    g = lookup([name])[0]
    recs = [verify_rate(g, n) for n in ns]
    print(f"\n{name}: stein ratio {stein_ratio(g):.6f}")
    print(f"{'n':>5} {'lhs':>12} {'rhs':>12} {'ratio':>8}")
    for r in recs:
        print(f"{r.n:5d} {r.lhs:12.4e} {r.rhs:12.4e} {r.ratio:8.4f}")
    tail = [r for r in recs if r.n >= 16]
    # the bound decays like n^(-1/2); the measured error decays close to n^(-1)
    print("log-log slope:", round(decay_slope([r.n for r in tail], [r.lhs for r in tail]), 3))

# the four partial sums of the remainder add back up; B1 and B4 are not zero
g = lookup(["exp"])[0]
rec = verify_remainder(g, 16, np.arange(1, 20) / 20, with_literal=True)
print("\nexp n=16  split gap:", rec.decomposition_gap, " literal-range gap:", rec.literal_gap)
norms, gap = b_component_norms(g, 16)
print({k: round(v, 6) for k, v in norms.items()}, "quadrature gap", gap)
