"""V[D_n f] <= V[f]: the Durrmeyer image never varies more than its input."""

from bernvar import corpus_default
from bernvar.analysis import verify_detracting

print(f"{'function':<10} {'V[f]':>8} " + " ".join(f"{'n=' + str(n):>10}" for n in (1, 4, 16, 64)))
for f in corpus_default():
    recs = [verify_detracting(f, n) for n in (1, 4, 16, 64)]
    assert all(r.passed for r in recs)
    print(f"{f.id:<10} {recs[0].v_input:8.4f} " + " ".join(f"{r.v_output:10.6f}" for r in recs))

# the sawtooth loses most of its variation at small n, and D_n f(0) moves away
# from f(0), yet the BV norm with anchor 0 still drops
saw = [f for f in corpus_default() if f.id == "sawtooth3"][0]
for n in (2, 8, 32, 128):
    r = verify_detracting(saw, n)
    print(f"sawtooth3 n={n:3d}  ||f||_BV={r.bv_input:.4f}  ||D_n f||_BV={r.bv_output:.6f}")
