"""Run the numerical inequality audits and summarize the worst ratios."""

from paraflux import build_dyadic_system, build_grid, lemma_suite
from paraflux.audit import (LEMMA_SECTIONS, hardy_exhaustive_search,
                            hardy_random_sweep)

g = build_grid(1, 128)
sys = build_dyadic_system(g)

sweep = lemma_suite(g, sys)
print("lemma suite: %d records, %d failures"
      % (len(sweep.records), len(sweep.failures())))

for prefix in LEMMA_SECTIONS:
    print("  %-10s worst ratio %.4f" % (prefix, sweep.max_ratio(prefix)))

# the discrete Hardy bound gets a brute-force pass of its own: every
# sequence over a small lattice, then a large random sample
margin, lattice = hardy_exhaustive_search()
print("\nhardy lattice search: %d sequences, worst margin %.3g"
      % (len(lattice.records), margin))

rand = hardy_random_sweep(count=5000)
print("hardy random sweep:   %d records, %d failures"
      % (len(rand.records), len(rand.failures())))
