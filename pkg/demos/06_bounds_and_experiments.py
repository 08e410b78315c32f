"""
Bound calculators and a small baseline-vs-improved sweep
========================================================

The redundancy coefficient r(s, w, a, c) is the leading multiplier of
n*beta*log2(1/beta) in the cost bound.  Below: the coefficient table behind
the bound figure, then a live (reduced-size) comparison of the two protocol
variants sharing each channel realization.
"""

import statistics

from delsync import baseline_bound_coefficient, module_coefficients, redundancy_coefficient
from delsync.harness import BASELINE, IMPROVED, run_point

print("r(s, w, a=1, c=3):")
print("  s:      " + "  ".join(f"{s:6g}" for s in (1, 1.5, 2, 3, 5)))
for w in (1, 2, 3):
    row = [redundancy_coefficient(s, w, 1.0, 3.0) for s in (1, 1.5, 2, 3, 5)]
    print(f"  w={w}:   " + "  ".join(f"{r:6.2f}" for r in row))

print("\nreference points:")
print("  r(1,1,1,3)   =", redundancy_coefficient(1, 1, 1, 3), " (VT-only, refined bound)")
print("  r(2,2,3.5,3) =", redundancy_coefficient(2, 2, 3.5, 3), "(shipped two-deletion configuration)")
print("  baseline coefficient at c=3 =", baseline_bound_coefficient(3))
print("  per-module coefficients at (2,2,3.5,3):", module_coefficients(2, 2, 3.5, 3))

# Live comparison at a desk-friendly size; both variants see the same (X, Y).
n, beta, seeds = 20_000, 0.01, 8
base_tot, imp_tot = [], []
for seed in range(seeds):
    rows = run_point(n, beta, 2.0, [BASELINE, IMPROVED], seed, "theoretical")
    base_tot.append(next(r for r in rows if r["w"] == 1)["bits_total"])
    imp_tot.append(next(r for r in rows if r["w"] == 2)["bits_total"])

b, i = statistics.mean(base_tot), statistics.mean(imp_tot)
print(f"\nn={n}, beta={beta}, {seeds} paired seeds:")
print(f"  baseline (VT only)      mean bits: {b:8.0f}")
print(f"  improved (two-deletion) mean bits: {i:8.0f}")
print(f"  reduction: {100 * (b - i) / b:.1f}%")
