#!/usr/bin/env python3
"""The k-separability threshold ladder and the antidiagonal bounds behind it.

A state factoring into k blocks has every antidiagonal modulus below (1/2)^k,
which caps its violation factor at 2^-k (pi/2)^N.  Each rung sits exactly a
factor 2 below the previous one.  Sampled k-separable states must stay below
their rung; the boundary state |+x> (x) Bell sits exactly on the k = 2 rung
and is deliberately NOT excluded (comparisons are strict).
"""

import numpy as np

from rotbell import (
    antidiagonal_profile,
    classify,
    enumerate_partitions,
    k_sep_threshold,
    make_ghz,
    max_antidiagonal_bound,
    parse_ket,
    sample_k_separable,
    verify_antidiagonal_bound,
)

print("thresholds 2^-k (pi/2)^N:")
for n in (2, 3, 4, 5):
    rungs = "  ".join(f"k={k}: {k_sep_threshold(n, k):.4f}" for k in range(1, n + 1))
    print(f"  N={n}: {rungs}")
print("ratios between adjacent rungs are exactly 2; the fully separable rung")
print("(pi/4)^N stays below 1 for every N.\n")

print("partitions of {1..4} with at least 2 blocks (restricted-growth order):")
for part in enumerate_partitions(4, 2):
    print(f"  {part.to_lists()}")
print()

print("sampled k-separable states stay below their rung (N = 4, 200 samples each):")
for k in range(1, 5):
    thr = k_sep_threshold(4, k)
    best_r = 0.0
    best_mod = 0.0
    for i in range(200):
        rho = sample_k_separable(4, k, n_terms=2, rng_seed=(2024, k, i))
        best_r = max(best_r, classify(rho).r)
        best_mod = max(best_mod, float(np.max(np.abs(antidiagonal_profile(rho).values))))
    print(
        f"  k={k}: max sampled r = {best_r:.4f} < threshold {thr:.4f};  "
        f"max |antidiagonal| = {best_mod:.4f} <= (1/2)^{k} = {max_antidiagonal_bound(k):.4f}"
    )

print()
boundary = parse_ket("|000>+|011>+|100>+|111>")
rep = classify(boundary)
print("boundary state |+x> (x) Bell:")
print(f"  r = {rep.r:.12f} = pi^3/32 = {np.pi ** 3 / 32:.12f}")
k2 = rep.thresholds[0]
print(f"  k=2 threshold {k2.r_k_max:.12f}, margin {k2.margin:+.2e} -> excluded = {k2.excluded}")
print(f"  genuine 3-partite certified: {rep.genuine_multipartite} (strict inequality held)")
print(f"  but k=3 (full separability) IS excluded: {rep.thresholds[1].excluded}")

print()
print("a false product claim is caught by the antidiagonal bound:")
mod, ok = verify_antidiagonal_bound(make_ghz(3), [[1], [2], [3]])
print(f"  GHZ_3 claimed fully product: max modulus {mod:.3f} vs bound "
      f"{max_antidiagonal_bound(3):.3f} -> satisfied = {ok}")
