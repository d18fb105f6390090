"""
Regular representation and amenability
======================================

Truncations of the regular representation give lower bounds on the norm of
the generator; comparing with its dimension separates index 4 from index 5.
"""

from fusionlab import (
    amenability_report,
    build_group_ring,
    build_tlj_ainf,
    build_tlj_finite,
    norm_estimate,
    reduced_norm,
    truncated_matrix,
    universal_norm,
)

ring = build_tlj_ainf(5)
X = ring.generator()

# X acts on the first few labels as a tridiagonal matrix.
print(truncated_matrix(ring, X, 5).dense())

# Lower bounds at N/4, N/2 and N creep toward 4.
for N in (50, 200, 800):
    est = norm_estimate(ring, X, N)
    print(f"N = {N:4d}  bounds {['%.6f' % b for b in est.bounds]}")

# The polynomial picture gives the exact values: sup of |t| on [0, 4] and on [0, 5].
print("reduced norm", reduced_norm(X), " universal norm", universal_norm(X))

for L in (5, 4):
    r = build_tlj_ainf(L)
    rep = amenability_report(r, r.generator())
    print(f"lambda^-1 = {L}: {rep['verdict']}, relative gap {rep['relative_gap']:.3f}")

# Finite depth is always amenable: the norm of H_1 equals its dimension.
for m in (5, 8, 12):
    r = build_tlj_finite(m)
    rep = amenability_report(r, r.delta(1))
    print(f"m = {m:2d}: norm {rep['exact_norm']:.12f}  d(H_1) {rep['dimension']:.12f}  {rep['verdict']}")

# Groups: Z is amenable, the free group is not, but without an exact norm the
# report stays Undetermined.
Z = build_group_ring("Z")
F2 = build_group_ring("free", k=2)
print("Z:", amenability_report(Z, Z.element({1: 1, -1: 1}), N=400)["verdict"])
rep = amenability_report(F2, F2.element({"a": 1, "A": 1, "b": 1, "B": 1}), N=400)
print("F_2:", rep["verdict"], "estimate %.4f (Kesten bound 3.4641)" % rep["estimate"])
