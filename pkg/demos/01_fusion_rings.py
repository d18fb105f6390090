"""
Fusion rings at a glance
========================

Builds a few rings, decomposes tensor products and checks the axioms.
"""

from fusionlab import (
    build_free_product,
    build_group_ring,
    build_sun,
    build_tlj_ainf,
    build_tlj_finite,
    check_invariants,
    psu_kernel,
)

# The A_infinity Temperley-Lieb-Jones ring at index 5.  Labels are the
# integers n >= 0 and H_m ⊗ H_n runs from |m - n| to m + n.
tlj = build_tlj_ainf(5)
print(tlj.name, "H_2 ⊗ H_3 =", dict(tlj.fuse(2, 3)))
print("dimensions:", [tlj.dim(n) for n in range(6)])

# Exact parameters stay exact: a decimal string becomes a fraction.
half = build_tlj_ainf("4.5")
print(half.name, "d(H_3) =", half.dim(3))

# At finite depth the rule is truncated.  m = 6 has index 3.
fin = build_tlj_finite(6)
print(fin.name, "labels", fin.all_labels(), "H_1 ⊗ H_1 =", dict(fin.fuse(1, 1)))

# SU(3): Young diagrams with at most two rows, Littlewood-Richardson fusion.
su3 = build_sun(3)
print("SU(3) [2,1] ⊗ [2,1] =", dict(su3.fuse((2, 1), (2, 1))))
print("dim [2,1] =", su3.dim((2, 1)), " conj [2] =", su3.conjugate((2,)))

# Deforming q changes dimensions but not fusion.
su3q = build_sun(3, 0.9)
print("SU_0.9(3) dim [1] = %.6f" % su3q.dim((1,)))

# PSU(3) is the kernel of the Z/3 grading.
psu = psu_kernel(su3)
print("PSU(3) labels up to 3 boxes:", psu.labels(3))

# Group rings: free group words accept letters, capitals are inverses.
F2 = build_group_ring("free", k=2)
print("F_2: ab ⊗ Ba =", dict(F2.fuse("ab", "Ba")))

# Free products alternate letters of the two factors.
fc = build_free_product(build_tlj_ainf(5), build_tlj_ainf(4))
word = ((0, 1), (1, 1))
print("Fuss-Catalan d(H_1 H_1') =", fc.dim(word))

# Every builder passes the axiom suite; here up to level 4.
for ring in (tlj, fin, su3, su3q, F2, fc):
    check_invariants(ring, 4)
    print("axioms ok:", ring.name)
