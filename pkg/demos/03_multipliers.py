"""
Multiplier calculus
===================

Convolution by elements, extension from subrings, free products and the
grading average.
"""

from fractions import Fraction

import numpy as np

from fusionlab import (
    build_free_product,
    build_group_ring,
    build_sun,
    build_tlj_ainf,
    convolve,
    extend_by_zero,
    free_product_multiplier,
    grade_average,
    grading_kernel,
    grading_of_sun,
    gram_matrix,
    mod_grading,
    omega,
    phi_point,
    psu_kernel,
    trivial_multiplier,
)

# omega_phi pairs a multiplier with an element of the fusion algebra.
tlj = build_tlj_ainf(5)
X = tlj.generator()
phi = phi_point(tlj, 2)
print("omega_phi2(X) =", omega(phi, X))

# Convolving phi_t by x rescales it by |eps_t(x)|^2 where eps_t(H_n) = V_n(t).
x = tlj.element({0: 1, 2: Fraction(1, 2)})
conv = convolve(phi, x)
print("phi_(x,x) / phi:", [str(conv(n) / phi(n)) for n in range(4)])

# The defining identity holds exactly with rational data.
a = tlj.element({1: 3, 3: -1})
print("pairing identity:", omega(conv, a) == omega(phi, x.star() * a * x))

# Extending the constant function from 2Z to Z by zero.
Z = build_group_ring("Z")
even = grading_kernel(Z, mod_grading(Z, 2))
psi = extend_by_zero(Z, even, trivial_multiplier(even))
T = gram_matrix(psi, range(6))
print("\nToeplitz matrix:\n", T.astype(int))
print("smallest eigenvalue:", np.linalg.eigvalsh(T).min())

# Free product of two multipliers with damping r.
r1, r2 = build_tlj_ainf(5), build_tlj_ainf(4)
fc = build_free_product(r1, r2)
mixed = free_product_multiplier(fc, phi_point(r1, 3), phi_point(r2, 2), Fraction(1, 2))
for word in [(), ((0, 1),), ((0, 1), (1, 1)), ((1, 2), (0, 1), (1, 1))]:
    print("psi", word, "=", mixed(word))

# Averaging the indicator of PSU(3) over grade representatives gives 1.
su3 = build_sun(3)
psu = psu_kernel(su3)  # multipliers are tied to this ring object
ind = extend_by_zero(su3, psu, trivial_multiplier(psu))
avg = grade_average(su3, grading_of_sun(su3), [(), (1,), (1, 1)], ind)
print("\ngrade average:", {lam: str(avg(lam)) for lam in su3.labels(3)})
