"""
Representations of the TLJ ring
===============================

Point multipliers phi_t, their moment sequences and the Hankel test that
decides which of them are completely positive.
"""

from fractions import Fraction

import numpy as np

from fusionlab import (
    admissibility,
    build_tlj_ainf,
    chebyshev_V,
    l1_range_check,
    moments,
    phi_point,
    plancherel_pair,
    regular_multiplier,
)

L = 5
ring = build_tlj_ainf(L)

# phi_t(H_n) = V_n(t) / V_n(lambda^-1).  Rational t gives exact values.
phi = phi_point(ring, 3)
print("phi_3:", [str(phi(n)) for n in range(5)])

# The moments of phi_t are t^k, those of the regular multiplier are Catalan numbers.
print("moments of phi_3:", moments(ring, phi, 6).values)
print("moments of phi_0:", moments(ring, regular_multiplier(ring), 8).values)

# Scan t across and beyond [0, lambda^-1].
print("\n   t   verdict        level")
for t in [Fraction(-1), Fraction(-1, 5), Fraction(0), Fraction(5, 2), Fraction(5), Fraction(26, 5), Fraction(6)]:
    v = admissibility(ring, phi_point(ring, t), 12)
    print(f"{str(t):>5}  {v.status:<13} {v.level}")

# Floating-point moments carry an error bound; near the edges the verdict may
# be Inconclusive rather than a guess.
for t in (0.3, 4.7):
    print("float t =", t, "->", admissibility(ring, phi_point(ring, t), 12).status)

# A witness explains a rejection.
v = admissibility(ring, phi_point(ring, Fraction(11, 2)), 8)
print("\nwitness for t = 5.5:", v.witness)

# Boundedness |phi_t(H_n)| <= 1 fails eventually outside [0, lambda^-1].
for t in (Fraction(-6, 5), Fraction(51, 10), Fraction(-1), Fraction(3)):
    print("first n with |phi_t(H_n)| > 1 for t =", t, ":", l1_range_check(ring, t, 200))

# The V_n are orthonormal for the Plancherel measure on [0, 4].
G = np.array([[plancherel_pair(n, m) for m in range(5)] for n in range(5)])
print("\nPlancherel Gram matrix:\n", np.round(G, 12) + 0.0)
print("V_4 at t = 4 is", chebyshev_V(4, 4))
