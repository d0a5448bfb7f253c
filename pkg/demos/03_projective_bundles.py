"""Endomorphisms of projectivized bundles over a curve, symbolically.

A*(P_C(E)) = A*(C)[D]/(D^n + c1 D^(n-1) F) with F^2 = 0 and F D^(n-1) = 1.
An endomorphism covering a degree-deg(g) base map acts by F -> deg(g) F and
D -> (deg(g) - d) mu_min F + d D where d = (deg f / deg g)^(1/(n-1)); the
walkthrough recomputes deg(f) through the Chow ring, classifies the slope
dichotomy, and exercises an irrational fiber root exactly.
"""

from fractions import Fraction

from dynheights.bundles import (
    BundleEndoData,
    ChowRing,
    HNType,
    chow_mul,
    degree_identity_check,
    dichotomy_classify,
    intersection_number,
    nef_generators,
    pullback_action,
    slope_stats,
)

# Ring relations at a glance.
ring = ChowRing(3, 2)         # rank 3, c1(E) = 2
d, f = ring.D(), ring.F()
print("D^3 in rank 3 with c1 = 2:",
      intersection_number(ring.pow(d, 3)), " (equals -c1)")
print("D^2 F:", intersection_number(chow_mul(ring.pow(d, 2), f)))
print("F^2 = 0:", ring.is_zero(chow_mul(f, f)))

# Harder-Narasimhan data drives everything else.
hn = HNType.of([(1, 2), (1, 0)])      # O(2) + O on P^1, say
stats = slope_stats(hn)
print("\nHN type (1,2),(1,0): mu_max, mu, mu_min =",
      stats.mu_max, stats.mu, stats.mu_min)
f_gen, d_gen = nef_generators(hn)
print("nef cone generated by F and", d_gen)

# The worked eigenvalue example: n = 3, deg g = 4, delta = 4, mu_min = -1.
data = BundleEndoData.of(3, 4, 4, -1)
action = pullback_action(data)
print("\nendomorphism with n=3, deg g=4, delta=4, mu_min=-1:")
print("  d = delta^(1/2) =", action.eigenvalue_fiber.to_float())
print("  f*D = -2 F + 2 D; eigenvalues {4, 2}; lambda_1 =",
      action.lambda1.to_float())
print("  degree identity deg f = d^(n-1) deg g:",
      degree_identity_check(data), f" (deg f = {data.deg_f})")

# The slope dichotomy: lambda_1(f) = lambda_1(g) or mu_min = -mu.
cases = [
    ("O(2)+O on P^1", HNType.of([(1, 2), (1, 0)]), 3, 9),
    ("trivial rank 2", HNType.of([(2, 0)]), 2, 8),
    ("O(1)+O(-1)", HNType.of([(1, 1), (1, -1)]), 2, 4),
]
print("\ndichotomy classification:")
for label, hn, deg_g, delta in cases:
    stats = slope_stats(hn)
    data = BundleEndoData.of(hn.total_rank, deg_g, delta, stats.mu_min)
    verdict = dichotomy_classify(data, hn.total_degree)
    print(f"  {label:16s} c1 + n mu_min ="
          f" {Fraction(hn.total_degree) + hn.total_rank * stats.mu_min}"
          f" -> {verdict}")

# Irrational fiber root: delta = 8 with n = 3 gives d = 2 sqrt 2, carried as
# an exact algebraic number; the degree identity is still checked exactly.
data = BundleEndoData.of(3, 2, 8, -2)
print("\nirrational d = 8^(1/2) =", data.d.to_float())
print("degree identity still exact:",
      degree_identity_check(data), "and with c1 = 3:",
      degree_identity_check(data, c1=3))
