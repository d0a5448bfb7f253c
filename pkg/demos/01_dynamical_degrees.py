"""First dynamical degrees as exact algebraic numbers.

For a morphism the first dynamical degree is the spectral radius of the
pullback action on the Neron-Severi lattice.  This walkthrough computes a
few of them exactly -- as roots of integer polynomials with shrinking
rational isolating intervals -- and checks the structural identities they
satisfy: the product formula for block systems, invariance under the
Hilbert-scheme extension, and invariance under unimodular basis changes.
"""

from fractions import Fraction

from dynheights import (
    PullbackMap,
    basis_change_invariance,
    block_product,
    compare,
    compare_with_rational,
    hilbert_extension,
    spectral_radius,
)

# The composite of the three Vieta involutions of a (2,2,2) surface in
# (P^1)^3, written on the basis of the three fiber classes.
wehler = PullbackMap.of([[-1, -2, -6], [2, 3, 10], [2, 6, 15]],
                        mapping_degree=1, is_automorphism=True)
rho = spectral_radius(wehler)
print("Wehler composite sigma1 sigma2 sigma3")
print("  characteristic polynomial of the defining factor:",
      list(rho.poly.coeffs))
tight = rho.refined(Fraction(1, 10**15))
print(f"  lambda_1 = {rho.to_float():.12f}  (9 + 4 sqrt 5)")
print(f"  enclosure width after refinement: {float(tight.hi - tight.lo):.2e}")

# A rank-2 example: a Salem-type unit 3 + 2 sqrt 2.
salem = PullbackMap.of([[3, 4], [2, 3]], 1, True)
print("\nrank-2 automorphism [[3,4],[2,3]]")
print(f"  lambda_1 = {spectral_radius(salem).to_float():.12f}  (3 + 2 sqrt 2)")

# Product systems: the dynamical degree of a block product is the maximum
# of the factor degrees, decided by exact comparison rather than floats.
fib = PullbackMap.of([[2, 1], [1, 1]])          # (3 + sqrt 5)/2 = 2.618...
two = PullbackMap.of([[2]], mapping_degree=2)
three = PullbackMap.of([[3]], mapping_degree=3)
for factor, name in ((two, "2"), (three, "3")):
    block = block_product(factor, fib)
    winner = spectral_radius(block)
    print(f"\nblock([[{name}]], fibonacci): lambda_1 = {winner.to_float():.6f}")
    print("   equals max of factors:",
          compare(winner, spectral_radius(factor)) == "Equal"
          or compare(winner, spectral_radius(fib)) == "Equal")

# Passing from a surface automorphism to the induced map on its Hilbert
# scheme adds a fixed class and leaves lambda_1 unchanged.
ext = hilbert_extension(wehler)
print("\nHilbert-scheme extension of the Wehler composite")
print("  rank:", ext.rank, " lambda_1 unchanged:",
      compare(spectral_radius(ext), rho) == "Equal")

# lambda_1 only sees the lattice up to basis change.
shear = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
print("  invariant under a unimodular shear:",
      basis_change_invariance(wehler, shear))

# Radius 1 is not special-cased away: the parabolic two-involution word.
parabolic = PullbackMap.of([[-1, -2, 0], [2, 3, 0], [2, 6, 1]], 1, True)
print("\nparabolic word sigma1 sigma2: lambda_1 = 1 exactly:",
      compare_with_rational(spectral_radius(parabolic), 1) == "Equal")
