"""Geometric Riemann-Roch on a hyperelliptic curve, step by step.

ell(D) = deg(D) - dim(span of phi(D)): conjugate pairs collapse to single
canonical points, which is what makes every pair move in a pencil, and the
canonical decomposition into k pairs plus a conjugate-free part B computes
ell(D) = k + 1 for special divisors.
"""

import random

from wgauss.algebra import PrimeField
from wgauss.curves import HyperellipticCurve
from wgauss.divisors import Divisor, hyperelliptic_reduce
from wgauss.gauss import gauss_eval
from wgauss.linsys import beta, complete_system, hyperelliptic_image_witness
from wgauss.spans import dim_complete, ell, span

F = PrimeField(10007)
curve = HyperellipticCurve(F, [0, -1, 0, 0, 0, 0, 0, 1])   # genus 3
rng = random.Random(2)

P = curve.sample_point(rng)
Q = curve.sample_point(rng)
iP = curve.involution(P)

for D in (Divisor(curve, [(P, 1)]),
          Divisor(curve, [(P, 1), (Q, 1)]),
          Divisor(curve, [(P, 1), (iP, 1)]),
          Divisor(curve, [(P, 1), (iP, 1), (Q, 1)])):
    sp = span(D)
    form = hyperelliptic_reduce(D)
    print(f"deg {D.degree}: dim span = {sp.dim}, ell = {ell(D)}, "
          f"canonical form k = {form.k}, |B| = {form.B.degree}")

# the pair moves in a pencil: its complete system sweeps all pairs
pair = Divisor(curve, [(P, 1), (iP, 1)])
L = complete_system(pair)
print(f"\n|P + iota(P)|: dimension {dim_complete(pair)}, members e.g.")
for j in (0, 1, 5):
    print("  ", L.member((1, j)))

# the Gauss image point of any smooth-locus divisor is hit by a system
# member built by conjugate-doubling
D = Divisor(curve, [(P, 1), (Q, 1)])
L, witness = hyperelliptic_image_witness(D, k=1)
print(f"\nimage witness for {D}:")
print(f"  F = {witness}")
print("  beta(F) == gauss(D):", beta(witness) == gauss_eval(D))
