"""Best approximation, moduli of smoothness, and the two-sided bounds.

The distance from a trajectory to entire solutions of type at most r is
the spectral tail norm past r.  The direct (Jackson-style) bound controls
that distance by the modulus of smoothness at scale 1/r; the inverse-side
(Bernstein-style) bound goes the other way for finite-type vectors.
"""

import numpy as np

import expotype as et

rng = np.random.default_rng(2024)
lam = np.sort(rng.uniform(0.0, 40.0, 24))
f = et.SpectralVector(et.DiscreteSpectrum(lam), rng.uniform(-1.0, 1.0, 24))

print("decay of the best approximation:")
curve = et.decay_curve(f, np.geomspace(0.5, 50.0, 8))
for r, e in zip(curve.r, curve.values):
    print(f"  r = {r:7.3f}   E_r = {e:.6f}")
print()

print("direct bounds (every report must hold):")
for k in (1, 2, 3):
    rep = et.jackson_check(f, k, 5.0)
    print(f"  {rep.name}: lhs = {rep.lhs:.6f}  rhs = {rep.rhs:.6f}  holds = {rep.holds}")
rep = et.derivative_jackson_check(f, 2, 1, 5.0)
print(f"  {rep.name}: lhs = {rep.lhs:.6f}  rhs = {rep.rhs:.6f}  holds = {rep.holds}")
print()

print("the k = 1 bound tightens as a lone mode approaches the cutoff:")
for eps in (0.5, 1e-2, 1e-4, 1e-6):
    lone = et.SpectralVector(et.DiscreteSpectrum([1.0 + eps]), [1.0])
    rep = et.jackson_check(lone, 1, 1.0)
    print(f"  mode at 1 + {eps:<6g}: rhs / lhs = {rep.rhs / rep.lhs:.8f}")
print()

print("inverse-side bounds for the same vector (type sigma = %.3f):" % et.vector_type(f))
for h in (0.1, 1.0):
    for k, n in ((0, 1), (1, 0), (2, 3)):
        rep = et.bernstein_check(f, h, k, n)
        print(f"  {rep.name}: lhs = {rep.lhs:10.4g}  rhs = {rep.rhs:10.4g}  holds = {rep.holds}")
print()

print("modulus of smoothness: closed form equals a brute-force grid sup")
y = et.SolutionHandle(f)
t = 0.5
closed = et.modulus(f, 2, t)
gridded = max(
    et.norm(et.difference_power(y, float(h), 2).initial)
    for h in np.linspace(0.0, t, 1001)
)
print(f"  closed = {closed:.12f}")
print(f"  grid   = {gridded:.12f}")
