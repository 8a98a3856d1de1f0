"""Reading smoothness off a decay curve, and orders off Taylor norms.

Polynomial decay of the best approximation marks finite smoothness;
stretched-exponential decay marks a Gevrey-style class whose index links
to the growth order of the entire extension by rho = 1/(1 - beta).
"""

import math

import numpy as np

import expotype as et

print("synthetic curves with known answers:")
r = 2.0 ** np.arange(1, 13)
res = et.classify_decay(et.DecayCurve(r, r**-3.0))
print(f"  E_r = r^-3        -> {res.verdict}, degree {res.degree}, "
      f"slope {res.power_fit.slope:+.6f}")

grid = np.geomspace(1.5, 40.0, 20)
res = et.classify_decay(et.DecayCurve(grid, np.exp(-grid**2.0)))
print(f"  E_r = exp(-r^2)   -> {res.verdict}, beta = {res.beta:.4f}, "
      f"order = {et.order_from_beta(res.beta):.3f}")
print()

print("a vector whose coefficients are reciprocal tau values decays like")
print("a pure exponential; the stretched model wins by residual:")
m = et.GrowthSequence.factorial()
lam = np.arange(1.0, 61.0)
coeffs = np.array([math.exp(-et.log_tau(m, l)) for l in lam])
f = et.SpectralVector(et.DiscreteSpectrum(lam), coeffs)
res = et.classify_decay(et.decay_curve(f, lam))
print(f"  verdict = {res.verdict}, beta = {res.beta:.4f}")
print(f"  residuals: power {res.power_fit.residual:.4f} vs "
      f"stretch {res.stretch_fit.residual:.4f}")
print()

print("growth order from Taylor-coefficient norms ||A^n f|| / n!:")
single = et.SolutionHandle(et.SpectralVector(et.DiscreteSpectrum([3.0]), [1.0]))
print(f"  single mode (pure exponential): rho = {et.order_from_taylor(single, 200):.4f}")
ns = np.arange(201)
gevrey_norms = 0.5 * np.where(ns > 0, ns * np.log(np.maximum(ns, 1)), 0.0)
rho = et.order_from_log_derivative_norms(gevrey_norms)
print(f"  tabulated ||A^n f|| = n^(n/2):  rho = {rho:.4f}  (exact value 2)")
print()

print("growth-sequence diagnostics:")
print("  factorial dominates every geometric sequence:",
      et.dominates_geometric(m, [0.5, 2.0, 10.0], 200))
holds, c, h = et.ratio_growth_bound(m, 100)
print(f"  consecutive-ratio bound: holds = {holds} with c = {c:.3f}, h = {h:.3f}")
