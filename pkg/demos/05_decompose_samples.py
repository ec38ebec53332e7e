"""Reading a potential off raw samples.

Given only draws from an unknown equilibrium, estimate the density,
take minus the log to reveal the normalized potential, and differentiate
to reveal the stochastic intensity.  For normal samples the intensity is
the linear restoring force E_s(x) = (x - mu) / sigma^2.
"""

import numpy as np

from equilib import build_grid, decompose_samples, fit_linear_intensity

rng = np.random.default_rng(123)
mu, sigma = 1.0, 0.7
samples = mu + sigma * rng.standard_normal(100_000)

grid = build_grid("continuous", mu - 5 * sigma, mu + 5 * sigma, 501)
report = decompose_samples(samples, grid, estimator="kernel", bandwidth=0.15)

slope, intercept = fit_linear_intensity(report)
print(f"estimator: {report.estimator}")
print(f"samples outside the grid: {report.n_out_of_range}")
print(f"central-mass trim interval: "
      f"[{report.trim_interval[0]:.3f}, {report.trim_interval[1]:.3f}]")
print(f"fitted intensity slope     = {slope:.4f}   "
      f"(exact 1/sigma^2 = {1 / sigma ** 2:.4f})")
print(f"fitted intensity intercept = {intercept:.4f}   "
      f"(exact -mu/sigma^2 = {-mu / sigma ** 2:.4f})")

# the estimated potential is a parabola; compare curvature at the mode
u = report.normalized_potential
ok = ~u.mask
x = grid.points[ok]
coeffs = np.polyfit(x, u.values[ok], 2)
print(f"quadratic fit of U_tilde: curvature {2 * coeffs[0]:.4f}   "
      f"(exact {1 / sigma ** 2:.4f})")
