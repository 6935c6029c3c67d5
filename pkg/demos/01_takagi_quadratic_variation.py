"""
Quadratic variation of the Takagi function
==========================================

The Takagi function sits exactly at the critical exponent: its squared
increments on the dyadic grid sum to n 2^-n, so the Riesz normalisation
b^{n(p-1)} turns them into the integers 1, 2, 3, ...
"""

import numpy as np

from fracvar import WtfSpec, eval_f_grid, pth_variation, riesz_variation, variation_curve

spec = WtfSpec.takagi()
print(spec.regime.regime)  # Critical: psi(1/2) = 2^-1

# grid values are exact finite sums at dyadic points
g = eval_f_grid(spec, 3)
print(g)

for n in range(1, 11):
    g = eval_f_grid(spec, n)
    print(n, pth_variation(g, 2, 2.0), n * 2.0**-n, riesz_variation(g, 2, 2.0))

# at p = 1 the sums keep growing, slowly
curve = variation_curve(spec, 1.0, n_max=12)
print(curve.trend, np.round(curve.values, 4))
