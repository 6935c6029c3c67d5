"""
Increments as a random walk over digits
=======================================

Pick a grid cell at random by drawing its base-b digits. The increment of f
across that cell is a weighted sum of wave slopes Y_m seen along the digits,
so the p-th variation is a moment of that sum. Enumerating all paths gives
an independent route to the same numbers.
"""

import numpy as np

from fracvar import (DigitPath, WavePhi, WeightPsi, WtfSpec, enumerate_variation, eval_f_grid,
                     exhaustive_bound_check, path_functionals, pth_variation)

spec = WtfSpec(2, WeightPsi.power(0.5), WavePhi.triangular())

# the all-zero path sees slope +1 at every level
pf = path_functionals(spec, DigitPath(2, (0, 0, 0, 0)))
print(pf.y, pf.z_n)

for n in (4, 8, 12):
    direct = pth_variation(eval_f_grid(spec, n), 2, 2.0)
    paths = enumerate_variation(spec, 2.0, n)
    print(n, direct, paths, 1 - 2.0**-n)

# for b = 2 the slopes are fair coin flips, which is why the closed forms hold
lam = spec.phi.slopes_at(np.arange(2**6), 2**6)
print(np.unique(lam, return_counts=True))

rep = exhaustive_bound_check(spec, 12)
print(rep.name, rep.passed, round(rep.max_value, 4))
