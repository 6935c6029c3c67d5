"""
Estimating the variation index from a sampled path
==================================================

Given values of some path on a fine b-adic grid, the variation index q is
where the slope of log_b V^{p}_n against n changes sign. Here the "data"
is a grid of a rough Weierstrass-type function written to CSV and read
back, as one would with an external series.
"""

import tempfile
from pathlib import Path

import numpy as np

from fracvar import (SampledPath, WavePhi, WeightPsi, WtfSpec, estimate_variation_index,
                     eval_f_grid, load_csv, multiscale_variation, save_csv)

spec = WtfSpec(2, WeightPsi.power(0.4), WavePhi.triangular())
path = SampledPath.from_values(eval_f_grid(spec, 16), 2, "power 0.4")

with tempfile.TemporaryDirectory() as tmp:
    target = Path(tmp) / "series.csv"
    save_csv(target, path)
    loaded = load_csv(target, 2)

print(loaded.n, np.array_equal(loaded.values, path.values))

curve = multiscale_variation(loaded, 2.5, 8)
print(curve.trend, np.round(curve.values, 4))

est = estimate_variation_index(loaded, np.arange(1.0, 4.01, 0.25), (8, 16), b=2)
print("q_hat", round(est.q_hat, 4), "expected", 1 / 0.4)
for p, s in est.table:
    print(f"  p={p:4.2f} slope={s:+.4f}")
