"""
Three regimes, three kinds of bound
===================================

Comparing psi(1/b) with b^-gamma splits Weierstrass-type functions into a
Lipschitz-like, a borderline and a genuinely rough family. Each comes with
explicit constants that we check against computed values.
"""

from fracvar import (SignRule, WavePhi, WeightPsi, WtfSpec, check_holder_bounds,
                     check_regime_bounds, holder_bound, riesz_normalized_curve)

tri = WavePhi.triangular()
specs = {
    "sub": WtfSpec(3, WeightPsi.power(2.0), tri),
    "critical": WtfSpec(2, WeightPsi.power(1.0), tri, SignRule.parse("alternating")),
    "super": WtfSpec(2, WeightPsi.power(0.5), tri),
}

for name, spec in specs.items():
    reg = spec.regime
    print(name, reg.to_dict())
    print("  modulus:", holder_bound(spec))
    rep = check_holder_bounds(spec, pair_count=2000, seed=0)
    print("  sampled pairs pass:", rep.passed, "worst ratio", round(rep.worst, 4))

# the variation at the critical exponent stays below the explicit constant
sub = check_regime_bounds(specs["sub"], 1.0, 9)
crit = check_regime_bounds(specs["critical"], 1.0, 12)
sup = check_regime_bounds(specs["super"], 2.0, 12)
for rep in (sub, crit, sup):
    print(rep.name, "min margin", round(rep.min_margin, 4))

# normalised Riesz variation
curve = riesz_normalized_curve(specs["super"], 2.0, 12)
print(curve.to_csv())
