"""
The limit variable Z and its second moment
==========================================

In the rough regime the normalised increments converge along each digit
path to a random series Z. Its moments are estimated by seeded Monte Carlo
with a certified bound on the neglected tail.
"""

from fracvar import WavePhi, WeightPsi, WtfSpec, nonzero_certificate, z_moment, z_samples

spec = WtfSpec(2, WeightPsi.power(0.5), WavePhi.triangular())

est = z_moment(spec, 2.0, samples=100_000, trunc_N=40, seed=0)
print(est.to_json())  # E Z^2 = 1 exactly for this spec

# Z is not degenerate: paths starting with N zeros keep it away from 0
cert = nonzero_certificate(spec)
print(cert)
z = z_samples(spec, 100_000, 40, seed=1)
print("P(|Z| > delta) ~", (abs(z) > cert.delta).mean(), ">=", cert.prob_lower)

# other exponents: E|Z|^p for a few p
for p in (1.0, 2.0, 3.0):
    e = z_moment(spec, p, samples=50_000, trunc_N=40, seed=2)
    print(p, round(e.mc_mean, 4), "+-", round(e.mc_stderr, 4))
