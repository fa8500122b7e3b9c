"""Measures on (0, inf): construction, moments, truncation, inversion.

A measure is a list of weighted atoms plus density segments.  Segments
that touch 0 or infinity carry endpoint exponents so that convergence of
improper moment integrals is decided symbolically, never by extrapolation.
"""

import math

from hausdorff_bergman import (
    Atom,
    DensitySegment,
    Measure,
    classify_boundedness,
    measure_to_json,
    moment,
    pushforward_inverse,
    theoretical_norm,
    truncate,
)

# two atoms plus an exponential density covering all of (0, inf)
mu = Measure(
    atoms=(Atom(0.5, 1.0), Atom(2.0, 0.25)),
    segments=(
        DensitySegment.from_spec(
            0.0, math.inf, ("exp", (1.0, 1.0)), exp_lo=0.0, exp_hi=-math.inf
        ),
    ),
)

print("total mass:", moment(mu, 0.0).value)
print("first moment (atoms + Gamma(2)):", moment(mu, 1.0).value)

# the operator norm on the p-Bergman space is the moment of t^(2/p - 1)
for p in (1.0, 2.0, 4.0):
    print(f"p = {p}: classification {classify_boundedness(mu, p).value}, "
          f"norm {theoretical_norm(mu, p).value:.6f}")

# a density like 1/t is unbounded on every space: truncated moments diverge
lebesgue = Measure(segments=(
    DensitySegment.from_spec(0.0, math.inf, ("const", (1.0,)),
                             exp_lo=0.0, exp_hi=0.0),
))
print("\nLebesgue density is", classify_boundedness(lebesgue, 2.0).value)
for delta in (0.1, 0.01, 0.001):
    clipped = truncate(lebesgue, delta)
    print(f"  truncated mass on [{delta}, {1/delta:g}]:",
          f"{moment(clipped, 0.0).value:.3f}")

# inversion push-forward: atom at s moves to 1/s, segment densities become
# u(1/t)/t^2, and moments reflect: moment(nu, a) = moment(mu, -a)
nu = pushforward_inverse(mu)
print("\npush-forward check:")
for alpha in (-1.0, 0.0, 1.0):
    print(f"  moment(nu, {alpha:+.0f}) = {moment(nu, alpha).value:.10f}   "
          f"moment(mu, {-alpha:+.0f}) = {moment(mu, -alpha).value:.10f}")

print("\nserialized form:")
print(measure_to_json(mu))
