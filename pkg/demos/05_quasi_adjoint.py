"""The adjoint (quasi) operator and the inversion push-forward.

The adjoint sends f to the integral of t*f(tz).  Rewriting it as the
dilation average against the push-forward of the measure under t -> 1/t
gives a second, independent evaluation route; the two agree to rounding.
At p = 2 the pairing identity <Hf, g> = <f, H*g> holds by duality.
"""

import numpy as np

from hausdorff_bergman import (
    DensitySegment,
    Measure,
    QuadratureConfig,
    adjoint_pairing_check,
    apply_quasi,
    bergman_norm_p,
    pushforward_inverse,
    quasi_as_function,
    rational_power,
    theoretical_norm,
)

mu = Measure(segments=(DensitySegment.from_spec(0.5, 3.0, ("power", (0.7, 1.3))),))
f = rational_power(1.0, 2.0)
tight = QuadratureConfig(rel_tol=1e-12, abs_tol=1e-13)

print("two routes to the adjoint value at random points:")
rng = np.random.default_rng(1)
for _ in range(4):
    z = complex(rng.uniform(-2, 2), rng.uniform(0.3, 2.0))
    direct = apply_quasi(mu, f, z, tight, route="direct")
    pushed = apply_quasi(mu, f, z, tight, route="pushforward")
    print(f"  z = {z:.3f}: direct {direct:.12f}, push-forward {pushed:.12f}, "
          f"gap {abs(direct - pushed):.1e}")

# the adjoint norm formula: moment of t^(1 - 2/p)
cfg = QuadratureConfig(rel_tol=1e-6, abs_tol=1e-10)
for s, w, p in ((2.0, 1.0, 2.0), (0.5, 1.5, 4.0)):
    atom = Measure.from_atoms((s, w))
    hf = quasi_as_function(atom, f, p=p, cfg=cfg)
    ratio = bergman_norm_p(hf, p, cfg).value / bergman_norm_p(f, p, cfg).value
    target = theoretical_norm(pushforward_inverse(atom), p).value
    print(f"\nadjoint on atom ({s}, {w}), p = {p}: measured ratio {ratio:.8f}, "
          f"moment of t^(1-2/p) = {target:.8f}")

g = rational_power(2.0, 2.0)
lhs, rhs = adjoint_pairing_check(mu, f, g, cfg)
print(f"\npairing identity at p = 2: <Hf, g> = {lhs:.10f}, "
      f"<f, H*g> = {rhs:.10f}")
