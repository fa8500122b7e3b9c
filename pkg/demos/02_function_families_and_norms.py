"""Function families on the upper half-plane and their Bergman norms.

The modulus family g(z) = |z + i*delta|^-(2+lam)/p has a closed-form
sandwich for its norm; the extremal family f(z) = (z + i*eps)^-(2/p+eps)
shares its modulus with the g family at (lam, delta) = (p*eps, eps).
"""

from hausdorff_bergman import QuadratureConfig, bergman_norm_p_power, pairing, rational_power
from hausdorff_bergman.halfplane import ModulusFunction, TestFunction

cfg = QuadratureConfig(rel_tol=1e-8, abs_tol=1e-12)

print("modulus-family norms against the closed-form bounds (p = 2):")
for lam, delta in ((0.5, 1.0), (1.0, 1.0), (2.0, 0.5)):
    g = ModulusFunction(lam, delta, 2.0)
    lo, hi = g.norm_bounds()
    value = bergman_norm_p_power(g.as_function(), 2.0, cfg).value
    print(f"  lam={lam}, delta={delta}: {lo:.4f} < {value:.6f} < {hi:.4f}")

print("\nextremal family: ||f_eps||_p^p * (p*eps*eps^(p*eps)) stays bounded")
for p in (1.0, 2.0, 4.0):
    for eps in (0.2, 0.05):
        tf = TestFunction(p, eps)
        power = bergman_norm_p_power(tf.as_function(), p, cfg).value
        normalized = power * (p * eps * eps ** (p * eps))
        lo, hi = 0.5 ** (2 + p * eps), 2.0 ** ((2 + p * eps) / 2)
        print(f"  p={p}, eps={eps}: normalized {normalized:.4f} in "
              f"({lo:.4f}, {hi:.4f})")

# a closed-form cross-check: the 2-norm of (z+i)^-2 is exactly 1/2
f = rational_power(1.0, 2.0)
print("\n||(z+i)^-2||_2^2 =", bergman_norm_p_power(f, 2.0, cfg).value,
      "(exact: 0.25)")
print("<f, f> =", pairing(f, f, cfg).value)
