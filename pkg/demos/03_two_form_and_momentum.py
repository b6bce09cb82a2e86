"""The parameterized closed two-form, its torus action, and the momentum map.

For every unitary parameter w1 the two-form built from the unitary Iwasawa
factor of w1 g0 is closed; for parameters whose Cartan image normalizes the
torus, a subtorus acts by translations preserving the form, with momentum
read off the abelian factor.
"""

import numpy as np

from liepoisson import SpaceInstance, d_omega_fd, kappa_field, make_leaf, momentum
from liepoisson.core import sample_matrix
from liepoisson.hamiltonian import (
    group_leaf,
    momentum_pairing,
    omega_xy,
    sample_torus,
    stabilizer_algebra,
    t_w_basis,
    torus_act,
)

inst = SpaceInstance.group(2)
e = np.eye(4, dtype=complex)

print("Closedness by finite differences (exterior derivative on action fields):")
for seed in range(3):
    g0 = sample_matrix(inst, "G0", 10 + seed)
    x, y, z = (sample_matrix(inst, "g0", 20 + seed + k) for k in range(3))
    w1 = sample_matrix(inst, "U", 30 + seed)
    v1 = d_omega_fd(inst, w1, g0, x, y, z, step=1e-4)
    v2 = d_omega_fd(inst, w1, g0, x, y, z, step=5e-5)
    print(f"  |d omega| = {abs(v1):.2e} -> {abs(v2):.2e} at half step "
          f"(ratio {abs(v1) / max(abs(v2), 1e-300):.1f}, expect ~4)")

print("\nThe dressing stabilizer spans the degeneracy of the form:")
for word in ([], [1]):
    leaf = group_leaf(inst, word)
    stab = stabilizer_algebra(inst, leaf.w1)
    print(f"  leaf {leaf.label}: stabilizer dimension {len(stab)} "
          f"(leaf dimension {inst.subspace('p').dim - len(stab)})")

print("\nTorus action and momentum on the identity leaf:")
leaf = make_leaf(inst, e)
g0 = sample_matrix(inst, "G0", 42)
t = sample_torus(inst, leaf, 43)
g1 = torus_act(inst, leaf, t, g0)
x = sample_matrix(inst, "p", 44)
y = sample_matrix(inst, "p", 45)
print("  form preserved:",
      abs(omega_xy(inst, leaf.w1, g1, x, y) - omega_xy(inst, leaf.w1, g0, x, y)))
print("  momentum coefficients:", momentum(inst, leaf, g0).coefficients.round(6))
print("  invariant under the action:",
      np.max(np.abs(momentum(inst, leaf, g1).coefficients
                    - momentum(inst, leaf, g0).coefficients)))

print("\nHamiltonian identity: contracting the form with the torus field")
print("matches the differential of the momentum function:")
import scipy.linalg as sla

xt = t_w_basis(inst, leaf)[0]
kx = kappa_field(inst, xt, g0)
lhs = omega_xy(inst, leaf.w1, g0, kx.vec, y)
h = 1e-4
rhs = (momentum_pairing(inst, leaf, g0 @ sla.expm(h * y), xt)
       - momentum_pairing(inst, leaf, g0 @ sla.expm(-h * y), xt)) / (2 * h)
print(f"  contraction {lhs:+.8f}  FD differential {rhs:+.8f}  diff {abs(lhs - rhs):.1e}")
