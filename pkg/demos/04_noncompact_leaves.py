"""Leaf geometry of the Poisson tensor on the noncompact symmetric space.

The tensor is regular; its symplectic leaves are the level sets of the split
Iwasawa factor (a Casimir), with a horizontal section and an inverse leaf
form that matches the closed two-form at the trivial parameter.
"""

import numpy as np
import scipy.linalg as sla

from liepoisson import SpaceInstance
from liepoisson.core import sample_matrix, trace_form
from liepoisson.factorization import iwasawa
from liepoisson.hamiltonian import omega_xy
from liepoisson.noncompact import (
    casimir,
    cokernel_element,
    horizontal_section,
    inverse_form,
    leaf_tangent_test,
    project_leaf_tangent,
    t_adjoint,
    t_apply,
    t_solve_staged,
)

inst = SpaceInstance.group(2)
g0 = sample_matrix(inst, "G0", 1)

print("Transfer operator: two evaluation paths, adjoint, and staged inverse")
x = sample_matrix(inst, "u", 2)
y = sample_matrix(inst, "g0", 3)
print("  formula vs projection path:",
      np.linalg.norm(t_apply(inst, g0, x) - t_apply(inst, g0, x, path="projection")))
print("  adjoint pairing defect:",
      abs(trace_form(t_apply(inst, g0, x), y).real
          - trace_form(x, t_adjoint(inst, g0, y)).real))
y0 = inst.subspace("a0").matrices()[0]
print("  adjoint kills the cokernel element:",
      np.linalg.norm(t_adjoint(inst, g0, cokernel_element(inst, g0, y0))))
xs = t_solve_staged(inst, g0, t_apply(inst, g0, 1j * sample_matrix(inst, "k", 4)))
print("  staged inverse residual:",
      np.linalg.norm(t_apply(inst, g0, xs) - t_apply(inst, g0, 1j * sample_matrix(inst, "k", 4))))

print("\nThe split factor is a Casimir:")
xt = project_leaf_tangent(inst, g0, sample_matrix(inst, "p", 5))
h = 1e-4
cp = np.log(np.diag(casimir(inst, g0 @ sla.expm(h * xt))).real)
cm = np.log(np.diag(casimir(inst, g0 @ sla.expm(-h * xt))).real)
print("  directional derivative along a leaf direction:", np.max(np.abs(cp - cm)) / (2 * h))
a0 = sample_matrix(inst, "A0", 6)
print("  equivariance under split translations:",
      np.linalg.norm(casimir(inst, a0 @ g0) - a0 @ casimir(inst, g0)))
print("  horizontal section is constant on split orbits:",
      np.linalg.norm(horizontal_section(inst, a0 @ g0) - horizontal_section(inst, g0)))

print("\nTangency: split-orbit directions leave the leaf, anchor images stay on it:")
v_orbit = inst.project("p", np.linalg.inv(g0) @ y0 @ g0)
print("  orbit direction tangent?", leaf_tangent_test(inst, g0, v_orbit)[0])
print("  projected direction tangent?", leaf_tangent_test(inst, g0, xt)[0])

print("\nOn leaf directions the inverse form equals the closed two-form:")
yt = project_leaf_tangent(inst, g0, sample_matrix(inst, "p", 7))
a = inverse_form(inst, g0, xt, yt)
b = omega_xy(inst, np.eye(4, dtype=complex), g0, xt, yt)
print(f"  inverse form {a:+.8f}  two-form {b:+.8f}  diff {abs(a - b):.1e}")
