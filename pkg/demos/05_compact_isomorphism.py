"""Leaves of the compact-side tensor and the Hamiltonian-space isomorphism.

The chart g0 -> u(w1 g0) maps the double-coset space onto the symplectic
leaf labeled by the Cartan image of w1; its pushforward carries the closed
two-form exactly onto the leaf symplectic form, for every tested leaf of
every realization.
"""

import numpy as np

from liepoisson import SpaceInstance
from liepoisson.compact import leaf_form, leaf_form_pinv, u_tilde, u_tilde_pushforward
from liepoisson.core import sample_matrix
from liepoisson.factorization import cell_length, layer_of
from liepoisson.hamiltonian import grass_leaf_candidates, group_leaf, omega_xy

print("leaf label | chart lands on it | form matches two-form | cross-path")
for inst in (SpaceInstance.grass(1, 1), SpaceInstance.grass(2, 1),
             SpaceInstance.group(2), SpaceInstance.group(3)):
    if inst.kind == "group":
        leaves = [group_leaf(inst, w) for w in ([], [1]) + (((1, 2),) if inst.n >= 3 else ())]
    else:
        leaves = grass_leaf_candidates(inst)
    for leaf in leaves:
        g0 = sample_matrix(inst, "G0", 11)
        x = sample_matrix(inst, "p", 12)
        y = sample_matrix(inst, "p", 13)
        u, px = u_tilde_pushforward(inst, leaf.w1, g0, x)
        _, py = u_tilde_pushforward(inst, leaf.w1, g0, y)
        label_ok = layer_of(inst, u_tilde(inst, leaf.w1, g0)) == leaf.label
        lhs = leaf_form(inst, leaf, g0, px, py)
        rhs = omega_xy(inst, leaf.w1, g0, x, y)
        cross = abs(lhs - leaf_form_pinv(inst, u, px, py))
        print(f"{str(inst):10s} len {cell_length(leaf.label)}  {str(label_ok):5s}  "
          f"|form - omega| = {abs(lhs - rhs):.2e}   |paths| = {cross:.2e}")
