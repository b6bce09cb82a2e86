"""Iwasawa and Birkhoff factorizations, Bruhat cells, and the Cartan embedding.

Every invertible g factors as g = l a u (unit lower triangular, positive
diagonal, unitary); top-stratum unitaries factor as k = l m a u_+.  Strata
are labeled by permutations read off rank conditions, and the Cartan
embedding u -> u Theta(u)^-1 transfers the stratification to the symmetric
space.
"""

import numpy as np

from liepoisson import SpaceInstance, birkhoff, bruhat_cell, cartan_embed, iwasawa, layer_of
from liepoisson.core import sample_matrix
from liepoisson.factorization import OffTopStratumError, cell_length

np.set_printoptions(precision=4, suppress=True)

inst = SpaceInstance.grass(1, 1)
g = np.array([[1, 1], [0, 1]], dtype=complex)
f = iwasawa(inst, g)
print("g =\n", g)
print("l =\n", f.l)
print("a =", np.diag(f.a).real, " u =\n", f.u)
print("reconstruction residual:", f.residual(g))

print("\nThe group realization refines a = a0 a1 (split and compact parts):")
inst2 = SpaceInstance.group(2)
d = np.diag([2.0, 0.5]).astype(complex)
g0 = inst2.embed_pair(d, np.linalg.inv(d).conj().T)
f2 = iwasawa(inst2, g0)
print("a0 blocks:", np.diag(f2.a0).real, " a1 blocks:", np.diag(f2.a1).real)

print("\nBirkhoff factorization of the quarter-turn unitary:")
k = np.array([[1, -1], [1, 1]], dtype=complex) / np.sqrt(2)
fb = birkhoff(inst2, inst2.embed_pair(k, k))
print("l block:\n", inst2.block(fb.l, 0))
print("a block:", np.diag(inst2.block(fb.a, 0)).real)

print("\nOff the top stratum the factorization reports the cell:")
anti = np.array([[0, 1], [-1, 0]], dtype=complex)
try:
    birkhoff(inst2, inst2.embed_pair(anti, anti))
except OffTopStratumError as err:
    print("  cell:", err.cell)

print("\nGeneric elements live in the identity cell; the layer of a point")
print("of the symmetric space is the cell of its Cartan image:")
u = sample_matrix(inst2, "U", 5)
print("  generic cell:", bruhat_cell(inst2, sample_matrix(inst2, "G", 4)))
print("  generic layer:", layer_of(inst2, u), "(length", cell_length(layer_of(inst2, u)), ")")
import scipy.linalg as sla

inst3 = SpaceInstance.grass(1, 1)
rot = sla.expm((np.pi / 4) * np.array([[0, 1], [-1, 0]]))
print("  quarter-turn layer in", str(inst3) + ":", layer_of(inst3, rot),
      "| Cartan image:\n", cartan_embed(inst3, rot).round(4))
