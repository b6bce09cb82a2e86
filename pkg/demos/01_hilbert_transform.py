"""Triangular decompositions and the Hilbert transform.

The map x -> -i x_- + i x_+ attached to the triangular decomposition of a
complex matrix algebra solves the modified Yang-Baxter equation: its
Nijenhuis torsion vanishes identically.  This is the seed for every Poisson
structure in this library.
"""

import numpy as np

from liepoisson import SpaceInstance, hilbert, nijenhuis, trace_form, triangular_parts
from liepoisson.core import sample_matrix

np.set_printoptions(precision=4, suppress=True)

x = np.array([[0, 1], [2, 0]], dtype=complex)
lower, diag, upper = triangular_parts(x)
print("x =\n", x)
print("strictly lower part:\n", lower)
print("transform H(x) = -i x_- + i x_+ =\n", hilbert(x))

print("\nH kills the diagonal:", np.linalg.norm(hilbert(np.diag([1.0, -1.0]))))
off = np.array([[0, 3j], [2, 0]], dtype=complex)
print("H^2 = -1 off the diagonal:", np.linalg.norm(hilbert(hilbert(off)) + off))

print("\nNijenhuis torsion over random traceless matrices:")
for n in (2, 3, 4):
    rng = np.random.default_rng(n)
    worst = 0.0
    for _ in range(200):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        a -= np.trace(a) / n * np.eye(n)
        b -= np.trace(b) / n * np.eye(n)
        worst = max(worst, np.linalg.norm(nijenhuis(a, b)))
    print(f"  sl({n}, C): max |N(a, b)| over 200 pairs = {worst:.2e}")

print("\nH is skew for the trace form (both realizations):")
for inst in (SpaceInstance.grass(2, 1), SpaceInstance.group(2)):
    a = sample_matrix(inst, "g", 1)
    b = sample_matrix(inst, "g", 2)
    val = abs(trace_form(hilbert(a), b) + trace_form(a, hilbert(b)))
    print(f"  {inst}: |<Ha, b> + <a, Hb>| = {val:.2e}")
