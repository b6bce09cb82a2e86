"""The homogeneous Poisson tensor on G0/K and its leaf geometry.

Provides the tensor evaluation, the transfer operator T(g0): u -> g0 built
from the lower-Borel factor L = a0^-1 l a0 a1 (with adjoint, cokernel and a
staged inverse), the abelian Casimir a0, the horizontal leaf section, and
leaf-tangency tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import RealSubspace, kernel_basis, operator_matrix
from .core import SpaceInstance, as_matrix, hilbert, trace_form, triangular_parts
from .factorization import iwasawa

__all__ = [
    "NotInImageError",
    "TOperator",
    "t_operator",
    "pi_noncompact",
    "pi_operator",
    "t_apply",
    "t_adjoint",
    "cokernel_element",
    "t_solve_staged",
    "casimir",
    "horizontal_section",
    "leaf_tangency_residual",
    "leaf_tangent_test",
    "project_leaf_tangent",
    "inverse_form",
]


class NotInImageError(ValueError):
    """Right-hand side outside the image of the transfer operator."""


def _l_factor(inst, g0):
    """L = a0^-1 l a0 a1 from the refined Iwasawa factorization of g0."""
    f = iwasawa(inst, g0)
    a0_inv = np.diag(1.0 / np.diag(f.a0))
    return a0_inv @ f.l @ f.a0 @ f.a1, f


@dataclass(frozen=True)
class TOperator:
    """The transfer operator at a base point, with its real matrix representation."""

    inst: SpaceInstance
    g0: np.ndarray
    big_l: np.ndarray
    as_matrix: np.ndarray  # real matrix u -> g0 in the orthonormal bases

    def dom(self):
        return self.inst.subspace("u")

    def cod(self):
        return self.inst.subspace("g0")


def t_operator(inst: SpaceInstance, g0) -> TOperator:
    g0 = as_matrix(g0)
    big_l, _ = _l_factor(inst, g0)
    mat = operator_matrix(lambda x: t_apply(inst, g0, x, big_l=big_l),
                          inst.subspace("u"), inst.subspace("g0"))
    return TOperator(inst=inst, g0=g0, big_l=big_l, as_matrix=mat)


def pi_noncompact(inst: SpaceInstance, g0, phi, psi):
    """Poisson tensor on G0/K evaluated on cotangent representatives in p."""
    g0 = as_matrix(g0)
    g0_inv = np.linalg.inv(g0)
    val = trace_form(inst.project("p", g0_inv @ hilbert(g0 @ as_matrix(phi) @ g0_inv) @ g0), psi)
    return float(val.real)


def pi_operator(inst: SpaceInstance, g0):
    """Real matrix of phi -> {Ad(g0)^-1 H Ad(g0) phi}_p in the orthonormal p-basis."""
    g0 = as_matrix(g0)
    g0_inv = np.linalg.inv(g0)
    psub = inst.subspace("p")
    op = lambda x: inst.project("p", g0_inv @ hilbert(g0 @ x @ g0_inv) @ g0)
    return psub, operator_matrix(op, psub, psub)


def t_apply(inst: SpaceInstance, g0, x, big_l=None, path="formula"):
    """Transfer operator T(g0) applied to x in u.

    ``path='formula'`` evaluates the explicit triangular expression in the
    lower-Borel factor L; ``path='projection'`` composes the Iwasawa projector
    onto g0 with Ad(L) (the independent cross-check path).
    """
    x = as_matrix(x)
    if big_l is None:
        big_l, _ = _l_factor(inst, as_matrix(g0))
    l_inv = np.linalg.inv(big_l)
    if path == "projection":
        return inst.project("pr_g0", big_l @ x @ l_inv)
    if path != "formula":
        raise ValueError(f"unknown t_apply path {path!r}")
    _, _, xp = triangular_parts(x)
    conj = big_l @ xp @ l_inv
    _, conj_h, conj_p = triangular_parts(conj)
    return (inst.sigma(conj_p) + inst.project("t0", x)
            + inst.project("h0", conj_h) + conj_p)


def t_adjoint(inst: SpaceInstance, g0, y, big_l=None):
    """Adjoint of the transfer operator, g0 -> u, in explicit triangular form."""
    y = as_matrix(y)
    if big_l is None:
        big_l, _ = _l_factor(inst, as_matrix(g0))
    l_inv = np.linalg.inv(big_l)
    ym, yh, _ = triangular_parts(y)
    z = l_inv @ (inst.project("h0", yh) + 2 * ym) @ big_l
    zm, _, _ = triangular_parts(z)
    return (zm + 2 * inst.project("t0", y) - zm.conj().T) / 2


def cokernel_element(inst: SpaceInstance, g0, y0, big_l=None):
    """Cokernel direction of T(g0) generated by y0 in a0."""
    y0 = as_matrix(y0)
    if big_l is None:
        big_l, _ = _l_factor(inst, as_matrix(g0))
    conj = big_l @ y0 @ np.linalg.inv(big_l)
    return (conj - y0) + 2 * y0 + inst.sigma(conj - y0)


def t_solve_staged(inst: SpaceInstance, g0, y, big_l=None, tol=1e-8):
    """Solve T(g0) x = y in stages for x in u orthogonal to i a0.

    Raises NotInImageError when the split-Cartan component of y is not
    reachable (the consistency residual of the h0 stage exceeds ``tol``).
    """
    y = as_matrix(y)
    if big_l is None:
        big_l, _ = _l_factor(inst, as_matrix(g0))
    l_inv = np.linalg.inv(big_l)
    _, _, yp = triangular_parts(y)
    xp = np.triu(l_inv @ yp @ big_l, 1)
    conj = big_l @ xp @ l_inv
    _, conj_h, _ = triangular_parts(conj)
    # reachable h0 parts are t0 + {conj}_h0; the a0 component must match
    mismatch = inst.project("a0", inst.project("h0", y - conj_h))
    scale = max(1.0, float(np.linalg.norm(y)))
    if np.linalg.norm(mismatch) > tol * scale:
        raise NotInImageError("split-Cartan component of y is not in the image")
    xt = inst.project("t0", y) - inst.project("t0", conj_h)
    x = -xp.conj().T + xt + xp
    return x


def casimir(inst: SpaceInstance, g0):
    """Abelian factor a0 of the Iwasawa decomposition (constant along leaves)."""
    return iwasawa(inst, g0).a0


def horizontal_section(inst: SpaceInstance, g0):
    """Horizontal representative a0^-1 g0 of the coset A0 g0 K."""
    g0 = as_matrix(g0)
    f = iwasawa(inst, g0)
    return np.diag(1.0 / np.diag(f.a0)) @ g0


def leaf_tangency_residual(inst: SpaceInstance, g0, x):
    """Size of the pairing of Ad(u(g0)) x against a0 (zero for leaf-tangent x)."""
    u = iwasawa(inst, g0).u
    xu = u @ as_matrix(x) @ u.conj().T
    vals = [abs(trace_form(xu, b)) for b in inst.subspace("a0").matrices()]
    return float(max(vals)) if vals else 0.0


def leaf_tangent_test(inst: SpaceInstance, g0, v, tol=1e-10):
    """Whether [g0, x] is tangent to the symplectic leaf through g0 K."""
    x = v.vec if hasattr(v, "vec") else v
    res = leaf_tangency_residual(inst, g0, x)
    return res <= tol * max(1.0, float(np.linalg.norm(x))), res


def project_leaf_tangent(inst: SpaceInstance, g0, x):
    """Orthogonal projection of x in p onto the leaf-tangent subspace at g0 K."""
    g0 = as_matrix(g0)
    u = iwasawa(inst, g0).u
    u_inv = u.conj().T
    a0_basis = inst.subspace("a0").matrices()
    if not a0_basis:
        return as_matrix(x)
    # constraints tr((u x u^-1) b) = 0 realified over the p-coordinates
    psub = inst.subspace("p")
    rows = []
    for b in a0_basis:
        coeffs = [trace_form(u @ m @ u_inv, b).real for m in psub.matrices()]
        rows.append(coeffs)
    a = np.asarray(rows)
    coords = psub.coords(as_matrix(x))
    sol, *_ = np.linalg.lstsq(a, a @ coords, rcond=None)
    return psub.from_coords(coords - sol)


def inverse_form(inst: SpaceInstance, g0, x, y, rtol=1e-10):
    """Symplectic form of the tensor on its leaf, via a rank-cut pseudo-inverse.

    Uses the standard inverse-form convention sigma(anchor(phi), anchor(psi)) =
    Pi(phi, psi), which for a skew operator reads -<Omega^+ x, y>.
    """
    psub, mat = pi_operator(inst, g0)
    if np.linalg.norm(mat, 2) < 1e-12:
        return 0.0
    xi = np.linalg.pinv(mat, rcond=rtol) @ psub.coords(as_matrix(x))
    return -float(trace_form(psub.from_coords(xi), as_matrix(y)).real)
