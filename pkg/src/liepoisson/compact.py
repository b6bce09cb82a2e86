"""The homogeneous Poisson tensor on U/K and its leaf symplectic forms.

The map g0 -> u(w1 g0) carries the double-coset picture onto a symplectic
leaf; its derivative, the block decomposition of Ad(w_hat) in the root basis,
the twisted Hilbert operator on the fixed real form, and the lower-Borel
defect operator together give a closed-form expression for the leaf
symplectic form that is cross-checked against a pseudo-inverse evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import RealSubspace, operator_matrix, vec_r
from .core import SpaceInstance, as_matrix, hilbert, trace_form, triangular_parts
from .factorization import iwasawa
from .hamiltonian import LeafParameter, stabilizer_algebra

__all__ = [
    "DomainError",
    "AdBlocks",
    "TwistedHilbert",
    "pi_compact",
    "pi_compact_operator",
    "u_tilde",
    "u_tilde_pushforward",
    "u_tilde_adjoint",
    "ad_blocks",
    "twisted_hilbert",
    "fixed_form_project",
    "z_operator",
    "leaf_tangency_residual",
    "leaf_form",
    "leaf_form_pinv",
]


class DomainError(ValueError):
    """Argument outside the domain of the twisted Hilbert operator."""


def pi_compact(inst: SpaceInstance, u, phi, psi):
    """Poisson tensor on U/K evaluated on cotangent representatives in i p."""
    u = as_matrix(u)
    u_inv = u.conj().T
    val = trace_form(inst.project("ip", u_inv @ hilbert(u @ as_matrix(phi) @ u_inv) @ u), psi)
    return float(val.real)


def pi_compact_operator(inst: SpaceInstance, u):
    """Real matrix of phi -> {Ad(u)^-1 H Ad(u) phi}_ip in the orthonormal ip-basis."""
    u = as_matrix(u)
    u_inv = u.conj().T
    sub = inst.subspace("ip")
    op = lambda x: inst.project("ip", u_inv @ hilbert(u @ x @ u_inv) @ u)
    return sub, operator_matrix(op, sub, sub)


def u_tilde(inst: SpaceInstance, w1, g0):
    """The leaf chart g0 -> u(w1 g0)."""
    return iwasawa(inst, as_matrix(w1) @ as_matrix(g0)).u


def u_tilde_pushforward(inst: SpaceInstance, w1, g0, y):
    """Derivative of the leaf chart on the representative [g0, y], y in p.

    Returns (u, phi) with phi in i p representing the image tangent vector.
    """
    u = u_tilde(inst, w1, g0)
    u_inv = u.conj().T
    phi = inst.project("ip", u_inv @ hilbert(u @ (-1j * as_matrix(y)) @ u_inv) @ u)
    return u, phi


def u_tilde_adjoint(inst: SpaceInstance, w1, g0, phi):
    """Adjoint of the chart derivative: [u, phi] -> [g0, x], x in p."""
    u = u_tilde(inst, w1, g0)
    u_inv = u.conj().T
    return inst.project("p", u_inv @ (1j * hilbert(u @ as_matrix(phi) @ u_inv)) @ u)


@dataclass(frozen=True)
class AdBlocks:
    """Blocks of Ad(w_hat) relative to g = n+ + h + n-, in the root-vector basis."""

    w_hat: np.ndarray
    a: np.ndarray  # n+ -> n+
    b: np.ndarray  # n- -> n+
    c: np.ndarray  # n+ -> n-
    d: np.ndarray  # n- -> n-
    w_h: np.ndarray  # h -> h

    def apply(self, inst, x):
        """Reassemble Ad(w_hat) x from the blocks (consistency check helper)."""
        xm, xh, xp = triangular_parts(as_matrix(x))
        cp, cm, ch = _coords_pos(inst, xp), _coords_neg(inst, xm), _coords_diag(inst, xh)
        out_p = _assemble_pos(inst, self.a @ cp + self.b @ cm)
        out_m = _assemble_neg(inst, self.c @ cp + self.d @ cm)
        out_h = _assemble_diag(inst, self.w_h @ ch)
        return out_p + out_m + out_h


def _root_bases(inst: SpaceInstance):
    """Root-vector index sets and bases: positions for n+/n-, matrices for h."""
    key = "root_bases"
    if key not in inst._cache:
        d = inst.dim
        pos_idx, diag = [], []
        for lo, hi in inst.blocks:
            for j in range(lo, hi):
                for k in range(j + 1, hi):
                    pos_idx.append((j, k))
            for j in range(lo, hi - 1):
                e = np.zeros((d, d), dtype=complex)
                e[j, j], e[j + 1, j + 1] = 1.0, -1.0
                diag.append(e)
        # complex lstsq system for the non-orthogonal Cartan basis
        diag_cols = np.column_stack([np.diag(e) for e in diag])
        inst._cache[key] = (tuple(pos_idx), tuple(diag), diag_cols)
    return inst._cache[key]


def _pos_basis(inst):
    pos_idx, _, _ = _root_bases(inst)
    mats = []
    for j, k in pos_idx:
        e = np.zeros((inst.dim, inst.dim), dtype=complex)
        e[j, k] = 1.0
        mats.append(e)
    return mats


def _neg_basis(inst):
    pos_idx, _, _ = _root_bases(inst)
    mats = []
    for j, k in pos_idx:
        e = np.zeros((inst.dim, inst.dim), dtype=complex)
        e[k, j] = 1.0
        mats.append(e)
    return mats


def _coords_pos(inst, x):
    pos_idx, _, _ = _root_bases(inst)
    return np.array([x[j, k] for j, k in pos_idx])


def _coords_neg(inst, x):
    pos_idx, _, _ = _root_bases(inst)
    return np.array([x[k, j] for j, k in pos_idx])


def _coords_diag(inst, x):
    _, _, diag_cols = _root_bases(inst)
    sol, *_ = np.linalg.lstsq(diag_cols, np.diag(x), rcond=None)
    return sol


def _assemble_pos(inst, coeffs):
    pos_idx, _, _ = _root_bases(inst)
    out = np.zeros((inst.dim, inst.dim), dtype=complex)
    for c, (j, k) in zip(coeffs, pos_idx):
        out[j, k] = c
    return out


def _assemble_neg(inst, coeffs):
    pos_idx, _, _ = _root_bases(inst)
    out = np.zeros((inst.dim, inst.dim), dtype=complex)
    for c, (j, k) in zip(coeffs, pos_idx):
        out[k, j] = c
    return out


def _assemble_diag(inst, coeffs):
    _, diag, _ = _root_bases(inst)
    out = np.zeros((inst.dim, inst.dim), dtype=complex)
    for c, e in zip(coeffs, diag):
        out = out + c * e
    return out


def ad_blocks(inst: SpaceInstance, w_hat) -> AdBlocks:
    """Extract the block matrices of Ad(w_hat) by acting on the root basis."""
    w_hat = as_matrix(w_hat)
    if not inst.normalizes_torus(w_hat):
        raise ValueError("representative does not normalize the torus")
    w_inv = np.linalg.inv(w_hat)
    _, diag, _ = _root_bases(inst)

    pa, pb, pc, pd = [], [], [], []
    for e in _pos_basis(inst):
        out = w_hat @ e @ w_inv
        pa.append(_coords_pos(inst, np.triu(out, 1)))
        pc.append(_coords_neg(inst, np.tril(out, -1)))
    for e in _neg_basis(inst):
        out = w_hat @ e @ w_inv
        pb.append(_coords_pos(inst, np.triu(out, 1)))
        pd.append(_coords_neg(inst, np.tril(out, -1)))
    wh = []
    for e in diag:
        out = w_hat @ e @ w_inv
        wh.append(_coords_diag(inst, out - np.tril(out, -1) - np.triu(out, 1)))
    return AdBlocks(
        w_hat=w_hat,
        a=np.column_stack(pa),
        b=np.column_stack(pb),
        c=np.column_stack(pc),
        d=np.column_stack(pd),
        w_h=np.column_stack(wh),
    )


class TwistedHilbert:
    """The leaf-form operator: -i (1 + C sigma)(1 - C sigma)^-1 on n-, +i on n+.

    C sigma is complex anti-linear on n-, so the solve runs on the realified
    root coordinates.  Membership in the domain is certified by the relative
    residual of the least-squares solve.
    """

    def __init__(self, inst: SpaceInstance, w_hat):
        self.inst = inst
        self.w_hat = as_matrix(w_hat)
        self.blocks = ad_blocks(inst, self.w_hat)
        nsub = RealSubspace.span(_n_minus_real_basis(inst))
        self._nsub = nsub
        self._mat = operator_matrix(self._c_sigma, nsub, nsub)
        self._one_minus = np.eye(nsub.dim) - self._mat
        # ambiguity of the solve: -2i * ker(1 - C sigma)
        kmats = _kernel_matrices(self._one_minus, nsub)
        self.ambiguity = (RealSubspace.span([-2j * m for m in kmats])
                          if kmats else RealSubspace.span([np.zeros((inst.dim, inst.dim))]))

    def _c_sigma(self, xm):
        conj = self.w_hat @ self.inst.sigma(xm) @ np.linalg.inv(self.w_hat)
        return np.tril(conj, -1)

    def domain_residual(self, chi):
        xm = np.tril(as_matrix(chi), -1)
        lam, res = self._solve(xm)
        scale = max(1.0, float(np.linalg.norm(xm)))
        return res / scale

    def _solve(self, xm):
        rhs = self._nsub.coords(xm)
        sol, *_ = np.linalg.lstsq(self._one_minus, rhs, rcond=None)
        res = float(np.linalg.norm(self._one_minus @ sol - rhs))
        return self._nsub.from_coords(sol), res

    def apply(self, chi, tol=1e-8):
        chi = as_matrix(chi)
        xm, _, xp = triangular_parts(chi)
        lam, res = self._solve(xm)
        if res > tol * max(1.0, float(np.linalg.norm(xm))):
            raise DomainError("argument outside the twisted-Hilbert domain")
        return -1j * (lam + self._c_sigma(lam)) + 1j * xp


def _n_minus_real_basis(inst):
    return [m for e in _neg_basis(inst) for m in (e, 1j * e)]


def _kernel_matrices(mat, sub, rtol=1e-8):
    from ._linalg import kernel_basis

    ker = kernel_basis(mat, rtol=rtol)
    return [sub.from_coords(ker[:, i]) for i in range(ker.shape[1])]


def twisted_hilbert(inst: SpaceInstance, w_hat) -> TwistedHilbert:
    return TwistedHilbert(inst, w_hat)


def fixed_form_project(inst: SpaceInstance, w_hat, z, anti=False):
    """Orthogonal projection onto the w1-conjugated real form (or its i-partner)."""
    z = as_matrix(z)
    tw = w_hat @ inst.sigma(z) @ np.linalg.inv(w_hat)
    return (z - tw) / 2 if anti else (z + tw) / 2


def z_operator(inst: SpaceInstance, w1, g0, x, path="formula"):
    """Lower-Borel defect operator evaluated on Ad(w1 g0) x for x in p.

    ``path='formula'`` uses the closed-form value; ``path='difference'``
    evaluates -i (Ad(la) H Ad(la)^-1 - H) on the same argument.
    """
    w1, g0, x = as_matrix(w1), as_matrix(g0), as_matrix(x)
    f = iwasawa(inst, w1 @ g0)
    la = f.l @ f.a
    la_inv = np.linalg.inv(la)
    wg = w1 @ g0
    chi = wg @ x @ np.linalg.inv(wg)
    if path == "difference":
        diff = la @ hilbert(la_inv @ chi @ la) @ la_inv - hilbert(chi)
        return -1j * diff
    if path != "formula":
        raise ValueError(f"unknown z_operator path {path!r}")
    u = f.u
    xu = u @ x @ u.conj().T
    _, xu0, xup = triangular_parts(xu)
    _, chi0, _ = triangular_parts(chi)
    return -(xu0 - chi0) + np.tril(la @ (xu0 + 2 * xup) @ la_inv, -1)


def leaf_tangency_residual(inst: SpaceInstance, leaf: LeafParameter, g0, x):
    """Pairing of i Ad(g0) x against the stabilizer algebra (zero iff leaf tangent)."""
    g0 = as_matrix(g0)
    xg = 1j * (g0 @ as_matrix(x) @ np.linalg.inv(g0))
    key = "stab"
    if key not in leaf._cache:
        leaf._cache[key] = stabilizer_algebra(inst, leaf.w1)
    vals = [abs(trace_form(xg, b).real) for b in leaf._cache[key]]
    return float(max(vals)) if vals else 0.0


def leaf_form(inst: SpaceInstance, leaf: LeafParameter, g0, x, y, tol=1e-8, check_tangent=True):
    """Leaf symplectic form on i p representatives x, y at the chart image of g0.

    Evaluates the twisted-Hilbert expression conjugated by w1 g0; requires x, y
    tangent to the leaf (residual-checked unless ``check_tangent=False``).
    """
    g0 = as_matrix(g0)
    if check_tangent:
        for v in (x, y):
            res = leaf_tangency_residual(inst, leaf, g0, v)
            if res > tol * max(1.0, float(np.linalg.norm(v))):
                raise ValueError(f"vector not tangent to the leaf (residual {res:.2e})")
    key = "hw"
    if key not in leaf._cache:
        leaf._cache[key] = TwistedHilbert(inst, leaf.w_hat)
    hw = leaf._cache[key]
    wg = leaf.w1 @ g0
    wg_inv = np.linalg.inv(wg)
    val = trace_form(wg_inv @ hw.apply(wg @ as_matrix(x) @ wg_inv, tol=tol) @ wg, y)
    # sign fixed so the chart g0 -> u(w1 g0) pulls the leaf form back to the
    # closed two-form exactly (same orientation as the noncompact leaf form)
    return -float(val.real)


def leaf_form_pinv(inst: SpaceInstance, u, x, y, rtol=1e-10):
    """Cross-check path: the leaf form via the pseudo-inverse of the tensor at u.

    Oriented like :func:`leaf_form` (the chart pullback of the leaf form is the
    closed two-form), which here reads +<Omega^+ x, y>.
    """
    sub, mat = pi_compact_operator(inst, u)
    if np.linalg.norm(mat, 2) < 1e-12:
        return 0.0
    xi = np.linalg.pinv(mat, rcond=rtol) @ sub.coords(as_matrix(x))
    return float(trace_form(sub.from_coords(xi), as_matrix(y)).real)
