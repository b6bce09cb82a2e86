"""The parameterized closed two-form on G0/K, its torus actions, and momentum maps.

The two-form attached to a unitary parameter w1 evaluates pairs of
equivariant-bundle tangent representatives [g0, x], x in p, through the
unitary Iwasawa factor of w1 g0.  For parameters whose Cartan image
normalizes the torus, a subtorus acts preserving the form, with an explicit
momentum map read off the abelian Iwasawa factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from ._linalg import RealSubspace, kernel_basis, operator_matrix
from .core import SpaceInstance, TangentVector, as_matrix, hilbert, trace_form
from .factorization import bruhat_cell, cartan_embed, iwasawa
from .weyl import make_weyl_element

__all__ = [
    "LeafParameter",
    "MomentumValue",
    "make_leaf",
    "group_leaf",
    "grass_leaf_candidates",
    "omega_xy",
    "omega",
    "omega_operator",
    "dressing",
    "stabilizer_algebra",
    "t_w_basis",
    "sample_torus",
    "torus_act",
    "momentum",
    "momentum_pairing",
]


@dataclass(frozen=True)
class LeafParameter:
    """A unitary parameter w1 together with its Cartan image and stratum label."""

    inst: SpaceInstance
    w1: np.ndarray
    w_hat: np.ndarray
    label: tuple
    normalizes_torus: bool
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        for name in ("w1", "w_hat"):
            m = np.array(getattr(self, name), dtype=complex)
            m.setflags(write=False)
            object.__setattr__(self, name, m)


def make_leaf(inst: SpaceInstance, w1) -> LeafParameter:
    """Build a LeafParameter from a unitary w1 (label from the Cartan image)."""
    w1 = as_matrix(w1)
    w_hat = cartan_embed(inst, w1)
    return LeafParameter(
        inst=inst,
        w1=w1,
        w_hat=w_hat,
        label=bruhat_cell(inst, w_hat),
        normalizes_torus=inst.normalizes_torus(w_hat),
    )


def group_leaf(inst: SpaceInstance, word) -> LeafParameter:
    """Leaf parameter (w_check, 1) for a group instance; Cartan image (w_check, w_check^-1)."""
    if inst.kind != "group":
        raise ValueError("group_leaf requires a group instance")
    wc = make_weyl_element(inst.n, list(word)).rep
    w1 = inst.embed_pair(wc, np.eye(inst.n))
    return make_leaf(inst, w1)


def grass_leaf_candidates(inst: SpaceInstance, max_factors=2):
    """Search for leaf parameters of a grass instance.

    Candidates are products of quarter-turn rotations exp((pi/4)(E_jk - E_kj))
    in planes (j, k) crossing the p/q block boundary (these lie in exp(i p),
    so the Cartan image is the squared rotation); candidates whose Cartan
    image fails to normalize the torus are dropped, and one representative is
    kept per stratum label.
    """
    if inst.kind != "grass":
        raise ValueError("grass_leaf_candidates requires a grass instance")
    d = inst.dim
    planes = [(j, k) for j in range(inst.p) for k in range(inst.p, d)]
    gens = []
    for j, k in planes:
        x = np.zeros((d, d))
        x[j, k], x[k, j] = 1.0, -1.0
        gens.append(sla.expm((np.pi / 4) * x))
    candidates = [np.eye(d, dtype=complex)] + [g.astype(complex) for g in gens]
    if max_factors >= 2:
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                candidates.append((gens[i] @ gens[j]).astype(complex))
    found = {}
    for w1 in candidates:
        leaf = make_leaf(inst, w1)
        if not leaf.normalizes_torus:
            continue
        found.setdefault(leaf.label, leaf)
    return list(found.values())


def _u_of(inst, w1, g0):
    return iwasawa(inst, as_matrix(w1) @ as_matrix(g0)).u


def omega_xy(inst: SpaceInstance, w1, g0, x, y, path="direct"):
    """Two-form value on representatives x, y in p at the point g0 K.

    ``path='direct'`` conjugates the Hilbert transform by the unitary Iwasawa
    factor of w1 g0; ``path='extended'`` goes through the factored extended
    operator (an independent code path used for cross-checking).
    """
    u = _u_of(inst, w1, g0)
    u_inv = u.conj().T
    if path == "direct":
        val = trace_form(u_inv @ hilbert(u @ x @ u_inv) @ u, y)
        return float(val.real)
    if path == "extended":
        z = inst.project("pr_u", u @ x @ u_inv)
        val = trace_form(inst.i_twist(u_inv @ z @ u), y)
        return float(val.real)
    raise ValueError(f"unknown omega path {path!r}")


def omega(inst: SpaceInstance, w1, v1: TangentVector, v2: TangentVector, path="direct"):
    """Two-form on tangent vectors sharing a base point."""
    if not np.allclose(v1.base, v2.base, atol=1e-12):
        raise ValueError("tangent vectors have different base points")
    return omega_xy(inst, w1, v1.base, v1.vec, v2.vec, path=path)


def omega_operator(inst: SpaceInstance, w1, g0):
    """Real matrix (in the orthonormal p-basis) of x -> {Ad(u^-1) H Ad(u) x}_p."""
    u = _u_of(inst, w1, g0)
    u_inv = u.conj().T
    psub = inst.subspace("p")
    op = lambda x: inst.project("p", u_inv @ hilbert(u @ x @ u_inv) @ u)
    return psub, operator_matrix(op, psub, psub)


def dressing(inst: SpaceInstance, u, g0):
    """Right action of G0 on U through the Iwasawa decomposition."""
    return iwasawa(inst, as_matrix(u) @ as_matrix(g0)).u


def stabilizer_algebra(inst: SpaceInstance, w1, tol=1e-7):
    """Orthonormal basis of the dressing stabilizer algebra at w1.

    Numerically intersects Ad(w1^-1)(n- + a) with g0; each basis element b
    satisfies Ad(w1) b in n- + a and b in g0.
    """
    w1 = as_matrix(w1)
    w1_inv = np.linalg.inv(w1)
    na = inst.subspace("n-").matrices() + inst.subspace("a").matrices()
    conj = RealSubspace.span([w1_inv @ m @ w1 for m in na])
    inter = conj.intersect(inst.subspace("g0"), tol=tol)
    return inter.matrices()


def t_w_basis(inst: SpaceInstance, leaf: LeafParameter):
    """Orthonormal basis of the fixed subtorus algebra attached to a leaf."""
    if not leaf.normalizes_torus:
        raise ValueError("leaf parameter does not normalize the torus")
    if "tw" not in leaf._cache:
        leaf._cache["tw"] = inst.subspace("tw", w_hat=leaf.w_hat).matrices()
    return leaf._cache["tw"]


def sample_torus(inst: SpaceInstance, leaf: LeafParameter, seed, scale=0.7):
    """Deterministic sample from the leaf's subtorus T_w."""
    rng = np.random.default_rng(seed)
    basis = t_w_basis(inst, leaf)
    x = np.zeros((inst.dim, inst.dim), dtype=complex)
    for b in basis:
        x = x + rng.uniform(-scale, scale) * b
    return sla.expm(x)


def _t_w_residual(inst, leaf, t):
    t = as_matrix(t)
    res = np.linalg.norm(leaf.w_hat @ inst.theta(t) @ np.linalg.inv(leaf.w_hat) - t)
    res = max(res, np.linalg.norm(t - np.diag(np.diag(t))))
    res = max(res, np.linalg.norm(t.conj().T @ t - np.eye(inst.dim)))
    return float(res)


def torus_act(inst: SpaceInstance, leaf: LeafParameter, t, g0, tol=1e-8):
    """Translate the coset g0 K by the subtorus element t: g0 -> w1^-1 t w1 g0."""
    t = as_matrix(t)
    if _t_w_residual(inst, leaf, t) > tol:
        raise ValueError("element fails the T_w membership residual")
    conj = np.linalg.inv(leaf.w1) @ t @ leaf.w1
    from .core import membership_residual

    if membership_residual(inst, "G0", conj) > 1e-10 * max(1.0, float(np.linalg.norm(conj))):
        raise ValueError("conjugated torus element left G0")
    return conj @ as_matrix(g0)


@dataclass(frozen=True)
class MomentumValue:
    """Momentum coefficients against an orthonormal basis of the leaf's torus algebra."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)


def momentum(inst: SpaceInstance, leaf: LeafParameter, g0) -> MomentumValue:
    """Momentum map value at g0 K: pairings of i log a(w1 g0) with the T_w basis."""
    f = iwasawa(inst, leaf.w1 @ as_matrix(g0))
    ilog_a = 1j * np.diag(np.log(np.diag(f.a).real))
    coeffs = [trace_form(ilog_a, b).real for b in t_w_basis(inst, leaf)]
    return MomentumValue(np.array(coeffs))


def momentum_pairing(inst: SpaceInstance, leaf: LeafParameter, g0, x):
    """Momentum function of a fixed torus direction x, evaluated at g0 K."""
    f = iwasawa(inst, leaf.w1 @ as_matrix(g0))
    ilog_a = 1j * np.diag(np.log(np.diag(f.a).real))
    return float(trace_form(ilog_a, x).real)
