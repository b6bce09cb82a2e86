"""Group-level decompositions: Iwasawa, Gauss/Birkhoff, Bruhat cells, Cartan embedding.

The Iwasawa factorization g = l a u (unit lower triangular, positive diagonal,
unitary) is computed from the Cholesky factor of g g^H; the Birkhoff
factorization of a top-stratum unitary is an unpivoted LDU split with the
diagonal separated into its unitary and positive parts.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .core import SpaceInstance, as_matrix

__all__ = [
    "FactorizationError",
    "OffTopStratumError",
    "MarginalStratumWarning",
    "IwasawaFactors",
    "BirkhoffFactors",
    "iwasawa",
    "u_part",
    "la_part",
    "gauss_ldu",
    "bruhat_cell_matrix",
    "bruhat_cell",
    "cell_length",
    "cell_is_identity",
    "birkhoff",
    "cartan_embed",
    "layer_of",
]

RANK_RTOL = 1e-10


class FactorizationError(np.linalg.LinAlgError):
    """Input outside the domain of a factorization (e.g. numerically singular)."""


class OffTopStratumError(FactorizationError):
    """Triangular factorization requested off the top Birkhoff stratum."""

    def __init__(self, cell):
        self.cell = cell
        super().__init__(f"off top stratum: cell {cell}")


class MarginalStratumWarning(UserWarning):
    """A rank decision fell close to its threshold."""


@dataclass(frozen=True)
class IwasawaFactors:
    """Factors of g = l a u with the refinement a = a0 a1."""

    l: np.ndarray
    a: np.ndarray
    u: np.ndarray
    a0: np.ndarray
    a1: np.ndarray

    def residual(self, g):
        return float(np.linalg.norm(self.l @ self.a @ self.u - g))


@dataclass(frozen=True)
class BirkhoffFactors:
    """Factors of a top-stratum k = l m a u_plus."""

    w: tuple
    l: np.ndarray
    m: np.ndarray
    a: np.ndarray
    u_plus: np.ndarray

    def residual(self, k):
        return float(np.linalg.norm(self.l @ self.m @ self.a @ self.u_plus - k))


def iwasawa(inst: SpaceInstance, g) -> IwasawaFactors:
    """Global Iwasawa factorization g = l a u with the a = a0 a1 split.

    Algorithm: Cholesky of g g^H gives the lower factor l a; the unitary part
    is recovered by a triangular solve.  a0 is the exponential of the
    projection of log(a) onto the split part of the Cartan subspace.
    """
    g = as_matrix(g)
    p = g @ g.conj().T
    try:
        chol = np.linalg.cholesky(p)
    except np.linalg.LinAlgError as exc:
        raise FactorizationError("singular input to iwasawa") from exc
    d = np.diag(chol).real
    if np.min(d) <= 0:
        raise FactorizationError("singular input to iwasawa")
    a = np.diag(d.astype(complex))
    l = chol @ np.diag(1.0 / d)
    u = sla.solve_triangular(chol, g, lower=True)
    log_a = np.diag(np.log(d))
    la0 = inst.project("a0", log_a)
    a0 = np.diag(np.exp(np.diag(la0).real)).astype(complex)
    a1 = np.diag(np.exp(np.diag(log_a - la0).real)).astype(complex)
    return IwasawaFactors(l=l, a=a, u=u, a0=a0, a1=a1)


def u_part(inst, g):
    """The unitary Iwasawa factor of g."""
    return iwasawa(inst, g).u


def la_part(inst, g):
    """The lower-Borel Iwasawa factor l a of g."""
    f = iwasawa(inst, g)
    return f.l @ f.a


def gauss_ldu(m, tol=RANK_RTOL):
    """Unpivoted LDU factorization; fails off the top stratum.

    Returns (l, d, u) with l unit lower triangular, d diagonal, u unit upper.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    scale = np.linalg.norm(m, 2)
    a = m.copy()
    l = np.eye(n, dtype=complex)
    for k in range(n - 1):
        piv = a[k, k]
        if abs(piv) <= tol * scale:
            raise OffTopStratumError(bruhat_cell_matrix(m))
        l[k + 1 :, k] = a[k + 1 :, k] / piv
        a[k + 1 :, k:] -= np.outer(l[k + 1 :, k], a[k, k:])
    if abs(a[n - 1, n - 1]) <= tol * scale:
        raise OffTopStratumError(bruhat_cell_matrix(m))
    d = np.diag(np.diag(a))
    u = np.diag(1.0 / np.diag(a)) @ np.triu(a)
    return l, d, u


def bruhat_cell_matrix(m, tol=RANK_RTOL):
    """Permutation (0-indexed image tuple) of the triangular stratum of m.

    The permutation is extracted from the rank matrix of leading (upper-left)
    submatrices, the invariant of two-sided triangular multiplication; the
    identity permutation corresponds to all leading principal minors nonzero.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    smax = np.linalg.norm(m, 2)
    thr = tol * smax
    ranks = np.zeros((n + 1, n + 1), dtype=int)
    marginal = False
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            s = np.linalg.svd(m[:i, :j], compute_uv=False)
            ranks[i, j] = int(np.sum(s > thr))
            if np.any((s > thr / 10) & (s < thr * 10)):
                marginal = True
    if marginal:
        warnings.warn("numerically marginal stratum", MarginalStratumWarning, stacklevel=2)
    perm = [-1] * n
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            if ranks[i, j] - ranks[i - 1, j] - ranks[i, j - 1] + ranks[i - 1, j - 1] == 1:
                perm[j - 1] = i - 1
                break
    if sorted(perm) != list(range(n)):
        raise FactorizationError("rank matrix did not define a permutation")
    return tuple(perm)


def bruhat_cell(inst: SpaceInstance, g, tol=RANK_RTOL):
    """Per-block stratum label of g: a tuple of permutations, one per block."""
    g = as_matrix(g)
    return tuple(bruhat_cell_matrix(inst.block(g, i), tol=tol)
                 for i in range(len(inst.blocks)))


def _inversions(perm):
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
               if perm[i] > perm[j])


def cell_length(cell):
    """Total inversion count of a per-block cell label."""
    return sum(_inversions(p) for p in cell)


def cell_is_identity(cell):
    return all(p == tuple(range(len(p))) for p in cell)


def birkhoff(inst: SpaceInstance, k) -> BirkhoffFactors:
    """Triangular factorization k = l m a u of a top-stratum element of K.

    m is unitary diagonal and a positive diagonal; raises OffTopStratumError
    (carrying the cell label) when a leading principal minor vanishes.
    """
    k = as_matrix(k)
    cell = bruhat_cell(inst, k)
    if not cell_is_identity(cell):
        raise OffTopStratumError(cell)
    l, d, u = gauss_ldu(k)
    dd = np.diag(d)
    a_diag = np.abs(dd)
    m = np.diag(dd / a_diag)
    a = np.diag(a_diag.astype(complex))
    return BirkhoffFactors(w=cell, l=l, m=m, a=a, u_plus=u)


def cartan_embed(inst: SpaceInstance, u):
    """Totally geodesic embedding of U/K into U: u -> u Theta(u)^-1."""
    u = as_matrix(u)
    return u @ np.linalg.inv(inst.theta(u))


def layer_of(inst: SpaceInstance, u, tol=RANK_RTOL):
    """Stratum label of the Cartan image of u; labels the leaf type of uK."""
    return bruhat_cell(inst, cartan_embed(inst, u), tol=tol)
