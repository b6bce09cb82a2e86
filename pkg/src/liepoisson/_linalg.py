"""Real-linear subspace and operator utilities for small dense complex matrices.

Complex matrices are treated as vectors in R^(2*m*m) with the real Frobenius
inner product Re tr(A B^H).  Everything here is R-linear: the anti-linear and
block-structured operators of the library all become plain real matrices in
the orthonormal bases produced by this module.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "vec_r",
    "unvec_r",
    "RealSubspace",
    "operator_matrix",
    "kernel_basis",
    "subspace_distance",
]


def vec_r(m):
    """Flatten a complex matrix into a real vector (real parts, then imaginary)."""
    m = np.asarray(m)
    return np.concatenate([m.real.ravel(), m.imag.ravel()])


def unvec_r(v, shape):
    """Inverse of :func:`vec_r`."""
    v = np.asarray(v, dtype=float)
    half = v.size // 2
    return (v[:half] + 1j * v[half:]).reshape(shape)


class RealSubspace:
    """An R-linear subspace of complex matrices held as an orthonormal basis."""

    def __init__(self, basis, shape):
        self._b = np.asarray(basis, dtype=float)
        self.shape = shape

    @classmethod
    def span(cls, mats, tol=1e-12):
        """Orthonormalize a spanning set of matrices (rank-revealing SVD)."""
        mats = [np.asarray(m) for m in mats]
        if not mats:
            raise ValueError("empty spanning set")
        shape = mats[0].shape
        a = np.column_stack([vec_r(m) for m in mats])
        u, s, _ = np.linalg.svd(a, full_matrices=False)
        cutoff = tol * (s[0] if s.size and s[0] > 0 else 1.0)
        rank = int(np.sum(s > cutoff))
        return cls(u[:, :rank], shape)

    @property
    def dim(self):
        return self._b.shape[1]

    def basis_vectors(self):
        return self._b

    def matrices(self):
        return [unvec_r(self._b[:, i], self.shape) for i in range(self.dim)]

    def coords(self, m):
        return self._b.T @ vec_r(m)

    def from_coords(self, c):
        return unvec_r(self._b @ np.asarray(c, dtype=float), self.shape)

    def project(self, m):
        return self.from_coords(self.coords(m))

    def residual(self, m):
        return float(np.linalg.norm(vec_r(m) - self._b @ self.coords(m)))

    def contains(self, m, tol=1e-10):
        scale = max(1.0, float(np.linalg.norm(m)))
        return self.residual(m) <= tol * scale

    def random_element(self, rng):
        return self.from_coords(rng.standard_normal(self.dim))

    def intersect(self, other, tol=1e-7):
        """Orthonormal basis of the intersection with another subspace."""
        if self.dim == 0 or other.dim == 0:
            return RealSubspace(np.zeros((self._b.shape[0], 0)), self.shape)
        m = self._b.T @ other._b
        u, s, _ = np.linalg.svd(m)
        keep = s > 1.0 - tol
        cols = self._b @ u[:, keep]
        if cols.shape[1] == 0:
            return RealSubspace(cols, self.shape)
        q, _ = np.linalg.qr(cols)
        return RealSubspace(q, self.shape)


def operator_matrix(op, dom: RealSubspace, cod: RealSubspace):
    """Real matrix of an R-linear operator in the given orthonormal bases."""
    cols = [cod.coords(op(m)) for m in dom.matrices()]
    if not cols:
        return np.zeros((cod.dim, 0))
    return np.column_stack(cols)


def kernel_basis(a, rtol=1e-8, atol=None):
    """Orthonormal basis (columns) of the numerical null space of a real matrix.

    The cutoff has an absolute floor (default ``rtol``) so that an operator
    whose entries are all at roundoff scale is treated as zero.
    """
    a = np.asarray(a, dtype=float)
    if a.shape[1] == 0:
        return np.zeros((0, 0))
    u, s, vt = np.linalg.svd(a)
    smax = s[0] if s.size else 0.0
    cutoff = max(rtol * smax, atol if atol is not None else rtol)
    rank = int(np.sum(s > cutoff))
    return vt[rank:].T


def subspace_distance(s1: RealSubspace, s2: RealSubspace):
    """Spectral distance between the orthogonal projectors of two subspaces."""
    b1, b2 = s1.basis_vectors(), s2.basis_vectors()
    p1 = b1 @ b1.T
    p2 = b2 @ b2.T
    return float(np.linalg.norm(p1 - p2, 2))
