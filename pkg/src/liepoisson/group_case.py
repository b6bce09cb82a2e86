"""The group case K = SU(n): the two Poisson bivectors on K, longest-element
translation, explicit SU(2) leaf coordinates, and the product formulas for the
leaf symplectic form, the abelian factor, the Haar density, and the momentum
map in those coordinates.

Everything here works with plain n x n special unitary matrices; the bridge
to the doubled realization of the same space is the correspondence
(k1, k2) -> k1 k2^-1, exercised in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import hilbert, trace_form
from .factorization import OffTopStratumError, bruhat_cell_matrix, gauss_ldu
from .weyl import (
    RootDatum,
    i_gamma,
    is_reduced,
    perm_of_word,
    representative,
)

__all__ = [
    "LeafCoordinates",
    "DensityReport",
    "pi_k",
    "big_pi_k",
    "pi_k_operator",
    "big_pi_k_operator",
    "w0_translate_check",
    "su2_k_of_zeta",
    "lu_unitary_point",
    "lu_coordinates_to_l",
    "lu_a_product",
    "lu_form_coefficients",
    "haar_density",
    "momentum_in_coordinates",
    "torus_rotate_zeta",
    "torus_basis",
]


@dataclass(frozen=True)
class LeafCoordinates:
    """A reduced word together with one complex coordinate per letter."""

    word: tuple
    zeta: tuple

    def __post_init__(self):
        if len(self.word) != len(self.zeta):
            raise ValueError("word and zeta lengths differ")


@dataclass(frozen=True)
class DensityReport:
    """Coefficients, abelian factor, and Haar density at one coordinate point."""

    word: tuple
    zeta: tuple
    form_coefficients: tuple
    a_value: np.ndarray
    haar_density: float
    momentum: tuple

    def __post_init__(self):
        a = np.array(self.a_value, dtype=complex)
        a.setflags(write=False)
        object.__setattr__(self, "a_value", a)


def _check_hilbert(k):
    return hilbert(k)


def pi_k(k, phi, psi):
    """Multiplicative Poisson bivector on K in the right trivialization."""
    k = np.asarray(k, dtype=complex)
    k_inv = k.conj().T
    val = trace_form(hilbert(phi) - k @ hilbert(k_inv @ phi @ k) @ k_inv, psi)
    return float(val.real)


def big_pi_k(k, phi, psi):
    """Homogeneous Poisson bivector on K in the right trivialization."""
    k = np.asarray(k, dtype=complex)
    k_inv = k.conj().T
    val = trace_form(hilbert(phi) + k @ hilbert(k_inv @ phi @ k) @ k_inv, psi)
    return float(val.real)


def _su_basis(n):
    """Real orthonormal-ish spanning list of su(n) (not cached, small n)."""
    mats = []
    for j in range(n):
        for k in range(j + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[j, k], e[k, j] = 1.0, -1.0
            mats.append(e / np.sqrt(2))
            f = np.zeros((n, n), dtype=complex)
            f[j, k], f[k, j] = 1j, 1j
            mats.append(f / np.sqrt(2))
    for j in range(n - 1):
        e = np.zeros((n, n), dtype=complex)
        e[j, j], e[j + 1, j + 1] = 1j, -1j
        mats.append(e / np.sqrt(2))
    return mats


def pi_k_operator(k):
    """Real matrix of the multiplicative bivector on a spanning su(n) basis."""
    from ._linalg import RealSubspace, operator_matrix

    n = np.asarray(k).shape[0]
    sub = RealSubspace.span(_su_basis(n))
    k = np.asarray(k, dtype=complex)
    k_inv = k.conj().T
    op = lambda phi: hilbert(phi) - k @ hilbert(k_inv @ phi @ k) @ k_inv
    return sub, operator_matrix(op, sub, sub)


def big_pi_k_operator(k):
    from ._linalg import RealSubspace, operator_matrix

    n = np.asarray(k).shape[0]
    sub = RealSubspace.span(_su_basis(n))
    k = np.asarray(k, dtype=complex)
    k_inv = k.conj().T
    op = lambda phi: hilbert(phi) + k @ hilbert(k_inv @ phi @ k) @ k_inv
    return sub, operator_matrix(op, sub, sub)


def w0_translate_check(n, k, phi, psi):
    """Both sides of the longest-element translation identity at the point w0 k.

    Returns (lhs, rhs): the pushforward of the multiplicative bivector through
    left translation by w0, and the negated homogeneous bivector, both
    evaluated at w0 k on the covectors (phi, psi).
    """
    from .weyl import longest_perm, reduced_word

    w0 = representative(n, reduced_word(longest_perm(n)))
    w0_inv = w0.conj().T
    lhs = pi_k(k, w0_inv @ phi @ w0, w0_inv @ psi @ w0)
    rhs = -big_pi_k(w0 @ k, phi, psi)
    return lhs, rhs


def su2_k_of_zeta(zeta):
    """The explicit SU(2) point of the lower-triangular coordinate zeta."""
    zeta = complex(zeta)
    a = (1.0 + abs(zeta) ** 2) ** -0.5
    lower = np.array([[1.0, 0.0], [zeta, 1.0]], dtype=complex)
    diag = np.diag([a, 1.0 / a]).astype(complex)
    upper = np.array([[1.0, -np.conj(zeta)], [0.0, 1.0]], dtype=complex)
    return lower @ diag @ upper


def _prefix_reps(n, word):
    """Representatives of the word prefixes w_0 = e, w_1, ..., w_(m-1)."""
    reps = [np.eye(n, dtype=complex)]
    for a in word[:-1]:
        from .weyl import r_gamma

        reps.append(r_gamma(n, a) @ reps[-1])
    return reps


def lu_unitary_point(n, word, zeta):
    """Ordered product of conjugated root-subgroup points: the leaf point in K."""
    word, zeta = list(word), list(zeta)
    if not is_reduced(n, word):
        raise ValueError("word is not reduced")
    if len(word) != len(zeta):
        raise ValueError("word and zeta lengths differ")
    reps = _prefix_reps(n, word)
    out = np.eye(n, dtype=complex)
    for j, (a, z) in enumerate(zip(word, zeta)):
        w = reps[j]
        factor = np.linalg.inv(w) @ i_gamma(n, a, su2_k_of_zeta(z)) @ w
        out = factor @ out
    return out


def lu_coordinates_to_l(n, word, zeta):
    """Lower-triangular leaf coordinate l(zeta): the Gauss l-factor of the product."""
    k = lu_unitary_point(n, word, zeta)
    l, d, u = gauss_ldu(k)
    return l


def lu_a_product(n, word, zeta):
    """Closed-form abelian factor: product of (1+|z_j|^2) to conjugated-coroot powers."""
    word, zeta = list(word), list(zeta)
    if not is_reduced(n, word):
        raise ValueError("word is not reduced")
    datum = RootDatum(n)
    reps = _prefix_reps(n, word)
    out = np.eye(n, dtype=complex)
    for j, (a, z) in enumerate(zip(word, zeta)):
        w = reps[j]
        h = np.linalg.inv(w) @ datum.coroot(a) @ w
        out = out @ np.diag(np.exp(-0.5 * np.log1p(abs(z) ** 2) * np.diag(h).real))
    return out


def lu_form_coefficients(n, word, zeta):
    """Leaf-form coefficients c_j = 1/(<gamma_j, gamma_j> (1 + |z_j|^2))."""
    word, zeta = list(word), list(zeta)
    datum = RootDatum(n)
    return [1.0 / (datum.root_norm2(a) * (1.0 + abs(z) ** 2))
            for a, z in zip(word, zeta)]


def haar_density(n, word, zeta):
    """Invariant-measure density: product of (1+|z_j|^2)^(delta_check(...) - 1)."""
    word, zeta = list(word), list(zeta)
    if not is_reduced(n, word):
        raise ValueError("word is not reduced")
    datum = RootDatum(n)
    reps = _prefix_reps(n, word)
    out = 1.0
    for j, (a, z) in enumerate(zip(word, zeta)):
        w = reps[j]
        h = np.linalg.inv(w) @ datum.coroot(a) @ w
        expo = datum.delta_check(np.diag(np.diag(h))).real - 1.0
        out *= (1.0 + abs(z) ** 2) ** expo
    return float(out)


def torus_basis(n):
    """Frobenius-orthonormal basis of the diagonal torus algebra of su(n)."""
    mats = []
    for j in range(n - 1):
        e = np.zeros((n, n), dtype=complex)
        e[j, j], e[j + 1, j + 1] = 1j, -1j
        mats.append(e)
    from ._linalg import RealSubspace

    return RealSubspace.span(mats).matrices()


def momentum_in_coordinates(n, word, zeta):
    """Momentum coefficients -(i/2) log(a-product) against the torus basis."""
    a = lu_a_product(n, word, zeta)
    val = -0.5j * np.diag(np.log(np.diag(a).real))
    return [float(trace_form(val, b).real) for b in torus_basis(n)]


def torus_rotate_zeta(n, word, zeta, t):
    """Coordinates of the torus-conjugated point: z_j rotates by a root character.

    Conjugating the defining product by a diagonal torus element t rotates each
    coordinate by the unit character exp(-gamma_j(Ad(w_(j-1)) log t)).
    """
    word, zeta = list(word), list(zeta)
    t = np.asarray(t, dtype=complex)
    log_t = np.diag(np.log(np.diag(t)))
    datum = RootDatum(n)
    reps = _prefix_reps(n, word)
    out = []
    for j, (a, z) in enumerate(zip(word, zeta)):
        w = reps[j]
        h = w @ log_t @ np.linalg.inv(w)
        out.append(z * np.exp(-datum.gamma(a, np.diag(np.diag(h)))))
    return out


def density_report(n, word, zeta) -> DensityReport:
    """Bundle the closed-form leaf data at one coordinate point."""
    return DensityReport(
        word=tuple(word),
        zeta=tuple(complex(z) for z in zeta),
        form_coefficients=tuple(lu_form_coefficients(n, word, zeta)),
        a_value=lu_a_product(n, word, zeta),
        haar_density=haar_density(n, word, zeta),
        momentum=tuple(momentum_in_coordinates(n, word, zeta)),
    )
