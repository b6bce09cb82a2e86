"""Concrete symmetric-space realizations and their linear-algebra toolkit.

Two families of instances are supported:

* ``grass``: the SU(p,q) realization inside sl(p+q, C); the involution
  Theta is conjugation by J = diag(I_p, -I_q).
* ``group``: the group case K = SU(n); elements are pairs of n x n
  matrices stored as a single block-diagonal 2n x 2n matrix, and Theta
  swaps the two blocks.

Algebra elements are per-block traceless complex arrays; group elements
have determinant one per block.  All operations are pure functions of
immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from ._linalg import RealSubspace, kernel_basis, operator_matrix

__all__ = [
    "SpaceInstance",
    "TagError",
    "AlgebraElement",
    "GroupElement",
    "TangentVector",
    "CotangentVector",
    "comm",
    "trace_form",
    "triangular_parts",
    "hilbert",
    "nijenhuis",
    "involution",
    "project",
    "i_twist",
    "membership_residual",
    "sample_matrix",
    "sample",
]

TAG_TOL = 1e-10

ALGEBRA_TAGS = (
    "g", "u", "iu", "g0", "ig0", "k", "p", "ip",
    "h", "t", "a", "t0", "a0", "it0", "ia0", "h0", "ih0",
    "n-", "n+", "b-",
)
GROUP_TAGS = ("G", "U", "G0", "K", "T", "A", "A0", "N-", "N+")


class TagError(ValueError):
    """An element fails the membership test of its declared tag."""


def comm(a, b):
    return a @ b - b @ a


def trace_form(x, y):
    """Invariant bilinear form tr(x y), summed over blocks."""
    return complex(np.trace(x @ y))


def triangular_parts(x):
    """Split into (strictly lower, diagonal, strictly upper) parts."""
    x = np.asarray(x)
    lower = np.tril(x, -1)
    upper = np.triu(x, 1)
    return lower, x - lower - upper, upper


def hilbert(x):
    """Hilbert transform of the triangular decomposition: -i on n-, 0 on h, +i on n+."""
    lower, _, upper = triangular_parts(x)
    return -1j * lower + 1j * upper


def nijenhuis(a, b):
    """Nijenhuis torsion of the Hilbert transform (vanishes identically)."""
    ha, hb = hilbert(a), hilbert(b)
    return comm(a, b) + hilbert(comm(ha, b) + comm(a, hb)) - comm(ha, hb)


@dataclass(frozen=True)
class SpaceInstance:
    """A concrete symmetric-space realization bundling involutions and projectors."""

    kind: str
    p: int = 0
    q: int = 0
    n: int = 0
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def grass(cls, p, q):
        if p < 1 or q < 1:
            raise ValueError("grass requires positive p, q")
        return cls("grass", p=p, q=q)

    @classmethod
    def group(cls, n):
        if n < 2:
            raise ValueError("group requires n >= 2")
        return cls("group", n=n)

    @classmethod
    def parse(cls, text):
        """Parse an instance spec string, e.g. 'grass:2,1' or 'group:3'."""
        kind, _, rest = text.strip().partition(":")
        try:
            if kind == "grass":
                p, q = (int(v) for v in rest.split(","))
                return cls.grass(p, q)
            if kind == "group":
                return cls.group(int(rest))
        except ValueError as exc:
            raise ValueError(f"bad instance spec {text!r}") from exc
        raise ValueError(f"unknown instance kind {kind!r}")

    def __str__(self):
        if self.kind == "grass":
            return f"grass:{self.p},{self.q}"
        return f"group:{self.n}"

    @property
    def dim(self):
        """Total stored matrix dimension."""
        return self.p + self.q if self.kind == "grass" else 2 * self.n

    @property
    def blocks(self):
        if self.kind == "grass":
            return ((0, self.dim),)
        return ((0, self.n), (self.n, 2 * self.n))

    @property
    def j_matrix(self):
        if self.kind != "grass":
            raise ValueError("J is only defined for grass instances")
        return np.diag(np.concatenate([np.ones(self.p), -np.ones(self.q)]))

    # -- involutions -------------------------------------------------

    def theta(self, x):
        """The symmetric-space involution (same linear map on group and algebra)."""
        x = np.asarray(x)
        if self.kind == "grass":
            j = self.j_matrix
            return j @ x @ j
        nb = self.n
        out = np.empty_like(x)
        out[:nb, :nb] = x[nb:, nb:]
        out[nb:, nb:] = x[:nb, :nb]
        out[:nb, nb:] = x[nb:, :nb]
        out[nb:, :nb] = x[:nb, nb:]
        return out

    def minus_star(self, x, kind="algebra"):
        """Cartan involution fixing U: g -> (g^dagger)^-1, x -> -x^dagger."""
        x = np.asarray(x)
        if kind == "group":
            return np.linalg.inv(x).conj().T
        return -x.conj().T

    def sigma(self, x, kind="algebra"):
        """Cartan involution fixing G0 (anti-linear on the algebra)."""
        return self.theta(self.minus_star(x, kind=kind))

    # -- block helpers -----------------------------------------------

    def block_traceless(self, x):
        """Remove the per-block trace (projection onto per-block traceless matrices)."""
        out = np.array(x, dtype=complex)
        for lo, hi in self.blocks:
            nb = hi - lo
            tr = np.trace(out[lo:hi, lo:hi]) / nb
            out[lo:hi, lo:hi] -= tr * np.eye(nb)
        return out

    def clean_blocks(self, x):
        """Zero the off-diagonal blocks (roundoff hygiene for pair storage)."""
        if self.kind != "group":
            return np.asarray(x, dtype=complex)
        return self.embed_pair(self.block(x, 0), self.block(x, 1))

    def embed_pair(self, m1, m2):
        """Assemble a 2n x 2n block-diagonal element from a pair (group kind only)."""
        if self.kind != "group":
            raise ValueError("embed_pair requires a group instance")
        out = np.zeros((self.dim, self.dim), dtype=complex)
        out[: self.n, : self.n] = m1
        out[self.n :, self.n :] = m2
        return out

    def block(self, x, i):
        lo, hi = self.blocks[i]
        return np.asarray(x)[lo:hi, lo:hi]

    # -- projections -------------------------------------------------

    def project(self, which, x, w_hat=None):
        """Orthogonal and Iwasawa-split projections onto the tagged subspaces.

        Orthogonal tags use the conjugation formulas (e.g. ``{Z}_u = (Z - Z^H)/2``);
        the Iwasawa tags ``pr_u``, ``pr_na``, ``pr_g0``, ``pr_nih0`` use the
        triangular split plus a Hermitian split of the diagonal part.
        """
        x = np.asarray(x, dtype=complex)
        if which == "g":
            return self.block_traceless(x)
        if which == "u":
            return (x - x.conj().T) / 2
        if which == "iu":
            return (x + x.conj().T) / 2
        if which == "g0":
            return (x + self.sigma(x)) / 2
        if which == "ig0":
            return (x - self.sigma(x)) / 2
        if which == "k":
            u = self.project("u", x)
            return (u + self.theta(u)) / 2
        if which == "ip":
            u = self.project("u", x)
            return (u - self.theta(u)) / 2
        if which == "p":
            g0 = self.project("g0", x)
            return (g0 - self.theta(g0)) / 2
        if which == "h":
            return self.block_traceless(np.diag(np.diag(x)))
        if which == "t":
            d = self.project("h", x)
            return (d - d.conj().T) / 2
        if which == "a":
            d = self.project("h", x)
            return (d + d.conj().T) / 2
        if which == "t0":
            t = self.project("t", x)
            return (t + self.theta(t)) / 2
        if which == "ia0":
            t = self.project("t", x)
            return (t - self.theta(t)) / 2
        if which == "a0":
            a = self.project("a", x)
            return (a - self.theta(a)) / 2
        if which == "it0":
            a = self.project("a", x)
            return (a + self.theta(a)) / 2
        if which == "h0":
            d = self.project("h", x)
            return (d + self.sigma(d)) / 2
        if which == "ih0":
            d = self.project("h", x)
            return (d - self.sigma(d)) / 2
        if which == "n-":
            return np.tril(x, -1)
        if which == "n+":
            return np.triu(x, 1)
        if which == "b-":
            return np.tril(x, -1) + self.project("h", x)
        if which == "tw":
            if w_hat is None:
                raise ValueError("projection onto t_w needs the w_hat representative")
            return self._tw_subspace(w_hat).project(x)
        if which == "pr_u":
            lower, diag, upper = triangular_parts(x)
            return upper - upper.conj().T + self.project("t", diag)
        if which == "pr_na":
            lower, diag, upper = triangular_parts(x)
            return lower + upper.conj().T + self.project("a", diag)
        if which == "pr_g0":
            lower, diag, upper = triangular_parts(x)
            return self.sigma(upper) + self.project("h0", diag) + upper
        if which == "pr_nih0":
            lower, diag, upper = triangular_parts(x)
            return lower - self.sigma(upper) + self.project("ih0", diag)
        raise ValueError(f"unknown projector tag {which!r}")

    def i_twist(self, x):
        """Identity on the Theta-fixed part, multiplication by i on the rest.

        Restricted to g0 this maps onto u, and restricted to u back onto g0;
        the double application recovers Theta.
        """
        x = np.asarray(x, dtype=complex)
        tx = self.theta(x)
        return (x + tx) / 2 + 1j * (x - tx) / 2

    # -- subspace bases ----------------------------------------------

    def ambient_basis(self):
        """Real spanning basis of g (per-block traceless matrices)."""
        if "ambient" not in self._cache:
            mats = []
            d = self.dim
            for lo, hi in self.blocks:
                nb = hi - lo
                for j in range(lo, hi):
                    for k in range(lo, hi):
                        if j == k:
                            continue
                        e = np.zeros((d, d), dtype=complex)
                        e[j, k] = 1.0
                        mats.append(e)
                        mats.append(1j * e)
                for j in range(lo, hi - 1):
                    e = np.zeros((d, d), dtype=complex)
                    e[j, j] = 1.0
                    e[j + 1, j + 1] = -1.0
                    mats.append(e)
                    mats.append(1j * e)
            self._cache["ambient"] = mats
        return self._cache["ambient"]

    def subspace(self, tag, w_hat=None):
        """Orthonormal real basis of a tagged subspace, cached per instance."""
        if tag == "tw":
            return self._tw_subspace(w_hat)
        if tag not in self._cache:
            if tag not in ALGEBRA_TAGS:
                raise ValueError(f"unknown subspace tag {tag!r}")
            mats = [self.project(tag, b) for b in self.ambient_basis()]
            self._cache[tag] = RealSubspace.span(mats)
        return self._cache[tag]

    def _tw_subspace(self, w_hat):
        """+1 eigenspace of Ad(w_hat) o Theta restricted to t."""
        w_hat = np.asarray(w_hat)
        key = ("tw", w_hat.tobytes())
        if key not in self._cache:
            t = self.subspace("t")
            w_inv = np.linalg.inv(w_hat)
            mat = operator_matrix(lambda m: w_hat @ self.theta(m) @ w_inv, t, t)
            ker = kernel_basis(mat - np.eye(t.dim), rtol=1e-8)
            basis = np.asarray(t.basis_vectors() @ ker)
            self._cache[key] = RealSubspace(basis, (self.dim, self.dim))
        return self._cache[key]

    def normalizes_torus(self, w_hat, tol=1e-10):
        """Whether conjugation by w_hat maps the diagonal torus to itself."""
        w_inv = np.linalg.inv(w_hat)
        for b in self.subspace("t").matrices():
            m = w_hat @ b @ w_inv
            if np.linalg.norm(m - np.diag(np.diag(m))) > tol * max(1.0, np.linalg.norm(m)):
                return False
        return True


def involution(inst: SpaceInstance, which, x, kind="algebra"):
    """Apply one of the involutions theta, sigma, minus_star."""
    if which == "theta":
        return inst.theta(x)
    if which == "sigma":
        return inst.sigma(x, kind=kind)
    if which == "minus_star":
        return inst.minus_star(x, kind=kind)
    raise ValueError(f"unknown involution {which!r}")


def project(inst: SpaceInstance, which, x, w_hat=None):
    """Module-level alias for :meth:`SpaceInstance.project`."""
    return inst.project(which, x, w_hat=w_hat)


def i_twist(inst: SpaceInstance, x):
    return inst.i_twist(x)


# -- membership ------------------------------------------------------


def membership_residual(inst: SpaceInstance, tag, x):
    """Frobenius residual of the defining conditions of a tag."""
    x = np.asarray(x)
    if tag in ALGEBRA_TAGS:
        return float(np.linalg.norm(x - inst.project(tag, x)))
    d = inst.dim
    eye = np.eye(d)
    if tag == "G":
        dets = [abs(np.linalg.det(inst.block(x, i)) - 1.0) for i in range(len(inst.blocks))]
        return float(max(dets))
    if tag == "U":
        return max(membership_residual(inst, "G", x),
                   float(np.linalg.norm(x.conj().T @ x - eye)))
    if tag == "K":
        return max(membership_residual(inst, "U", x),
                   float(np.linalg.norm(inst.theta(x) - x)))
    if tag == "G0":
        base = membership_residual(inst, "G", x)
        if inst.kind == "grass":
            j = inst.j_matrix
            return max(base, float(np.linalg.norm(x.conj().T @ j @ x - j)))
        b1, b2 = inst.block(x, 0), inst.block(x, 1)
        return max(base, float(np.linalg.norm(b2 - np.linalg.inv(b1).conj().T)))
    if tag == "T":
        offdiag = np.linalg.norm(x - np.diag(np.diag(x)))
        return max(membership_residual(inst, "U", x), float(offdiag))
    if tag == "A":
        d_part = np.diag(x)
        res = np.linalg.norm(x - np.diag(d_part))
        res = max(res, np.max(np.abs(d_part.imag)), 0.0 if np.all(d_part.real > 0) else 1.0)
        return max(float(res), membership_residual(inst, "G", x))
    if tag == "A0":
        base = membership_residual(inst, "A", x)
        if base > 0.5:
            return base
        la = np.diag(np.log(np.diag(x).real))
        return max(base, float(np.linalg.norm(la - inst.project("a0", la))))
    if tag == "N-":
        return float(np.linalg.norm(np.triu(x, 0) - np.eye(inst.dim)))
    if tag == "N+":
        return float(np.linalg.norm(np.tril(x, 0) - np.eye(inst.dim)))
    raise ValueError(f"unknown tag {tag!r}")


# -- tagged wrappers -------------------------------------------------


def _check_tag(inst, tag, data, tol=TAG_TOL):
    res = membership_residual(inst, tag, data)
    scale = max(1.0, float(np.linalg.norm(data)))
    if res > tol * scale:
        raise TagError(f"element fails {tag!r} membership (residual {res:.3e})")


@dataclass(frozen=True)
class AlgebraElement:
    """A complex square matrix tagged with the subspace it inhabits."""

    space: SpaceInstance
    tag: str
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=complex)
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        if self.tag not in ALGEBRA_TAGS:
            raise TagError(f"unknown algebra tag {self.tag!r}")
        _check_tag(self.space, self.tag, data)


@dataclass(frozen=True)
class GroupElement:
    """A complex square matrix tagged with the group it belongs to."""

    space: SpaceInstance
    tag: str
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=complex)
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        if self.tag not in GROUP_TAGS:
            raise TagError(f"unknown group tag {self.tag!r}")
        _check_tag(self.space, self.tag, data)


@dataclass(frozen=True)
class TangentVector:
    """Equivariant-bundle representative [base, vec] of a (co)tangent vector."""

    base: np.ndarray
    vec: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "base", np.asarray(self.base, dtype=complex))
        object.__setattr__(self, "vec", np.asarray(self.vec, dtype=complex))


CotangentVector = TangentVector


def as_matrix(x):
    """Accept tagged wrappers or plain arrays."""
    if isinstance(x, (AlgebraElement, GroupElement)):
        return x.data
    return np.asarray(x, dtype=complex)


# -- sampling --------------------------------------------------------

_GROUP_OF = {"G": "g", "U": "u", "G0": "g0", "K": "k", "T": "t",
             "A": "a", "A0": "a0", "N-": "n-", "N+": "n+"}


def sample_matrix(inst: SpaceInstance, tag, seed):
    """Deterministic pseudo-random element of a tagged subspace or group.

    Algebra tags draw Gaussian coefficients in an orthonormal basis of the
    subspace; group tags exponentiate a spectrally-normalized algebra sample,
    which keeps factorizations well conditioned.
    """
    rng = np.random.default_rng(seed)
    if tag in ALGEBRA_TAGS:
        return inst.clean_blocks(inst.subspace(tag).random_element(rng))
    if tag in _GROUP_OF:
        x = inst.clean_blocks(inst.subspace(_GROUP_OF[tag]).random_element(rng))
        nrm = np.linalg.norm(x, 2)
        if nrm > 0:
            x *= rng.uniform(0.25, 0.95) / nrm
        return inst.clean_blocks(sla.expm(x))
    raise ValueError(f"unknown sample tag {tag!r}")


def sample(inst: SpaceInstance, tag, seed):
    """Tagged version of :func:`sample_matrix`."""
    data = sample_matrix(inst, tag, seed)
    if tag in ALGEBRA_TAGS:
        return AlgebraElement(inst, tag, data)
    return GroupElement(inst, tag, data)
