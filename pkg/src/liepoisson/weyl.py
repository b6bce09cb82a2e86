"""Type-A root datum, Weyl group combinatorics, and unitary representatives.

Permutations are 0-indexed image tuples.  A word is a list of 1-based simple
reflection indices [a1, ..., am]; its group element is the ordered product
r(am) ... r(a1), i.e. the first letter acts first under conjugation.  Each
simple reflection is represented by the unitary lift of [[0, i], [i, 0]]
into the corresponding 2 x 2 block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "RootDatum",
    "WeylElement",
    "identity_perm",
    "compose",
    "inverse_perm",
    "inversions",
    "perm_of_word",
    "is_reduced",
    "reduced_word",
    "longest_perm",
    "minimal_prefix_extension",
    "r_gamma",
    "i_gamma",
    "representative",
    "make_weyl_element",
    "evaluate_functional",
]


@dataclass(frozen=True)
class RootDatum:
    """Simple roots, coroots, and dominant-weight data for sl(n)."""

    n: int

    def coroot(self, j):
        """h_gamma_j = E_jj - E_(j+1)(j+1) (1-based j)."""
        if not 1 <= j <= self.n - 1:
            raise ValueError(f"simple root index {j} out of range")
        h = np.zeros((self.n, self.n), dtype=complex)
        h[j - 1, j - 1] = 1.0
        h[j, j] = -1.0
        return h

    def gamma(self, j, h):
        """Value of the j-th simple root on a diagonal matrix."""
        h = _require_diagonal(h)
        return complex(h[j - 1, j - 1] - h[j, j])

    def root_norm2(self, j):
        """<gamma_j, gamma_j> under the trace-form identification (2 in type A)."""
        return float(np.trace(self.coroot(j) @ self.coroot(j)).real)

    def fundamental_weight(self, j, h):
        """Value of the j-th dominant integral functional on a diagonal matrix."""
        h = _require_diagonal(h)
        return complex(np.sum(np.diag(h)[:j]))

    def delta_check(self, h):
        """Sum of the dominant integral functionals, evaluated on a diagonal matrix."""
        h = _require_diagonal(h)
        return complex(sum(self.fundamental_weight(j, h) for j in range(1, self.n)))


def _require_diagonal(h, tol=1e-10):
    h = np.asarray(h, dtype=complex)
    off = np.linalg.norm(h - np.diag(np.diag(h)))
    if off > tol * max(1.0, np.linalg.norm(h)):
        raise ValueError("functional evaluation requires a diagonal argument")
    return h


def identity_perm(n):
    return tuple(range(n))


def compose(p, q):
    """(p o q)[i] = p[q[i]]: apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(q)))


def inverse_perm(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def inversions(p):
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def _simple(n, a):
    """Simple transposition s_a swapping positions a-1, a (1-based a)."""
    p = list(range(n))
    p[a - 1], p[a] = p[a], p[a - 1]
    return tuple(p)


def perm_of_word(n, word):
    """Permutation of a word: letters act in order, first letter first."""
    p = identity_perm(n)
    for a in word:
        if not 1 <= a <= n - 1:
            raise ValueError(f"letter {a} out of range for rank {n}")
        p = compose(_simple(n, a), p)
    return p


def is_reduced(n, word):
    return inversions(perm_of_word(n, word)) == len(word)


def reduced_word(perm):
    """A reduced word for perm, extracted by repeated descent removal."""
    n = len(perm)
    q = tuple(perm)
    peeled = []
    while q != identity_perm(n):
        pos = {v: i for i, v in enumerate(q)}
        # letter b shortens q from the left iff value b sits before value b-1
        for b in range(1, n):
            if pos[b] < pos[b - 1]:
                break
        else:
            raise AssertionError("no descent found for non-identity permutation")
        peeled.append(b)
        q = compose(_simple(n, b), q)
    return list(reversed(peeled))


def longest_perm(n):
    return tuple(reversed(range(n)))


def minimal_prefix_extension(n, word):
    """Reduced word for the longest element whose first letters are the given word."""
    if not is_reduced(n, word):
        raise ValueError("word is not reduced")
    w = perm_of_word(n, word)
    rest = compose(longest_perm(n), inverse_perm(w))
    ext = list(word) + reduced_word(rest)
    if not is_reduced(n, ext):
        raise AssertionError("length additivity failed in prefix extension")
    return ext


def i_gamma(n, j, m2):
    """Insert a 2 x 2 matrix into rows/columns (j, j+1) of the identity (1-based j)."""
    out = np.eye(n, dtype=complex)
    out[j - 1 : j + 1, j - 1 : j + 1] = np.asarray(m2, dtype=complex)
    return out


def r_gamma(n, j):
    """Fixed unitary representative of the j-th simple reflection."""
    return i_gamma(n, j, np.array([[0.0, 1j], [1j, 0.0]]))


def representative(n, word):
    """Ordered product of simple reflection representatives over a word."""
    out = np.eye(n, dtype=complex)
    for a in word:
        out = r_gamma(n, a) @ out
    return out


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element with a chosen reduced word and unitary representative."""

    n: int
    perm: tuple
    word: tuple
    rep: np.ndarray

    def __post_init__(self):
        rep = np.array(self.rep, dtype=complex)
        rep.setflags(write=False)
        object.__setattr__(self, "rep", rep)

    @property
    def length(self):
        return len(self.word)


def make_weyl_element(n, word=None, perm=None):
    """Build a WeylElement from a word or a permutation."""
    if word is None:
        if perm is None:
            raise ValueError("need a word or a permutation")
        word = reduced_word(perm)
    word = list(word)
    p = perm_of_word(n, word)
    if perm is not None and tuple(perm) != p:
        raise ValueError("word and permutation disagree")
    if not is_reduced(n, word):
        raise ValueError("word is not reduced")
    return WeylElement(n=n, perm=p, word=tuple(word), rep=representative(n, word))


def evaluate_functional(datum: RootDatum, f, h, j=None):
    """Evaluate gamma_j or delta_check on a diagonal matrix via the root datum."""
    if f == "gamma":
        if j is None:
            raise ValueError("gamma evaluation needs the simple-root index")
        return datum.gamma(j, h)
    if f == "delta_check":
        return datum.delta_check(h)
    raise ValueError(f"unknown functional {f!r}")
