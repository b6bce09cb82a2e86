"""Verification harness: finite-difference exterior calculus and theorem suites.

Each suite runs the invariants of one module over seeded samples and reports
per-check maximal residuals against declared tolerances.  Failures never
abort a suite; the report aggregates everything.  Per-sample seeds derive
from the suite seed as ``seed ^ index`` so serial and parallel runs agree.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from ._linalg import RealSubspace, kernel_basis, subspace_distance
from .core import (
    ALGEBRA_TAGS,
    SpaceInstance,
    TangentVector,
    comm,
    hilbert,
    membership_residual,
    nijenhuis,
    sample_matrix,
    trace_form,
)
from . import compact, factorization, group_case, hamiltonian, noncompact
from .factorization import (
    OffTopStratumError,
    birkhoff,
    bruhat_cell,
    cartan_embed,
    cell_is_identity,
    gauss_ldu,
    iwasawa,
    layer_of,
)
from .hamiltonian import (
    grass_leaf_candidates,
    group_leaf,
    make_leaf,
    momentum,
    momentum_pairing,
    omega_xy,
    sample_torus,
    stabilizer_algebra,
    t_w_basis,
    torus_act,
)
from .weyl import longest_perm, reduced_word as weyl_reduced_word

__all__ = [
    "kappa_field",
    "d_omega_fd",
    "CheckRecord",
    "SuiteReport",
    "run_suite",
    "SUITES",
    "leaves_of",
]

DEFAULT_STEP = 1e-4


# -- infinitesimal action and exterior derivative ---------------------


def kappa_field(inst: SpaceInstance, x, g0) -> TangentVector:
    """Representative of the infinitesimal left action of x in g0 at the coset g0 K."""
    g0 = np.asarray(g0, dtype=complex)
    rep = inst.project("p", np.linalg.inv(g0) @ np.asarray(x) @ g0)
    return TangentVector(g0, rep)


def _omega_hat(inst, w1, g0, x, y):
    """Antisymmetrized two-form evaluation (exactly zero on equal arguments)."""
    return 0.5 * (omega_xy(inst, w1, g0, x, y) - omega_xy(inst, w1, g0, y, x))


def d_omega_fd(inst: SpaceInstance, w1, g0, x, y, z, step=DEFAULT_STEP):
    """Finite-difference exterior derivative of the two-form on action fields.

    Central differences for the directional terms; the bracket terms use the
    anti-homomorphism sign of the action, so the result is zero up to O(step^2)
    for the closed two-form.
    """
    g0 = np.asarray(g0, dtype=complex)

    def om_at(g, a, b):
        g_inv = np.linalg.inv(g)
        ra = inst.project("p", g_inv @ a @ g)
        rb = inst.project("p", g_inv @ b @ g)
        return _omega_hat(inst, w1, g, ra, rb)

    def deriv(a, b, c):
        gp = sla.expm(step * a) @ g0
        gm = sla.expm(-step * a) @ g0
        return (om_at(gp, b, c) - om_at(gm, b, c)) / (2 * step)

    total = deriv(x, y, z) + deriv(y, z, x) + deriv(z, x, y)
    total += om_at(g0, comm(x, y), z) + om_at(g0, comm(y, z), x) + om_at(g0, comm(z, x), y)
    return total


# -- leaf inventory ----------------------------------------------------


def leaves_of(inst: SpaceInstance):
    """Leaf parameters exercised by the suites (identity leaf always included)."""
    key = "verify_leaves"
    if key not in inst._cache:
        if inst.kind == "group":
            words = [[]]
            if inst.n >= 2:
                words.append([1])
            if inst.n >= 3:
                words.append([1, 2])
            inst._cache[key] = [group_leaf(inst, w) for w in words]
        else:
            inst._cache[key] = grass_leaf_candidates(inst)
    return inst._cache[key]


def _w1_choices(inst, seed):
    """Identity, a generic unitary, and a nontrivial leaf representative."""
    out = [np.eye(inst.dim, dtype=complex), sample_matrix(inst, "U", seed ^ 0x5EED)]
    nontrivial = [lf for lf in leaves_of(inst) if not cell_is_identity(lf.label)]
    if nontrivial:
        out.append(nontrivial[0].w1)
    return out


# -- core suite --------------------------------------------------------


def check_nijenhuis(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(samples):
        a = sample_matrix(inst, "g", seed ^ (2 * i))
        b = sample_matrix(inst, "g", seed ^ (2 * i + 1))
        worst = max(worst, float(np.linalg.norm(nijenhuis(a, b))))
        myb = comm(hilbert(a), hilbert(b)) - hilbert(comm(hilbert(a), b) + comm(a, hilbert(b)))
        worst = max(worst, float(np.linalg.norm(myb - comm(a, b))))
    return worst


def check_hilbert_skew(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(samples):
        x = sample_matrix(inst, "g", seed ^ (2 * i))
        y = sample_matrix(inst, "g", seed ^ (2 * i + 1))
        worst = max(worst, abs(trace_form(hilbert(x), y) + trace_form(x, hilbert(y))))
    h_sq = 0.0
    for i in range(samples):
        x = sample_matrix(inst, "n-", seed ^ i) + sample_matrix(inst, "n+", ~(seed ^ i) & 0xFFFFFFFF)
        h_sq = max(h_sq, float(np.linalg.norm(hilbert(hilbert(x)) + x)))
    return max(worst, h_sq)


def check_projection_diagrams(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(samples):
        z = sample_matrix(inst, "u", seed ^ (2 * i))
        worst = max(worst, float(np.linalg.norm(inst.project("pr_u", 1j * z) - hilbert(z))))
        z = sample_matrix(inst, "g0", seed ^ (2 * i + 1))
        worst = max(worst, float(np.linalg.norm(inst.project("pr_g0", 1j * z) - hilbert(z))))
    return worst


_ORTH_TAGS = ("u", "iu", "g0", "ig0", "k", "p", "ip", "h", "t", "a", "t0", "a0", "h0")


def check_projector_idempotent(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(max(1, samples // 10)):
        z = sample_matrix(inst, "g", seed ^ i)
        for tag in _ORTH_TAGS + ("n-", "n+", "b-", "pr_u", "pr_na", "pr_g0", "pr_nih0"):
            p = inst.project(tag, z)
            worst = max(worst, float(np.linalg.norm(inst.project(tag, p) - p)))
    return worst


def check_projector_orthogonality(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(max(1, samples // 10)):
        z = sample_matrix(inst, "g", seed ^ (2 * i))
        w = sample_matrix(inst, "g", seed ^ (2 * i + 1))
        for tag in _ORTH_TAGS:
            p, q = inst.project(tag, z), w - inst.project(tag, w)
            worst = max(worst, abs(trace_form(p, q).real))
    return worst


def check_form_ad_invariance(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(samples):
        z = sample_matrix(inst, "g", seed ^ (3 * i))
        x = sample_matrix(inst, "g", seed ^ (3 * i + 1))
        y = sample_matrix(inst, "g", seed ^ (3 * i + 2))
        worst = max(worst, abs(trace_form(comm(z, x), y) + trace_form(x, comm(z, y))))
    return worst


def check_involutions(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(samples):
        x = sample_matrix(inst, "g", seed ^ i)
        th = inst.theta(x)
        ms = inst.minus_star(x)
        worst = max(worst, float(np.linalg.norm(inst.sigma(x) - inst.minus_star(th))))
        worst = max(worst, float(np.linalg.norm(inst.theta(ms) - inst.minus_star(th))))
        worst = max(worst, float(np.linalg.norm(inst.theta(inst.sigma(x)) - inst.sigma(th))))
        k = sample_matrix(inst, "k", seed ^ (i + 7919))
        worst = max(worst, float(np.linalg.norm(inst.theta(k) - k)))
        n = sample_matrix(inst, "n-", seed ^ (i + 104729))
        worst = max(worst, float(np.linalg.norm(np.triu(inst.theta(n)))))
    return worst


def check_sample_membership(inst, samples, seed, step=None):
    worst = 0.0
    tags = list(ALGEBRA_TAGS) + ["G", "U", "G0", "K", "T", "A", "A0", "N-", "N+"]
    for i in range(max(1, samples // 10)):
        for tag in tags:
            m = sample_matrix(inst, tag, seed ^ i)
            worst = max(worst, membership_residual(inst, tag, m))
    return worst


def check_t0_maximal_abelian(inst, samples, seed, step=None):
    ksub = inst.subspace("k")
    t0 = inst.subspace("t0")
    rows = []
    for b in t0.matrices():
        op = lambda x, b=b: comm(b, x)
        from ._linalg import operator_matrix

        rows.append(operator_matrix(op, ksub, ksub))
    if not rows:
        return 1.0
    stacked = np.vstack(rows)
    ker = kernel_basis(stacked)
    return 0.0 if ker.shape[1] == t0.dim else 1.0


# -- factorization suite ----------------------------------------------


def check_iwasawa_roundtrip(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(samples):
        g = sample_matrix(inst, "G", seed ^ i)
        f = iwasawa(inst, g)
        worst = max(worst, f.residual(g))
        worst = max(worst, float(np.linalg.norm(f.a0 @ f.a1 - f.a)))
        worst = max(worst, membership_residual(inst, "N-", f.l))
        worst = max(worst, membership_residual(inst, "U", f.u))
        la0 = np.diag(np.log(np.diag(f.a0).real))
        la1 = np.diag(np.log(np.diag(f.a1).real))
        worst = max(worst, float(np.linalg.norm(la0 - inst.project("a0", la0))))
        worst = max(worst, float(np.linalg.norm(la1 - inst.project("it0", la1))))
    return worst


def check_u_equivariance(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(samples):
        g = sample_matrix(inst, "G", seed ^ (2 * i))
        k = sample_matrix(inst, "K", seed ^ (2 * i + 1))
        worst = max(worst, float(np.linalg.norm(iwasawa(inst, g @ k).u - iwasawa(inst, g).u @ k)))
    return worst


def check_dressing_identity(inst, samples, seed, step=None):
    worst = 0.0
    leaves = [lf for lf in leaves_of(inst) if lf.normalizes_torus]
    for lf in leaves:
        for i in range(max(1, samples // max(1, len(leaves)))):
            g0 = sample_matrix(inst, "G0", seed ^ (2 * i))
            t = sample_torus(inst, lf, seed ^ (2 * i + 1))
            lhs = iwasawa(inst, lf.w1 @ (np.linalg.inv(lf.w1) @ t @ lf.w1) @ g0).u
            rhs = t @ iwasawa(inst, lf.w1 @ g0).u
            worst = max(worst, float(np.linalg.norm(lhs - rhs)))
    return worst


def check_dressing_action_property(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(samples):
        u = sample_matrix(inst, "U", seed ^ (3 * i))
        g = sample_matrix(inst, "G0", seed ^ (3 * i + 1))
        h = sample_matrix(inst, "G0", seed ^ (3 * i + 2))
        lhs = hamiltonian.dressing(inst, hamiltonian.dressing(inst, u, g), h)
        rhs = hamiltonian.dressing(inst, u, g @ h)
        worst = max(worst, float(np.linalg.norm(lhs - rhs)))
    return worst


def check_bruhat_birkhoff_iff(inst, samples, seed, step=None):
    bad = 0.0
    for i in range(samples):
        k = sample_matrix(inst, "K", seed ^ i)
        ident = cell_is_identity(bruhat_cell(inst, k))
        try:
            f = birkhoff(inst, k)
            ok = ident and f.residual(k) < 1e-10
            ok = ok and membership_residual(inst, "N-", f.l) < 1e-10
            ok = ok and float(np.linalg.norm(np.abs(np.diag(f.m)) - 1.0)) < 1e-10
        except OffTopStratumError:
            ok = not ident
        if not ok:
            bad = 1.0
    return bad


def check_cartan_embed(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(samples):
        u = sample_matrix(inst, "U", seed ^ i)
        y = cartan_embed(inst, u)
        worst = max(worst, float(np.linalg.norm(np.linalg.inv(y) - inst.theta(y))))
        k = sample_matrix(inst, "K", seed ^ (i + 31337))
        if layer_of(inst, u @ k) != layer_of(inst, u):
            worst = max(worst, 1.0)
    return worst


# -- hamiltonian suite -------------------------------------------------


def check_omega_basics(inst, samples, seed, step=None):
    worst = 0.0
    e = np.eye(inst.dim, dtype=complex)
    for i in range(samples):
        w1 = sample_matrix(inst, "U", seed ^ (4 * i))
        g0 = sample_matrix(inst, "G0", seed ^ (4 * i + 1))
        x = sample_matrix(inst, "p", seed ^ (4 * i + 2))
        y = sample_matrix(inst, "p", seed ^ (4 * i + 3))
        u = iwasawa(inst, w1 @ g0).u
        u_inv = u.conj().T
        raw = trace_form(u_inv @ hilbert(u @ x @ u_inv) @ u, y)
        worst = max(worst, abs(raw.imag))
        a = omega_xy(inst, w1, g0, x, y)
        worst = max(worst, abs(a + omega_xy(inst, w1, g0, y, x)))
        worst = max(worst, abs(a - omega_xy(inst, w1, g0, x, y, path="extended")))
        k = sample_matrix(inst, "K", seed ^ (4 * i + 5))
        k_inv = np.linalg.inv(k)
        worst = max(worst, abs(a - omega_xy(inst, w1, g0 @ k, k_inv @ x @ k, k_inv @ y @ k)))
        # extended operator is the identity on the k-block
        kk = sample_matrix(inst, "k", seed ^ (4 * i + 6))
        z = inst.project("pr_u", u @ kk @ u_inv)
        worst = max(worst, float(np.linalg.norm(inst.i_twist(u_inv @ z @ u) - kk)))
    return worst


def check_closedness(inst, samples, seed, step=DEFAULT_STEP):
    worst = 0.0
    for wi, w1 in enumerate(_w1_choices(inst, seed)):
        for i in range(samples):
            s = seed ^ (8 * i + wi)
            g0 = sample_matrix(inst, "G0", s ^ 11)
            x = sample_matrix(inst, "g0", s ^ 12)
            y = sample_matrix(inst, "g0", s ^ 13)
            z = sample_matrix(inst, "g0", s ^ 14)
            worst = max(worst, abs(d_omega_fd(inst, w1, g0, x, y, z, step=step)))
    return worst


def check_richardson(inst, samples, seed, step=DEFAULT_STEP):
    ratios = []
    for wi, w1 in enumerate(_w1_choices(inst, seed)):
        for i in range(samples):
            s = seed ^ (8 * i + wi)
            g0 = sample_matrix(inst, "G0", s ^ 11)
            x = sample_matrix(inst, "g0", s ^ 12)
            y = sample_matrix(inst, "g0", s ^ 13)
            z = sample_matrix(inst, "g0", s ^ 14)
            r1 = d_omega_fd(inst, w1, g0, x, y, z, step=step)
            r2 = d_omega_fd(inst, w1, g0, x, y, z, step=step / 2)
            if abs(r1) > 1e-9 and abs(r2) > 0:
                ratios.append(abs(r1) / abs(r2))
    if not ratios:
        return 0.0
    med = float(np.median(ratios))
    if 2.5 <= med <= 6.0:
        return 0.0
    return min(abs(med - 2.5), abs(med - 6.0))


def check_degeneracy_kernel(inst, samples, seed, step=None):
    worst = 0.0
    for lf in leaves_of(inst):
        stab = stabilizer_algebra(inst, lf.w1)
        for i in range(max(1, samples // 4)):
            g0 = sample_matrix(inst, "G0", seed ^ i)
            psub, mat = hamiltonian.omega_operator(inst, lf.w1, g0)
            ker = kernel_basis(mat)
            g0_inv = np.linalg.inv(g0)
            target = [inst.project("p", g0_inv @ b @ g0) for b in stab]
            if not stab:
                worst = max(worst, float(ker.shape[1]))
                continue
            tspan = RealSubspace.span(target)
            kspan = RealSubspace(np.asarray(psub.basis_vectors() @ ker), tspan.shape)
            if tspan.dim != kspan.dim:
                worst = max(worst, 1.0)
            else:
                worst = max(worst, subspace_distance(tspan, kspan))
    return worst


def check_stabilizer(inst, samples, seed, step=None):
    worst = 0.0
    for lf in leaves_of(inst):
        stab = stabilizer_algebra(inst, lf.w1)
        for b in stab:
            worst = max(worst, membership_residual(inst, "g0", b))
            v = lf.w1 @ b @ np.linalg.inv(lf.w1)
            worst = max(worst, float(np.linalg.norm(v - inst.project("n-", v) - inst.project("a", v))))
        k = sample_matrix(inst, "K", seed ^ 3)
        if len(stabilizer_algebra(inst, lf.w1 @ k)) != len(stab):
            worst = max(worst, 1.0)
    return worst


def check_t_w(inst, samples, seed, step=None):
    worst = 0.0
    for lf in leaves_of(inst):
        if not lf.normalizes_torus:
            continue
        basis = t_w_basis(inst, lf)
        w_inv = np.linalg.inv(lf.w_hat)
        for b in basis:
            worst = max(worst, float(np.linalg.norm(lf.w_hat @ inst.theta(b) @ w_inv - b)))
        # t_w = t intersect Ad(w1) k
        tsub = inst.subspace("t")
        w1_inv = np.linalg.inv(lf.w1)
        kconj = RealSubspace.span([lf.w1 @ m @ w1_inv for m in inst.subspace("k").matrices()])
        inter = tsub.intersect(kconj)
        if basis:
            bspan = RealSubspace.span(basis)
            if inter.dim != bspan.dim:
                worst = max(worst, 1.0)
            else:
                worst = max(worst, subspace_distance(bspan, inter))
        elif inter.dim:
            worst = max(worst, 1.0)
    return worst


def check_torus_action(inst, samples, seed, step=None):
    worst = 0.0
    for lf in leaves_of(inst):
        if not lf.normalizes_torus or not t_w_basis(inst, lf):
            continue
        for i in range(max(1, samples // 4)):
            g0 = sample_matrix(inst, "G0", seed ^ (3 * i))
            t = sample_torus(inst, lf, seed ^ (3 * i + 1))
            g1 = torus_act(inst, lf, t, g0)
            x = sample_matrix(inst, "p", seed ^ (3 * i + 2))
            y = sample_matrix(inst, "p", seed ^ (3 * i + 5))
            worst = max(worst, membership_residual(inst, "G0", np.linalg.inv(lf.w1) @ t @ lf.w1))
            worst = max(worst, abs(omega_xy(inst, lf.w1, g1, x, y) - omega_xy(inst, lf.w1, g0, x, y)))
            mv0 = momentum(inst, lf, g0).coefficients
            mv1 = momentum(inst, lf, g1).coefficients
            worst = max(worst, float(np.max(np.abs(mv0 - mv1))) if mv0.size else 0.0)
    return worst


def check_momentum_identity(inst, samples, seed, step=DEFAULT_STEP):
    worst = 0.0
    for lf in leaves_of(inst):
        if not lf.normalizes_torus:
            continue
        basis = t_w_basis(inst, lf)
        if not basis:
            continue
        w1_inv = np.linalg.inv(lf.w1)
        for i in range(max(1, samples // 2)):
            rng = np.random.default_rng(seed ^ (2 * i))
            xt = sum(rng.standard_normal() * b for b in basis)
            g0 = sample_matrix(inst, "G0", seed ^ (2 * i + 1))
            y = sample_matrix(inst, "p", seed ^ (2 * i + 4096))
            kx = inst.project("p", np.linalg.inv(g0) @ (w1_inv @ xt @ lf.w1) @ g0)
            lhs = omega_xy(inst, lf.w1, g0, kx, y)
            h = step
            fp = momentum_pairing(inst, lf, g0 @ sla.expm(h * y), xt)
            fm = momentum_pairing(inst, lf, g0 @ sla.expm(-h * y), xt)
            worst = max(worst, abs(lhs - (fp - fm) / (2 * h)))
    return worst


def check_base_point_change(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(samples):
        w1 = sample_matrix(inst, "U", seed ^ (5 * i))
        k = sample_matrix(inst, "K", seed ^ (5 * i + 1))
        g0 = sample_matrix(inst, "G0", seed ^ (5 * i + 2))
        x = sample_matrix(inst, "p", seed ^ (5 * i + 3))
        y = sample_matrix(inst, "p", seed ^ (5 * i + 4))
        k_inv = np.linalg.inv(k)
        a = omega_xy(inst, w1, g0, x, y)
        b = omega_xy(inst, w1 @ k, k_inv @ g0 @ k, k_inv @ x @ k, k_inv @ y @ k)
        worst = max(worst, abs(a - b))
    return worst


# -- noncompact suite --------------------------------------------------


def check_pi_noncompact_skew(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(samples):
        g0 = sample_matrix(inst, "G0", seed ^ (3 * i))
        x = sample_matrix(inst, "p", seed ^ (3 * i + 1))
        y = sample_matrix(inst, "p", seed ^ (3 * i + 2))
        worst = max(worst, abs(noncompact.pi_noncompact(inst, g0, x, y)
                               + noncompact.pi_noncompact(inst, g0, y, x)))
        worst = max(worst, abs(noncompact.pi_noncompact(inst, g0, x, x)))
    return worst


def check_t_operator(inst, samples, seed, step=None):
    worst = 0.0
    ia0 = [1j * m for m in inst.subspace("a0").matrices()]
    for i in range(max(1, samples // 4)):
        g0 = sample_matrix(inst, "G0", seed ^ (4 * i))
        x = sample_matrix(inst, "u", seed ^ (4 * i + 1))
        y = sample_matrix(inst, "g0", seed ^ (4 * i + 2))
        worst = max(worst, float(np.linalg.norm(
            noncompact.t_apply(inst, g0, x) - noncompact.t_apply(inst, g0, x, path="projection"))))
        lhs = trace_form(noncompact.t_apply(inst, g0, x), y).real
        rhs = trace_form(x, noncompact.t_adjoint(inst, g0, y)).real
        worst = max(worst, abs(lhs - rhs))
        for z in ia0:
            worst = max(worst, float(np.linalg.norm(noncompact.t_apply(inst, g0, z))))
        top = noncompact.t_operator(inst, g0)
        ker = kernel_basis(top.as_matrix)
        cok = kernel_basis(top.as_matrix.T)
        if ker.shape[1] != inst.subspace("a0").dim or cok.shape[1] != inst.subspace("a0").dim:
            worst = max(worst, 1.0)
    return worst


def check_t_cokernel(inst, samples, seed, step=None):
    worst = 0.0
    a0 = inst.subspace("a0").matrices()
    if not a0:
        return 0.0
    for i in range(max(1, samples // 4)):
        g0 = sample_matrix(inst, "G0", seed ^ i)
        for y0 in a0:
            c = noncompact.cokernel_element(inst, g0, y0)
            worst = max(worst, float(np.linalg.norm(noncompact.t_adjoint(inst, g0, c))))
            worst = max(worst, membership_residual(inst, "g0", c))
    return worst


def check_t_staged(inst, samples, seed, step=None):
    worst = 0.0
    ia0 = inst.subspace("a0")
    for i in range(max(1, samples // 2)):
        g0 = sample_matrix(inst, "G0", seed ^ (2 * i))
        x = sample_matrix(inst, "u", seed ^ (2 * i + 1))
        # remove the i a0 component so the roundtrip is exact
        if ia0.dim:
            for m in ia0.matrices():
                b = 1j * m
                x = x - (trace_form(x, b).real / trace_form(b, b).real) * b
        y = noncompact.t_apply(inst, g0, x)
        xs = noncompact.t_solve_staged(inst, g0, y)
        worst = max(worst, float(np.linalg.norm(xs - x)))
        worst = max(worst, float(np.linalg.norm(noncompact.t_apply(inst, g0, xs) - y)))
        if ia0.dim:
            c = noncompact.cokernel_element(inst, g0, ia0.matrices()[0])
            try:
                noncompact.t_solve_staged(inst, g0, c)
                worst = max(worst, 1.0)
            except noncompact.NotInImageError:
                pass
    return worst


def check_thm35(inst, samples, seed, step=None):
    worst = 0.0
    e = np.eye(inst.dim, dtype=complex)
    for i in range(samples):
        g0 = sample_matrix(inst, "G0", seed ^ (3 * i))
        x = noncompact.project_leaf_tangent(inst, g0, sample_matrix(inst, "p", seed ^ (3 * i + 1)))
        y = noncompact.project_leaf_tangent(inst, g0, sample_matrix(inst, "p", seed ^ (3 * i + 2)))
        worst = max(worst, abs(noncompact.inverse_form(inst, g0, x, y)
                               - omega_xy(inst, e, g0, x, y)))
    return worst


def check_regularity(inst, samples, seed, step=None):
    expected = inst.subspace("p").dim - inst.subspace("a0").dim
    for i in range(max(1, samples // 2)):
        g0 = sample_matrix(inst, "G0", seed ^ i)
        _, mat = noncompact.pi_operator(inst, g0)
        s = np.linalg.svd(mat, compute_uv=False)
        smax = s[0] if s.size and s[0] > 0 else 1.0
        rank = int(np.sum(s > 1e-10 * smax))
        if rank != expected:
            return 1.0
    return 0.0


def check_casimir(inst, samples, seed, step=DEFAULT_STEP):
    worst = 0.0
    if inst.subspace("a0").dim == 0:
        for i in range(max(1, samples // 4)):
            g0 = sample_matrix(inst, "G0", seed ^ i)
            worst = max(worst, float(np.linalg.norm(
                noncompact.casimir(inst, g0) - np.eye(inst.dim))))
        return worst
    h = step
    for i in range(max(1, samples // 2)):
        g0 = sample_matrix(inst, "G0", seed ^ (2 * i))
        x = noncompact.project_leaf_tangent(inst, g0, sample_matrix(inst, "p", seed ^ (2 * i + 1)))
        cp = np.log(np.diag(noncompact.casimir(inst, g0 @ sla.expm(h * x))).real)
        cm = np.log(np.diag(noncompact.casimir(inst, g0 @ sla.expm(-h * x))).real)
        worst = max(worst, float(np.max(np.abs(cp - cm))) / (2 * h))
        a0s = sample_matrix(inst, "A0", seed ^ (2 * i + 9000))
        worst = max(worst, float(np.linalg.norm(
            noncompact.casimir(inst, a0s @ g0) - a0s @ noncompact.casimir(inst, g0))))
    return worst


def check_horizontal_section(inst, samples, seed, step=1e-5):
    worst = 0.0
    a0_basis = inst.subspace("a0").matrices()
    for i in range(max(1, samples // 2)):
        g0 = sample_matrix(inst, "G0", seed ^ (2 * i))
        a0s = sample_matrix(inst, "A0", seed ^ (2 * i + 1))
        worst = max(worst, float(np.linalg.norm(
            noncompact.horizontal_section(inst, a0s @ g0)
            - noncompact.horizontal_section(inst, g0))))
        if not a0_basis:
            continue
        x = sample_matrix(inst, "p", seed ^ (2 * i + 2))
        h = step
        sp = noncompact.horizontal_section(inst, g0 @ sla.expm(h * x))
        sm = noncompact.horizontal_section(inst, g0 @ sla.expm(-h * x))
        s0 = noncompact.horizontal_section(inst, g0)
        xi = inst.project("p", np.linalg.inv(s0) @ ((sp - sm) / (2 * h)))
        u = iwasawa(inst, s0).u
        for y0 in a0_basis:
            worst = max(worst, abs(trace_form(u @ xi @ u.conj().T, y0).real))
    return worst


def check_leaf_tangent_cases(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(max(1, samples // 2)):
        g0 = sample_matrix(inst, "G0", seed ^ (2 * i))
        # anchor images are always tangent
        phi = sample_matrix(inst, "p", seed ^ (2 * i + 1))
        g0_inv = np.linalg.inv(g0)
        img = inst.project("p", g0_inv @ hilbert(g0 @ phi @ g0_inv) @ g0)
        ok, res = noncompact.leaf_tangent_test(inst, g0, img)
        if not ok:
            worst = max(worst, res)
        # split-orbit directions are never tangent (when a0 is nonzero)
        for y0 in inst.subspace("a0").matrices():
            v = inst.project("p", g0_inv @ y0 @ g0)
            ok, _ = noncompact.leaf_tangent_test(inst, g0, v)
            if ok:
                worst = max(worst, 1.0)
    return worst


# -- compact suite ------------------------------------------------------


def check_pushforward(inst, samples, seed, step=1e-5):
    worst = 0.0
    for i in range(max(1, samples // 2)):
        w1 = sample_matrix(inst, "U", seed ^ (3 * i))
        g0 = sample_matrix(inst, "G0", seed ^ (3 * i + 1))
        y = sample_matrix(inst, "p", seed ^ (3 * i + 2))
        u, phi = compact.u_tilde_pushforward(inst, w1, g0, y)
        h = step
        up = compact.u_tilde(inst, w1, g0 @ sla.expm(h * y))
        um = compact.u_tilde(inst, w1, g0 @ sla.expm(-h * y))
        phi_fd = inst.project("ip", np.linalg.inv(u) @ ((up - um) / (2 * h)))
        worst = max(worst, float(np.linalg.norm(phi - phi_fd)))
        ph2 = sample_matrix(inst, "ip", seed ^ (3 * i + 5))
        lhs = trace_form(phi, ph2).real
        rhs = trace_form(y, compact.u_tilde_adjoint(inst, w1, g0, ph2)).real
        worst = max(worst, abs(lhs - rhs))
    return worst


def check_ad_blocks(inst, samples, seed, step=None):
    worst = 0.0
    for lf in leaves_of(inst):
        if not lf.normalizes_torus:
            continue
        bl = compact.ad_blocks(inst, lf.w_hat)
        for i in range(max(1, samples // 8)):
            x = sample_matrix(inst, "g", seed ^ i)
            worst = max(worst, float(np.linalg.norm(
                bl.apply(inst, x) - lf.w_hat @ x @ np.linalg.inv(lf.w_hat))))
    return worst


def check_hw_operator(inst, samples, seed, step=None):
    worst = 0.0
    eye = np.eye(inst.dim, dtype=complex)
    hw_id = compact.twisted_hilbert(inst, eye)
    for i in range(max(1, samples // 4)):
        x = sample_matrix(inst, "g", seed ^ (3 * i))
        off = x - inst.project("h", x)
        worst = max(worst, float(np.linalg.norm(hw_id.apply(x) - hilbert(off))))
    for lf in leaves_of(inst):
        if not lf.normalizes_torus:
            continue
        hw = compact.twisted_hilbert(inst, lf.w_hat)
        for i in range(max(1, samples // 8)):
            # real-linearity
            c1 = sample_matrix(inst, "n-", seed ^ (5 * i))
            c2 = sample_matrix(inst, "n-", seed ^ (5 * i + 1))
            try:
                v = hw.apply(c1 + 0.5 * c2)
                v1 = hw.apply(c1)
                v2 = hw.apply(c2)
                worst = max(worst, float(np.linalg.norm(v - v1 - 0.5 * v2)))
            except compact.DomainError:
                pass
            # lower-Borel identity modulo the solve ambiguity
            chi = sample_matrix(inst, "b-", seed ^ (5 * i + 2))
            proj = compact.fixed_form_project(inst, lf.w_hat, chi, anti=True)
            try:
                lhs = hw.apply(proj)
            except compact.DomainError:
                continue
            rhs = compact.fixed_form_project(inst, lf.w_hat, -1j * np.tril(chi, -1), anti=True)
            diff = lhs - rhs
            worst = max(worst, hw.ambiguity.residual(diff))
    return worst


def check_z_operator(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(samples):
        w1 = sample_matrix(inst, "U", seed ^ (3 * i))
        g0 = sample_matrix(inst, "G0", seed ^ (3 * i + 1))
        x = sample_matrix(inst, "p", seed ^ (3 * i + 2))
        za = compact.z_operator(inst, w1, g0, x)
        zb = compact.z_operator(inst, w1, g0, x, path="difference")
        worst = max(worst, float(np.linalg.norm(za - zb)))
        worst = max(worst, float(np.linalg.norm(np.triu(za, 1))))
    return worst


def check_lemma46(inst, samples, seed, step=None):
    worst = 0.0
    for i in range(samples):
        w1 = sample_matrix(inst, "U", seed ^ (2 * i))
        g0 = sample_matrix(inst, "G0", seed ^ (2 * i + 1))
        x = sample_matrix(inst, "p", seed ^ (2 * i + 4096))
        f = iwasawa(inst, w1 @ g0)
        u, la = f.u, f.l @ f.a
        u_inv = u.conj().T
        wg = w1 @ g0
        w_hat = cartan_embed(inst, w1)
        lhs = wg @ inst.project("p", u_inv @ hilbert(u @ x @ u_inv) @ u) @ np.linalg.inv(wg)
        inner = la @ inst.project("pr_na", u @ x @ u_inv) @ np.linalg.inv(la)
        rhs = -1j * compact.fixed_form_project(inst, w_hat, inner, anti=True)
        worst = max(worst, float(np.linalg.norm(lhs - rhs)))
    return worst


def check_u_tilde_equivariance(inst, samples, seed, step=1e-4):
    worst = 0.0
    for lf in leaves_of(inst):
        if not lf.normalizes_torus:
            continue
        basis = t_w_basis(inst, lf)
        stab = stabilizer_algebra(inst, lf.w1)
        for i in range(max(1, samples // 4)):
            g0 = sample_matrix(inst, "G0", seed ^ (2 * i))
            if basis:
                t = sample_torus(inst, lf, seed ^ (2 * i + 1))
                lhs = compact.u_tilde(inst, lf.w1, np.linalg.inv(lf.w1) @ t @ lf.w1 @ g0)
                rhs = t @ compact.u_tilde(inst, lf.w1, g0)
                worst = max(worst, float(np.linalg.norm(lhs - rhs)))
            for b in stab[:2]:
                u0 = compact.u_tilde(inst, lf.w1, g0)
                u1 = compact.u_tilde(inst, lf.w1, sla.expm(step * b) @ g0)
                worst = max(worst, float(np.linalg.norm(u1 - u0)))
    return worst


def check_leaf_labels(inst, samples, seed, step=None):
    bad = 0.0
    for lf in leaves_of(inst):
        for i in range(max(1, samples // 4)):
            g0 = sample_matrix(inst, "G0", seed ^ i)
            u = compact.u_tilde(inst, lf.w1, g0)
            if layer_of(inst, u) != lf.label:
                bad = 1.0
    return bad


def check_pi_compact_kernel(inst, samples, seed, step=None):
    worst = 0.0
    for lf in leaves_of(inst):
        stab = stabilizer_algebra(inst, lf.w1)
        for i in range(max(1, samples // 8)):
            g0 = sample_matrix(inst, "G0", seed ^ i)
            u = compact.u_tilde(inst, lf.w1, g0)
            sub, mat = compact.pi_compact_operator(inst, u)
            ker = kernel_basis(mat)
            g0_inv = np.linalg.inv(g0)
            target = [1j * inst.project("p", g0_inv @ b @ g0) for b in stab]
            if not stab:
                worst = max(worst, float(ker.shape[1]))
                continue
            tspan = RealSubspace.span(target)
            kspan = RealSubspace(np.asarray(sub.basis_vectors() @ ker), tspan.shape)
            if tspan.dim != kspan.dim:
                worst = max(worst, 1.0)
            else:
                worst = max(worst, subspace_distance(tspan, kspan))
    return worst


def check_leaf_form_paths(inst, samples, seed, step=None):
    worst = 0.0
    for lf in leaves_of(inst):
        if not lf.normalizes_torus:
            continue
        for i in range(max(1, samples // 4)):
            g0 = sample_matrix(inst, "G0", seed ^ (3 * i))
            x = sample_matrix(inst, "p", seed ^ (3 * i + 1))
            y = sample_matrix(inst, "p", seed ^ (3 * i + 2))
            u, px = compact.u_tilde_pushforward(inst, lf.w1, g0, x)
            _, py = compact.u_tilde_pushforward(inst, lf.w1, g0, y)
            a = compact.leaf_form(inst, lf, g0, px, py)
            b = compact.leaf_form_pinv(inst, u, px, py)
            worst = max(worst, abs(a - b))
    return worst


def check_thm41(inst, samples, seed, step=None):
    worst = 0.0
    for lf in leaves_of(inst):
        if not lf.normalizes_torus:
            continue
        for i in range(samples):
            g0 = sample_matrix(inst, "G0", seed ^ (3 * i))
            x = sample_matrix(inst, "p", seed ^ (3 * i + 1))
            y = sample_matrix(inst, "p", seed ^ (3 * i + 2))
            _, px = compact.u_tilde_pushforward(inst, lf.w1, g0, x)
            _, py = compact.u_tilde_pushforward(inst, lf.w1, g0, y)
            lhs = compact.leaf_form(inst, lf, g0, px, py)
            rhs = omega_xy(inst, lf.w1, g0, x, y)
            worst = max(worst, abs(lhs - rhs))
    return worst


# -- group suite ---------------------------------------------------------


def _su_sample(n, seed, scale=0.7):
    rng = np.random.default_rng(seed)
    x = sum(rng.standard_normal() * b for b in group_case._su_basis(n))
    return x, sla.expm(scale * x / max(1.0, np.linalg.norm(x, 2)))


def check_pi_k_basics(inst, samples, seed, step=None):
    n = inst.n
    worst = 0.0
    for i in range(samples):
        phi, _ = _su_sample(n, seed ^ (3 * i))
        psi, _ = _su_sample(n, seed ^ (3 * i + 1))
        worst = max(worst, abs(group_case.pi_k(np.eye(n), phi, psi)))
        angles = np.random.default_rng(seed ^ (3 * i + 2)).standard_normal(n)
        tt = np.diag(np.exp(1j * (angles - np.mean(angles))))
        worst = max(worst, abs(group_case.pi_k(tt, phi, psi)))
        lhs = group_case.big_pi_k(np.eye(n), phi, psi)
        rhs = 2 * trace_form(hilbert(phi), psi).real
        worst = max(worst, abs(lhs - rhs))
    return worst


def check_identification(inst, samples, seed, step=None):
    """The doubled tensor agrees with the single-group bivector under (k1,k2) -> k1 k2^-1."""
    n = inst.n
    worst = 0.0
    for i in range(samples):
        u = sample_matrix(inst, "U", seed ^ (3 * i))
        k1, k2 = inst.block(u, 0), inst.block(u, 1)
        w, _ = _su_sample(n, seed ^ (3 * i + 1))
        z, _ = _su_sample(n, seed ^ (3 * i + 2))
        phi = inst.embed_pair(w, -w)
        psi = inst.embed_pair(z, -z)
        a = compact.pi_compact(inst, u, phi, psi)
        k = k1 @ np.linalg.inv(k2)
        b = group_case.big_pi_k(k, k1 @ w @ k1.conj().T, k1 @ z @ k1.conj().T)
        worst = max(worst, abs(a - b))
    return worst


def check_w0_translation(inst, samples, seed, step=None):
    n = inst.n
    worst = 0.0
    for i in range(samples):
        _, k = _su_sample(n, seed ^ (3 * i))
        phi, _ = _su_sample(n, seed ^ (3 * i + 1))
        psi, _ = _su_sample(n, seed ^ (3 * i + 2))
        lhs, rhs = group_case.w0_translate_check(n, k, phi, psi)
        worst = max(worst, abs(lhs - rhs))
    return worst


def check_su2_closed_form(inst, samples, seed, step=None):
    worst = 0.0
    k1 = group_case.su2_k_of_zeta(1.0)
    target = np.array([[1, -1], [1, 1]], dtype=complex) / np.sqrt(2)
    worst = max(worst, float(np.linalg.norm(k1 - target)))
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        z = complex(rng.normal(), rng.normal())
        k = group_case.su2_k_of_zeta(z)
        worst = max(worst, float(np.linalg.norm(k.conj().T @ k - np.eye(2))))
        worst = max(worst, abs(np.linalg.det(k) - 1.0))
        worst = max(worst, abs(k[0, 0].real - (1 + abs(z) ** 2) ** -0.5))
        l, d, u = gauss_ldu(k)
        worst = max(worst, float(np.linalg.norm(l - np.array([[1, 0], [z, 1]]))))
    return worst


def _reduced_words_upto(n, max_len):
    from itertools import product

    from .weyl import is_reduced

    out = []
    for m in range(1, max_len + 1):
        for word in product(range(1, n), repeat=m):
            if is_reduced(n, list(word)):
                out.append(list(word))
    return out


def check_lu_a_product(inst, samples, seed, step=None):
    n = inst.n
    worst = 0.0
    words = _reduced_words_upto(n, 3)
    per = max(1, samples // max(1, len(words)))
    for wi, word in enumerate(words):
        for i in range(per):
            rng = np.random.default_rng(seed ^ (101 * wi + i))
            zeta = [complex(rng.normal(), rng.normal()) * 0.8 for _ in word]
            kpt = group_case.lu_unitary_point(n, word, zeta)
            l, d, u = gauss_ldu(kpt)
            dd = np.diag(d)
            worst = max(worst, float(np.max(np.abs(dd / np.abs(dd) - 1.0))))
            a_form = group_case.lu_a_product(n, word, zeta)
            worst = max(worst, float(np.max(np.abs(np.abs(dd) - np.diag(a_form).real))))
            # l lands in N- and in the w-conjugate of N+
            from .weyl import representative

            wrep = representative(n, word)
            conj = wrep @ l @ np.linalg.inv(wrep)
            worst = max(worst, float(np.linalg.norm(np.tril(conj, -1))))
            worst = max(worst, float(np.linalg.norm(np.triu(l, 1))))
    return worst


def _chart_g0(inst, word, zeta):
    l = group_case.lu_coordinates_to_l(inst.n, word, zeta)
    return inst.embed_pair(np.linalg.inv(l), l.conj().T)


def pullback_form_matrix(inst, word, zeta, h=1e-5):
    """Finite-difference pullback of the identity-leaf form to the coordinates."""
    m = len(word)
    g0 = _chart_g0(inst, word, zeta)
    g0_inv = np.linalg.inv(g0)
    tangents = []
    for j in range(m):
        for d in (1.0, 1j):
            zp, zm = list(zeta), list(zeta)
            zp[j] = zp[j] + h * d
            zm[j] = zm[j] - h * d
            v = (_chart_g0(inst, word, zp) - _chart_g0(inst, word, zm)) / (2 * h)
            tangents.append(inst.project("p", g0_inv @ v))
    e = np.eye(inst.dim, dtype=complex)
    out = np.zeros((2 * m, 2 * m))
    for i in range(2 * m):
        for j in range(i + 1, 2 * m):
            out[i, j] = omega_xy(inst, e, g0, tangents[i], tangents[j])
            out[j, i] = -out[i, j]
    return out


def numeric_form_coefficients(inst, word, zeta, h=1e-5):
    """Diagonal coefficients and worst off-diagonal entry of the pulled-back form.

    The coefficient of the j-th coordinate is extracted as -M[2j, 2j+1]/2,
    the orientation under which the closed-form product expressions hold.
    """
    mm = pullback_form_matrix(inst, word, zeta, h=h)
    m = len(word)
    coeffs = [-mm[2 * j, 2 * j + 1] / 2 for j in range(m)]
    off = 0.0
    for i in range(2 * m):
        for j in range(i + 1, 2 * m):
            if j != i + 1 or i % 2 == 1:
                off = max(off, abs(mm[i, j]))
    return coeffs, off


def check_lu_form_pullback(inst, samples, seed, step=1e-5):
    n = inst.n
    worst = 0.0
    words = _reduced_words_upto(n, 3)
    per = max(1, min(3, samples // max(1, len(words))))
    for wi, word in enumerate(words):
        for i in range(per):
            rng = np.random.default_rng(seed ^ (211 * wi + i))
            zeta = [complex(rng.normal(), rng.normal()) * 0.7 for _ in word]
            coeffs, off = numeric_form_coefficients(inst, word, zeta, h=step)
            target = group_case.lu_form_coefficients(n, word, zeta)
            worst = max(worst, off)
            worst = max(worst, float(np.max(np.abs(np.array(coeffs) - np.array(target)))))
    return worst


def check_calibration(inst, samples, seed, step=1e-5):
    """Ratio of the numeric pullback coefficient to the closed form at the base point."""
    if inst.n < 2:
        return 0.0
    coeffs, _ = numeric_form_coefficients(SpaceInstance.group(2), [1], [0.0], h=step)
    return abs(coeffs[0] / 0.5 - 1.0)


def check_haar(inst, samples, seed, step=None):
    n = inst.n
    worst = 0.0
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        z = complex(rng.normal(), rng.normal())
        worst = max(worst, abs(group_case.haar_density(2, [1], [z]) - 1.0))
    if n >= 3:
        val = group_case.haar_density(3, [1, 2], [1.0, 1.0])
        worst = max(worst, abs(val - 2.0))
        worst = max(worst, abs(group_case.haar_density(3, [1, 2], [0.0, 0.0]) - 1.0))
    return worst


def check_momentum_reconciliation(inst, samples, seed, step=None):
    """Constancy of the scalar relating the doubled and coordinate momentum maps."""
    n = inst.n
    word = _reduced_words_upto(n, 3)[-1]
    tb = group_case.torus_basis(n)
    ratios = []
    for i in range(samples):
        rng = np.random.default_rng(seed ^ i)
        zeta = [complex(rng.normal(), rng.normal()) * 0.7 for _ in word]
        g0 = _chart_g0(inst, word, zeta)
        f = iwasawa(inst, g0)
        ilog_a = 1j * np.diag(np.log(np.diag(f.a).real))
        lu = group_case.momentum_in_coordinates(n, word, zeta)
        num, den = 0.0, 0.0
        for b, luc in zip(tb, lu):
            big = inst.embed_pair(b, b) / np.sqrt(2)
            c = trace_form(ilog_a, big).real
            num += c * luc
            den += luc * luc
        if den > 1e-12:
            ratios.append(num / den)
    if len(ratios) < 2:
        return 0.0
    return float(np.max(np.abs(np.array(ratios) - np.median(ratios))))


def measured_reconciliation_constant(inst, samples=20, seed=7):
    n = inst.n
    word = _reduced_words_upto(n, 2)[-1]
    tb = group_case.torus_basis(n)
    vals = []
    for i in range(samples):
        rng = np.random.default_rng(seed ^ i)
        zeta = [complex(rng.normal(), rng.normal()) * 0.7 for _ in word]
        g0 = _chart_g0(inst, word, zeta)
        f = iwasawa(inst, g0)
        ilog_a = 1j * np.diag(np.log(np.diag(f.a).real))
        lu = group_case.momentum_in_coordinates(n, word, zeta)
        num = sum(trace_form(ilog_a, inst.embed_pair(b, b) / np.sqrt(2)).real * c
                  for b, c in zip(tb, lu))
        den = sum(c * c for c in lu)
        if den > 1e-12:
            vals.append(num / den)
    return float(np.median(vals)) if vals else float("nan")


def check_torus_invariance_52a(inst, samples, seed, step=None):
    n = inst.n
    worst = 0.0
    words = _reduced_words_upto(n, 3)
    for wi, word in enumerate(words):
        rng = np.random.default_rng(seed ^ (31 * wi))
        zeta = [complex(rng.normal(), rng.normal()) * 0.8 for _ in word]
        angles = rng.standard_normal(n)
        t = np.diag(np.exp(1j * (angles - np.mean(angles))))
        l = group_case.lu_coordinates_to_l(n, word, zeta)
        z2 = group_case.torus_rotate_zeta(n, word, zeta, t)
        l2 = group_case.lu_coordinates_to_l(n, word, z2)
        worst = max(worst, float(np.linalg.norm(t @ l @ np.linalg.inv(t) - l2)))
        worst = max(worst, float(np.max(np.abs(np.abs(z2) - np.abs(zeta)))))
        c1 = group_case.lu_form_coefficients(n, word, zeta)
        c2 = group_case.lu_form_coefficients(n, word, z2)
        worst = max(worst, float(np.max(np.abs(np.array(c1) - np.array(c2)))))
    return worst


def check_translation_52d(inst, samples, seed, step=1e-5):
    """Translation by a stratum representative carries the chart symplectically.

    The translated chart is tangent to the multiplicative-structure leaf
    through the representative, and the negated inverse form there pulls back
    to the homogeneous-structure leaf form on the chart image.
    """
    n = inst.n
    worst = 0.0
    from .weyl import representative

    words = _reduced_words_upto(n, 2)
    for wi, word in enumerate(words):
        wrep = representative(n, word)
        for i in range(max(1, samples // max(1, len(words)))):
            rng = np.random.default_rng(seed ^ (17 * wi + i))
            zeta = [complex(rng.normal(), rng.normal()) * 0.7 for _ in word]
            kpt = group_case.lu_unitary_point(n, word, zeta)
            # chart tangents at kpt (right-trivialized)
            tangents = []
            h = step
            for j in range(len(word)):
                for d in (1.0, 1j):
                    zp, zm = list(zeta), list(zeta)
                    zp[j] += h * d
                    zm[j] -= h * d
                    v = (group_case.lu_unitary_point(n, word, zp)
                         - group_case.lu_unitary_point(n, word, zm)) / (2 * h)
                    tangents.append(v @ np.linalg.inv(kpt))
            sub, mat = group_case.big_pi_k_operator(kpt)
            p2 = wrep @ kpt
            sub2, mat2 = group_case.pi_k_operator(p2)
            pinv = np.linalg.pinv(mat, rcond=1e-10)
            pinv2 = np.linalg.pinv(mat2, rcond=1e-10)
            pushed = [wrep @ v @ wrep.conj().T for v in tangents]
            for wa in pushed:
                c = sub2.coords(wa)
                sol, *_ = np.linalg.lstsq(mat2, c, rcond=None)
                worst = max(worst, float(np.linalg.norm(mat2 @ sol - c)))
            for a in range(len(tangents)):
                for b in range(a + 1, len(tangents)):
                    f1 = float(trace_form(sub.from_coords(pinv @ sub.coords(tangents[a])), tangents[b]).real)
                    f2 = float(trace_form(sub2.from_coords(pinv2 @ sub2.coords(pushed[a])), pushed[b]).real)
                    worst = max(worst, abs(f1 + f2))
    return worst


# -- suite registry ------------------------------------------------------


SUITES = {
    "core": [
        ("nijenhuis_vanishing", check_nijenhuis, 1e-10),
        ("hilbert_skew_and_square", check_hilbert_skew, 1e-12),
        ("projection_diagrams", check_projection_diagrams, 1e-13),
        ("projector_idempotent", check_projector_idempotent, 1e-14),
        ("projector_orthogonality", check_projector_orthogonality, 1e-12),
        ("form_ad_invariance", check_form_ad_invariance, 1e-12),
        ("involutions", check_involutions, 1e-12),
        ("sample_tag_membership", check_sample_membership, 1e-10),
        ("t0_maximal_abelian", check_t0_maximal_abelian, 0.5),
    ],
    "factorization": [
        ("iwasawa_roundtrip", check_iwasawa_roundtrip, 1e-10),
        ("u_equivariance", check_u_equivariance, 1e-12),
        ("dressing_identity", check_dressing_identity, 1e-12),
        ("dressing_action_property", check_dressing_action_property, 1e-12),
        ("bruhat_birkhoff_iff", check_bruhat_birkhoff_iff, 0.5),
        ("cartan_embed_and_layers", check_cartan_embed, 1e-12),
    ],
    "hamiltonian": [
        ("omega_basics", check_omega_basics, 1e-12),
        ("closedness_fd", check_closedness, 1e-4),
        ("richardson_ratio", check_richardson, 0.5),
        ("degeneracy_kernel", check_degeneracy_kernel, 1e-8),
        ("stabilizer_algebra", check_stabilizer, 1e-10),
        ("t_w_subspace", check_t_w, 1e-8),
        ("torus_action_invariance", check_torus_action, 1e-10),
        ("momentum_identity_fd", check_momentum_identity, 1e-6),
        ("base_point_change", check_base_point_change, 1e-10),
    ],
    "noncompact": [
        ("pi_skew", check_pi_noncompact_skew, 1e-12),
        ("transfer_two_paths_kernel", check_t_operator, 1e-11),
        ("transfer_cokernel", check_t_cokernel, 1e-10),
        ("transfer_staged_inverse", check_t_staged, 1e-9),
        ("leaf_form_matches_two_form", check_thm35, 1e-8),
        ("regular_rank", check_regularity, 0.5),
        ("casimir", check_casimir, 1e-6),
        ("horizontal_section", check_horizontal_section, 1e-8),
        ("leaf_tangency_cases", check_leaf_tangent_cases, 1e-10),
    ],
    "compact": [
        ("chart_pushforward", check_pushforward, 1e-6),
        ("ad_block_matrix", check_ad_blocks, 1e-12),
        ("twisted_hilbert", check_hw_operator, 1e-10),
        ("z_operator_two_paths", check_z_operator, 1e-10),
        ("conjugated_projection_identity", check_lemma46, 1e-9),
        ("u_tilde_equivariance", check_u_tilde_equivariance, 1e-8),
        ("leaf_labels", check_leaf_labels, 0.5),
        ("tensor_kernel_matches_stabilizer", check_pi_compact_kernel, 1e-8),
        ("leaf_form_cross_paths", check_leaf_form_paths, 1e-8),
    ],
    "iso": [
        ("hamiltonian_space_isomorphism", check_thm41, 1e-7),
    ],
    "group": [
        ("bivector_basics", check_pi_k_basics, 1e-12),
        ("doubled_identification", check_identification, 1e-9),
        ("longest_element_translation", check_w0_translation, 1e-10),
        ("su2_closed_form", check_su2_closed_form, 1e-12),
        ("coordinate_a_product", check_lu_a_product, 1e-10),
        ("coordinate_form_pullback", check_lu_form_pullback, 2e-5),
        ("calibration_ratio", check_calibration, 1e-6),
        ("haar_density", check_haar, 1e-12),
        ("momentum_reconciliation", check_momentum_reconciliation, 1e-8),
        ("torus_coordinate_rotation", check_torus_invariance_52a, 1e-10),
        ("stratum_translation", check_translation_52d, 1e-7),
    ],
}


@dataclass(frozen=True)
class CheckRecord:
    name: str
    max_residual: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    instance: str
    params: dict
    checks: tuple
    passed: bool
    seconds: float

    def to_dict(self):
        return {
            "suite": self.suite,
            "instance": self.instance,
            "params": self.params,
            "checks": [
                {"name": c.name, "max_residual": c.max_residual, "tol": c.tol, "pass": c.passed}
                for c in self.checks
            ],
            "pass": self.passed,
            "seconds": self.seconds,
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)


def _applicable(suite, inst):
    if suite == "group":
        return inst.kind == "group"
    return True


def run_suite(name, inst: SpaceInstance, samples=50, seed=7, tol_scale=1.0,
              step=DEFAULT_STEP, tol_overrides=None) -> SuiteReport:
    """Run a named suite (or 'all') over an instance and aggregate a report."""
    t0 = time.perf_counter()
    if name == "all":
        names = [n for n in SUITES if _applicable(n, inst)]
    else:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
        names = [name]
    tol_overrides = tol_overrides or {}
    records = []
    warn_no_samples = samples <= 0
    for sname in names:
        if not _applicable(sname, inst):
            continue
        for cname, fn, tol in SUITES[sname]:
            tol = tol_overrides.get(cname, tol) * tol_scale
            if warn_no_samples:
                records.append(CheckRecord(cname, 0.0, tol, True))
                continue
            res = float(fn(inst, samples, seed, step=step) if fn in (
                check_closedness, check_richardson, check_momentum_identity,
            ) else fn(inst, samples, seed))
            records.append(CheckRecord(cname, res, tol, bool(res < tol)))
    params = {"samples": int(samples), "seed": int(seed), "step": float(step),
              "tol_scale": float(tol_scale)}
    if warn_no_samples:
        params["warning_no_samples"] = True
    passed = all(c.passed for c in records)
    return SuiteReport(
        suite=name,
        instance=str(inst),
        params=params,
        checks=tuple(records),
        passed=passed,
        seconds=time.perf_counter() - t0,
    )
