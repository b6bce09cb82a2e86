import numpy as np
import pytest
import scipy.linalg as sla

from liepoisson._linalg import RealSubspace, kernel_basis, subspace_distance
from liepoisson.core import (
    SpaceInstance,
    TangentVector,
    membership_residual,
    sample_matrix,
    trace_form,
)
from liepoisson.factorization import cell_is_identity, cell_length, iwasawa
from liepoisson.hamiltonian import (
    dressing,
    grass_leaf_candidates,
    group_leaf,
    make_leaf,
    momentum,
    momentum_pairing,
    omega,
    omega_operator,
    omega_xy,
    sample_torus,
    stabilizer_algebra,
    t_w_basis,
    torus_act,
)

from conftest import frob


def leaves_for(inst):
    if inst.kind == "group":
        words = [[], [1]] + ([[1, 2]] if inst.n >= 3 else [])
        return [group_leaf(inst, w) for w in words]
    return grass_leaf_candidates(inst)


def test_omega_hand_value_grass11():
    # independent evaluation: u(e) = e, so the value is tr(H(x) y)
    inst = SpaceInstance.grass(1, 1)
    e = np.eye(2, dtype=complex)
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, 1j], [-1j, 0]])
    hx = np.array([[0, 1j], [-1j, 0]])  # -i x_- + i x_+ by hand
    assert abs(np.trace(hx @ y).real - 2.0) < 1e-15
    assert abs(omega_xy(inst, e, e, x, y) - 2.0) < 1e-14


def test_omega_skew_and_zero_on_equal(inst):
    w1 = sample_matrix(inst, "U", 1)
    g0 = sample_matrix(inst, "G0", 2)
    x = sample_matrix(inst, "p", 3)
    y = sample_matrix(inst, "p", 4)
    assert abs(omega_xy(inst, w1, g0, x, x)) < 1e-12
    assert abs(omega_xy(inst, w1, g0, x, y) + omega_xy(inst, w1, g0, y, x)) < 1e-12


def test_omega_real(inst):
    w1 = sample_matrix(inst, "U", 5)
    g0 = sample_matrix(inst, "G0", 6)
    x = sample_matrix(inst, "p", 7)
    y = sample_matrix(inst, "p", 8)
    u = iwasawa(inst, w1 @ g0).u
    from liepoisson.core import hilbert

    raw = trace_form(u.conj().T @ hilbert(u @ x @ u.conj().T) @ u, y)
    assert abs(raw.imag) < 1e-12


def test_omega_two_paths_agree(inst):
    w1 = sample_matrix(inst, "U", 9)
    g0 = sample_matrix(inst, "G0", 10)
    x = sample_matrix(inst, "p", 11)
    y = sample_matrix(inst, "p", 12)
    a = omega_xy(inst, w1, g0, x, y)
    b = omega_xy(inst, w1, g0, x, y, path="extended")
    assert abs(a - b) < 1e-12


def test_omega_representative_invariance(inst):
    w1 = sample_matrix(inst, "U", 13)
    g0 = sample_matrix(inst, "G0", 14)
    x = sample_matrix(inst, "p", 15)
    y = sample_matrix(inst, "p", 16)
    k = sample_matrix(inst, "K", 17)
    k_inv = np.linalg.inv(k)
    a = omega_xy(inst, w1, g0, x, y)
    b = omega_xy(inst, w1, g0 @ k, k_inv @ x @ k, k_inv @ y @ k)
    assert abs(a - b) < 1e-12


def test_omega_tangent_vector_api(inst):
    w1 = sample_matrix(inst, "U", 18)
    g0 = sample_matrix(inst, "G0", 19)
    x = sample_matrix(inst, "p", 20)
    y = sample_matrix(inst, "p", 21)
    v1, v2 = TangentVector(g0, x), TangentVector(g0, y)
    assert omega(inst, w1, v1, v2) == omega_xy(inst, w1, g0, x, y)
    with pytest.raises(ValueError):
        omega(inst, w1, v1, TangentVector(sample_matrix(inst, "G0", 22), y))


def test_dressing_trivial_cases(inst):
    u = sample_matrix(inst, "U", 23)
    assert frob(dressing(inst, u, np.eye(inst.dim)) - u) < 1e-12
    k = sample_matrix(inst, "K", 24)
    assert frob(dressing(inst, np.eye(inst.dim), k) - k) < 1e-12


def test_dressing_action_property(inst):
    u = sample_matrix(inst, "U", 25)
    g = sample_matrix(inst, "G0", 26)
    h = sample_matrix(inst, "G0", 27)
    lhs = dressing(inst, dressing(inst, u, g), h)
    assert frob(lhs - dressing(inst, u, g @ h)) < 1e-12


def test_stabilizer_identity_parameter_dimensions():
    # computed by direct solve: the intersection at the identity parameter
    # is the split Cartan pattern, of dimension dim a0
    for inst in [SpaceInstance.grass(1, 1), SpaceInstance.grass(2, 1),
                 SpaceInstance.group(2), SpaceInstance.group(3)]:
        basis = stabilizer_algebra(inst, np.eye(inst.dim, dtype=complex))
        assert len(basis) == inst.subspace("a0").dim, str(inst)


def test_stabilizer_group_pattern():
    # for the identity parameter of a group instance: pairs (d, -d), d real diagonal
    inst = SpaceInstance.group(3)
    basis = stabilizer_algebra(inst, np.eye(6, dtype=complex))
    a0 = inst.subspace("a0")
    for b in basis:
        assert a0.residual(b) < 1e-10


def test_stabilizer_membership_postconditions(inst):
    for lf in leaves_for(inst):
        for b in stabilizer_algebra(inst, lf.w1):
            assert membership_residual(inst, "g0", b) < 1e-10
            v = lf.w1 @ b @ np.linalg.inv(lf.w1)
            assert frob(v - inst.project("n-", v) - inst.project("a", v)) < 1e-10


def test_stabilizer_dimension_k_invariance(inst):
    w1 = sample_matrix(inst, "U", 28)
    k = sample_matrix(inst, "K", 29)
    assert len(stabilizer_algebra(inst, w1 @ k)) == len(stabilizer_algebra(inst, w1))


def test_t_w_identity_leaf_is_full_torus(inst):
    lf = make_leaf(inst, np.eye(inst.dim, dtype=complex))
    basis = t_w_basis(inst, lf)
    t0 = inst.subspace("t0")
    assert len(basis) == t0.dim
    span = RealSubspace.span(basis)
    assert subspace_distance(span, t0) < 1e-10


def test_t_w_group2_reflection():
    inst = SpaceInstance.group(2)
    lf = group_leaf(inst, [1])
    basis = t_w_basis(inst, lf)
    assert len(basis) == 1
    b = basis[0]
    # pattern (x, -x) across the two blocks
    assert frob(inst.block(b, 0) + inst.block(b, 1)) < 1e-12


def test_t_w_equals_torus_intersect_conjugated_k(inst):
    for lf in leaves_for(inst):
        if not lf.normalizes_torus:
            continue
        basis = t_w_basis(inst, lf)
        kconj = RealSubspace.span(
            [lf.w1 @ m @ np.linalg.inv(lf.w1) for m in inst.subspace("k").matrices()])
        inter = inst.subspace("t").intersect(kconj)
        assert inter.dim == len(basis)
        if basis:
            assert subspace_distance(RealSubspace.span(basis), inter) < 1e-8


def test_t_w_dimension_matches_permutation_fixed_space():
    # for group leaves the eigenvalue-1 multiplicity is the fixed space of the
    # induced permutation action on pairs (d1, d2) -> (w d2, w^-1 d1)
    inst = SpaceInstance.group(3)
    for word, expected in [([], 2), ([1], 2), ([1, 2], 2)]:
        lf = group_leaf(inst, word)
        assert len(t_w_basis(inst, lf)) == expected


def test_torus_act_trivial_and_identity_leaf(inst):
    lf = make_leaf(inst, np.eye(inst.dim, dtype=complex))
    g0 = sample_matrix(inst, "G0", 30)
    out = torus_act(inst, lf, np.eye(inst.dim), g0)
    assert frob(out - g0) < 1e-14
    if t_w_basis(inst, lf):
        t = sample_torus(inst, lf, 31)
        assert frob(torus_act(inst, lf, t, g0) - t @ g0) < 1e-12


def test_torus_act_rejects_non_members(inst):
    lf = make_leaf(inst, np.eye(inst.dim, dtype=complex))
    with pytest.raises(ValueError):
        torus_act(inst, lf, sample_matrix(inst, "U", 32), sample_matrix(inst, "G0", 33))


def test_torus_act_preserves_omega_and_momentum(inst):
    for lf in leaves_for(inst):
        if not lf.normalizes_torus or not t_w_basis(inst, lf):
            continue
        g0 = sample_matrix(inst, "G0", 34)
        t = sample_torus(inst, lf, 35)
        g1 = torus_act(inst, lf, t, g0)
        assert membership_residual(inst, "G0", np.linalg.inv(lf.w1) @ t @ lf.w1) < 1e-10
        x = sample_matrix(inst, "p", 36)
        y = sample_matrix(inst, "p", 37)
        assert abs(omega_xy(inst, lf.w1, g1, x, y) - omega_xy(inst, lf.w1, g0, x, y)) < 1e-10
        m0, m1 = momentum(inst, lf, g0), momentum(inst, lf, g1)
        assert frob(m0.coefficients - m1.coefficients) < 1e-10


def test_momentum_zero_at_basepoint(inst):
    lf = make_leaf(inst, np.eye(inst.dim, dtype=complex))
    mv = momentum(inst, lf, np.eye(inst.dim))
    assert frob(mv.coefficients) < 1e-14


def test_momentum_group2_diagonal_oracle():
    # a-factor read off the explicit Iwasawa of a diagonal point: the split
    # direction pairs to zero against the compact torus
    inst = SpaceInstance.group(2)
    lf = make_leaf(inst, np.eye(4, dtype=complex))
    r = 1.7
    d = np.diag([r, 1 / r]).astype(complex)
    g0 = inst.embed_pair(d, np.linalg.inv(d).conj().T)
    mv = momentum(inst, lf, g0)
    assert frob(mv.coefficients) < 1e-12
    # hand check: i log a pairs to zero with every (x, x) pattern
    f = iwasawa(inst, g0)
    ilog = 1j * np.diag(np.log(np.diag(f.a).real))
    for b in t_w_basis(inst, lf):
        assert abs(trace_form(ilog, b).real) < 1e-13


def test_momentum_identity_finite_difference(inst):
    for lf in leaves_for(inst):
        if not lf.normalizes_torus:
            continue
        basis = t_w_basis(inst, lf)
        if not basis:
            continue
        rng = np.random.default_rng(40)
        xt = sum(rng.standard_normal() * b for b in basis)
        g0 = sample_matrix(inst, "G0", 41)
        y = sample_matrix(inst, "p", 42)
        kx = inst.project("p", np.linalg.inv(g0) @ (np.linalg.inv(lf.w1) @ xt @ lf.w1) @ g0)
        lhs = omega_xy(inst, lf.w1, g0, kx, y)
        h = 1e-4
        fp = momentum_pairing(inst, lf, g0 @ sla.expm(h * y), xt)
        fm = momentum_pairing(inst, lf, g0 @ sla.expm(-h * y), xt)
        assert abs(lhs - (fp - fm) / (2 * h)) < 1e-6


def test_degeneracy_kernel_matches_stabilizer(inst):
    for lf in leaves_for(inst):
        stab = stabilizer_algebra(inst, lf.w1)
        g0 = sample_matrix(inst, "G0", 43)
        psub, mat = omega_operator(inst, lf.w1, g0)
        ker = kernel_basis(mat)
        assert ker.shape[1] == len(stab)
        if stab:
            g0_inv = np.linalg.inv(g0)
            target = RealSubspace.span([inst.project("p", g0_inv @ b @ g0) for b in stab])
            kspan = RealSubspace(np.asarray(psub.basis_vectors() @ ker), target.shape)
            assert subspace_distance(target, kspan) < 1e-8


def test_base_point_change(inst):
    w1 = sample_matrix(inst, "U", 44)
    k = sample_matrix(inst, "K", 45)
    g0 = sample_matrix(inst, "G0", 46)
    x = sample_matrix(inst, "p", 47)
    y = sample_matrix(inst, "p", 48)
    k_inv = np.linalg.inv(k)
    a = omega_xy(inst, w1, g0, x, y)
    b = omega_xy(inst, w1 @ k, k_inv @ g0 @ k, k_inv @ x @ k, k_inv @ y @ k)
    assert abs(a - b) < 1e-10


def test_grass_leaf_search_finds_nontrivial_layers():
    for inst, lengths in [(SpaceInstance.grass(1, 1), {0, 1}),
                          (SpaceInstance.grass(2, 1), {0, 1, 3})]:
        leaves = grass_leaf_candidates(inst)
        found = {cell_length(lf.label) for lf in leaves}
        assert lengths <= found
        for lf in leaves:
            assert lf.normalizes_torus
            assert membership_residual(inst, "U", lf.w1) < 1e-12


def test_dressing_identity_through_torus(inst):
    for lf in leaves_for(inst):
        if not lf.normalizes_torus or not t_w_basis(inst, lf):
            continue
        g0 = sample_matrix(inst, "G0", 49)
        t = sample_torus(inst, lf, 50)
        lhs = iwasawa(inst, lf.w1 @ (np.linalg.inv(lf.w1) @ t @ lf.w1) @ g0).u
        rhs = t @ iwasawa(inst, lf.w1 @ g0).u
        assert frob(lhs - rhs) < 1e-12
