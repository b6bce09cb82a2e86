import numpy as np
import pytest
import scipy.linalg as sla

from liepoisson.compact import pi_compact
from liepoisson.core import SpaceInstance, hilbert, sample_matrix, trace_form
from liepoisson.factorization import gauss_ldu, iwasawa
from liepoisson.group_case import (
    DensityReport,
    LeafCoordinates,
    big_pi_k,
    density_report,
    haar_density,
    lu_a_product,
    lu_coordinates_to_l,
    lu_form_coefficients,
    lu_unitary_point,
    momentum_in_coordinates,
    pi_k,
    su2_k_of_zeta,
    torus_basis,
    torus_rotate_zeta,
    w0_translate_check,
)
from liepoisson.group_case import _su_basis
from liepoisson.verify import (
    check_lu_form_pullback,
    measured_reconciliation_constant,
    numeric_form_coefficients,
)
from liepoisson.weyl import representative

from conftest import frob


def su_sample(n, seed):
    rng = np.random.default_rng(seed)
    return sum(rng.standard_normal() * b for b in _su_basis(n))


def su_group_sample(n, seed):
    x = su_sample(n, seed)
    return sla.expm(0.6 * x / max(1.0, np.linalg.norm(x, 2)))


def test_pi_k_vanishes_at_identity_and_torus():
    for n in (2, 3):
        phi, psi = su_sample(n, 1), su_sample(n, 2)
        assert pi_k(np.eye(n), phi, psi) == 0.0
        angles = np.random.default_rng(3).standard_normal(n)
        t = np.diag(np.exp(1j * (angles - angles.mean())))
        assert abs(pi_k(t, phi, psi)) < 1e-13


def test_big_pi_k_at_identity():
    for n in (2, 3):
        phi, psi = su_sample(n, 4), su_sample(n, 5)
        assert abs(big_pi_k(np.eye(n), phi, psi)
                   - 2 * trace_form(hilbert(phi), psi).real) < 1e-13


def test_big_pi_k_matches_doubled_tensor():
    inst = SpaceInstance.group(2)
    for i in range(10):
        u = sample_matrix(inst, "U", 10 + i)
        k1, k2 = inst.block(u, 0), inst.block(u, 1)
        w, z = su_sample(2, 20 + i), su_sample(2, 30 + i)
        a = pi_compact(inst, u, inst.embed_pair(w, -w), inst.embed_pair(z, -z))
        b = big_pi_k(k1 @ np.linalg.inv(k2), k1 @ w @ k1.conj().T, k1 @ z @ k1.conj().T)
        assert abs(a - b) < 1e-9


def test_w0_translation_fixed_point():
    # at k = e both sides reduce to the same evaluation at the representative
    n = 2
    phi, psi = su_sample(n, 6), su_sample(n, 7)
    lhs, rhs = w0_translate_check(n, np.eye(n), phi, psi)
    assert abs(lhs - rhs) < 1e-13


@pytest.mark.parametrize("n", [2, 3])
def test_w0_translation_sweep(n):
    worst = 0.0
    for i in range(30):
        k = su_group_sample(n, 100 + i)
        phi, psi = su_sample(n, 200 + i), su_sample(n, 300 + i)
        lhs, rhs = w0_translate_check(n, k, phi, psi)
        worst = max(worst, abs(lhs - rhs))
    assert worst < 1e-10


def test_su2_k_of_zeta_closed_form():
    assert frob(su2_k_of_zeta(0) - np.eye(2)) == 0
    target = np.array([[1, -1], [1, 1]], dtype=complex) / np.sqrt(2)
    assert frob(su2_k_of_zeta(1) - target) < 1e-15
    rng = np.random.default_rng(8)
    for _ in range(20):
        z = complex(rng.normal(), rng.normal())
        k = su2_k_of_zeta(z)
        assert frob(k.conj().T @ k - np.eye(2)) < 1e-14
        assert abs(np.linalg.det(k) - 1) < 1e-14
        assert abs(k[0, 0] - (1 + abs(z) ** 2) ** -0.5) < 1e-14
        l, d, u = gauss_ldu(k)
        assert frob(l - np.array([[1, 0], [z, 1]])) < 1e-12


def test_leaf_coordinates_type():
    lc = LeafCoordinates(word=(1, 2), zeta=(1j, 0.5))
    assert len(lc.word) == len(lc.zeta)
    with pytest.raises(ValueError):
        LeafCoordinates(word=(1,), zeta=(1j, 2.0))


def test_lu_coordinates_trivial():
    assert frob(lu_coordinates_to_l(2, [1], [0.0]) - np.eye(2)) < 1e-14


def test_lu_coordinates_su2():
    z = 0.7 - 0.4j
    l = lu_coordinates_to_l(2, [1], [z])
    assert frob(l - np.array([[1, 0], [z, 1]])) < 1e-13


def test_lu_coordinates_membership_su3():
    rng = np.random.default_rng(9)
    for word in ([1, 2], [2, 1], [1, 2, 1]):
        zeta = [complex(rng.normal(), rng.normal()) for _ in word]
        l = lu_coordinates_to_l(3, word, zeta)
        assert frob(np.triu(l, 1)) < 1e-12
        wrep = representative(3, word)
        conj = wrep @ l @ np.linalg.inv(wrep)
        assert frob(np.tril(conj, -1)) < 1e-10


def test_lu_rejects_non_reduced():
    with pytest.raises(ValueError):
        lu_coordinates_to_l(2, [1, 1], [1.0, 1.0])


def test_lu_a_product_base_cases():
    assert frob(lu_a_product(2, [1], [0.0]) - np.eye(2)) < 1e-14
    z = 2.0 + 1.0j
    a = lu_a_product(2, [1], [z])
    s = (1 + abs(z) ** 2) ** -0.5
    assert frob(a - np.diag([s, 1 / s])) < 1e-13


def test_lu_a_product_matches_factorization():
    rng = np.random.default_rng(10)
    for word in ([1], [2], [1, 2], [2, 1], [1, 2, 1], [2, 1, 2]):
        for _ in range(5):
            zeta = [complex(rng.normal(), rng.normal()) * 0.8 for _ in word]
            kpt = lu_unitary_point(3, word, zeta)
            l, d, u = gauss_ldu(kpt)
            dd = np.diag(d)
            assert np.max(np.abs(dd / np.abs(dd) - 1)) < 1e-10  # the m part is 1
            assert np.max(np.abs(np.abs(dd) - np.diag(lu_a_product(3, word, zeta)).real)) < 1e-10


def test_lu_form_coefficients_values():
    assert lu_form_coefficients(2, [1], [0.0]) == [0.5]
    assert abs(lu_form_coefficients(2, [1], [1.0])[0] - 0.25) < 1e-15
    z = [0.5, 2.0]
    c = lu_form_coefficients(3, [1, 2], z)
    assert abs(c[0] - 0.5 / 1.25) < 1e-15
    assert abs(c[1] - 0.5 / 5.0) < 1e-15


def test_haar_density_values():
    rng = np.random.default_rng(11)
    for _ in range(10):
        z = complex(rng.normal(), rng.normal())
        assert abs(haar_density(2, [1], [z]) - 1.0) < 1e-12
    assert abs(haar_density(3, [1, 2], [0.0, 0.0]) - 1.0) < 1e-15
    # exponents by functional evaluation: (0, 1) for this word
    assert abs(haar_density(3, [1, 2], [1.0, 1.0]) - 2.0) < 1e-12


def test_momentum_in_coordinates_su2_log_shape():
    z = 1.5
    vals = momentum_in_coordinates(2, [1], [z])
    # single coefficient proportional to log(1 + |z|^2)
    expected = -np.log(1 + abs(z) ** 2) / (2 * np.sqrt(2))
    assert abs(vals[0] - expected) < 1e-12
    assert momentum_in_coordinates(2, [1], [0.0]) == [0.0]


def test_momentum_reconciliation_constant_is_sqrt2():
    inst = SpaceInstance.group(2)
    c = measured_reconciliation_constant(inst, samples=10, seed=3)
    assert abs(c - np.sqrt(2)) < 1e-10
    inst3 = SpaceInstance.group(3)
    c3 = measured_reconciliation_constant(inst3, samples=6, seed=3)
    assert abs(c3 - np.sqrt(2)) < 1e-10


def test_torus_rotation_preserves_moduli_and_matches_conjugation():
    rng = np.random.default_rng(12)
    word = [1, 2, 1]
    zeta = [complex(rng.normal(), rng.normal()) for _ in word]
    angles = rng.standard_normal(3)
    t = np.diag(np.exp(1j * (angles - angles.mean())))
    z2 = torus_rotate_zeta(3, word, zeta, t)
    l = lu_coordinates_to_l(3, word, zeta)
    l2 = lu_coordinates_to_l(3, word, z2)
    assert frob(t @ l @ np.linalg.inv(t) - l2) < 1e-10
    assert max(abs(abs(a) - abs(b)) for a, b in zip(zeta, z2)) < 1e-12
    c1 = lu_form_coefficients(3, word, zeta)
    c2 = lu_form_coefficients(3, word, z2)
    assert max(abs(a - b) for a, b in zip(c1, c2)) < 1e-12


def test_numeric_pullback_matches_coefficients_su2():
    inst = SpaceInstance.group(2)
    coeffs, off = numeric_form_coefficients(inst, [1], [0.0])
    assert abs(coeffs[0] - 0.5) < 1e-6
    coeffs, off = numeric_form_coefficients(inst, [1], [1.0 + 0j])
    assert abs(coeffs[0] - 0.25) < 1e-6
    assert off < 1e-6


def test_numeric_pullback_su3_word12():
    inst = SpaceInstance.group(3)
    zeta = [0.4 - 0.3j, 0.7 + 0.2j]
    coeffs, off = numeric_form_coefficients(inst, [1, 2], zeta)
    target = lu_form_coefficients(3, [1, 2], zeta)
    assert np.max(np.abs(np.array(coeffs) - np.array(target))) < 2e-5
    assert off < 2e-5


def test_coefficients_have_product_structure():
    # perturbing one coordinate leaves the others' numeric coefficients fixed
    inst = SpaceInstance.group(3)
    z1 = [0.3 + 0.1j, -0.6 + 0.4j]
    z2 = [0.3 + 0.1j, 1.1 - 0.9j]
    c1, _ = numeric_form_coefficients(inst, [1, 2], z1)
    c2, _ = numeric_form_coefficients(inst, [1, 2], z2)
    assert abs(c1[0] - c2[0]) < 2e-5


def test_density_report_bundles():
    rep = density_report(3, [1, 2], [1.0, 1.0])
    assert isinstance(rep, DensityReport)
    assert rep.haar_density > 0
    assert all(c > 0 for c in rep.form_coefficients)
    assert np.all(np.diag(rep.a_value).real > 0)
    assert len(rep.momentum) == 2
