from itertools import permutations

import numpy as np
import pytest

from liepoisson.weyl import (
    RootDatum,
    evaluate_functional,
    inverse_perm,
    inversions,
    is_reduced,
    longest_perm,
    make_weyl_element,
    minimal_prefix_extension,
    perm_of_word,
    r_gamma,
    reduced_word,
    representative,
)

from conftest import frob


def test_reduced_word_trivial_cases():
    assert reduced_word((0, 1)) == []
    assert reduced_word((1, 0)) == [1]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_reduced_word_exhaustive(n):
    for p in permutations(range(n)):
        w = reduced_word(p)
        assert len(w) == inversions(p)
        assert perm_of_word(n, w) == p


def test_longest_element_s3():
    w = reduced_word(longest_perm(3))
    assert len(w) == 3
    assert perm_of_word(3, w) == (2, 1, 0)


def test_representative_base_cases():
    assert frob(representative(2, []) - np.eye(2)) == 0
    assert frob(representative(2, [1]) - np.array([[0, 1j], [1j, 0]])) == 0


def test_representative_order_four():
    r = representative(2, [1])
    assert frob(np.linalg.matrix_power(r, 2) + np.eye(2)) < 1e-15
    assert frob(np.linalg.matrix_power(r, 4) - np.eye(2)) < 1e-15


@pytest.mark.parametrize("n", [2, 3, 4])
def test_representative_conjugation_action(n):
    rng = np.random.default_rng(n)
    for p in permutations(range(n)):
        we = make_weyl_element(n, perm=p)
        assert abs(np.linalg.det(we.rep) - 1) < 1e-12
        assert frob(we.rep.conj().T @ we.rep - np.eye(n)) < 1e-12
        d = np.diag(rng.standard_normal(n) + 1j * rng.standard_normal(n))
        c = we.rep @ d @ np.linalg.inv(we.rep)
        expected = np.zeros((n, n), dtype=complex)
        for j in range(n):
            expected[p[j], p[j]] = d[j, j]
        assert frob(c - expected) < 1e-12


def test_representative_normalizes_torus_long_words():
    n = 4
    word = reduced_word(longest_perm(n))
    rep = representative(n, word)
    d = np.diag([1.0, 2.0, 3.0, -6.0]).astype(complex)
    c = rep @ d @ np.linalg.inv(rep)
    assert frob(c - np.diag(np.diag(c))) < 1e-12


def test_prefix_extension_trivial_and_s2():
    assert perm_of_word(3, minimal_prefix_extension(3, [])) == longest_perm(3)
    assert minimal_prefix_extension(2, [1]) == [1]


@pytest.mark.parametrize("n", [3, 4])
def test_prefix_extension_length_additivity(n):
    for p in permutations(range(n)):
        w = reduced_word(p)
        ext = minimal_prefix_extension(n, w)
        assert ext[: len(w)] == w
        assert perm_of_word(n, ext) == longest_perm(n)
        assert is_reduced(n, ext)
        assert len(ext) == inversions(longest_perm(n))


def test_prefix_extension_rejects_non_reduced():
    with pytest.raises(ValueError):
        minimal_prefix_extension(3, [1, 1])


def test_root_datum_norms_and_cartan_matrix():
    for n in (2, 3, 4):
        rd = RootDatum(n)
        for i in range(1, n):
            assert rd.root_norm2(i) == 2.0
            for j in range(1, n):
                val = rd.gamma(i, rd.coroot(j)).real
                expected = 2 if i == j else (-1 if abs(i - j) == 1 else 0)
                assert val == expected


def test_delta_check_on_coroots():
    for n in (2, 3, 4):
        rd = RootDatum(n)
        for j in range(1, n):
            assert abs(rd.delta_check(rd.coroot(j)) - 1) < 1e-15


def test_functional_hand_values():
    rd = RootDatum(2)
    assert abs(evaluate_functional(rd, "gamma", np.diag([0.5, -0.5]), j=1) - 1.0) < 1e-15
    assert abs(evaluate_functional(rd, "delta_check", rd.coroot(1)) - 1.0) < 1e-15
    rd3 = RootDatum(3)
    w = make_weyl_element(3, [2])
    h = np.linalg.inv(w.rep) @ rd3.coroot(2) @ w.rep
    # conjugation moves the coroot to diag(0,-1,1): delta evaluates to -1
    assert frob(h - np.diag([0, -1, 1])) < 1e-14
    assert abs(evaluate_functional(rd3, "delta_check", h) + 1.0) < 1e-14


def test_functional_rejects_non_diagonal():
    rd = RootDatum(2)
    with pytest.raises(ValueError):
        rd.delta_check(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_make_weyl_element_validates():
    with pytest.raises(ValueError):
        make_weyl_element(3, [1, 1])
    we = make_weyl_element(3, [1, 2, 1])
    assert we.length == 3
    assert we.perm == (2, 1, 0)
    assert inverse_perm(we.perm) == we.perm
