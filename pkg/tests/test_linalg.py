import numpy as np
import pytest
from numpy.testing import assert_allclose

from discoh.linalg import (
    dephase,
    dephase_local,
    diag_probs,
    hermitian_eig,
    partial_trace,
    tensor,
)

PLUS = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
BELL = np.zeros((4, 4), dtype=complex)
BELL[np.ix_([0, 3], [0, 3])] = 0.5


def rand_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def test_tensor_identity():
    assert_allclose(tensor(np.eye(2), np.eye(2)), np.eye(4))


def test_tensor_basis_projectors():
    assert_allclose(tensor(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])), np.diag([0.0, 1.0, 0.0, 0.0]))


def test_tensor_plus_zero_hand_expanded():
    # |+><+| (x) |0><0| has 1/2 exactly at rows/cols {0, 2}
    out = tensor(PLUS, np.diag([1.0, 0.0]))
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 2], [0, 2])] = 0.5
    assert_allclose(out, expected)


def test_tensor_associative_bilinear():
    rng = np.random.default_rng(42)
    for _ in range(10):
        a, b, c = (rand_hermitian(rng, d) for d in (2, 3, 2))
        assert_allclose(tensor(tensor(a, b), c), tensor(a, tensor(b, c)), atol=1e-12)
        x = rand_hermitian(rng, 2)
        assert_allclose(
            tensor(a + 2.0 * x, b), tensor(a, b) + 2.0 * tensor(x, b), atol=1e-12
        )


def test_partial_trace_product_factorizes():
    rng = np.random.default_rng(7)
    for _ in range(10):
        a = rand_hermitian(rng, 2)
        b = rand_hermitian(rng, 3)
        m = tensor(a, b)
        assert_allclose(partial_trace(m, (2, 3), "a"), a * np.trace(b), atol=1e-10)
        assert_allclose(partial_trace(m, (2, 3), "b"), b * np.trace(a), atol=1e-10)


def test_partial_trace_bell_marginal():
    assert_allclose(partial_trace(BELL, (2, 2), "a"), np.eye(2) / 2, atol=1e-12)
    assert_allclose(partial_trace(BELL, (2, 2), "b"), np.eye(2) / 2, atol=1e-12)


def test_partial_trace_cq_block_sum():
    cq = 0.5 * tensor(np.diag([1.0, 0.0]), np.diag([1.0, 0.0])) + 0.5 * tensor(
        np.diag([0.0, 1.0]), PLUS
    )
    assert_allclose(partial_trace(cq, (2, 2), "a"), np.eye(2) / 2, atol=1e-12)


def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(3)
    m = rand_hermitian(rng, 6)
    for keep in ("a", "b"):
        assert abs(np.trace(partial_trace(m, (2, 3), keep)) - np.trace(m)) < 1e-10


def test_partial_trace_dimension_mismatch():
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), (2, 3), "a")


def test_hermitian_eig_diagonal():
    res = hermitian_eig(np.diag([0.7, 0.3]))
    assert_allclose(res.eigenvalues, [0.7, 0.3])


def test_hermitian_eig_projector_and_pauli():
    assert_allclose(hermitian_eig(PLUS).eigenvalues, [1.0, 0.0], atol=1e-12)
    pauli_x = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert_allclose(hermitian_eig(pauli_x).eigenvalues, [1.0, -1.0], atol=1e-12)


def test_hermitian_eig_reconstruction_and_unitarity():
    rng = np.random.default_rng(11)
    for _ in range(10):
        m = rand_hermitian(rng, 5)
        res = hermitian_eig(m)
        v, w = res.eigenvectors, res.eigenvalues
        assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - m)) < 1e-9
        assert np.max(np.abs(v.conj().T @ v - np.eye(5))) < 1e-9
        assert abs(w.sum() - np.trace(m).real) < 1e-10


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(ValueError, match="Hermitian"):
        hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_dephase_uniform_coherent_state():
    assert_allclose(dephase(PLUS), np.eye(2) / 2)


def test_dephase_leaves_diagonal():
    d = np.diag([0.3, 0.7])
    assert_allclose(dephase(d), d)


def test_dephase_in_own_eigenbasis():
    hadamard = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2)
    assert_allclose(dephase(PLUS, hadamard), PLUS, atol=1e-12)


def test_dephase_idempotent_trace_preserving():
    rng = np.random.default_rng(5)
    for _ in range(10):
        m = rand_hermitian(rng, 4)
        frame = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))[0]
        once = dephase(m, frame)
        assert_allclose(dephase(once, frame), once, atol=1e-12)
        assert abs(np.trace(once) - np.trace(m)) < 1e-12


def test_dephase_local_bell():
    expected = np.diag([0.5, 0.0, 0.0, 0.5])
    assert_allclose(dephase_local(BELL, (2, 2)), expected, atol=1e-12)


def test_dephase_local_product_factorizes():
    rng = np.random.default_rng(9)
    a = rand_hermitian(rng, 2)
    b = rand_hermitian(rng, 3)
    assert_allclose(dephase_local(tensor(a, b), (2, 3)), tensor(dephase(a), b), atol=1e-12)


def test_dephase_local_fixes_cq_states():
    cq = 0.5 * tensor(np.diag([1.0, 0.0]), np.diag([1.0, 0.0])) + 0.5 * tensor(
        np.diag([0.0, 1.0]), PLUS
    )
    assert_allclose(dephase_local(cq, (2, 2)), cq, atol=1e-12)


def test_diag_probs_matches_dephase_spectrum():
    rng = np.random.default_rng(13)
    m = rand_hermitian(rng, 3)
    frame = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))[0]
    assert_allclose(
        np.sort(diag_probs(m, frame)),
        np.sort(np.linalg.eigvalsh(dephase(m, frame))),
        atol=1e-10,
    )
