import numpy as np
import pytest
from numpy.testing import assert_allclose

from discoh.channels import dephasing_channel, make_rank_one_ppio
from discoh.discord import (
    MeasurementBasis,
    OptimizerConfig,
    basis_frame,
    coherence_discord,
    coherence_discord_drop,
    coherence_discord_invariance,
    coherence_discord_symmetric,
    dephasing_balance,
    discord,
    discord_at_basis,
    discord_via_coherence,
    in_zero_set,
    measured_conditional_info,
    n_basis_params,
    ppio_monotonicity_gap,
    qubit_discord_grid,
)
from discoh.measures import entropy, entropy_of_probs, mutual_information
from discoh.states import (
    DensityMatrix,
    ReferenceBasis,
    bell_phi_plus,
    classical_quantum,
    random_state,
    werner,
)
from discoh.verify import nonconvexity_witness

PLUS = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


def product_state(a, b):
    return DensityMatrix(np.kron(a, b), (a.shape[0], b.shape[0]))


def cq_example():
    return classical_quantum([0.5, 0.5], [np.diag([1.0, 0.0]), PLUS])


def random_states(n, d_a=2, d_b=2, seed=0):
    rng = np.random.default_rng(seed)
    return [
        random_state(d_a, d_b, "ginibre-mixed", seed=int(rng.integers(1 << 32)))
        for _ in range(n)
    ]


# ---------------------------------------------------------------------------
# basis parameterization
# ---------------------------------------------------------------------------


def test_basis_frame_qubit_is_bloch():
    theta, phi = 0.4, 1.3
    frame = basis_frame([theta, phi], 2)
    expected_col0 = np.array([np.cos(theta), np.exp(1j * phi) * np.sin(theta)])
    assert_allclose(frame[:, 0], expected_col0, atol=1e-12)
    assert_allclose(frame.conj().T @ frame, np.eye(2), atol=1e-12)


def test_basis_frame_unitary_any_dim():
    rng = np.random.default_rng(1)
    for d in (2, 3, 4):
        params = rng.uniform(0, 2 * np.pi, n_basis_params(d))
        frame = basis_frame(params, d)
        assert np.max(np.abs(frame.conj().T @ frame - np.eye(d))) < 1e-12


def test_measurement_basis_validates():
    with pytest.raises(ValueError, match="unitary"):
        MeasurementBasis(np.ones((2, 2)))


# ---------------------------------------------------------------------------
# measured quantities at a basis
# ---------------------------------------------------------------------------


def test_measured_conditional_info_product_state():
    rho = product_state(PLUS, np.diag([0.2, 0.8]))
    for basis in (None, HADAMARD):
        assert abs(measured_conditional_info(rho, basis)) < 1e-10


def test_measured_conditional_info_bell():
    assert_allclose(measured_conditional_info(bell_phi_plus(), None), 1.0, atol=1e-12)


def test_measured_conditional_info_cq_block_evaluation():
    probs = [0.3, 0.7]
    blocks = [PLUS, np.diag([0.6, 0.4])]
    rho = classical_quantum(probs, blocks)
    rb = 0.3 * PLUS + 0.7 * np.diag([0.6, 0.4])
    expected = entropy(rb) - sum(p * entropy(b) for p, b in zip(probs, blocks))
    assert_allclose(measured_conditional_info(rho, None), expected, atol=1e-10)


def test_discord_at_basis_cq_fixed_point():
    assert abs(discord_at_basis(cq_example(), None)) < 1e-10


def test_discord_at_basis_bell_any_basis():
    rng = np.random.default_rng(2)
    for _ in range(5):
        params = rng.uniform(0, 2 * np.pi, 2)
        frame = basis_frame(params, 2)
        assert_allclose(discord_at_basis(bell_phi_plus(), frame), 1.0, atol=1e-9)


def test_discord_formulas_agree_at_random_bases():
    # the measured-information route and the post-measurement-state route
    rng = np.random.default_rng(3)
    for rho in random_states(10, seed=4):
        frame = basis_frame(rng.uniform(0, 2 * np.pi, 2), 2)
        via_state = discord_at_basis(rho, frame)
        via_mci = mutual_information(rho) - measured_conditional_info(rho, frame)
        assert abs(via_state - via_mci) < 1e-9


# ---------------------------------------------------------------------------
# optimized discord
# ---------------------------------------------------------------------------


def test_discord_bell():
    value, trace = discord(bell_phi_plus())
    assert abs(value - 1.0) < 1e-6
    assert trace.converged
    assert trace.best_value == min(r.final_value for r in trace.restarts)


def test_discord_cq_state_zero():
    value, _ = discord(cq_example())
    assert abs(value) < 1e-8


def test_discord_deterministic_for_seed():
    rho = random_states(1, seed=5)[0]
    v1, t1 = discord(rho, OptimizerConfig(seed=7))
    v2, t2 = discord(rho, OptimizerConfig(seed=7))
    assert v1 == v2
    assert t1.restarts == t2.restarts


def test_discord_werner_grid_oracle():
    for p in np.linspace(0.1, 0.9, 9):
        value, _ = discord(werner(float(p)), OptimizerConfig(restarts=8, seed=1))
        oracle = qubit_discord_grid(werner(float(p)))
        assert abs(value - oracle) < 1e-4


def test_discord_dimension_cap():
    big = DensityMatrix(np.eye(72) / 72, (8, 9))
    with pytest.raises(ValueError, match="capped"):
        discord(big)


def test_grid_oracle_requires_qubit_a():
    rho = random_state(3, 2, "ginibre-mixed", seed=6)
    with pytest.raises(ValueError, match="d_a = 2"):
        qubit_discord_grid(rho)


def test_trace_serialization():
    _, trace = discord(bell_phi_plus(), OptimizerConfig(restarts=3))
    d = trace.to_dict()
    assert set(d) == {"best_value", "best_frame", "converged", "restarts"}
    assert len(d["restarts"]) == 3
    assert {"initial_params", "final_value", "iterations"} == set(d["restarts"][0])


# ---------------------------------------------------------------------------
# closed-form coherence correlation
# ---------------------------------------------------------------------------


def test_coherence_discord_cq_zero():
    assert abs(coherence_discord(cq_example())) < 1e-12


def test_coherence_discord_bell_one():
    assert_allclose(coherence_discord(bell_phi_plus()), 1.0, atol=1e-12)


def test_coherence_discord_product_zero():
    rho = product_state(PLUS, np.diag([0.2, 0.8]))
    assert abs(coherence_discord(rho)) < 1e-10


def test_coherence_discord_rotated_cq_is_one():
    # blocks |0><0|, |1><1| attached to the |+>/|-> basis of A: hand expansion
    # gives S[(dephase_a x id)rho] = 2, S(rho) = 1, C_r(rho_a) = 0
    rho = classical_quantum(
        [0.5, 0.5],
        [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])],
        basis_a=ReferenceBasis(HADAMARD),
    )
    assert_allclose(coherence_discord(rho), 1.0, atol=1e-12)


def test_coherence_discord_closed_form_matches_literal_drop():
    # dual route: the closed form equals the correlated-coherence drop under
    # the canonical rank-one PPIO (plain dephasing)
    for rho in random_states(10, seed=8):
        literal = coherence_discord_drop(rho, dephasing_channel(2))
        assert abs(coherence_discord(rho) - literal) < 1e-12


def test_coherence_discord_respects_frame_argument():
    rho = classical_quantum(
        [0.5, 0.5],
        [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])],
        basis_a=ReferenceBasis(HADAMARD),
    )
    # measured against its own defining frame the correlation vanishes
    assert abs(coherence_discord(rho, basis_a=HADAMARD)) < 1e-12


def test_invariance_check_bell_and_diagonal():
    assert coherence_discord_invariance(bell_phi_plus(), trials=25, seed=3) < 1e-12
    diag = DensityMatrix(np.diag([0.4, 0.1, 0.2, 0.3]), (2, 2))
    assert coherence_discord_invariance(diag, trials=25, seed=3) < 1e-12


def test_invariance_check_random_states():
    for rho in random_states(5, seed=9):
        assert coherence_discord_invariance(rho, trials=50, seed=11) <= 1e-9


def test_symmetric_variant_diagonal_zero():
    diag = DensityMatrix(np.diag([0.4, 0.1, 0.2, 0.3]), (2, 2))
    assert abs(coherence_discord_symmetric(diag)) < 1e-12


def test_symmetric_variant_bell_one():
    assert_allclose(coherence_discord_symmetric(bell_phi_plus()), 1.0, atol=1e-12)


def test_symmetric_variant_cq_with_distinct_coherent_blocks():
    minus = np.array([[0.5, -0.5], [-0.5, 0.5]])
    rho = classical_quantum([0.5, 0.5], [PLUS, minus])
    assert coherence_discord_symmetric(rho) > 0.5


# ---------------------------------------------------------------------------
# basis-minimized correlation (Theorem 2 route)
# ---------------------------------------------------------------------------


def test_discord_via_coherence_bell():
    value, _, trace = discord_via_coherence(bell_phi_plus())
    assert abs(value - 1.0) < 1e-6
    assert trace.best_value == value


def test_discord_via_coherence_cq_recovers_basis():
    value, basis, _ = discord_via_coherence(cq_example())
    assert abs(value) < 1e-8
    # the minimizing frame realigns with the defining basis up to phase/order
    overlap = np.abs(basis.frame.conj().T @ np.eye(2))
    assert np.max(np.abs(np.sort(overlap, axis=0)[-1] - 1.0)) < 1e-3


def test_discord_via_coherence_agrees_with_discord():
    for rho in random_states(8, seed=12):
        v1, _ = discord(rho, OptimizerConfig(seed=21))
        v2, _, _ = discord_via_coherence(rho, OptimizerConfig(seed=22))
        assert abs(v1 - v2) < 1e-4


def test_discord_via_coherence_agrees_2x3():
    for rho in random_states(4, d_b=3, seed=13):
        v1, _ = discord(rho, OptimizerConfig(seed=31))
        v2, _, _ = discord_via_coherence(rho, OptimizerConfig(seed=32))
        assert abs(v1 - v2) < 1e-4


def test_coherence_discord_upper_bounds_discord():
    for rho in random_states(10, seed=14):
        v, _ = discord(rho, OptimizerConfig(seed=3))
        assert coherence_discord(rho) >= v - 1e-6


# ---------------------------------------------------------------------------
# monotonicity gap and dephasing balance (Theorem 1 route)
# ---------------------------------------------------------------------------


def test_gap_cq_canonical_zero():
    gap, rhs = ppio_monotonicity_gap(cq_example(), dephasing_channel(2))
    assert abs(gap) < 1e-12
    assert abs(rhs) < 1e-12


def test_gap_bell_equality_case():
    gap, rhs = ppio_monotonicity_gap(bell_phi_plus(), dephasing_channel(2))
    assert_allclose(gap, 1.0, atol=1e-12)
    assert_allclose(rhs, 1.0, atol=1e-12)


def test_gap_requires_rank_one_ppio():
    from discoh.channels import make_iuo

    with pytest.raises(ValueError, match="rank-one"):
        ppio_monotonicity_gap(bell_phi_plus(), make_iuo([1, 0], [0.0, 0.0]))


def test_gap_dim3_level_swap_nonnegative():
    u_swap = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex)
    ppio = make_rank_one_ppio(3, [u_swap, np.eye(3), np.eye(3)])
    rng = np.random.default_rng(15)
    for _ in range(10):
        rho = random_state(3, 2, "ginibre-mixed", seed=int(rng.integers(1 << 32)))
        gap, rhs = ppio_monotonicity_gap(rho, ppio)
        assert gap >= -1e-9
        assert gap >= rhs - 1e-9


def test_gap_equality_for_non_merging_ppios():
    # when no two levels merge, the drop equals the mutual-information drop
    from discoh.channels import random_rank_one_ppio

    rng = np.random.default_rng(16)
    for rho in random_states(10, seed=17):
        ppio = random_rank_one_ppio(2, rng, injective=True)
        gap, rhs = ppio_monotonicity_gap(rho, ppio)
        assert abs(gap - rhs) < 1e-9


def test_balance_zero_for_shared_unitary():
    rng = np.random.default_rng(18)
    from discoh.channels import iuo_matrix

    for rho in random_states(5, seed=19):
        u = iuo_matrix(rng.permutation(2), rng.uniform(0, 2 * np.pi, 2))
        ppio = make_rank_one_ppio(2, [u, u])
        assert abs(dephasing_balance(rho, ppio)) < 1e-10


def test_balance_zero_on_product_states():
    rho = product_state(PLUS, PLUS)
    u_swap = np.array([[0, 1], [1, 0]], dtype=complex)
    ppio = make_rank_one_ppio(2, [u_swap, np.eye(2)])
    assert abs(dephasing_balance(rho, ppio)) < 1e-10


def test_balance_matches_blockwise_decomposition():
    # level-merging in dim 3: the balance reduces to
    # q0 S[D(s0)] + q1 S[D(s1)] - p1 S[D((B00+B11)/p1)] with D = B dephasing
    u_swap = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex)
    ppio = make_rank_one_ppio(3, [u_swap, np.eye(3), np.eye(3)])
    rng = np.random.default_rng(20)
    for _ in range(5):
        rho = random_state(3, 2, "ginibre-mixed", seed=int(rng.integers(1 << 32)))
        t = rho.mat.reshape(3, 2, 3, 2)
        b00, b11 = t[0, :, 0, :], t[1, :, 1, :]
        q0, q1 = np.trace(b00).real, np.trace(b11).real
        p1 = q0 + q1
        formula = (
            q0 * entropy_of_probs(np.diag(b00 / q0).real)
            + q1 * entropy_of_probs(np.diag(b11 / q1).real)
            - p1 * entropy_of_probs(np.diag((b00 + b11) / p1).real)
        )
        assert abs(dephasing_balance(rho, ppio) - formula) < 1e-10


def test_monotonicity_drop_under_merging_exceeds_closed_form():
    # a merging PPIO can only drop more correlated coherence than dephasing
    u_swap = np.array([[0, 1], [1, 0]], dtype=complex)
    merging = make_rank_one_ppio(2, [u_swap, np.eye(2)])
    minus = np.array([[0.5, -0.5], [-0.5, 0.5]])
    rho = classical_quantum([0.5, 0.5], [PLUS, minus])
    drop = coherence_discord_drop(rho, merging)
    assert drop > coherence_discord(rho) + 0.9  # merging destroys 1 extra bit


# ---------------------------------------------------------------------------
# zero sets
# ---------------------------------------------------------------------------


def test_zero_set_memberships():
    cq = cq_example()
    cert = in_zero_set(cq, "dac")
    assert cert.member and cert.value <= 1e-9

    diag = DensityMatrix(np.diag([0.4, 0.1, 0.2, 0.3]), (2, 2))
    assert in_zero_set(diag, "dac").member
    assert in_zero_set(diag, "dac-symmetric").member
    assert in_zero_set(diag, "discord").member

    assert not in_zero_set(bell_phi_plus(), "dac").member
    with pytest.raises(ValueError, match="zero set"):
        in_zero_set(cq, "negativity")


def test_witness_not_in_discord_zero_set():
    wit = nonconvexity_witness()
    cert = in_zero_set(wit, "discord")
    assert not cert.member
    assert cert.value > 0.01
    assert cert.basis is not None
    assert qubit_discord_grid(wit) > 0.01
    # ... even though both mixture components are discord free
    assert in_zero_set(product_state(np.diag([1.0, 0.0]), np.diag([1.0, 0.0])), "dac").member
    assert in_zero_set(product_state(PLUS, np.diag([0.0, 1.0])), "discord").member
