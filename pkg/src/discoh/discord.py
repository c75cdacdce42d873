"""Quantum discord via measurement-basis optimization, the discordlike
coherence correlation in closed form, and the machinery that checks the
structural theorems relating the two (see README, Theorems 1-3).

The basis search parameterizes a unitary frame as a product of complex Givens
rotations, one (angle, phase) pair per index pair; for a qubit this is the
familiar (theta, phi) Bloch parameterization.  A multi-start Nelder-Mead
refinement runs over that angle vector; restarts are independent and the
reported value is an upper bound on the true minimum, with per-restart
statistics attached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .channels import (
    LABEL_RANK_ONE_PPIO,
    KrausChannel,
    apply,
    classify,
    lift_to_bipartite,
    random_iuo,
    random_rank_one_ppio,
)
from .linalg import MAX_OPT_DIM, as_frame, dephase, dephase_local, diag_probs, partial_trace, tensor
from .measures import (
    coherence_rel_ent,
    correlated_coherence,
    cq_coherence,
    entropy,
    entropy_of_probs,
    mutual_information,
)
from .states import DensityMatrix, ReferenceBasis, ket_projector, rng_from_seed


class MeasurementBasis(ReferenceBasis):
    """Unitary frame on H_a; its columns define the rank-one projectors of a
    local von Neumann measurement."""


@dataclass(frozen=True)
class OptimizerConfig:
    """Multi-start settings for the basis searches.  Defaults are tuned for
    d_a <= 4 (desk scale); all randomness is driven by the explicit seed."""

    restarts: int = 16
    max_iter: int = 500
    f_tol: float = 1e-9
    x_tol: float = 1e-9
    seed: int = 0


@dataclass(frozen=True)
class RestartRecord:
    initial_params: tuple
    final_value: float
    iterations: int


@dataclass(frozen=True)
class OptimizationTrace:
    best_value: float
    best_basis: ReferenceBasis
    restarts: tuple
    converged: bool

    def to_dict(self) -> dict:
        return {
            "best_value": self.best_value,
            "best_frame": [
                [[float(x.real), float(x.imag)] for x in row]
                for row in self.best_basis.frame
            ],
            "converged": self.converged,
            "restarts": [
                {
                    "initial_params": list(r.initial_params),
                    "final_value": r.final_value,
                    "iterations": r.iterations,
                }
                for r in self.restarts
            ],
        }


def n_basis_params(dim: int) -> int:
    return dim * (dim - 1)


def basis_frame(params, dim: int) -> np.ndarray:
    """Unitary frame from the Givens angle vector.

    Layout: one (theta, phi) pair per index pair (i, j), i < j.  Products of
    such rotations reach every measurement frame (column phases are
    irrelevant to the projectors).
    """
    params = np.asarray(params, dtype=float)
    if params.shape != (n_basis_params(dim),):
        raise ValueError(f"need {n_basis_params(dim)} parameters for dim {dim}")
    if dim == 2:
        c, s = np.cos(params[0]), np.sin(params[0])
        e = np.exp(1j * params[1])
        return np.array([[c, -s * e.conjugate()], [s * e, c]])
    u = np.eye(dim, dtype=complex)
    k = 0
    for i in range(dim - 1):
        for j in range(i + 1, dim):
            theta, phi = params[k], params[k + 1]
            k += 2
            g = np.eye(dim, dtype=complex)
            c, s = np.cos(theta), np.sin(theta)
            e = np.exp(1j * phi)
            g[i, i] = c
            g[j, j] = c
            g[j, i] = s * e
            g[i, j] = -s * e.conjugate()
            u = g @ u
    return u


def _check_opt_dims(rho: DensityMatrix) -> None:
    if rho.dim > MAX_OPT_DIM:
        raise ValueError(
            f"optimization paths are capped at total dimension {MAX_OPT_DIM}, got {rho.dim}"
        )


def _eigvalsh_psd_batch(mats: np.ndarray) -> np.ndarray:
    """Eigenvalues of a stack of small Hermitian PSD matrices.

    2x2 blocks use the closed form; larger blocks go through LAPACK.
    """
    if mats.shape[-1] == 2:
        a = mats[..., 0, 0].real
        d = mats[..., 1, 1].real
        b = mats[..., 0, 1]
        half = 0.5 * (a + d)
        r = np.sqrt(0.25 * (a - d) ** 2 + b.real**2 + b.imag**2)
        return np.stack([half - r, half + r], axis=-1)
    return np.linalg.eigvalsh(mats)


def _neg_xlog2x_sum(x: np.ndarray, axis=None) -> np.ndarray:
    x = np.clip(x, 0.0, None)
    safe = np.where(x > 0.0, x, 1.0)
    return -(x * np.log2(safe)).sum(axis=axis)


# ---------------------------------------------------------------------------
# Measured quantities at a fixed basis
# ---------------------------------------------------------------------------


def _measurement_blocks(rho: DensityMatrix, frame: np.ndarray | None):
    """Unnormalized conditional B blocks <psi_k| rho |psi_k> for all k."""
    d_a, d_b = rho.dims
    t = rho.mat.reshape(d_a, d_b, d_a, d_b)
    if frame is None:
        idx = np.arange(d_a)
        return t[idx, :, idx, :]
    return np.einsum("ia,ijkl,ka->ajl", frame.conj(), t, frame)


def measured_conditional_info(rho: DensityMatrix, basis) -> float:
    """S(rho_b) - sum_k p_k S(rho_k) for the local measurement on A.

    Zero-probability branches are skipped.  The value lies in [0, S(rho_b)].
    """
    frame = as_frame(basis, rho.d_a)
    rb = partial_trace(rho.mat, rho.dims, keep="b")
    total = 0.0
    for block in _measurement_blocks(rho, frame):
        lam = np.clip(np.linalg.eigvalsh(block), 0.0, None)
        p = float(lam.sum())
        if p > 1e-12:
            total += p * entropy_of_probs(lam / p)
    return entropy(rb) - total


def discord_at_basis(rho: DensityMatrix, basis) -> float:
    """I(rho) - I(post-measurement state): the discord candidate at one basis.

    Built from the full post-measurement state, so it cross-checks
    measured_conditional_info through an independent route.
    """
    frame = as_frame(basis, rho.d_a)
    d_a = rho.d_a
    cols = np.eye(d_a, dtype=complex) if frame is None else frame
    blocks = _measurement_blocks(rho, frame)
    post = sum(
        tensor(ket_projector(cols[:, k]), blocks[k]) for k in range(d_a)
    )
    return mutual_information(rho) - mutual_information(DensityMatrix(post, rho.dims))


# ---------------------------------------------------------------------------
# Multi-start optimization
# ---------------------------------------------------------------------------


def _multistart(objective, dim: int, config: OptimizerConfig):
    rng = rng_from_seed(config.seed)
    n = n_basis_params(dim)
    records = []
    best_value = math.inf
    best_x = np.zeros(n)
    best_success = False
    for r in range(config.restarts):
        # restart 0 starts at the reference frame itself; the rest are random
        x0 = np.zeros(n) if r == 0 else rng.uniform(0.0, 2.0 * np.pi, n)
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "maxiter": config.max_iter,
                "fatol": config.f_tol,
                "xatol": config.x_tol,
            },
        )
        records.append(
            RestartRecord(
                initial_params=tuple(float(v) for v in x0),
                final_value=float(res.fun),
                iterations=int(res.nit),
            )
        )
        if res.fun < best_value:
            best_value = float(res.fun)
            best_x = res.x
            best_success = bool(res.success)
    return best_value, best_x, tuple(records), best_success


def _discord_objective(rho: DensityMatrix):
    """Closure computing I(rho) - I(rho | measurement) from the angle vector."""
    d_a, d_b = rho.dims
    t = rho.mat.reshape(d_a, d_b, d_a, d_b)
    rb = partial_trace(rho.mat, rho.dims, keep="b")
    s_b = entropy(rb)
    i_rho = mutual_information(rho)

    def objective(params):
        frame = basis_frame(params, d_a)
        blocks = np.einsum("ia,ijkl,ka->ajl", frame.conj(), t, frame)
        lam = np.clip(_eigvalsh_psd_batch(blocks), 0.0, None)
        # sum_k p_k S(rho_k) == S(union of raw block spectra) - H(p)
        s_union = _neg_xlog2x_sum(lam)
        h_p = _neg_xlog2x_sum(lam.sum(axis=1))
        mci = s_b - (s_union - h_p)
        return i_rho - mci

    return objective


def discord(rho: DensityMatrix, config: OptimizerConfig | None = None):
    """Quantum discord up to part A by multi-start basis optimization.

    Returns (value, OptimizationTrace).  The value is an upper bound on the
    true minimum; it is deterministic for a fixed config seed.
    """
    _check_opt_dims(rho)
    config = config or OptimizerConfig()
    value, x, records, success = _multistart(_discord_objective(rho), rho.d_a, config)
    basis = MeasurementBasis(basis_frame(x, rho.d_a))
    return value, OptimizationTrace(
        best_value=value, best_basis=basis, restarts=records, converged=success
    )


def qubit_discord_grid(rho: DensityMatrix, n_theta: int = 400, n_phi: int = 400) -> float:
    """Brute-force (theta, phi) grid oracle for d_a = 2.

    Validation-only: exhaustively evaluates the measured objective on a dense
    Bloch grid.  Not a production path.
    """
    d_a, d_b = rho.dims
    if d_a != 2:
        raise ValueError("the grid oracle only covers d_a = 2")
    t = rho.mat.reshape(2, d_b, 2, d_b)
    rb = partial_trace(rho.mat, rho.dims, keep="b")
    s_b = entropy(rb)
    i_rho = mutual_information(rho)

    theta = np.linspace(0.0, np.pi / 2.0, n_theta)
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    c = np.cos(th).ravel()
    s = np.sin(th).ravel()
    e = np.exp(1j * ph.ravel())
    psi0 = np.stack([c, s * e], axis=1)
    psi1 = np.stack([-s * e.conj(), c + 0j], axis=1)

    lam_parts = []
    for psi in (psi0, psi1):
        blocks = np.einsum("gi,ijkl,gk->gjl", psi.conj(), t, psi)
        lam_parts.append(np.clip(_eigvalsh_psd_batch(blocks), 0.0, None))
    lam = np.concatenate(lam_parts, axis=1)  # (G, 2*d_b) raw spectra
    p = np.stack([lp.sum(axis=1) for lp in lam_parts], axis=1)
    s_union = _neg_xlog2x_sum(lam, axis=1)
    h_p = _neg_xlog2x_sum(p, axis=1)
    mci = s_b - (s_union - h_p)
    return float(np.min(i_rho - mci))


# ---------------------------------------------------------------------------
# Discordlike coherence correlation (closed form and variants)
# ---------------------------------------------------------------------------


def coherence_discord(rho: DensityMatrix, basis_a=None) -> float:
    """Drop of the correlated coherence under a local rank-one PPIO on A.

    The minimum over rank-one PPIOs is attained by plain dephasing of A, so
    the value has the closed form
    S[(dephase_a x id)(rho)] - S(rho) - C_r(rho_a), and is independent of the
    B-side reference basis.  Zero exactly on the classical-quantum states
    built in the A reference basis.
    """
    ra = partial_trace(rho.mat, rho.dims, keep="a")
    return cq_coherence(rho, basis_a) - coherence_rel_ent(ra, basis_a)


def coherence_discord_drop(rho: DensityMatrix, ppio: KrausChannel) -> float:
    """Literal correlated-coherence drop under one concrete rank-one PPIO."""
    _require_rank_one_ppio(ppio, rho.d_a)
    out = apply(lift_to_bipartite(ppio, rho.d_b), rho)
    return correlated_coherence(rho) - correlated_coherence(out)


def coherence_discord_invariance(
    rho: DensityMatrix, trials: int = 50, seed: int = 0, basis_a=None
) -> float:
    """Max deviation of the literal drop from the closed form over random
    non-merging rank-one PPIOs.

    Merging PPIOs (two levels mapped to one) drop strictly more coherence by
    convexity, so representation independence holds on the non-merging class;
    the sampler is restricted accordingly.
    """
    if basis_a is not None:
        frame = as_frame(basis_a, rho.d_a)
        big = tensor(frame, np.eye(rho.d_b))
        rho = DensityMatrix(big.conj().T @ rho.mat @ big, rho.dims)
    base = coherence_discord(rho)
    ico = correlated_coherence(rho)
    rng = rng_from_seed(seed)
    worst = 0.0
    for _ in range(trials):
        ppio = random_rank_one_ppio(rho.d_a, rng, injective=True)
        out = apply(lift_to_bipartite(ppio, rho.d_b), rho)
        worst = max(worst, abs(ico - correlated_coherence(out) - base))
    return worst


def coherence_discord_symmetric(rho: DensityMatrix, basis_a=None, basis_b=None) -> float:
    """Both-sided variant: correlated-coherence drop under full dephasing of
    A and B in the (product) reference basis."""
    from .measures import joint_frame

    frame = joint_frame(basis_a, basis_b, rho.dims)
    deph = DensityMatrix(dephase(rho.mat, frame), rho.dims)
    return correlated_coherence(rho, basis_a, basis_b) - correlated_coherence(
        deph, basis_a, basis_b
    )


def _coherence_discord_objective(rho: DensityMatrix):
    """Closure computing the closed-form correlation against a rotated
    reference frame on A (reuses nothing from the measured route)."""
    d_a, d_b = rho.dims
    t = rho.mat.reshape(d_a, d_b, d_a, d_b)
    s_rho = entropy(rho.mat)
    ra = partial_trace(rho.mat, rho.dims, keep="a")
    s_a = entropy(ra)

    def objective(params):
        frame = basis_frame(params, d_a)
        blocks = np.einsum("ia,ijkl,ka->ajl", frame.conj(), t, frame)
        lam = np.clip(_eigvalsh_psd_batch(blocks), 0.0, None)
        s_deph = _neg_xlog2x_sum(lam)
        h_diag_a = _neg_xlog2x_sum(lam.sum(axis=1))
        return (s_deph - s_rho) - (h_diag_a - s_a)

    return objective


def discord_via_coherence(rho: DensityMatrix, config: OptimizerConfig | None = None):
    """Minimize the coherence correlation over all reference bases of A.

    Returns (value, best ReferenceBasis, OptimizationTrace).  The minimum
    recovers the quantum discord (Theorem 2 in the README), which makes this
    an independent numerical route to the same quantity as discord().
    Ties between restarts resolve to the lowest restart index.
    """
    _check_opt_dims(rho)
    config = config or OptimizerConfig()
    value, x, records, success = _multistart(
        _coherence_discord_objective(rho), rho.d_a, config
    )
    basis = ReferenceBasis(basis_frame(x, rho.d_a))
    return value, basis, OptimizationTrace(
        best_value=value, best_basis=basis, restarts=records, converged=success
    )


# ---------------------------------------------------------------------------
# Monotonicity diagnostics (README Theorem 1)
# ---------------------------------------------------------------------------


def _require_rank_one_ppio(ppio: KrausChannel, d_a: int) -> None:
    if not isinstance(ppio, KrausChannel) or ppio.in_dim != d_a:
        raise ValueError(f"expected a channel on A (dim {d_a})")
    if LABEL_RANK_ONE_PPIO not in classify(ppio):
        raise ValueError("channel is not a rank-one PPIO in the reference basis")


def ppio_monotonicity_gap(
    rho: DensityMatrix, ppio: KrausChannel, strict: bool = True
) -> tuple[float, float]:
    """Correlated-coherence drop under a local rank-one PPIO, paired with the
    mutual-information drop under the bare reference measurement.

    Returns (gap, mi_drop).  The gap is nonnegative and dominates mi_drop for
    every bipartite state; with strict=True a violation beyond 1e-9 raises
    ArithmeticError (it would signal a numerical bug, not physics).
    """
    _require_rank_one_ppio(ppio, rho.d_a)
    out = apply(lift_to_bipartite(ppio, rho.d_b), rho)
    gap = correlated_coherence(rho) - correlated_coherence(out)
    deph = DensityMatrix(dephase_local(rho.mat, rho.dims), rho.dims)
    mi_drop = mutual_information(rho) - mutual_information(deph)
    if strict and (gap < -1e-9 or gap < mi_drop - 1e-9):
        raise ArithmeticError(
            f"monotonicity violated: gap={gap:.3e}, mi_drop={mi_drop:.3e}"
        )
    return gap, mi_drop


def dephasing_balance(rho: DensityMatrix, ppio: KrausChannel) -> float:
    """Dephased-entropy balance of a rank-one PPIO:
    S[D(rho)] - S[D(rho_a)] - S[D(rho')] + S[D(rho'_a)], with D the
    (joint resp. local) reference dephasing and rho' the channel output.

    Vanishes whenever all the per-level unitaries of the PPIO coincide.
    """
    _require_rank_one_ppio(ppio, rho.d_a)
    out = apply(lift_to_bipartite(ppio, rho.d_b), rho)
    ra = partial_trace(rho.mat, rho.dims, keep="a")
    out_a = partial_trace(out.mat, out.dims, keep="a")
    return (
        entropy_of_probs(diag_probs(rho.mat))
        - entropy_of_probs(diag_probs(ra))
        - entropy_of_probs(diag_probs(out.mat))
        + entropy_of_probs(diag_probs(out_a))
    )


# ---------------------------------------------------------------------------
# Zero sets
# ---------------------------------------------------------------------------

ZERO_SET_KINDS = ("dac", "dac-symmetric", "discord")


@dataclass(frozen=True)
class ZeroSetCertificate:
    which: str
    member: bool
    value: float
    threshold: float
    basis: ReferenceBasis | None = None

    def to_dict(self) -> dict:
        out = {
            "which": self.which,
            "member": self.member,
            "value": self.value,
            "threshold": self.threshold,
        }
        if self.basis is not None:
            out["basis_frame"] = [
                [[float(x.real), float(x.imag)] for x in row] for row in self.basis.frame
            ]
        return out


def in_zero_set(
    rho: DensityMatrix, which: str, config: OptimizerConfig | None = None
) -> ZeroSetCertificate:
    """Decide membership in a zero set by evaluating the measure.

    dac / dac-symmetric are decided by their closed forms at 1e-9; discord
    membership is best-effort via the basis minimization at 1e-6.
    """
    if which == "dac":
        v = coherence_discord(rho)
        return ZeroSetCertificate("dac", v <= 1e-9, v, 1e-9)
    if which == "dac-symmetric":
        v = coherence_discord_symmetric(rho)
        return ZeroSetCertificate("dac-symmetric", v <= 1e-9, v, 1e-9)
    if which == "discord":
        v, basis, _ = discord_via_coherence(rho, config)
        return ZeroSetCertificate("discord", v <= 1e-6, v, 1e-6, basis=basis)
    raise ValueError(f"unknown zero set {which!r}; expected one of {ZERO_SET_KINDS}")


def random_local_iuo_conjugation(rho: DensityMatrix, rng) -> DensityMatrix:
    """Conjugate by a random product IUO U_a (x) U_b (suite plumbing)."""
    u = tensor(random_iuo(rho.d_a, rng).ops[0], random_iuo(rho.d_b, rng).ops[0])
    return DensityMatrix(u @ rho.mat @ u.conj().T, rho.dims)
