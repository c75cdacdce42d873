"""Validated bipartite density matrices, reference bases, state families and
random ensembles, plus the JSON state format.
"""

from __future__ import annotations

import json

import numpy as np

from .linalg import (
    HERMITIAN_TOL,
    PSD_TOL,
    TRACE_TOL,
    UNITARY_TOL,
    as_complex_matrix,
    check_unitary,
    dag,
    partial_trace,
    tensor,
)


class ReferenceBasis:
    """A unitary frame over one (sub)system; its columns are the basis vectors
    that count as incoherent."""

    __slots__ = ("dim", "frame")

    def __init__(self, frame: np.ndarray, tol: float = UNITARY_TOL):
        frame = as_complex_matrix(frame)
        if frame.shape[0] != frame.shape[1]:
            raise ValueError("basis frame must be square")
        check_unitary(frame, tol)
        frame = frame.copy()
        frame.setflags(write=False)
        object.__setattr__(self, "dim", frame.shape[0])
        object.__setattr__(self, "frame", frame)

    def __setattr__(self, name, value):
        raise AttributeError("ReferenceBasis is immutable")

    def __repr__(self):
        return f"ReferenceBasis(dim={self.dim})"

    @classmethod
    def computational(cls, dim: int) -> "ReferenceBasis":
        return cls(np.eye(dim))

    def column(self, i: int) -> np.ndarray:
        return self.frame[:, i]


class DensityMatrix:
    """Positive semidefinite, unit-trace complex matrix with a bipartite
    dimension split (d_a, d_b).

    Validation (Hermiticity, trace, positivity) happens at construction;
    instances are immutable, so they can be shared freely across workers.
    """

    __slots__ = ("mat", "dims")

    def __init__(
        self,
        mat,
        dims: tuple[int, int],
        *,
        hermitian_tol: float = HERMITIAN_TOL,
        trace_tol: float = TRACE_TOL,
        psd_tol: float = PSD_TOL,
    ):
        mat = as_complex_matrix(mat)
        d_a, d_b = int(dims[0]), int(dims[1])
        if d_a < 1 or d_b < 1:
            raise ValueError(f"dims must be positive, got ({d_a}, {d_b})")
        d = d_a * d_b
        if mat.shape != (d, d):
            raise ValueError(
                f"matrix is {mat.shape} but dims ({d_a}, {d_b}) require ({d}, {d})"
            )
        herm_err = float(np.max(np.abs(mat - dag(mat))))
        if herm_err > hermitian_tol:
            raise ValueError(
                f"matrix is not Hermitian: max |M - M†| = {herm_err:.3e} > {hermitian_tol:g}"
            )
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > trace_tol:
            raise ValueError(f"trace = {tr.real:.12g} exceeds tolerance {trace_tol:g} from 1")
        w_min = float(np.linalg.eigvalsh(mat)[0])
        if w_min < -psd_tol:
            raise ValueError(
                f"negative eigenvalue {w_min:.3e} below tolerance -{psd_tol:g}"
            )
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", (d_a, d_b))

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    def __repr__(self):
        return f"DensityMatrix(dims={self.dims})"

    @property
    def d_a(self) -> int:
        return self.dims[0]

    @property
    def d_b(self) -> int:
        return self.dims[1]

    @property
    def dim(self) -> int:
        return self.dims[0] * self.dims[1]


def from_raw(mat, dims: tuple[int, int], **tolerances) -> DensityMatrix:
    """Validated construction of a DensityMatrix from a raw matrix."""
    return DensityMatrix(mat, dims, **tolerances)


def state_mat(rho) -> np.ndarray:
    """Accept a DensityMatrix or a plain (already square) matrix."""
    if isinstance(rho, DensityMatrix):
        return rho.mat
    return as_complex_matrix(rho)


def marginals(rho: DensityMatrix) -> tuple[DensityMatrix, DensityMatrix]:
    """Reduced states (rho_a, rho_b)."""
    ra = partial_trace(rho.mat, rho.dims, keep="a")
    rb = partial_trace(rho.mat, rho.dims, keep="b")
    return (
        DensityMatrix(ra, (rho.d_a, 1)),
        DensityMatrix(rb, (rho.d_b, 1)),
    )


def swap_subsystems(rho: DensityMatrix) -> DensityMatrix:
    """Exchange the roles of A and B (used by the CLI's --part b)."""
    d_a, d_b = rho.dims
    t = rho.mat.reshape(d_a, d_b, d_a, d_b).transpose(1, 0, 3, 2)
    return DensityMatrix(t.reshape(d_a * d_b, d_a * d_b), (d_b, d_a))


def ket_projector(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=complex).ravel()
    return np.outer(v, v.conj())


def bell_phi_plus() -> DensityMatrix:
    """The maximally entangled two-qubit state (|00> + |11>)/sqrt(2)."""
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1.0 / np.sqrt(2.0)
    return DensityMatrix(ket_projector(v), (2, 2))


def werner(p: float) -> DensityMatrix:
    """p * Phi+ + (1-p) * I/4 on two qubits."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"werner parameter must be in [0, 1], got {p}")
    mat = p * bell_phi_plus().mat + (1.0 - p) * np.eye(4) / 4.0
    return DensityMatrix(mat, (2, 2))


def classical_quantum(
    probs,
    blocks,
    basis_a: ReferenceBasis | None = None,
    d_a: int | None = None,
) -> DensityMatrix:
    """Build sum_i p_i |i><i| (x) rho_i^b with |i> drawn from ``basis_a``.

    When built in the global reference basis these states are exactly the
    zero set of the discordlike coherence correlation.  ``len(probs)`` may be
    smaller than d_a; the remaining levels get zero weight.
    """
    probs = np.asarray(probs, dtype=float)
    if probs.ndim != 1 or len(probs) != len(blocks):
        raise ValueError("probs and blocks must be equal-length sequences")
    if np.any(probs < 0):
        raise ValueError("probabilities must be nonnegative")
    if abs(probs.sum() - 1.0) > 1e-10:
        raise ValueError(f"probabilities sum to {probs.sum():.12g}, expected 1")
    block_mats = [state_mat(b) for b in blocks]
    d_b = block_mats[0].shape[0]
    for b in block_mats:
        if b.shape != (d_b, d_b):
            raise ValueError("all B blocks must share one dimension")
    if basis_a is not None:
        dim_a = basis_a.dim
    else:
        dim_a = d_a if d_a is not None else len(probs)
    if len(probs) > dim_a:
        raise ValueError(f"{len(probs)} blocks do not fit in d_a = {dim_a}")
    frame = basis_a.frame if basis_a is not None else np.eye(dim_a, dtype=complex)
    mat = np.zeros((dim_a * d_b, dim_a * d_b), dtype=complex)
    for i, (p, b) in enumerate(zip(probs, block_mats)):
        mat += p * tensor(ket_projector(frame[:, i]), b)
    return DensityMatrix(mat, (dim_a, d_b))


# ---------------------------------------------------------------------------
# Random ensembles.  Each call owns one counter-based (Philox) stream so the
# suites reproduce bit-for-bit across platforms.
# ---------------------------------------------------------------------------

ENSEMBLES = ("haar-pure", "ginibre-mixed")


def rng_from_seed(seed) -> np.random.Generator:
    """One explicit Philox stream per seed (int or SeedSequence)."""
    return np.random.Generator(np.random.Philox(seed))


def spawn_seeds(seed: int, n: int) -> np.ndarray:
    """n child seeds derived deterministically from a root seed."""
    return np.random.SeedSequence(seed).generate_state(n, dtype=np.uint64)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    ph = np.diag(r)
    return q * (ph / np.abs(ph))


def _random_state_mat(d: int, ensemble: str, rng: np.random.Generator) -> np.ndarray:
    if ensemble == "haar-pure":
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        v /= np.linalg.norm(v)
        return ket_projector(v)
    if ensemble == "ginibre-mixed":
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        m = g @ dag(g)
        m /= np.trace(m).real
        return (m + dag(m)) / 2.0
    raise ValueError(f"unknown ensemble {ensemble!r}; expected one of {ENSEMBLES}")


def random_state(d_a: int, d_b: int, ensemble: str, seed) -> DensityMatrix:
    """Seed-deterministic random bipartite state from the named ensemble."""
    rng = rng_from_seed(seed)
    return random_state_from(rng, d_a, d_b, ensemble)


def random_state_from(
    rng: np.random.Generator, d_a: int, d_b: int, ensemble: str = "ginibre-mixed"
) -> DensityMatrix:
    """Draw a random state from an existing generator (suite plumbing)."""
    return DensityMatrix(_random_state_mat(d_a * d_b, ensemble, rng), (d_a, d_b))


def random_cq_state(rng: np.random.Generator, d_a: int, d_b: int) -> DensityMatrix:
    """Random classical-quantum state in the computational reference basis."""
    probs = rng.dirichlet(np.ones(d_a))
    blocks = [_random_state_mat(d_b, "ginibre-mixed", rng) for _ in range(d_a)]
    return classical_quantum(probs, blocks, d_a=d_a)


# ---------------------------------------------------------------------------
# JSON state format:
#   {"dims": [da, db], "matrix": [[[re, im], ...], ...]}
# row-major, each entry a 2-array of real/imaginary parts.
# ---------------------------------------------------------------------------


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(x.real), float(x.imag)] for x in row] for row in np.asarray(m, dtype=complex)]


def matrix_from_json(obj, what: str = "matrix") -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise ValueError(f"{what} must be a non-empty list of rows")
    rows = len(obj)
    cols = None
    out = None
    for i, row in enumerate(obj):
        if not isinstance(row, list):
            raise ValueError(f"{what} row {i} is not a list")
        if cols is None:
            cols = len(row)
            out = np.zeros((rows, cols), dtype=complex)
        elif len(row) != cols:
            raise ValueError(f"{what} row {i} has {len(row)} entries, expected {cols}")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) for x in entry)
            ):
                raise ValueError(
                    f"{what} entry at row {i}, column {j} is not a [re, im] pair"
                )
            out[i, j] = entry[0] + 1j * entry[1]
    if not np.all(np.isfinite(out.real)) or not np.all(np.isfinite(out.imag)):
        bad = np.argwhere(~(np.isfinite(out.real) & np.isfinite(out.imag)))[0]
        raise ValueError(f"{what} entry at row {bad[0]}, column {bad[1]} is not finite")
    return out


def state_to_json(rho: DensityMatrix) -> dict:
    return {"dims": [rho.d_a, rho.d_b], "matrix": matrix_to_json(rho.mat)}


def state_from_json(obj, **tolerances) -> DensityMatrix:
    if not isinstance(obj, dict):
        raise ValueError("state JSON must be an object")
    if "dims" not in obj or "matrix" not in obj:
        raise ValueError("state JSON needs 'dims' and 'matrix' fields")
    dims = obj["dims"]
    if (
        not isinstance(dims, list)
        or len(dims) != 2
        or not all(isinstance(d, int) and d >= 1 for d in dims)
    ):
        raise ValueError("'dims' must be a pair of positive integers")
    mat = matrix_from_json(obj["matrix"])
    return DensityMatrix(mat, (dims[0], dims[1]), **tolerances)


def save_state(rho: DensityMatrix, path) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_json(rho), fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def load_state(path, **tolerances) -> DensityMatrix:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed JSON in {path}: {exc}") from exc
    return state_from_json(obj, **tolerances)


def basis_from_json(obj, dim: int | None = None) -> ReferenceBasis:
    """Read a reference basis: {"dim": d, "frame": [[[re,im],...],...]}."""
    if not isinstance(obj, dict) or "frame" not in obj:
        raise ValueError("basis JSON needs a 'frame' field")
    frame = matrix_from_json(obj["frame"], what="frame")
    basis = ReferenceBasis(frame)
    if dim is not None and basis.dim != dim:
        raise ValueError(f"basis dimension {basis.dim} does not match state ({dim})")
    return basis
