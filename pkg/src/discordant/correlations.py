"""Entropies, mutual information, the conditional-operator construction, and
one-way purification rates. Everything is in bits.
"""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionMismatch, NotNormalized, SupportMismatch
from .measurement import OUTCOME_CLIP, ProjectiveMeasurement, conditional_blocks, post_measurement_state
from .operator_core import SUPPORT_CLIP, matrix_log_on_support, require_hermitian
from .states import BipartiteState, validate_density_matrix

_NORMALIZATION_TOL = 1e-9


def entropy_of_eigenvalues(values, clip: float = SUPPORT_CLIP) -> float:
    """-sum(v log2 v) over entries above ``clip``; no validation."""
    v = np.asarray(values, dtype=float).ravel()
    v = v[v > clip]
    if v.size == 0:
        return 0.0
    return float(-np.sum(v * np.log2(v)))


def _as_distribution(p, what: str = "probability vector") -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    if np.any(arr < -1e-12):
        raise NotNormalized(f"{what} has negative entries")
    if abs(arr.sum() - 1.0) > _NORMALIZATION_TOL:
        raise NotNormalized(f"{what} sums to {arr.sum():.12f}, not 1")
    return np.maximum(arr, 0.0)


def shannon_entropy(p) -> float:
    """Shannon entropy in bits of a probability vector, with 0 log 0 = 0."""
    return entropy_of_eigenvalues(_as_distribution(p))


def classical_conditional_entropy(joint, given: str = "B") -> float:
    """H(A|B) (or H(B|A) with given="A") of a joint probability matrix p[a, b]."""
    w = _as_distribution(joint, "joint distribution")
    if w.ndim != 2:
        raise NotNormalized(f"joint distribution must be 2-D, got shape {w.shape}")
    axis = 0 if str(given).upper() == "B" else 1
    marginal = w.sum(axis=axis)
    return entropy_of_eigenvalues(w.ravel()) - entropy_of_eigenvalues(marginal)


def classical_mutual_information(joint) -> float:
    """I(A:B) = H(A) + H(B) - H(A,B) of a joint probability matrix."""
    w = _as_distribution(joint, "joint distribution")
    if w.ndim != 2:
        raise NotNormalized(f"joint distribution must be 2-D, got shape {w.shape}")
    h_a = entropy_of_eigenvalues(w.sum(axis=1))
    h_b = entropy_of_eigenvalues(w.sum(axis=0))
    return h_a + h_b - entropy_of_eigenvalues(w.ravel())


def classical_mutual_information_j(joint) -> float:
    """J(A:B) = H(A) - H(A|B); equals classical_mutual_information for any joint."""
    w = _as_distribution(joint, "joint distribution")
    return entropy_of_eigenvalues(w.sum(axis=1)) - classical_conditional_entropy(w, given="B")


def von_neumann_entropy(rho) -> float:
    """Entropy in bits of a density matrix (validated)."""
    m = validate_density_matrix(rho)
    return entropy_of_eigenvalues(np.linalg.eigvalsh(m))


def mutual_information(state: BipartiteState) -> float:
    """Total correlations S(rho_A) + S(rho_B) - S(rho_AB)."""
    s_a = entropy_of_eigenvalues(np.linalg.eigvalsh(state.marginal("A")))
    s_b = entropy_of_eigenvalues(np.linalg.eigvalsh(state.marginal("B")))
    s_ab = entropy_of_eigenvalues(np.linalg.eigvalsh(state.rho))
    return s_a + s_b - s_ab


def conditional_entropy_after_measurement(state: BipartiteState, m: ProjectiveMeasurement) -> float:
    """Average entropy of the unmeasured side over the measurement outcomes:
    sum_a p_a S(rho_other | outcome a)."""
    expected = state.d_a if m.subsystem == "A" else state.d_b
    if m.d != expected:
        raise DimensionMismatch(
            f"measurement dimension {m.d} does not match subsystem {m.subsystem} of dims {state.dims}"
        )
    blocks = conditional_blocks(state.rho, state.dims, m.basis, m.subsystem)
    total = 0.0
    for block in blocks:
        p = float(np.trace(block).real)
        if p > OUTCOME_CLIP:
            total += p * entropy_of_eigenvalues(np.linalg.eigvalsh(block) / p)
    return total


def cerf_adami_operator(state: BipartiteState, clip: float = SUPPORT_CLIP) -> np.ndarray:
    """Conditional operator exp2(-log2 rho_A x 1 + log2 rho_AB), on the support of rho_AB.

    The exponential is evaluated inside the support subspace of rho_AB (the
    compression of the log-difference), which reduces to the plain spectral
    exponential for full-rank states and extends by zero on the null space.
    Positive semidefinite; generally not unit trace. Requires the joint state
    to carry no weight outside the support of rho_A x 1; otherwise
    SupportMismatch is raised.
    """
    rho = state.rho
    rho_a = state.marginal("A")
    values_a, vectors_a = np.linalg.eigh(rho_a)
    null_a = vectors_a[:, values_a <= clip]
    if null_a.shape[1]:
        projector = np.kron(null_a @ null_a.conj().T, np.eye(state.d_b))
        outside = float(np.trace(projector @ rho).real)
        if outside > 1e-10:
            raise SupportMismatch(
                f"joint state has weight {outside:.3e} outside the support of the A marginal"
            )
    log_difference = -np.kron(matrix_log_on_support(rho_a, clip), np.eye(state.d_b))
    log_difference += matrix_log_on_support(rho, clip)
    values, vectors = np.linalg.eigh(rho)
    support = vectors[:, values > clip]
    compressed = support.conj().T @ log_difference @ support
    w, v = np.linalg.eigh((compressed + compressed.conj().T) / 2)
    exponential = (v * np.exp2(w)) @ v.conj().T
    out = support @ exponential @ support.conj().T
    return (out + out.conj().T) / 2


def cerf_adami_conditional_entropy(state: BipartiteState) -> float:
    """Conditional entropy -tr(rho_AB log2 rho_B|A); can be negative for
    entangled states and equals S(rho_AB) - S(rho_A)."""
    operator = cerf_adami_operator(state)
    log_op = matrix_log_on_support(operator)
    return float(-np.trace(state.rho @ log_op).real)


def information_function(rho) -> float:
    """Knowledge K(rho) = log2(d) - S(rho), between 0 and log2(d)."""
    m = require_hermitian(rho)
    return float(np.log2(m.shape[0])) - von_neumann_entropy(m)


def one_way_purification_rate(state: BipartiteState, m: ProjectiveMeasurement) -> float:
    """Pure-qubit yield log2(d_A d_B) + I(rho') - S(rho_A) - S(rho_B) at the
    supplied measurement; pass the discord-optimal measurement for the optimal rate."""
    measured = post_measurement_state(state, m)
    s_a = entropy_of_eigenvalues(np.linalg.eigvalsh(state.marginal("A")))
    s_b = entropy_of_eigenvalues(np.linalg.eigvalsh(state.marginal("B")))
    return float(np.log2(state.dim)) + mutual_information(measured) - s_a - s_b
