"""Dense Hermitian-operator algebra: eigensystems, matrix functions, tensor calculus.

All matrix logarithms and exponentials are base 2, so every entropy and work
quantity downstream comes out in bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatch, NonHermitian, NotPositiveSemidefinite

HERMITICITY_TOL = 1e-12
PSD_FLOOR = -1e-10
SUPPORT_CLIP = 1e-12
DEGENERACY_GAP = 1e-8


def require_hermitian(matrix, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Return ``matrix`` as a complex array, raising NonHermitian if it is not square
    Hermitian within ``tol`` (max-abs deviation from the conjugate transpose)."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonHermitian(f"expected a square matrix, got shape {m.shape}")
    deviation = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if deviation > tol:
        raise NonHermitian(f"Hermiticity deviation {deviation:.3e} exceeds {tol:.1e}")
    return m


@dataclass(frozen=True)
class EigenSystem:
    """Spectral data of a Hermitian operator.

    eigenvalues are ascending; eigenvectors are the matching orthonormal columns;
    degeneracy_groups partitions the indices into runs whose adjacent eigenvalues
    differ by less than the gap threshold.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    degeneracy_groups: tuple[tuple[int, ...], ...]

    @property
    def is_degenerate(self) -> bool:
        return any(len(group) > 1 for group in self.degeneracy_groups)


def _fix_phase(column: np.ndarray) -> np.ndarray:
    # First component of significant magnitude is rotated to the positive real axis.
    idx = np.flatnonzero(np.abs(column) > 1e-8)
    if idx.size == 0:
        return column
    pivot = column[idx[0]]
    return column * (pivot.conjugate() / abs(pivot))


def _lexicographic_key(column: np.ndarray) -> tuple:
    return tuple((round(float(z.real), 9), round(float(z.imag), 9)) for z in column)


def _degeneracy_groups(values: np.ndarray, gap: float) -> tuple[tuple[int, ...], ...]:
    groups: list[list[int]] = [[0]]
    for i in range(1, len(values)):
        if values[i] - values[i - 1] < gap:
            groups[-1].append(i)
        else:
            groups.append([i])
    return tuple(tuple(g) for g in groups)


def eig(matrix, gap: float = DEGENERACY_GAP) -> EigenSystem:
    """Eigendecompose a Hermitian matrix with a deterministic output convention.

    Eigenvalues ascend; each eigenvector's first significant component is made
    real positive; within a degeneracy group, columns are ordered by the
    lexicographic order of their (phase-fixed) entries.
    """
    m = require_hermitian(matrix)
    values, vectors = np.linalg.eigh(m)
    for k in range(vectors.shape[1]):
        vectors[:, k] = _fix_phase(vectors[:, k])
    groups = _degeneracy_groups(values, gap)
    order = np.arange(len(values))
    for group in groups:
        if len(group) > 1:
            idx = list(group)
            idx.sort(key=lambda k: _lexicographic_key(vectors[:, k]))
            order[list(group)] = idx
    values = values[order]
    vectors = vectors[:, order]
    values.flags.writeable = False
    vectors.flags.writeable = False
    return EigenSystem(values, vectors, _degeneracy_groups(values, gap))


def matrix_log_on_support(matrix, clip: float = SUPPORT_CLIP) -> np.ndarray:
    """Base-2 logarithm of a PSD matrix, defined on its support.

    Eigenvalues at or below ``clip`` map to 0 in the output (the null space is
    dropped rather than sent to -inf); an eigenvalue below the -1e-10 floor
    raises NotPositiveSemidefinite.
    """
    m = require_hermitian(matrix)
    values, vectors = np.linalg.eigh(m)
    if values.size and values[0] < PSD_FLOOR:
        raise NotPositiveSemidefinite(f"eigenvalue {values[0]:.3e} below {PSD_FLOOR:.1e}")
    logs = np.where(values > clip, np.log2(np.maximum(values, clip)), 0.0)
    out = (vectors * logs) @ vectors.conj().T
    return (out + out.conj().T) / 2


def matrix_exp(matrix) -> np.ndarray:
    """Base-2 spectral exponential (the inverse of matrix_log_on_support on full rank)."""
    m = require_hermitian(matrix)
    values, vectors = np.linalg.eigh(m)
    out = (vectors * np.exp2(values)) @ vectors.conj().T
    return (out + out.conj().T) / 2


def tensor(x, y) -> np.ndarray:
    """Kronecker product (operator on the composite space)."""
    return np.kron(np.asarray(x, dtype=complex), np.asarray(y, dtype=complex))


def partial_trace(matrix, dims: tuple[int, int], keep: str) -> np.ndarray:
    """Trace out one tensor factor of an operator on a (d_A x d_B) composite.

    ``keep`` selects the surviving subsystem, "A" or "B".
    """
    d_a, d_b = int(dims[0]), int(dims[1])
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (d_a * d_b, d_a * d_b):
        raise DimensionMismatch(f"operator shape {m.shape} incompatible with dims {dims}")
    r = m.reshape(d_a, d_b, d_a, d_b)
    side = str(keep).upper()
    if side == "A":
        return np.einsum("ibjb->ij", r)
    if side == "B":
        return np.einsum("aiaj->ij", r)
    raise DimensionMismatch(f"keep must be 'A' or 'B', got {keep!r}")


def commutator_norm(x, y) -> float:
    """Max-abs entry of the commutator XY - YX."""
    a = np.asarray(x, dtype=complex)
    b = np.asarray(y, dtype=complex)
    if a.shape != b.shape or a.ndim != 2:
        raise DimensionMismatch(f"incompatible shapes {a.shape} and {b.shape}")
    return float(np.max(np.abs(a @ b - b @ a)))
