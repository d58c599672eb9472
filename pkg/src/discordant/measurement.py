"""Rank-1 projective measurements, their angle chart, and measurement updates.

The measurement chart maps d(d-1) real angles to an orthonormal basis through a
product of complex Givens rotations, one rotation per index plane (p, q) taken
in lexicographic order, two angles (theta, phi) per plane:

    G(p, q, theta, phi) = identity except
        G[p, p] =  cos(theta/2)      G[p, q] = -exp(+i phi) sin(theta/2)
        G[q, p] =  exp(-i phi) sin(theta/2)   G[q, q] = cos(theta/2)

The all-zero parameter vector is the computational basis; for d = 2 the single
plane at theta = pi/2, phi = 0 gives the sigma_x eigenbasis. Every rank-1
projective measurement is reachable: a QR-style elimination recovers angles for
any target basis (parameters_for_basis), so the chart is surjective onto bases
modulo per-vector phases, which projectors ignore.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import BadParameterCount, DimensionMismatch, IncompleteBasis
from .states import BipartiteState

COMPLETENESS_TOL = 1e-10
OUTCOME_CLIP = 1e-12


@dataclass(frozen=True)
class ProjectiveMeasurement:
    """Complete family of rank-1 orthogonal projectors on one subsystem.

    ``basis`` columns are the measured directions; projector a is the outer
    product of column a with itself.
    """

    subsystem: str
    basis: np.ndarray

    def __post_init__(self) -> None:
        side = str(self.subsystem).upper()
        if side not in ("A", "B"):
            raise DimensionMismatch(f"subsystem must be 'A' or 'B', got {self.subsystem!r}")
        u = np.asarray(self.basis, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise IncompleteBasis(f"basis must be square, got shape {u.shape}")
        gram = u.conj().T @ u
        if np.max(np.abs(gram - np.eye(u.shape[0]))) > COMPLETENESS_TOL:
            raise IncompleteBasis("projector family does not resolve the identity")
        u = u.copy()
        u.flags.writeable = False
        object.__setattr__(self, "subsystem", side)
        object.__setattr__(self, "basis", u)

    @property
    def d(self) -> int:
        return self.basis.shape[0]

    @property
    def projectors(self) -> list[np.ndarray]:
        return [np.outer(self.basis[:, k], self.basis[:, k].conj()) for k in range(self.d)]


def _planes(d: int) -> list[tuple[int, int]]:
    return [(p, q) for p in range(d) for q in range(p + 1, d)]


def _givens(d: int, p: int, q: int, theta: float, phi: float) -> np.ndarray:
    g = np.eye(d, dtype=complex)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    g[p, p] = c
    g[q, q] = c
    g[p, q] = -np.exp(1j * phi) * s
    g[q, p] = np.exp(-1j * phi) * s
    return g


def basis_from_parameters(params, d: int) -> np.ndarray:
    """Unitary whose columns are the chart point for the given angles."""
    x = np.asarray(params, dtype=float).ravel()
    if x.size != d * (d - 1):
        raise BadParameterCount(f"need {d * (d - 1)} angles for dimension {d}, got {x.size}")
    u = np.eye(d, dtype=complex)
    k = 0
    for p, q in _planes(d):
        u = u @ _givens(d, p, q, x[k], x[k + 1])
        k += 2
    return u


def from_parameters(params, d: int, subsystem: str = "A") -> ProjectiveMeasurement:
    """Measurement at a chart point (see module docstring for the convention)."""
    return ProjectiveMeasurement(subsystem, basis_from_parameters(params, d))


def parameters_for_basis(basis) -> np.ndarray:
    """Chart angles reproducing the projector family of the given orthonormal basis.

    Runs the Givens elimination in plane order; the residue is a diagonal phase
    matrix, which projectors are blind to.
    """
    u = np.asarray(basis, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise IncompleteBasis(f"basis must be square, got shape {u.shape}")
    d = u.shape[0]
    w = u.copy()
    angles: list[float] = []
    for p, q in _planes(d):
        x, y = w[p, p], w[q, p]
        if abs(y) < 1e-14:
            theta, phi = 0.0, 0.0
        elif abs(x) < 1e-14:
            theta, phi = np.pi, float(-np.angle(y))
        else:
            theta = float(2 * np.arctan2(abs(y), abs(x)))
            phi = float(np.angle(x) - np.angle(y))
        angles.extend((theta, phi))
        w = _givens(d, p, q, theta, phi).conj().T @ w
    return np.array(angles)


def conditional_blocks(rho: np.ndarray, dims: tuple[int, int], basis: np.ndarray, side: str) -> np.ndarray:
    """Unnormalized conditional operators <u_k| rho |u_k> on the unmeasured side.

    Returns an array of shape (d_side, d_other, d_other); the trace of block k
    is the outcome probability p_k.
    """
    d_a, d_b = dims
    r4 = rho.reshape(d_a, d_b, d_a, d_b)
    if side == "A":
        return np.einsum("ak,aibj,bk->kij", basis.conj(), r4, basis)
    return np.einsum("ik,aibj,jk->kab", basis.conj(), r4, basis)


def _check_dims(state: BipartiteState, m: ProjectiveMeasurement) -> None:
    expected = state.d_a if m.subsystem == "A" else state.d_b
    if m.d != expected:
        raise DimensionMismatch(
            f"measurement dimension {m.d} does not match subsystem {m.subsystem} of dims {state.dims}"
        )


def conditional_state(state: BipartiteState, m: ProjectiveMeasurement, outcome: int):
    """Outcome probability and the renormalized conditional state of the other side.

    Returns ``(p, rho_cond)``; when the outcome probability is at or below
    1e-12 the conditional state is reported as ``None`` rather than fabricated.
    """
    _check_dims(state, m)
    if not 0 <= int(outcome) < m.d:
        raise DimensionMismatch(f"outcome {outcome} out of range for dimension {m.d}")
    block = conditional_blocks(state.rho, state.dims, m.basis, m.subsystem)[int(outcome)]
    p = float(np.trace(block).real)
    if p <= OUTCOME_CLIP:
        return p, None
    return p, block / p


def post_measurement_state(state: BipartiteState, m: ProjectiveMeasurement) -> BipartiteState:
    """State after the measurement outcome is averaged over (dephasing on one side).

    Block diagonal in the measurement basis; the marginal of the unmeasured
    side is unchanged.
    """
    _check_dims(state, m)
    u = m.basis
    blocks = conditional_blocks(state.rho, state.dims, u, m.subsystem)
    if m.subsystem == "A":
        rho = np.einsum("ak,ck,kij->aicj", u, u.conj(), blocks)
    else:
        rho = np.einsum("ik,jk,kac->aicj", u, u.conj(), blocks)
    return BipartiteState(state.dims, rho.reshape(state.dim, state.dim))


def dephase(rho, basis) -> np.ndarray:
    """Remove off-diagonal terms of ``rho`` in the given complete basis."""
    u = np.asarray(basis, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise IncompleteBasis(f"basis must be square, got shape {u.shape}")
    gram = u.conj().T @ u
    if np.max(np.abs(gram - np.eye(u.shape[0]))) > COMPLETENESS_TOL:
        raise IncompleteBasis("dephasing basis is incomplete")
    m = np.asarray(rho, dtype=complex)
    if m.shape != u.shape:
        raise DimensionMismatch(f"operator shape {m.shape} does not match basis {u.shape}")
    diagonal = np.diag(u.conj().T @ m @ u).real
    return (u * diagonal) @ u.conj().T
