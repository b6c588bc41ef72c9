"""Small fixed-size complex linear algebra for the two-qubit protocol.

Operators are plain ``numpy`` arrays of ``complex128``: 2x2 for single-qubit
strategies, 4x4 for two-qubit operators and density matrices.  Functions never
mutate their inputs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDensityMatrix, NonUnitary, NotNormalized


@dataclass(frozen=True)
class Tolerances:
    unitarity: float = 1e-10
    prob_clamp: float = 1e-12
    norm: float = 1e-9
    # Looser gate applied when an operator enters conjugate_by / play_round.
    unitarity_check: float = 1e-8
    hermiticity: float = 1e-10
    trace: float = 1e-10


TOL = Tolerances()

UNITARITY_TOL = TOL.unitarity
PROB_CLAMP = TOL.prob_clamp
NORM_TOL = TOL.norm

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)


def as_operator(m, dim: int) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} operator, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("operator has non-finite entries")
    return a


def max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m)))


def unitarity_error(u: np.ndarray) -> float:
    """Max-abs entry of ``u u^dagger - I``."""
    u = np.asarray(u, dtype=complex)
    return max_abs(u @ u.conj().T - np.eye(u.shape[0]))


def is_unitary(u: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    return unitarity_error(u) <= tol


def require_unitary(u: np.ndarray, tol: float = TOL.unitarity_check) -> np.ndarray:
    err = unitarity_error(u)
    if err > tol:
        raise NonUnitary(f"operator is not unitary (|UU^+ - I| = {err:.3e} > {tol:.1e})")
    return u


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 operators.

    Row-major block convention: ``out[2i+k, 2j+l] = a[i, j] * b[k, l]``, so the
    first factor acts on the first (Alice's) qubit.
    """
    return np.kron(as_operator(a, 2), as_operator(b, 2))


def dagger(m) -> np.ndarray:
    return np.array(np.asarray(m, dtype=complex).conj().T)


def conjugate_by(rho, u) -> np.ndarray:
    """Return ``u rho u^dagger``; ``u`` must be unitary."""
    rho = as_operator(rho, 4)
    u = require_unitary(as_operator(u, 4))
    return u @ rho @ u.conj().T


def check_density(rho, tol: float = TOL.hermiticity) -> np.ndarray:
    """Validate Hermiticity, unit trace and a non-negative diagonal."""
    rho = as_operator(rho, 4)
    herm = max_abs(rho - rho.conj().T)
    if herm > tol:
        raise InvalidDensityMatrix(f"density matrix not Hermitian (deviation {herm:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1) > TOL.trace:
        raise NotNormalized(f"trace {tr} differs from 1")
    if np.min(rho.diagonal().real) < -PROB_CLAMP:
        raise InvalidDensityMatrix("negative diagonal entry beyond roundoff")
    return rho


def diagonal_probabilities(rho) -> np.ndarray:
    """Real diagonal of ``rho`` as a probability vector of length 4.

    Entries within ``PROB_CLAMP`` below zero are treated as roundoff and clamped;
    anything more negative is an error.  A total off by less than ``NORM_TOL`` is
    renormalized, larger deviations raise :class:`NotNormalized`.
    """
    diag = np.asarray(rho, dtype=complex).diagonal().real.copy()
    return normalize_probabilities(diag)


def normalize_probabilities(raw) -> np.ndarray:
    probs = np.array(raw, dtype=float)
    if np.min(probs) < -PROB_CLAMP:
        raise InvalidDensityMatrix(f"negative probability {np.min(probs):.3e}")
    total = probs.sum()
    if abs(total - 1.0) >= NORM_TOL:
        raise NotNormalized(f"probabilities sum to {total!r}")
    probs = np.clip(probs, 0.0, 1.0)
    return probs / probs.sum()
