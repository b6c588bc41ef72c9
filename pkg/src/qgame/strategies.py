"""Strategy families and their operator realizations.

Quantum strategies are SU(2) matrices

    U(theta, phi, varphi) = [[ e^{i phi} cos(theta/2),   e^{i varphi} sin(theta/2)],
                             [-e^{-i varphi} sin(theta/2), e^{-i phi} cos(theta/2)]]

with theta in [0, pi] and phi, varphi in [0, pi/2].  The one- and two-parameter
families pin the trailing angles to zero.  Classical strategies use the
identity and the bit flip ``i sigma_y``.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, BadResolution, MixedHasNoMatrix, UnknownLabel
from .linalg import require_unitary

SIGMA0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
FLIP = 1j * SIGMA_Y  # [[0, 1], [-1, 0]], real
PHASE = 1j * SIGMA_Z  # diag(i, -i)

for _m in (SIGMA0, SIGMA_X, SIGMA_Y, SIGMA_Z, FLIP, PHASE):
    _m.setflags(write=False)

_SLACK = 1e-12
_RANGES = {
    "theta": (0.0, math.pi),
    "phi": (0.0, math.pi / 2),
    "varphi": (0.0, math.pi / 2),
    "p": (0.0, 1.0),
}


class StrategySpace(enum.Enum):
    CLASSICAL_PURE = "classical_pure"
    CLASSICAL_MIXED = "classical_mixed"
    SU2_ONE = "su2_one"
    SU2_TWO = "su2_two"
    SU2_THREE = "su2_three"

    @property
    def param_names(self) -> tuple[str, ...]:
        return _PARAM_NAMES[self]

    @property
    def n_params(self) -> int:
        """Number of continuous free parameters (0 for the binary classical choice)."""
        return 0 if self is StrategySpace.CLASSICAL_PURE else len(self.param_names)

    @property
    def bounds(self) -> list[tuple[float, float]]:
        return [_RANGES[n] for n in self.param_names]

    @property
    def is_quantum(self) -> bool:
        return self in (StrategySpace.SU2_ONE, StrategySpace.SU2_TWO, StrategySpace.SU2_THREE)


_PARAM_NAMES = {
    StrategySpace.CLASSICAL_PURE: ("move",),
    StrategySpace.CLASSICAL_MIXED: ("p",),
    StrategySpace.SU2_ONE: ("theta",),
    StrategySpace.SU2_TWO: ("theta", "phi"),
    StrategySpace.SU2_THREE: ("theta", "phi", "varphi"),
}


def _checked(name: str, value: float) -> float:
    lo, hi = _RANGES[name]
    value = float(value)
    if not (lo - _SLACK <= value <= hi + _SLACK):
        raise BadParameter(f"{name}={value} outside [{lo}, {hi}]")
    return min(max(value, lo), hi)


@dataclass(frozen=True)
class StrategyParams:
    """A point in one strategy space; fields outside the space stay at their defaults."""

    space: StrategySpace
    theta: float = 0.0
    phi: float = 0.0
    varphi: float = 0.0
    p: float | None = None
    move: int | None = None

    def __post_init__(self):
        space = StrategySpace(self.space)
        object.__setattr__(self, "space", space)
        if space is StrategySpace.CLASSICAL_PURE:
            if self.move not in (0, 1):
                raise BadParameter(f"pure classical move must be 0 or 1, got {self.move!r}")
        elif space is StrategySpace.CLASSICAL_MIXED:
            if self.p is None:
                raise BadParameter("mixed classical strategy needs p")
            object.__setattr__(self, "p", _checked("p", self.p))
        else:
            free = space.param_names
            for name in ("theta", "phi", "varphi"):
                v = getattr(self, name)
                if name in free:
                    object.__setattr__(self, name, _checked(name, v))
                elif v != 0.0:
                    raise BadParameter(f"{name} is pinned to 0 in {space.name}")

    @classmethod
    def from_vector(cls, space: StrategySpace, vec) -> "StrategyParams":
        space = StrategySpace(space)
        if space is StrategySpace.CLASSICAL_PURE:
            return cls(space, move=int(round(float(vec[0]))))
        return cls(space, **{n: float(v) for n, v in zip(space.param_names, vec)})

    def vector(self) -> tuple[float, ...]:
        return tuple(float(getattr(self, n)) for n in self.space.param_names)

    def describe(self) -> str:
        return ", ".join(f"{n}={getattr(self, n):.12g}" for n in self.space.param_names)


def su2(theta, phi=0.0, varphi=0.0) -> np.ndarray:
    """SU(2) matrix for scalar angles (or a stack of them, broadcasting)."""
    theta, phi, varphi = np.broadcast_arrays(
        np.asarray(theta, float), np.asarray(phi, float), np.asarray(varphi, float)
    )
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    out = np.empty(theta.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = np.exp(1j * phi) * c
    out[..., 0, 1] = np.exp(1j * varphi) * s
    out[..., 1, 0] = -np.exp(-1j * varphi) * s
    out[..., 1, 1] = np.exp(-1j * phi) * c
    return out


def to_matrix(params: StrategyParams) -> np.ndarray:
    space = params.space
    if space is StrategySpace.CLASSICAL_MIXED:
        raise MixedHasNoMatrix("a classical mixed strategy has no single operator")
    if space is StrategySpace.CLASSICAL_PURE:
        return np.array(FLIP if params.move else SIGMA0)
    return su2(params.theta, params.phi, params.varphi)


def realize(params: StrategyParams) -> tuple[np.ndarray, np.ndarray]:
    """Strategy as a probability mixture: ``(weights (m,), operators (m, 2, 2))``."""
    if params.space is StrategySpace.CLASSICAL_MIXED:
        return np.array([params.p, 1.0 - params.p]), np.stack([SIGMA0, FLIP])
    return np.ones(1), to_matrix(params)[None]


def realize_batch(space: StrategySpace, vectors) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`realize` over an ``(n, k)`` array of parameter vectors.

    Returns weights ``(n, m)`` and operators ``(n, m, 2, 2)``; m is 2 for the
    classical mixed space and 1 otherwise.
    """
    X = np.atleast_2d(np.asarray(vectors, dtype=float))
    n = X.shape[0]
    if space is StrategySpace.CLASSICAL_MIXED:
        p = X[:, 0]
        weights = np.stack([p, 1.0 - p], axis=1)
        ops = np.broadcast_to(np.stack([SIGMA0, FLIP]), (n, 2, 2, 2))
        return weights, ops
    if space is StrategySpace.CLASSICAL_PURE:
        ops = np.where(X[:, 0, None, None] > 0.5, FLIP, SIGMA0)
        return np.ones((n, 1)), ops[:, None]
    cols = [X[:, i] for i in range(X.shape[1])] + [np.zeros(n)] * (3 - X.shape[1])
    return np.ones((n, 1)), su2(*cols)[:, None]


class ClassicalOp(enum.Enum):
    IDENTITY = "sigma0"
    FLIP = "i*sigma_y"

    @property
    def matrix(self) -> np.ndarray:
        return np.array(SIGMA0 if self is ClassicalOp.IDENTITY else FLIP)


def classical_embedding(
    move_label: str,
    initial: tuple[int, int] = (0, 0),
    row_labels: tuple[str, str] = ("A", "N"),
    col_labels: tuple[str, str] = ("W", "L"),
) -> ClassicalOp:
    """Operator that plays a classical move, given the referee's initial product state.

    The first label of each player maps to measurement bit 0.  A player whose
    input bit is already 1 must flip to reach bit 0, so the assignment swaps.
    """
    f, g = initial
    if move_label in row_labels:
        bit, start = row_labels.index(move_label), f
    elif move_label in col_labels:
        bit, start = col_labels.index(move_label), g
    else:
        raise UnknownLabel(move_label)
    return ClassicalOp.IDENTITY if bit == start else ClassicalOp.FLIP


def grid_vectors(space: StrategySpace, resolution: int) -> np.ndarray:
    """Grid as an ``(n, k)`` array, last parameter varying fastest."""
    if resolution < 2:
        raise BadResolution(f"resolution must be >= 2, got {resolution}")
    if space is StrategySpace.CLASSICAL_PURE:
        return np.array([[0.0], [1.0]])
    axes = [np.linspace(lo, hi, resolution) for lo, hi in space.bounds]
    return np.array(list(itertools.product(*axes)), dtype=float).reshape(-1, len(axes))


def grid(space: StrategySpace, resolution: int) -> list[StrategyParams]:
    return [StrategyParams.from_vector(space, v) for v in grid_vectors(space, resolution)]


def operator_distance(u, v) -> float:
    """Global-phase-invariant distance sqrt(1 - |tr(u^+ v)|/2); zero iff u = e^{ia} v."""
    u = require_unitary(np.asarray(u, dtype=complex))
    v = require_unitary(np.asarray(v, dtype=complex))
    overlap = abs(np.trace(u.conj().T @ v)) / 2
    return math.sqrt(max(0.0, 1.0 - overlap))


def strategy_distance(a: StrategyParams, b: StrategyParams) -> float:
    """Distance between realized strategies; mixtures compare by their weights."""
    if a.space is StrategySpace.CLASSICAL_MIXED or b.space is StrategySpace.CLASSICAL_MIXED:
        wa, _ = realize(a)
        wb, _ = realize(b)
        if len(wa) != len(wb):
            return 1.0
        return float(np.max(np.abs(wa - wb)))
    return operator_distance(to_matrix(a), to_matrix(b))
