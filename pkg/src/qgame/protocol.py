"""Entangled-referee protocol for 2x2 games.

The referee prepares a shared two-qubit state, each player applies a local
unitary to their qubit, the referee undoes the entangler and measures in the
computational basis.  Outcome ``n = 2j + l`` pays the game's cell (j, l), so
the basis order is (AW, AL, NW, NL) for the Welfare Game.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import BadProbability, NotNormalized
from .game import PayoffMatrix2x2, welfare
from .linalg import (
    NORM_TOL,
    check_density,
    conjugate_by,
    dagger,
    diagonal_probabilities,
    tensor_product,
)
from .strategies import FLIP, SIGMA0, StrategyParams, realize, realize_batch, su2

OUTCOME_LABELS = ("AW", "AL", "NW", "NL")


class ProductState(NamedTuple):
    f: int
    g: int

    @property
    def index(self) -> int:
        return 2 * self.f + self.g


def _basis(f: int, g: int) -> np.ndarray:
    if f not in (0, 1) or g not in (0, 1):
        raise ValueError(f"product state bits must be 0/1, got ({f}, {g})")
    v = np.zeros(4, dtype=complex)
    v[2 * f + g] = 1.0
    return v


def build_entangler() -> np.ndarray:
    """J|fg> = (|fg> + i(-1)^(f+g) |(1-f)(1-g)>) / sqrt(2)."""
    J = np.zeros((4, 4), dtype=complex)
    r = 1 / math.sqrt(2)
    for f in (0, 1):
        for g in (0, 1):
            col = 2 * f + g
            J[col, col] += r
            J[2 * (1 - f) + (1 - g), col] += 1j * (-1) ** (f + g) * r
    return J


ENTANGLER = build_entangler()
ENTANGLER.setflags(write=False)
_J_DAG = dagger(ENTANGLER)
_J_DAG.setflags(write=False)


class CorrelationKind(enum.Enum):
    MES = "mes"
    DEPHASED = "dephased"
    FULL_RANK = "full_rank"
    CORRUPTED = "corrupted"


@dataclass(frozen=True, eq=False)
class CorrelationState:
    """Shared input state rho_in together with how it was made."""

    rho: np.ndarray
    kind: CorrelationKind
    initial: ProductState | None = None
    p: float | None = None
    label: str = field(default="")

    def __post_init__(self):
        rho = check_density(self.rho).copy()
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        if self.kind is CorrelationKind.CORRUPTED and not (0.0 <= self.p <= 1.0):
            raise BadProbability(f"mixing probability {self.p} outside [0, 1]")
        if not self.label:
            object.__setattr__(self, "label", _default_label(self))

    @cached_property
    def components(self) -> list[tuple[float, np.ndarray]]:
        """Eigen-decomposition (weight, vector) with negligible weights dropped."""
        w, v = np.linalg.eigh(self.rho)
        return [(float(lam), v[:, i]) for i, lam in enumerate(w) if lam > 1e-14]


def _default_label(state: CorrelationState) -> str:
    if state.kind is CorrelationKind.FULL_RANK:
        return "full_rank"
    if state.kind is CorrelationKind.CORRUPTED:
        return f"corrupted(p={state.p:.12g})"
    f, g = state.initial
    return f"{state.kind.value}({f}{g})"


def dephase(rho) -> np.ndarray:
    """Zero every off-diagonal element in the computational basis."""
    rho = np.asarray(rho, dtype=complex)
    return np.diag(rho.diagonal()).astype(complex)


def mes(f: int = 0, g: int = 0) -> CorrelationState:
    psi = ENTANGLER @ _basis(f, g)
    return CorrelationState(np.outer(psi, psi.conj()), CorrelationKind.MES, ProductState(f, g))


def dephased(f: int = 0, g: int = 0) -> CorrelationState:
    return CorrelationState(dephase(mes(f, g).rho), CorrelationKind.DEPHASED, ProductState(f, g))


def full_rank() -> CorrelationState:
    return CorrelationState(np.eye(4, dtype=complex) / 4, CorrelationKind.FULL_RANK)


def corrupted(p: float) -> CorrelationState:
    """Source emits |00> with probability p and |01> otherwise, before entangling."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise BadProbability(f"mixing probability {p} outside [0, 1]")
    rho = p * mes(0, 0).rho + (1 - p) * mes(0, 1).rho
    return CorrelationState(rho, CorrelationKind.CORRUPTED, p=p)


def build_correlation(kind, f: int = 0, g: int = 0, p: float | None = None) -> CorrelationState:
    kind = CorrelationKind(kind)
    if kind is CorrelationKind.MES:
        return mes(f, g)
    if kind is CorrelationKind.DEPHASED:
        return dephased(f, g)
    if kind is CorrelationKind.FULL_RANK:
        return full_rank()
    if p is None:
        raise BadProbability("corrupted source needs a mixing probability")
    return corrupted(p)


@dataclass(frozen=True)
class OutcomeDistribution:
    P00: float
    P01: float
    P10: float
    P11: float

    def __post_init__(self):
        probs = self.as_array()
        if np.any(probs < 0) or np.any(probs > 1):
            raise BadProbability(f"probabilities outside [0, 1]: {probs}")
        if abs(probs.sum() - 1.0) > NORM_TOL:
            raise NotNormalized(f"outcome probabilities sum to {probs.sum()!r}")

    @classmethod
    def from_array(cls, probs) -> "OutcomeDistribution":
        return cls(*(float(x) for x in probs))

    def as_array(self) -> np.ndarray:
        return np.array([self.P00, self.P01, self.P10, self.P11])

    def labelled(self) -> dict[str, float]:
        return dict(zip(OUTCOME_LABELS, self.as_array().tolist()))


def play_round(state: CorrelationState, ua, ub) -> OutcomeDistribution:
    """Both players act locally, the referee disentangles and measures."""
    rho_out = conjugate_by(state.rho, tensor_product(ua, ub))
    measured = conjugate_by(rho_out, _J_DAG)
    return OutcomeDistribution.from_array(diagonal_probabilities(measured))


def expected_payoffs(dist: OutcomeDistribution, m: PayoffMatrix2x2) -> tuple[float, float]:
    a, b = m.payoff_vectors()
    probs = dist.as_array()
    return float(a @ probs), float(b @ probs)


def play_round_mixed_bob(state: CorrelationState, ua, p: float) -> OutcomeDistribution:
    """Bob applies the identity with probability p and the flip otherwise."""
    if not 0.0 <= p <= 1.0:
        raise BadProbability(f"p={p} outside [0, 1]")
    d0 = play_round(state, ua, SIGMA0).as_array()
    d1 = play_round(state, ua, FLIP).as_array()
    return OutcomeDistribution.from_array(p * d0 + (1 - p) * d1)


def play_strategies(
    state: CorrelationState, sa: StrategyParams, sb: StrategyParams
) -> OutcomeDistribution:
    """Outcome distribution for any pair of strategies, mixtures included."""
    wa, oa = realize(sa)
    wb, ob = realize(sb)
    probs = np.zeros(4)
    for x, ua in zip(wa, oa):
        for y, ub in zip(wb, ob):
            if x * y:
                probs += x * y * play_round(state, ua, ub).as_array()
    return OutcomeDistribution.from_array(probs)


def strategy_payoffs(
    state: CorrelationState, sa: StrategyParams, sb: StrategyParams, m: PayoffMatrix2x2
) -> tuple[float, float]:
    return expected_payoffs(play_strategies(state, sa, sb), m)


# -- vectorized evaluation -------------------------------------------------

_J_DAG_T = _J_DAG.reshape(4, 2, 2)
_CHUNK = 256


def outcome_table(state: CorrelationState, ops_a, ops_b) -> np.ndarray:
    """Outcome probabilities for every operator pair: shape ``(na, nb, 4)``.

    Works on the eigen-components of rho_in, so a pure state costs a single
    amplitude contraction per pair.
    """
    ops_a = np.asarray(ops_a, dtype=complex).reshape(-1, 2, 2)
    ops_b = np.asarray(ops_b, dtype=complex).reshape(-1, 2, 2)
    out = np.zeros((len(ops_a), len(ops_b), 4))
    for lo in range(0, len(ops_a), _CHUNK):
        ua = ops_a[lo : lo + _CHUNK]
        acc = out[lo : lo + _CHUNK]
        for weight, vec in state.components:
            left = np.einsum("aij,jl->ail", ua, vec.reshape(2, 2))
            local = np.einsum("ail,bkl->abik", left, ops_b)
            amp = np.einsum("nik,abik->abn", _J_DAG_T, local)
            acc += weight * (amp.real**2 + amp.imag**2)
    return out


def strategy_table(state: CorrelationState, space_a, vecs_a, space_b, vecs_b) -> np.ndarray:
    """Outcome probabilities for every strategy pair, shape ``(na, nb, 4)``."""
    wa, oa = realize_batch(space_a, vecs_a)
    wb, ob = realize_batch(space_b, vecs_b)
    na, ma = wa.shape
    nb, mb = wb.shape
    raw = outcome_table(state, oa.reshape(-1, 2, 2), ob.reshape(-1, 2, 2))
    if ma == 1 and mb == 1:
        return raw
    raw = raw.reshape(na, ma, nb, mb, 4)
    return np.einsum("ai,bj,aibjn->abn", wa, wb, raw)


def payoff_tables(state, space_a, vecs_a, space_b, vecs_b, m: PayoffMatrix2x2):
    """Alice's and Bob's expected payoffs over a strategy grid, each ``(na, nb)``."""
    probs = strategy_table(state, space_a, vecs_a, space_b, vecs_b)
    a, b = m.payoff_vectors()
    return probs @ a, probs @ b


# -- closed forms for the Welfare Game (used as independent oracles) -------


def closed_form_one_param(theta_a: float, theta_b: float) -> tuple[float, float]:
    """Payoffs for one-parameter strategies on the |00> entangled state."""
    ca, cb = math.cos(theta_a), math.cos(theta_b)
    pa = (1 + 3 * (ca + cb) + 5 * ca * cb) / 4
    pb = (3 + 2 * ca - ca * cb) / 2
    return pa, pb


def closed_form_two_param_probs(theta_a, phi_a, theta_b, phi_b) -> OutcomeDistribution:
    """Outcome probabilities for two-parameter strategies on the |00> entangled state."""
    x = math.sin(theta_a / 2) * math.cos(theta_b / 2)
    y = math.cos(theta_a / 2) * math.sin(theta_b / 2)
    p00 = math.cos(theta_a / 2) ** 2 * math.cos(theta_b / 2) ** 2 * math.cos(phi_a + phi_b) ** 2
    p01 = abs(x * math.sin(phi_b) - y * math.cos(phi_a)) ** 2
    p10 = abs(x * math.cos(phi_b) - y * math.sin(phi_a)) ** 2
    p11 = 1.0 - p00 - p01 - p10
    return OutcomeDistribution.from_array(np.clip([p00, p01, p10, p11], 0.0, 1.0))


def closed_form_dephased(theta_a, phi_a, theta_b, phi_b, variant=(0, 0)) -> tuple[float, float]:
    """Payoffs on the dephased state built from |fg> = ``variant``.

    Only the (0, 0) variant has a transcribed closed form.  The (0, 1) variant is
    evaluated through :func:`play_round`; it agrees with

        $_A = [1 - 5 cos(ta) cos(tb) + 3 sin(ta) sin(tb) sin(pa + pb)] / 4
        $_B = [3 + cos(ta) cos(tb) + 2 sin(ta) sin(tb) cos(pa) sin(pb)] / 2
    """
    variant = tuple(variant)
    if variant == (0, 0):
        cc = math.cos(theta_a) * math.cos(theta_b)
        ss = math.sin(theta_a) * math.sin(theta_b)
        pa = (1 + 5 * cc - 3 * ss * math.sin(phi_a + phi_b)) / 4
        pb = (3 - cc - 2 * ss * math.cos(phi_a) * math.sin(phi_b)) / 2
        return pa, pb
    f, g = variant
    dist = play_round(dephased(f, g), su2(theta_a, phi_a), su2(theta_b, phi_b))
    return expected_payoffs(dist, welfare())


def closed_form_bob_classical_mix(theta_a, phi_a, varphi_a, p) -> OutcomeDistribution:
    """Alice plays a general SU(2) operator, Bob mixes identity (w.p. p) and flip."""
    c2 = math.cos(theta_a / 2) ** 2
    s2 = math.sin(theta_a / 2) ** 2
    p00 = p * c2 * math.cos(phi_a) ** 2 + (1 - p) * s2 * math.sin(varphi_a) ** 2
    p01 = (1 - p) * c2 * math.cos(phi_a) ** 2 + p * s2 * math.sin(varphi_a) ** 2
    p10 = (1 - p) * c2 * math.sin(phi_a) ** 2 + p * s2 * math.cos(varphi_a) ** 2
    p11 = 1.0 - p00 - p01 - p10
    return OutcomeDistribution.from_array(np.clip([p00, p01, p10, p11], 0.0, 1.0))


__all__ = [
    "ENTANGLER",
    "OUTCOME_LABELS",
    "CorrelationKind",
    "CorrelationState",
    "OutcomeDistribution",
    "ProductState",
    "build_correlation",
    "build_entangler",
    "closed_form_bob_classical_mix",
    "closed_form_dephased",
    "closed_form_one_param",
    "closed_form_two_param_probs",
    "corrupted",
    "dephase",
    "dephased",
    "expected_payoffs",
    "full_rank",
    "mes",
    "outcome_table",
    "payoff_tables",
    "play_round",
    "play_round_mixed_bob",
    "play_strategies",
    "strategy_payoffs",
    "strategy_table",
]
