"""Classical 2x2 games: payoff tables, classification, pure/mixed equilibria."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BadProbability, Degenerate


@dataclass(frozen=True)
class PayoffMatrix2x2:
    """Bimatrix game with cells ordered (row0,col0), (row0,col1), (row1,col0), (row1,col1).

    ``alice = (a, b, c, d)`` and ``bob = (w, x, y, z)`` in that cell order.
    """

    alice: tuple[float, float, float, float]
    bob: tuple[float, float, float, float]
    row_labels: tuple[str, str] = ("A", "N")
    col_labels: tuple[str, str] = ("W", "L")

    def __post_init__(self):
        alice = tuple(float(v) for v in self.alice)
        bob = tuple(float(v) for v in self.bob)
        if len(alice) != 4 or len(bob) != 4:
            raise ValueError("each player needs exactly four payoffs")
        if not all(math.isfinite(v) for v in alice + bob):
            raise ValueError("payoffs must be finite")
        if len(set(self.row_labels)) != 2 or len(set(self.col_labels)) != 2:
            raise ValueError("move labels must be distinct per player")
        object.__setattr__(self, "alice", alice)
        object.__setattr__(self, "bob", bob)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))

    @property
    def A(self) -> np.ndarray:
        """Alice's payoffs as a 2x2 array indexed [row, col]."""
        return np.array(self.alice).reshape(2, 2)

    @property
    def B(self) -> np.ndarray:
        return np.array(self.bob).reshape(2, 2)

    def payoff_vectors(self) -> tuple[np.ndarray, np.ndarray]:
        """Payoffs indexed by measurement outcome n = 2j + l."""
        return np.array(self.alice), np.array(self.bob)

    def cell(self, row: int, col: int) -> tuple[float, float]:
        return self.alice[2 * row + col], self.bob[2 * row + col]

    def shifted(self, da: float = 0.0, db: float = 0.0) -> "PayoffMatrix2x2":
        return PayoffMatrix2x2(
            tuple(v + da for v in self.alice),
            tuple(v + db for v in self.bob),
            self.row_labels,
            self.col_labels,
        )


def welfare() -> PayoffMatrix2x2:
    """The Welfare Game: Alice aids (A) or not (N), Bob works (W) or loafs (L)."""
    return PayoffMatrix2x2(alice=(3, -1, -1, 0), bob=(2, 3, 1, 0))


@dataclass(frozen=True)
class GameClassification:
    symmetric: bool
    zero_sum: bool
    coordination: bool


@dataclass(frozen=True)
class MixedProfile:
    p: float
    q: float

    def __post_init__(self):
        for name in ("p", "q"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise BadProbability(f"{name}={v} outside [0, 1]")


class DilemmaCase(enum.Enum):
    CASE_I = "I"
    CASE_II = "II"
    CASE_III = "III"
    NOT_APPLICABLE = "n.a"


class MixedNashResult(NamedTuple):
    """Outcome of the closed-form 2x2 analysis.

    ``profile``/``payoffs`` are set for an interior equilibrium; otherwise
    ``pure`` lists the pure equilibria found instead.
    """

    profile: MixedProfile | None
    payoffs: tuple[float, float] | None
    pure: list[tuple[int, int]]


def classify(m: PayoffMatrix2x2) -> GameClassification:
    a, b, c, d = m.alice
    w, x, y, z = m.bob
    symmetric = a == w and (b, x) == (y, c) and d == z
    zero_sum = all(u + v == 0 for u, v in zip(m.alice, m.bob))
    return GameClassification(symmetric, zero_sum, len(pure_nash(m)) > 0)


def pure_nash(m: PayoffMatrix2x2) -> list[tuple[int, int]]:
    """All (row, col) cells that are mutual best responses; ties count."""
    A, B = m.A, m.B
    return [
        (i, j)
        for i in range(2)
        for j in range(2)
        if A[i, j] >= A[1 - i, j] and B[i, j] >= B[i, 1 - j]
    ]


def mixed_payoffs(m: PayoffMatrix2x2, prof: MixedProfile) -> tuple[float, float]:
    """Expected payoffs when Alice plays row 0 w.p. p and Bob column 0 w.p. q."""
    r = np.array([prof.p, 1.0 - prof.p])
    s = np.array([prof.q, 1.0 - prof.q])
    return float(r @ m.A @ s), float(r @ m.B @ s)


def _indifference(numerator: float, denominator: float, player: str) -> float | None:
    if denominator == 0.0:
        if numerator == 0.0:
            raise Degenerate(f"{player}'s opponent is indifferent for every mix", player)
        return None
    return numerator / denominator


def mixed_nash_2x2(m: PayoffMatrix2x2) -> MixedNashResult:
    """Closed-form interior equilibrium from the two indifference equations.

    Alice's p makes Bob indifferent between his columns and Bob's q makes Alice
    indifferent between her rows.  If either solution falls outside (0, 1) the
    pure equilibria are returned instead.
    """
    a, b, c, d = m.alice
    w, x, y, z = m.bob
    p = _indifference(z - y, w - x - y + z, "alice")
    q = _indifference(d - b, a - b - c + d, "bob")
    if p is not None and q is not None and 0.0 < p < 1.0 and 0.0 < q < 1.0:
        prof = MixedProfile(p, q)
        return MixedNashResult(prof, mixed_payoffs(m, prof), [])
    return MixedNashResult(None, None, pure_nash(m))


def indifference_gaps(m: PayoffMatrix2x2, prof: MixedProfile) -> tuple[float, float]:
    """|difference| between each player's two pure payoffs against the opponent's mix."""
    s = np.array([prof.q, 1.0 - prof.q])
    r = np.array([prof.p, 1.0 - prof.p])
    rows = m.A @ s
    cols = r @ m.B
    return float(abs(rows[0] - rows[1])), float(abs(cols[0] - cols[1]))


def dilemma_case(payoffs: tuple[float, float], unique_ne: bool) -> DilemmaCase:
    """Grade how well an equilibrium resolves Alice's dilemma.

    Payoff pairs with $_A >= 0 > $_B fit none of the three cases and are
    reported as not applicable.
    """
    if not unique_ne:
        return DilemmaCase.NOT_APPLICABLE
    pa, pb = payoffs
    if pa < 0:
        return DilemmaCase.CASE_I
    if 0 <= pa <= pb:
        return DilemmaCase.CASE_II
    if 0 <= pb < pa:
        return DilemmaCase.CASE_III
    return DilemmaCase.NOT_APPLICABLE


def communication_cost(n_a: int, n_b: int) -> tuple[int, int]:
    """(classical bits, e-bits) needed to play an n_a x n_b game through the referee."""
    if n_a < 2 or n_b < 2:
        raise ValueError("each player needs at least two strategies")
    cbits = math.ceil(math.log2(n_a)) + math.ceil(math.log2(n_b))
    return cbits, 2
