"""Nash-equilibrium search over continuous strategy spaces.

The search scans a product grid of both players' strategy spaces, keeps the
profiles that are (nearly) mutual best responses, polishes the inexact ones by
minimizing the total deviation gap, certifies every survivor on a finer grid
with local refinement, and finally merges candidates that realize the same
physical strategies.
"""
from __future__ import annotations

import enum
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping

import numpy as np
from scipy import ndimage, optimize

from .errors import SearchBudgetExceeded
from .game import DilemmaCase, PayoffMatrix2x2, dilemma_case
from .protocol import (
    CorrelationState,
    corrupted,
    expected_payoffs,
    play_round,
    strategy_table,
)
from .strategies import (
    StrategyParams,
    StrategySpace,
    classical_embedding,
    grid_vectors,
    strategy_distance,
    to_matrix,
)

log = logging.getLogger(__name__)


class Player(enum.Enum):
    ALICE = "alice"
    BOB = "bob"


@dataclass(frozen=True)
class SearchConfig:
    grid_resolution: int = 33
    refine_iters: int = 80
    epsilon: float = 1e-6
    dedupe_radius: float = 1e-2
    max_profiles: int = 4_000_000
    max_candidates: int = 48
    # Grid-gap threshold for inexact candidates; None derives it from grid spacing.
    candidate_tol: float | None = None
    inner_resolution: int = 9

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.grid_resolution < 9:
            raise ValueError("grid_resolution must be at least 9")
        if self.refine_iters < 1:
            raise ValueError("refine_iters must be at least 1")

    @property
    def verify_resolution(self) -> int:
        """Twice the search density; the search grid nests inside it."""
        return 2 * (self.grid_resolution - 1) + 1


@dataclass(frozen=True)
class CandidateNE:
    params_a: StrategyParams
    params_b: StrategyParams
    payoffs: tuple[float, float]
    gap_a: float
    gap_b: float
    certified: bool = True


@dataclass(frozen=True)
class NEReport:
    equilibria: list[CandidateNE]
    unique: bool
    flat: bool
    dilemma: DilemmaCase
    flat_payoffs: tuple[float, float] | None = None
    state_label: str = ""
    space_a: StrategySpace | None = None
    space_b: StrategySpace | None = None
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def payoffs(self) -> list[tuple[float, float]]:
        return [e.payoffs for e in self.equilibria]


@dataclass(frozen=True)
class ExtendedMatrix:
    row_ops: list[tuple[str, np.ndarray]]
    col_ops: list[tuple[str, np.ndarray]]
    cells: np.ndarray  # (rows, cols, 2)
    ne_cells: list[tuple[int, int]]

    @property
    def row_names(self) -> list[str]:
        return [n for n, _ in self.row_ops]

    @property
    def col_names(self) -> list[str]:
        return [n for n, _ in self.col_ops]

    def cell(self, row: str, col: str) -> tuple[float, float]:
        i, j = self.row_names.index(row), self.col_names.index(col)
        return float(self.cells[i, j, 0]), float(self.cells[i, j, 1])

    def is_ne(self, row: str, col: str) -> bool:
        return (self.row_names.index(row), self.col_names.index(col)) in self.ne_cells


def worker_count() -> int:
    cap = os.environ.get("QGAME_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            log.warning("ignoring non-integer QGAME_THREADS=%r", cap)
    return n


def _parallel_map(fn, items: list) -> list:
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@lru_cache(maxsize=64)
def _cached_grid(space: StrategySpace, resolution: int) -> np.ndarray:
    g = grid_vectors(space, resolution)
    g.setflags(write=False)
    return g


def _grid_step(space: StrategySpace, resolution: int) -> np.ndarray:
    if space is StrategySpace.CLASSICAL_PURE:
        return np.zeros(1)
    return np.array([(hi - lo) / (resolution - 1) for lo, hi in space.bounds])


# -- local refinement ------------------------------------------------------


def coordinate_ascent(
    f_batch: Callable[[np.ndarray], np.ndarray],
    x0,
    bounds,
    step,
    iters: int,
    min_step: float = 1e-12,
):
    """Maximize by axis-aligned moves with step halving.

    Each pass evaluates +/- step along every coordinate in one batch, takes
    the best strict improvement, and halves the steps when nothing improves.
    Returns ``(x, f(x), history)``; ``history`` holds f after every pass and is
    non-decreasing.
    """
    x = np.array(x0, dtype=float)
    lo = np.array([b[0] for b in bounds])
    hi = np.array([b[1] for b in bounds])
    step = np.array(step, dtype=float) * np.ones_like(x)
    fx = float(f_batch(x[None])[0])
    history = [fx]
    k = len(x)
    eye = np.eye(k)
    for _ in range(iters):
        if np.all(step < min_step):
            break
        trial = np.concatenate([x + eye * step, x - eye * step])
        trial = np.clip(trial, lo, hi)
        vals = f_batch(trial)
        best = int(np.argmax(vals))
        if vals[best] > fx:
            x, fx = trial[best], float(vals[best])
        else:
            step = step / 2
        history.append(fx)
    return x, fx, history


class _Game:
    """Payoff evaluator for one (state, game, spaces) combination."""

    def __init__(self, space_a, space_b, state: CorrelationState, m: PayoffMatrix2x2):
        self.spaces = {Player.ALICE: StrategySpace(space_a), Player.BOB: StrategySpace(space_b)}
        self.state = state
        self.m = m
        self.vec_a, self.vec_b = (np.array(v) for v in m.payoff_vectors())

    def tables(self, xa, xb):
        probs = strategy_table(self.state, self.spaces[Player.ALICE], xa, self.spaces[Player.BOB], xb)
        return probs @ self.vec_a, probs @ self.vec_b

    def profile(self, xa, xb) -> tuple[float, float]:
        pa, pb = self.tables(np.atleast_2d(xa), np.atleast_2d(xb))
        return float(pa[0, 0]), float(pb[0, 0])

    def own_payoffs(self, side: Player, own, opp) -> np.ndarray:
        """Payoffs of ``side`` for each row of ``own`` against one opponent vector."""
        own = np.atleast_2d(own)
        opp = np.atleast_2d(opp)
        if side is Player.ALICE:
            return self.tables(own, opp)[0][:, 0]
        return self.tables(opp, own)[1][0, :]

    def best_value(
        self, side: Player, opp, resolution: int, iters: int, starts: int = 2, min_step: float = 1e-12
    ):
        """Best payoff ``side`` can reach against ``opp``: grid scan plus ascent."""
        space = self.spaces[side]
        X = _cached_grid(space, resolution)
        vals = self.own_payoffs(side, X, opp)
        order = np.argsort(-vals, kind="stable")
        best_i = int(order[0])
        best_x, best_v = X[best_i], float(vals[best_i])
        if space is StrategySpace.CLASSICAL_PURE:
            return best_v, best_x
        step = _grid_step(space, resolution)
        f = lambda Y: self.own_payoffs(side, Y, opp)  # noqa: E731
        for i in order[:starts]:
            x, v, _ = coordinate_ascent(f, X[i], space.bounds, step, iters, min_step)
            if v > best_v:
                best_x, best_v = x, v
        return best_v, best_x

    def gaps(
        self, xa, xb, resolution: int, iters: int, starts: int = 2, min_step: float = 1e-12
    ) -> tuple[float, float]:
        pa, pb = self.profile(xa, xb)
        ba, _ = self.best_value(Player.ALICE, xb, resolution, iters, starts, min_step)
        bb, _ = self.best_value(Player.BOB, xa, resolution, iters, starts, min_step)
        return max(0.0, ba - pa), max(0.0, bb - pb)


def _params(space: StrategySpace, vec) -> StrategyParams:
    return StrategyParams.from_vector(space, vec)


def _as_vector(s: StrategyParams) -> np.ndarray:
    return np.array(s.vector(), dtype=float)


# -- public operations -----------------------------------------------------


def best_response(
    space: StrategySpace,
    opponent: StrategyParams,
    state: CorrelationState,
    m: PayoffMatrix2x2,
    cfg: SearchConfig = SearchConfig(),
    side: Player = Player.ALICE,
) -> list[tuple[StrategyParams, float]]:
    """Approximate argmax set of ``side``'s payoff against a fixed opponent.

    Grid points within epsilon of the grid maximum are refined by coordinate
    ascent; the refined points within epsilon of the best refined value are
    returned.  A flat grid is returned as is.
    """
    side = Player(side)
    space = StrategySpace(space)
    if side is Player.ALICE:
        g = _Game(space, opponent.space, state, m)
    else:
        g = _Game(opponent.space, space, state, m)
    opp = _as_vector(opponent)
    X = _cached_grid(space, cfg.grid_resolution)
    vals = g.own_payoffs(side, X, opp)
    top = float(vals.max())
    keep = np.flatnonzero(vals >= top - cfg.epsilon)
    if np.ptp(vals) <= cfg.epsilon or space is StrategySpace.CLASSICAL_PURE:
        return [(_params(space, X[i]), float(vals[i])) for i in keep]
    step = _grid_step(space, cfg.grid_resolution)
    f = lambda Y: g.own_payoffs(side, Y, opp)  # noqa: E731
    refined = [coordinate_ascent(f, X[i], space.bounds, step, cfg.refine_iters)[:2] for i in keep]
    best = max(v for _, v in refined)
    return [(_params(space, x), v) for x, v in refined if v >= best - cfg.epsilon]


def verify_ne(
    candidate,
    state: CorrelationState,
    m: PayoffMatrix2x2,
    cfg: SearchConfig = SearchConfig(),
) -> tuple[float, float]:
    """Largest unilateral improvement each player can find from the profile.

    Deviations are scanned on a grid twice as dense as the search grid and the
    best few are polished by coordinate ascent.
    """
    if isinstance(candidate, CandidateNE):
        sa, sb = candidate.params_a, candidate.params_b
    else:
        sa, sb = candidate
    g = _Game(sa.space, sb.space, state, m)
    return g.gaps(_as_vector(sa), _as_vector(sb), cfg.verify_resolution, cfg.refine_iters, starts=3)


def _candidate_tol(cfg: SearchConfig, g: _Game, pa, pb) -> float:
    if cfg.candidate_tol is not None:
        return cfg.candidate_tol
    h = math.pi / (cfg.grid_resolution - 1)
    return 0.5 * h * (np.ptp(pa) + np.ptp(pb))


def _grid_shape(space: StrategySpace, resolution: int) -> tuple[int, ...]:
    if space is StrategySpace.CLASSICAL_PURE:
        return (2,)
    return (resolution,) * space.n_params


_SCREEN_GAP = 1e-3


class _Converged(Exception):
    def __init__(self, z):
        self.z = z


def _refine(g: _Game, za0: np.ndarray, zb0: np.ndarray, cfg: SearchConfig):
    """Minimize the total deviation gap starting from a grid profile.

    Stops as soon as the gap drops well below epsilon; certification happens
    separately on the finer grid.
    """
    ka = len(za0)
    sa, sb = g.spaces[Player.ALICE], g.spaces[Player.BOB]
    bounds = sa.bounds + sb.bounds
    lo = np.array([b[0] for b in bounds])
    hi = np.array([b[1] for b in bounds])
    res = cfg.inner_resolution
    iters = cfg.refine_iters
    target = cfg.epsilon * 1e-2

    def total_gap(z):
        ga, gb = g.gaps(z[:ka], z[ka:], res, iters, starts=2, min_step=1e-9)
        if ga + gb <= target:
            raise _Converged(np.array(z))
        return ga + gb

    steps = np.concatenate([_grid_step(sa, cfg.grid_resolution), _grid_step(sb, cfg.grid_resolution)])
    z = np.concatenate([za0, zb0])
    # A short first round screens out minima that are not heading to zero gap.
    rounds = ((0.5, 50, True), (0.5, 300, False), (0.05, 300, False))
    try:
        for scale, budget, screen in rounds:
            simplex = [z]
            for i in range(len(z)):
                v = z.copy()
                d = steps[i] * scale
                v[i] = v[i] + d if v[i] + d <= hi[i] else v[i] - d
                simplex.append(np.clip(v, lo, hi))
            out = optimize.minimize(
                total_gap,
                z,
                method="Nelder-Mead",
                bounds=bounds,
                options={
                    "initial_simplex": np.array(simplex),
                    "xatol": 1e-10,
                    "fatol": 1e-13,
                    "maxfev": budget * len(z),
                },
            )
            z = np.clip(out.x, lo, hi)
            if screen and out.fun > _SCREEN_GAP:
                break
    except _Converged as done:
        z = np.clip(done.z, lo, hi)
    return z[:ka], z[ka:]


def find_nash(
    space_a: StrategySpace,
    space_b: StrategySpace,
    state: CorrelationState,
    m: PayoffMatrix2x2,
    cfg: SearchConfig = SearchConfig(),
) -> NEReport:
    """Grid-certified Nash equilibria for the given spaces and shared state."""
    space_a, space_b = StrategySpace(space_a), StrategySpace(space_b)
    g = _Game(space_a, space_b, state, m)
    XA = _cached_grid(space_a, cfg.grid_resolution)
    XB = _cached_grid(space_b, cfg.grid_resolution)
    if len(XA) * len(XB) > cfg.max_profiles:
        raise SearchBudgetExceeded(
            f"{len(XA)} x {len(XB)} profiles exceed the cap of {cfg.max_profiles}"
        )
    pa, pb = g.tables(XA, XB)
    common = dict(state_label=state.label, space_a=space_a, space_b=space_b)

    if np.ptp(pa) <= cfg.epsilon and np.ptp(pb) <= cfg.epsilon:
        payoff = (float(pa.mean()), float(pb.mean()))
        return NEReport(
            [], False, True, dilemma_case(payoff, True), payoff,
            stats={"profiles": pa.size}, **common,
        )

    gap = (pa.max(axis=0, keepdims=True) - pa) + (pb.max(axis=1, keepdims=True) - pb)
    exact = np.argwhere(gap <= cfg.epsilon)

    shape = _grid_shape(space_a, cfg.grid_resolution) + _grid_shape(space_b, cfg.grid_resolution)
    gap_nd = gap.reshape(shape)
    local_min = ndimage.minimum_filter(gap_nd, size=3, mode="nearest") >= gap_nd
    tol = _candidate_tol(cfg, g, pa, pb)
    near = local_min & (gap_nd <= tol) & (gap_nd > cfg.epsilon)
    if len(exact):
        # Inexact minima next to an exact grid equilibrium belong to its basin.
        exact_mask = np.zeros(shape, dtype=bool)
        exact_mask.reshape(gap.shape)[tuple(exact.T)] = True
        near &= ~ndimage.binary_dilation(exact_mask, structure=np.ones((3,) * len(shape)))
    near_idx = np.argwhere(near.reshape(gap.shape))
    order = np.lexsort((np.arange(len(near_idx)), gap[tuple(near_idx.T)]))
    near_idx = near_idx[order][: cfg.max_candidates]

    def polish(ij):
        za, zb = _refine(g, XA[ij[0]], XB[ij[1]], cfg)
        return za, zb

    refined = _parallel_map(polish, [tuple(ij) for ij in near_idx])
    profiles = [(XA[i], XB[j]) for i, j in exact] + refined

    def certify(z):
        za, zb = z
        ga, gb = g.gaps(za, zb, cfg.verify_resolution, cfg.refine_iters, starts=3)
        return ga, gb

    gaps = _parallel_map(certify, profiles)

    kept: list[CandidateNE] = []
    for (za, zb), (ga, gb) in zip(profiles, gaps):
        if ga > cfg.epsilon or gb > cfg.epsilon:
            continue
        sa, sb = _params(space_a, za), _params(space_b, zb)
        if any(
            strategy_distance(sa, k.params_a) <= cfg.dedupe_radius
            and strategy_distance(sb, k.params_b) <= cfg.dedupe_radius
            for k in kept
        ):
            continue
        kept.append(CandidateNE(sa, sb, g.profile(za, zb), ga, gb, True))

    unique = len(kept) == 1
    dilemma = dilemma_case(kept[0].payoffs, True) if unique else DilemmaCase.NOT_APPLICABLE
    stats = {
        "profiles": int(pa.size),
        "exact_candidates": int(len(exact)),
        "refined_candidates": int(len(near_idx)),
        "certified": len(kept),
    }
    return NEReport(kept, unique, False, dilemma, None, stats=stats, **common)


def corrupted_sweep(
    p_values: Iterable[float],
    space_a: StrategySpace,
    space_b: StrategySpace,
    m: PayoffMatrix2x2,
    cfg: SearchConfig = SearchConfig(),
) -> list[NEReport]:
    """``find_nash`` on the corrupted-source state for each mixing probability."""
    return [find_nash(space_a, space_b, corrupted(p), m, cfg) for p in p_values]


def _named_ops(items) -> list[tuple[str, np.ndarray]]:
    if items is None:
        return []
    if isinstance(items, Mapping):
        items = list(items.items())
    out = []
    for name, op in items:
        if isinstance(op, StrategyParams):
            op = to_matrix(op)
        out.append((str(name), np.asarray(op, dtype=complex)))
    return out


def build_extended_matrix(
    m: PayoffMatrix2x2,
    extra_a=None,
    extra_b=None,
    state: CorrelationState | None = None,
    initial: tuple[int, int] | None = None,
    tol: float = 1e-9,
) -> ExtendedMatrix:
    """Payoff table over the classical moves plus extra named operators.

    The classical moves are realized by the operators that reproduce them for
    the given initial product state.  NE cells are mutual best responses within
    the finite table (ties within ``tol`` count).
    """
    if state is None:
        from .protocol import mes

        state = mes(*(initial or (0, 0)))
    if initial is None:
        initial = tuple(state.initial) if state.initial is not None else (0, 0)
    rows = [
        (lbl, classical_embedding(lbl, initial, m.row_labels, m.col_labels).matrix)
        for lbl in m.row_labels
    ] + _named_ops(extra_a)
    cols = [
        (lbl, classical_embedding(lbl, initial, m.row_labels, m.col_labels).matrix)
        for lbl in m.col_labels
    ] + _named_ops(extra_b)
    names_r = [n for n, _ in rows]
    names_c = [n for n, _ in cols]
    if len(set(names_r)) != len(names_r) or len(set(names_c)) != len(names_c):
        raise ValueError("strategy names must be unique per player")
    cells = np.array(
        [[expected_payoffs(play_round(state, ua, ub), m) for _, ub in cols] for _, ua in rows]
    )
    A, B = cells[..., 0], cells[..., 1]
    ne = [
        (i, j)
        for i in range(len(rows))
        for j in range(len(cols))
        if A[i, j] >= A[:, j].max() - tol and B[i, j] >= B[i, :].max() - tol
    ]
    return ExtendedMatrix(rows, cols, cells, ne)
