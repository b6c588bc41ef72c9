"""Run a validated scenario and package the results as a report."""
from __future__ import annotations

import time

from .config import ScenarioConfig
from .equilibrium import (
    ExtendedMatrix,
    NEReport,
    build_extended_matrix,
    corrupted_sweep,
    find_nash,
    worker_count,
)
from .game import PayoffMatrix2x2, classify, mixed_nash_2x2, pure_nash
from .protocol import CorrelationState, expected_payoffs, play_strategies
from .report import ReportDocument, num, record
from .strategies import StrategyParams


def payoff_record(state: CorrelationState, sa: StrategyParams, sb: StrategyParams, m: PayoffMatrix2x2) -> dict:
    dist = play_strategies(state, sa, sb)
    pa, pb = expected_payoffs(dist, m)
    return record(
        "payoffs",
        state=state.label,
        player_a=f"{sa.space.value}({sa.describe()})",
        player_b=f"{sb.space.value}({sb.describe()})",
        payoff_a=pa,
        payoff_b=pb,
        **dist.labelled(),
    )


def nash_records(rep: NEReport, p: float | None = None) -> list[dict]:
    """A summary record followed by one record per equilibrium."""
    extra = {} if p is None else {"p": p}
    if rep.flat:
        pay = rep.flat_payoffs
    elif rep.unique:
        pay = rep.equilibria[0].payoffs
    else:
        pay = (None, None)
    out = [
        record(
            "nash_summary",
            **extra,
            state=rep.state_label,
            space_a=rep.space_a,
            space_b=rep.space_b,
            count=len(rep.equilibria),
            unique=rep.unique,
            flat=rep.flat,
            dilemma=rep.dilemma,
            payoff_a=pay[0],
            payoff_b=pay[1],
        )
    ]
    for e in rep.equilibria:
        out.append(
            record(
                "equilibrium",
                **extra,
                player_a_params=e.params_a.describe(),
                player_b_params=e.params_b.describe(),
                payoff_a=e.payoffs[0],
                payoff_b=e.payoffs[1],
                gap_a=e.gap_a,
                gap_b=e.gap_b,
                certified=e.certified,
            )
        )
    return out


def matrix_records(em: ExtendedMatrix) -> list[dict]:
    ne = set(em.ne_cells)
    return [
        record("cell", row=r, col=c, payoff_a=em.cells[i, j, 0], payoff_b=em.cells[i, j, 1], ne=(i, j) in ne)
        for i, r in enumerate(em.row_names)
        for j, c in enumerate(em.col_names)
    ]


def classical_records(m: PayoffMatrix2x2) -> list[dict]:
    cls = classify(m)
    res = mixed_nash_2x2(m)
    pure = [f"{m.row_labels[i]},{m.col_labels[j]}" for i, j in pure_nash(m)]
    prof = res.profile
    return [
        record(
            "classical_analysis",
            symmetric=cls.symmetric,
            zero_sum=cls.zero_sum,
            pure_ne=pure,
            mixed_p=None if prof is None else prof.p,
            mixed_q=None if prof is None else prof.q,
            payoff_a=None if prof is None else res.payoffs[0],
            payoff_b=None if prof is None else res.payoffs[1],
        )
    ]


def _results(cfg: ScenarioConfig) -> list[dict]:
    if cfg.mode == "payoff_eval":
        return [payoff_record(cfg.correlation, cfg.strategy_a, cfg.strategy_b, cfg.game)]
    if cfg.mode == "classical_analysis":
        return classical_records(cfg.game)
    if cfg.mode == "nash_search":
        rep = find_nash(cfg.space_a, cfg.space_b, cfg.correlation, cfg.game, cfg.search)
        return nash_records(rep)
    if cfg.mode == "corrupted_sweep":
        reps = corrupted_sweep(cfg.p_values, cfg.space_a, cfg.space_b, cfg.game, cfg.search)
        return [r for p, rep in zip(cfg.p_values, reps) for r in nash_records(rep, p)]
    if cfg.mode == "extended_matrix":
        em = build_extended_matrix(
            cfg.game, cfg.extra_a, cfg.extra_b, cfg.correlation, cfg.initial_state
        )
        return matrix_records(em)
    raise AssertionError(cfg.mode)


def run_scenario(cfg: ScenarioConfig) -> ReportDocument:
    start = time.perf_counter()
    results = _results(cfg)
    comparison = None
    if cfg.reproduce is not None:
        from .fixtures import reproduce

        comparison = reproduce(cfg.reproduce, cfg.search).fixture_comparison
    runtime = {"seconds": num(time.perf_counter() - start), "threads": worker_count()}
    return ReportDocument(cfg.to_dict(), results, comparison, runtime)
