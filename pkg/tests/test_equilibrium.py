import math

import numpy as np
import pytest

from qgame.errors import SearchBudgetExceeded
from qgame.equilibrium import (
    Player,
    SearchConfig,
    best_response,
    build_extended_matrix,
    coordinate_ascent,
    corrupted_sweep,
    find_nash,
    verify_ne,
    worker_count,
)
from qgame.fixtures import FLIP_P, IDENT, PHASE_P, Q_OP, S_OP, find_match, search, table_4_matrix
from qgame.game import DilemmaCase
from qgame.protocol import corrupted, dephased, full_rank, mes, strategy_payoffs
from qgame.strategies import StrategyParams, StrategySpace, operator_distance, to_matrix

PI = math.pi
S = StrategySpace
CFG = SearchConfig()


def one(theta):
    return StrategyParams(S.SU2_ONE, theta=theta)


def mixed(p):
    return StrategyParams(S.CLASSICAL_MIXED, p=p)


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(epsilon=0)
    with pytest.raises(ValueError):
        SearchConfig(grid_resolution=8)
    with pytest.raises(ValueError):
        SearchConfig(refine_iters=0)
    assert CFG.verify_resolution == 65


def test_worker_count(monkeypatch):
    monkeypatch.setenv("QGAME_THREADS", "1")
    assert worker_count() == 1
    monkeypatch.setenv("QGAME_THREADS", "bogus")
    assert worker_count() >= 1


def test_coordinate_ascent_monotone():
    target = np.array([0.3, 1.1])
    f = lambda X: -np.sum((X - target) ** 2, axis=1) + 0.1 * np.sin(7 * X[:, 0])  # noqa: E731
    x, fx, hist = coordinate_ascent(f, [2.5, 0.0], [(0, PI), (0, PI / 2)], [0.4, 0.4], 200)
    assert all(b >= a for a, b in zip(hist, hist[1:]))
    assert fx == hist[-1]
    assert np.all((x >= 0) & (x <= [PI, PI / 2]))


def test_coordinate_ascent_on_payoff_surface(m):
    # Alice climbing against Bob's acos(-3/5) one-parameter move on the |01> state
    from qgame.protocol import payoff_tables

    opp = np.array([[math.acos(0.6)]])
    f = lambda X: payoff_tables(mes(0, 1), S.SU2_ONE, X, S.SU2_ONE, opp, m)[0][:, 0]  # noqa: E731
    _, _, hist = coordinate_ascent(f, [0.1], [(0, PI)], [0.2], 80)
    assert all(b >= a for a, b in zip(hist, hist[1:]))


def test_best_response_phase(m):
    br = best_response(S.SU2_TWO, PHASE_P, mes(0, 0), m, CFG)
    assert any(operator_distance(to_matrix(s), to_matrix(PHASE_P)) <= 1e-6 for s, _ in br)
    assert max(v for _, v in br) == pytest.approx(3, abs=1e-9)


def test_best_response_full_rank_flat(m):
    br = best_response(S.SU2_TWO, StrategyParams(S.SU2_TWO, theta=1.0), full_rank(), m, CFG)
    assert len(br) == CFG.grid_resolution**2
    assert all(v == pytest.approx(0.25) for _, v in br)


def test_best_response_one_param(m):
    br = best_response(S.SU2_ONE, one(math.acos(-0.6)), mes(0, 0), m, CFG)
    assert any(abs(s.theta - PI / 2) <= 1e-9 for s, _ in br)


def test_best_response_bob_side(m):
    br = best_response(S.SU2_ONE, one(0.0), mes(0, 0), m, CFG, side=Player.BOB)
    # against theta_A = 0 Bob earns (5 - cos theta_B) / 2, peaking at theta_B = pi
    assert len(br) == 1
    assert br[0][0].theta == pytest.approx(PI, abs=1e-9)
    assert br[0][1] == pytest.approx(3.0)


def test_find_nash_two_param_mes00():
    rep = search(S.SU2_TWO, S.SU2_TWO, mes(0, 0), CFG)
    assert rep.unique and not rep.flat
    e = rep.equilibria[0]
    assert operator_distance(to_matrix(e.params_a), to_matrix(PHASE_P)) <= 1e-3
    assert operator_distance(to_matrix(e.params_b), to_matrix(PHASE_P)) <= 1e-3
    assert e.payoffs == pytest.approx((3, 2), abs=1e-6)
    assert rep.dilemma is DilemmaCase.CASE_III


def test_find_nash_two_param_mes01():
    rep = search(S.SU2_TWO, S.SU2_TWO, mes(0, 1), CFG)
    assert not rep.unique
    assert len(rep.equilibria) >= 4
    for e in rep.equilibria:
        assert e.payoffs == pytest.approx((3, 2), abs=1e-6)
    assert rep.dilemma is DilemmaCase.NOT_APPLICABLE
    assert find_match(rep, FLIP_P, PHASE_P)[0] is not None


def test_find_nash_one_param():
    rep = search(S.SU2_ONE, S.SU2_ONE, mes(0, 0), CFG)
    match, _ = find_match(rep, one(PI / 2), one(math.acos(-0.6)))
    assert match is not None
    assert match.payoffs == pytest.approx((-0.2, 1.5), abs=1e-6)
    assert rep.dilemma is DilemmaCase.CASE_I


def test_find_nash_mixed_dephased():
    # Bob's mix must equalize Alice's two rows of the operator table, so q = 1/2
    rep = search(S.CLASSICAL_MIXED, S.CLASSICAL_MIXED, dephased(0, 0), CFG)
    assert rep.unique
    e = rep.equilibria[0]
    assert (e.params_a.p, e.params_b.p) == pytest.approx((0.5, 0.5), abs=1e-6)
    assert e.payoffs == pytest.approx((0.25, 1.5), abs=1e-6)
    assert rep.dilemma is DilemmaCase.CASE_II


def test_find_nash_full_rank_flat():
    rep = search(S.SU2_TWO, S.SU2_TWO, full_rank(), CFG)
    assert rep.flat and rep.equilibria == []
    assert rep.flat_payoffs == pytest.approx((0.25, 1.5), abs=1e-12)
    assert rep.dilemma is DilemmaCase.CASE_II


def test_find_nash_bob_restricted_one_param():
    rep = search(S.SU2_ONE, S.CLASSICAL_MIXED, mes(0, 0), CFG)
    match, _ = find_match(rep, one(PI / 2), mixed(0.2))
    assert match is not None
    assert match.payoffs == pytest.approx((-0.2, 1.5), abs=1e-6)


def test_find_nash_bob_restricted_two_param_has_equilibrium(m):
    # theta_A = pi/2, phi_A = 0 against p = 1/5 is an equilibrium inside SU2_TWO too
    sa = StrategyParams(S.SU2_TWO, theta=PI / 2)
    ga, gb = verify_ne((sa, mixed(0.2)), mes(0, 0), m, CFG)
    assert ga <= CFG.epsilon and gb <= CFG.epsilon
    rep = search(S.SU2_TWO, S.CLASSICAL_MIXED, mes(0, 0), CFG)
    assert find_match(rep, sa, mixed(0.2))[0] is not None


def test_verify_ne_examples(m):
    ga, gb = verify_ne((PHASE_P, PHASE_P), mes(0, 0), m, CFG)
    assert ga <= 1e-6 and gb <= 1e-6
    _, gb = verify_ne((IDENT, IDENT), mes(0, 0), m, CFG)
    assert gb >= 1 - 1e-9
    assert verify_ne((Q_OP, S_OP), full_rank(), m, CFG) == pytest.approx((0, 0), abs=1e-12)


@pytest.mark.parametrize(
    "spaces,state",
    [
        ((S.SU2_ONE, S.SU2_ONE), mes(0, 0)),
        ((S.SU2_TWO, S.SU2_TWO), mes(0, 0)),
        ((S.SU2_TWO, S.SU2_TWO), mes(0, 1)),
        ((S.CLASSICAL_MIXED, S.CLASSICAL_MIXED), dephased(0, 0)),
        ((S.SU2_ONE, S.CLASSICAL_MIXED), mes(0, 0)),
    ],
    ids=["q1-mes00", "q2-mes00", "q2-mes01", "mixed-deph00", "q1-vs-mixed"],
)
def test_reported_equilibria_reverify(m, spaces, state):
    rep = search(*spaces, state, CFG)
    for e in rep.equilibria:
        ga, gb = verify_ne(e, state, m, CFG)
        assert ga <= CFG.epsilon and gb <= CFG.epsilon
        assert e.certified


def test_determinism(m):
    a = find_nash(S.CLASSICAL_MIXED, S.CLASSICAL_MIXED, dephased(0, 0), m, CFG)
    b = find_nash(S.CLASSICAL_MIXED, S.CLASSICAL_MIXED, dephased(0, 0), m, CFG)
    assert a == b
    cfg = SearchConfig(grid_resolution=13)
    c = find_nash(S.SU2_ONE, S.SU2_ONE, mes(0, 1), m, cfg)
    d = find_nash(S.SU2_ONE, S.SU2_ONE, mes(0, 1), m, cfg)
    assert c == d


def test_subset_consistency(m):
    state = mes(0, 0)
    rep = search(S.SU2_ONE, S.SU2_ONE, state, CFG)
    assert rep.equilibria
    for e in rep.equilibria:
        sa = StrategyParams(S.SU2_TWO, theta=e.params_a.theta)
        sb = StrategyParams(S.SU2_TWO, theta=e.params_b.theta)
        lifted = strategy_payoffs(state, sa, sb, m)
        assert lifted == pytest.approx(e.payoffs, abs=1e-10)


def test_search_budget(m):
    with pytest.raises(SearchBudgetExceeded):
        find_nash(S.SU2_TWO, S.SU2_TWO, mes(0, 0), m, SearchConfig(max_profiles=1000))


def test_corrupted_sweep_p1_matches_mes00(m):
    cfg = SearchConfig(grid_resolution=9)
    (swept,) = corrupted_sweep([1.0], S.SU2_ONE, S.SU2_ONE, m, cfg)
    direct = find_nash(S.SU2_ONE, S.SU2_ONE, mes(0, 0), m, cfg)
    assert swept.payoffs == pytest.approx(direct.payoffs, abs=1e-12)
    assert [e.params_a for e in swept.equilibria] == [e.params_a for e in direct.equilibria]


@pytest.mark.parametrize(
    "p,rows",
    [
        (0.5, [(IDENT, FLIP_P, (1, 2.5)), (FLIP_P, PHASE_P, (1, 2.5)), (PHASE_P, PHASE_P, (1, 2.5))]),
        (0.25, [(IDENT, IDENT, (0, 2.75)), (FLIP_P, PHASE_P, (2, 2.25))]),
    ],
)
def test_corrupted_examples(p, rows):
    rep = search(S.SU2_TWO, S.SU2_TWO, corrupted(p), CFG)
    for sa, sb, pay in rows:
        match, _ = find_match(rep, sa, sb)
        assert match is not None
        assert match.payoffs == pytest.approx(pay, abs=1e-6)


def test_extended_matrix_table_3(m):
    em = build_extended_matrix(m, {"M": PHASE_P}, {"M": PHASE_P}, mes(0, 0), (0, 0))
    assert em.cell("M", "M") == pytest.approx((3, 2), abs=1e-12)
    assert em.cell("A", "M") == pytest.approx((0, 0), abs=1e-12)
    assert em.ne_cells == [(2, 2)]


def test_extended_matrix_table_4():
    em = table_4_matrix()
    assert em.cells.shape == (5, 6, 2)
    assert em.cell("A", "Q") == pytest.approx((1, 1.5), abs=1e-12)
    assert em.cell("Z", "S") == pytest.approx((3, 2), abs=1e-12)
    assert em.is_ne("Z", "S")


@pytest.mark.parametrize("initial", [(0, 0), (0, 1)])
def test_extended_matrix_empty_extras(m, initial):
    em = build_extended_matrix(m, None, [], mes(*initial), initial)
    assert em.row_names == ["A", "N"] and em.col_names == ["W", "L"]
    assert np.array_equal(em.cells[..., 0], m.A)
    assert np.array_equal(em.cells[..., 1], m.B)
    assert em.ne_cells == []


def test_extended_matrix_classical_block(m):
    em = build_extended_matrix(m, {"M": PHASE_P}, {"M": PHASE_P}, mes(0, 0), (0, 0))
    assert np.array_equal(em.cells[:2, :2, 0], m.A)
    assert np.array_equal(em.cells[:2, :2, 1], m.B)


def test_extended_matrix_duplicate_names(m):
    with pytest.raises(ValueError):
        build_extended_matrix(m, {"A": PHASE_P}, None)
