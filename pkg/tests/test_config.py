import math

import pytest

from qgame.config import load_config, load_config_file, parse_angle, parse_probability
from qgame.errors import ConfigError
from qgame.protocol import CorrelationKind
from qgame.strategies import StrategySpace

PI = math.pi

BASE = """
schema_version: 1
mode: nash_search
game: welfare
initial_state: [0, 1]
correlation: {kind: dephased}
space_a: su2_two
space_b: su2_two
search: {grid_resolution: 17, epsilon: 1e-6}
"""


@pytest.mark.parametrize(
    "text,value",
    [
        ("1/2 pi", PI / 2),
        ("pi/4", PI / 4),
        ("-3/4 pi", -0.75 * PI),
        ("pi", PI),
        ("2*pi/3", 2 * PI / 3),
        ("acos(-3/5)", math.acos(-0.6)),
        ("0.25", 0.25),
        (1, 1.0),
    ],
)
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value, abs=1e-15)


@pytest.mark.parametrize("bad", ["acos(2)", "tau", True, [1], "1/0"])
def test_parse_angle_errors(bad):
    with pytest.raises(ConfigError):
        parse_angle(bad)


def test_parse_probability():
    assert parse_probability("1/4") == 0.25
    assert parse_probability(0.5) == 0.5
    with pytest.raises(ConfigError):
        parse_probability(1.5)


def test_load_base():
    cfg = load_config(BASE)
    assert cfg.mode == "nash_search"
    assert cfg.initial_state == (0, 1)
    assert cfg.correlation.kind is CorrelationKind.DEPHASED
    assert tuple(cfg.correlation.initial) == (0, 1)
    assert cfg.space_a is StrategySpace.SU2_TWO
    assert cfg.search.grid_resolution == 17
    assert cfg.search.epsilon == 1e-6
    assert cfg.to_dict()["search"]["grid_resolution"] == 17


def test_strategies_and_custom_game():
    cfg = load_config(
        """
schema_version: 1
mode: payoff_eval
game: {alice: [1, 2, 3, 4], bob: [4, 3, 2, 1], row_labels: [U, D], col_labels: [l, r]}
strategy_a: {space: su2_three, theta: 1/2 pi, phi: 0, varphi: pi/2}
strategy_b: {space: classical_mixed, p: 1/5}
"""
    )
    assert cfg.game.cell(0, 1) == (2, 3)
    assert cfg.strategy_a.varphi == pytest.approx(PI / 2)
    assert cfg.strategy_b.p == pytest.approx(0.2)


def test_extras_and_sweep():
    cfg = load_config(
        """
schema_version: 1
mode: extended_matrix
extra_a: {M: i*sigma_z, T: {theta: 1/2 pi}}
extra_b: {M: {space: su2_two, theta: 0, phi: pi/2}}
"""
    )
    assert [n for n, _ in cfg.extra_a] == ["M", "T"]
    sweep = load_config(
        """
schema_version: 1
mode: corrupted_sweep
space_a: su2_two
space_b: su2_two
p_values: [1/4, 0.5, 3/4]
"""
    )
    assert sweep.p_values == (0.25, 0.5, 0.75)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("mode: nash_search\nspace_a: su2_one\nspace_b: su2_one", "schema_version"),
        ("schema_version: 2\nmode: nash_search", "schema_version"),
        ("schema_version: 1\nmode: dance", "mode"),
        ("schema_version: 1\nmode: nash_search\nspace_a: su2_one", "space_b"),
        ("schema_version: 1\nmode: classical_analysis\nbogus: 1", "bogus"),
        ("schema_version: 1\nmode: nash_search\nspace_a: su2_four\nspace_b: su2_one", "su2_four"),
        ("schema_version: 1\nmode: classical_analysis\ncorrelation: {kind: corrupted}", "needs p"),
        ("schema_version: 1\nmode: classical_analysis\ncorrelation: {kind: mes, p: 0.5}", "only meaningful"),
        ("schema_version: 1\nmode: classical_analysis\ninitial_state: [0, 2]", "initial_state"),
        ("schema_version: 1\nmode: classical_analysis\nsearch: {grid_resolution: 4}", "grid_resolution"),
        ("schema_version: 1\nmode: classical_analysis\nsearch: {grid_resolution: 9.5}", "integer"),
        ("schema_version: 1\nmode: classical_analysis\nsearch: {speed: 3}", "speed"),
        ("schema_version: 1\nmode: payoff_eval\nstrategy_a: {space: su2_one, theta: 4}\n"
         "strategy_b: {space: su2_one}", "strategy_a"),
        ("schema_version: 1\nmode: payoff_eval\nstrategy_a: {theta: 1}\nstrategy_b: {theta: 1}",
         "no strategy space"),
        ("schema_version: 1\nmode: corrupted_sweep\nspace_a: su2_one\nspace_b: su2_one\np_values: []",
         "p_values"),
        ("schema_version: 1\nmode: extended_matrix\nextra_a: {M: hadamard}", "unknown operator"),
        ("schema_version: [1\n", "YAML"),
        ("- 1\n- 2\n", "mapping"),
    ],
)
def test_config_errors(text, fragment):
    with pytest.raises(ConfigError) as info:
        load_config(text)
    assert fragment in str(info.value)


def test_load_file(tmp_path):
    path = tmp_path / "c.yaml"
    path.write_text(BASE)
    assert load_config_file(path).mode == "nash_search"
    with pytest.raises(ConfigError):
        load_config_file(tmp_path / "missing.yaml")
