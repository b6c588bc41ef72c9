import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qgame.errors import BadParameter, BadResolution, MixedHasNoMatrix, UnknownLabel
from qgame.strategies import (
    FLIP,
    PHASE,
    SIGMA0,
    ClassicalOp,
    StrategyParams,
    StrategySpace,
    classical_embedding,
    grid,
    grid_vectors,
    operator_distance,
    realize,
    realize_batch,
    strategy_distance,
    su2,
    to_matrix,
)

PI = math.pi
S1, S2, S3 = StrategySpace.SU2_ONE, StrategySpace.SU2_TWO, StrategySpace.SU2_THREE

thetas = st.floats(0, PI)
halves = st.floats(0, PI / 2)


def test_to_matrix_examples():
    assert np.allclose(to_matrix(StrategyParams(S1, theta=0)), SIGMA0)
    assert np.allclose(to_matrix(StrategyParams(S1, theta=PI)), FLIP)
    assert np.allclose(to_matrix(StrategyParams(S2, theta=0, phi=PI / 2)), PHASE)
    r = 1 / math.sqrt(2)
    assert np.allclose(to_matrix(StrategyParams(S1, theta=PI / 2)), [[r, r], [-r, r]])


def test_classical_matrices():
    assert np.array_equal(to_matrix(StrategyParams(StrategySpace.CLASSICAL_PURE, move=0)), SIGMA0)
    assert np.array_equal(to_matrix(StrategyParams(StrategySpace.CLASSICAL_PURE, move=1)), FLIP)
    with pytest.raises(MixedHasNoMatrix):
        to_matrix(StrategyParams(StrategySpace.CLASSICAL_MIXED, p=0.3))


def test_mixed_realization():
    w, ops = realize(StrategyParams(StrategySpace.CLASSICAL_MIXED, p=0.3))
    assert np.allclose(w, [0.3, 0.7])
    assert np.array_equal(ops[0], SIGMA0) and np.array_equal(ops[1], FLIP)


def test_param_validation():
    with pytest.raises(BadParameter):
        StrategyParams(S1, theta=4.0)
    with pytest.raises(BadParameter):
        StrategyParams(S2, theta=1.0, phi=2.0)
    with pytest.raises(BadParameter):
        StrategyParams(S1, theta=1.0, phi=0.5)
    with pytest.raises(BadParameter):
        StrategyParams(StrategySpace.CLASSICAL_PURE, move=2)
    with pytest.raises(BadParameter):
        StrategyParams(StrategySpace.CLASSICAL_MIXED)
    # boundary values are admitted
    StrategyParams(S3, theta=PI, phi=PI / 2, varphi=PI / 2)


@given(thetas, halves, halves)
def test_su2_unitary_det_one(t, a, b):
    u = su2(t, a, b)
    assert np.allclose(u.conj().T @ u, np.eye(2), atol=1e-12)
    assert abs(np.linalg.det(u) - 1) <= 1e-12


def test_grid_unitarity():
    for space in (S1, S2, S3):
        _, ops = realize_batch(space, grid_vectors(space, 7))
        u = ops[:, 0]
        prod = np.einsum("nji,njk->nik", u.conj(), u)
        assert np.allclose(prod, np.eye(2), atol=1e-12)
        assert np.allclose(np.linalg.det(u), 1, atol=1e-12)


def test_embedding_examples():
    assert classical_embedding("A", (0, 0)) is ClassicalOp.IDENTITY
    assert classical_embedding("N", (0, 0)) is ClassicalOp.FLIP
    assert classical_embedding("W", (0, 1)) is ClassicalOp.FLIP
    assert classical_embedding("L", (0, 1)) is ClassicalOp.IDENTITY
    with pytest.raises(UnknownLabel):
        classical_embedding("X", (0, 0))


@pytest.mark.parametrize("f", [0, 1])
@pytest.mark.parametrize("g", [0, 1])
def test_embedding_rule(f, g):
    for bit, label in enumerate("AN"):
        expect = ClassicalOp.IDENTITY if bit == f else ClassicalOp.FLIP
        assert classical_embedding(label, (f, g)) is expect
    for bit, label in enumerate("WL"):
        expect = ClassicalOp.IDENTITY if bit == g else ClassicalOp.FLIP
        assert classical_embedding(label, (f, g)) is expect


def test_grid_sizes():
    g1 = grid(S1, 3)
    assert [p.theta for p in g1] == pytest.approx([0, PI / 2, PI])
    g2 = grid_vectors(S2, 5)
    assert g2.shape == (25, 2)
    assert any(np.allclose(v, (0, PI / 2)) for v in g2)
    assert grid_vectors(S3, 4).shape == (64, 3)
    assert grid_vectors(StrategySpace.CLASSICAL_MIXED, 11).shape == (11, 1)
    with pytest.raises(BadResolution):
        grid_vectors(S1, 1)


def test_subset_embedding():
    # every SU2_ONE grid point is an SU2_TWO grid point and an SU2_THREE grid point
    one = grid_vectors(S1, 9)
    two = {tuple(np.round(v, 12)) for v in grid_vectors(S2, 9)}
    three = {tuple(np.round(v, 12)) for v in grid_vectors(S3, 9)}
    for (t,) in one:
        assert (round(t, 12), 0.0) in two
        assert (round(t, 12), 0.0, 0.0) in three


def test_operator_distance_examples():
    assert operator_distance(SIGMA0, SIGMA0) == 0
    assert operator_distance(SIGMA0, -SIGMA0) == 0
    assert operator_distance(SIGMA0, FLIP) == pytest.approx(1.0)
    assert operator_distance(SIGMA0, PHASE) == pytest.approx(1.0)


@given(thetas, halves, halves, thetas, halves, halves, st.floats(0, 2 * PI))
def test_operator_distance_properties(t1, a1, b1, t2, a2, b2, alpha):
    u, v = su2(t1, a1, b1), su2(t2, a2, b2)
    d = operator_distance(u, v)
    assert 0 <= d <= 1
    assert d == pytest.approx(operator_distance(v, u), abs=1e-12)
    assert operator_distance(u, np.exp(1j * alpha) * u) <= 1e-6


def test_strategy_distance_mixed():
    a = StrategyParams(StrategySpace.CLASSICAL_MIXED, p=0.2)
    b = StrategyParams(StrategySpace.CLASSICAL_MIXED, p=0.25)
    assert strategy_distance(a, b) == pytest.approx(0.05)
    assert strategy_distance(a, StrategyParams(S1, theta=0)) == 1.0


def test_vector_round_trip():
    p = StrategyParams(S3, theta=1.0, phi=0.5, varphi=0.25)
    assert StrategyParams.from_vector(S3, p.vector()) == p
    assert p.describe() == "theta=1, phi=0.5, varphi=0.25"
