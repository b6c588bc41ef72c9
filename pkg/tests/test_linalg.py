import numpy as np
import pytest
from conftest import random_unitary

from qgame.errors import InvalidDensityMatrix, NonUnitary, NotNormalized
from qgame.linalg import (
    I2,
    I4,
    NORM_TOL,
    PROB_CLAMP,
    TOL,
    UNITARITY_TOL,
    check_density,
    conjugate_by,
    dagger,
    diagonal_probabilities,
    is_unitary,
    tensor_product,
)
from qgame.protocol import ENTANGLER, mes
from qgame.strategies import FLIP, PHASE


def test_tolerance_constants():
    assert UNITARITY_TOL == 1e-10
    assert PROB_CLAMP == 1e-12
    assert NORM_TOL == 1e-9
    assert TOL.unitarity_check == 1e-8


def test_tensor_identity():
    assert np.array_equal(tensor_product(I2, I2), I4)


def test_tensor_flip_flip_maps_00_to_11():
    # each flip sends |0> to -|1>, so the two signs cancel
    k = tensor_product(FLIP, FLIP)
    assert k[3, 0] == 1
    e00 = np.array([1, 0, 0, 0])
    assert np.array_equal(k @ e00, [0, 0, 0, 1])


def test_tensor_phase_phase():
    assert np.allclose(tensor_product(PHASE, PHASE), np.diag([-1, 1, 1, -1]))


def test_tensor_block_convention(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    k = tensor_product(a, b)
    for i in range(2):
        for j in range(2):
            for s in range(2):
                for t in range(2):
                    assert np.isclose(k[2 * i + s, 2 * j + t], a[i, j] * b[s, t], rtol=0, atol=1e-15)


def test_tensor_bilinear(rng):
    for _ in range(100):
        a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
        lhs = tensor_product(a + b, c)
        rhs = tensor_product(a, c) + tensor_product(b, c)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_tensor_rejects_wrong_shape():
    with pytest.raises(ValueError):
        tensor_product(I4, I2)


def test_dagger_examples():
    assert np.array_equal(dagger(I2), I2)
    assert np.array_equal(dagger(np.array([[0, 1], [-1, 0]])), np.array([[0, -1], [1, 0]]))
    assert np.max(np.abs(dagger(ENTANGLER) @ ENTANGLER - I4)) <= 1e-10


def test_dagger_involution_and_no_mutation(rng):
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    before = m.copy()
    assert np.array_equal(dagger(dagger(m)), m)
    assert np.array_equal(m, before)


def test_conjugate_identity():
    rho = mes(0, 1).rho
    assert np.allclose(conjugate_by(rho, I4), rho)


def test_conjugate_builds_mes():
    ket = np.zeros((4, 4), complex)
    ket[0, 0] = 1
    out = conjugate_by(ket, ENTANGLER)
    assert np.isclose(out[0, 0], 0.5)
    assert np.isclose(out[3, 3], 0.5)
    assert np.isclose(out[0, 3], -0.5j)
    assert np.isclose(out[3, 0], 0.5j)


def test_conjugate_preserves_trace_and_density(rng):
    rho = mes(0, 0).rho
    for _ in range(200):
        u = random_unitary(rng, 4)
        out = conjugate_by(rho, u)
        assert abs(np.trace(out) - 1) <= 1e-12
        check_density(out)


def test_conjugate_composes(rng):
    rho = mes(0, 1).rho
    for _ in range(100):
        u, v = random_unitary(rng, 4), random_unitary(rng, 4)
        lhs = conjugate_by(conjugate_by(rho, u), v)
        assert np.max(np.abs(lhs - conjugate_by(rho, v @ u))) <= 1e-10


def test_conjugate_rejects_non_unitary():
    with pytest.raises(NonUnitary):
        conjugate_by(I4 / 4, 2 * I4)


def test_conjugate_tolerates_roundoff_below_gate():
    u = I4 * (1 + 1e-10)
    assert not is_unitary(u * (1 + 1e-9))
    conjugate_by(I4 / 4, u)


def test_diagonal_probabilities_examples():
    assert np.array_equal(diagonal_probabilities(np.diag([1, 0, 0, 0])), [1, 0, 0, 0])
    assert np.allclose(diagonal_probabilities(I4 / 4), [0.25] * 4)
    undone = conjugate_by(mes(0, 0).rho, dagger(ENTANGLER))
    assert np.allclose(diagonal_probabilities(undone), [1, 0, 0, 0])


def test_diagonal_clamps_roundoff_negatives():
    p = diagonal_probabilities(np.diag([1 + 5e-13, -5e-13, 0, 0]))
    assert p.min() >= 0
    assert p.sum() == 1.0


def test_diagonal_rejects_real_negatives():
    with pytest.raises(InvalidDensityMatrix):
        diagonal_probabilities(np.diag([1.1, -0.1, 0, 0]))


def test_diagonal_rejects_bad_norm():
    with pytest.raises(NotNormalized):
        diagonal_probabilities(np.diag([0.5, 0.2, 0, 0]))
    # just inside the renormalization window
    p = diagonal_probabilities(np.diag([0.5 + 4e-10, 0.5, 0, 0]))
    assert abs(p.sum() - 1) < 1e-15


def test_check_density_rejects_non_hermitian():
    rho = I4 / 4
    rho = rho.copy()
    rho[0, 1] = 0.1
    with pytest.raises(InvalidDensityMatrix):
        check_density(rho)
