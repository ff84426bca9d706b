import numpy as np
import pytest

from bakerotoc.classical import bit_reverse
from bakerotoc.linalg import ProjectorRange, dft_shifted, frobenius_norm_sq, parity_operator, truncate, unitarity_error
from bakerotoc.quantum import (
    BakerConfig,
    build_baker,
    build_semiquantum,
    build_swap_structure,
    ehrenfest_time,
    semiquantum_deviation,
    semiquantum_mixed,
    semiquantum_position_element,
    semiquantum_position_matrix,
    swap_matrix,
    two_adic_valuation,
)


@pytest.mark.parametrize("n, n0, T", [(2, 1, 1), (210, 105, 1), (256, 1, 8), (2446, 1223, 1), (96, 3, 5)])
def test_baker_config(n, n0, T):
    cfg = BakerConfig.from_dimension(n)
    assert (cfg.N0, cfg.T) == (n0, T)
    assert cfg.N0 * 2**cfg.T == n and cfg.N0 % 2 == 1


def test_two_adic_and_ehrenfest():
    assert two_adic_valuation(1024) == 10
    assert two_adic_valuation(12) == 2
    assert ehrenfest_time(1024) == 10.0


@pytest.mark.parametrize("n", [64, 210, 256, 1024])
def test_baker_unitary(baker, n):
    assert unitarity_error(baker(n)) < 1e-12


def test_baker_rejects_odd():
    with pytest.raises(ValueError):
        build_baker(63)


def test_baker_parity(baker):
    r = parity_operator(64)
    b = baker(64)
    assert np.max(np.abs(r @ b @ r - b)) < 1e-12


def test_baker_n2_by_hand():
    g2 = dft_shifted(2)
    g1 = np.exp(-0.5j * np.pi)
    expected = g2.conj().T @ np.diag([g1, g1])
    assert np.max(np.abs(build_baker(2) - expected)) < 1e-15


@pytest.mark.parametrize("n", [2, 64, 210, 1024])
def test_b1_equals_b(baker, n):
    assert np.max(np.abs(build_semiquantum(n, 1) - baker(n))) < 1e-12


def test_swap_structures():
    assert build_swap_structure(1).tolist() == [0, 1]
    assert build_swap_structure(2).tolist() == [0, 2, 1, 3]
    assert build_swap_structure(3).tolist() == [bit_reverse(v, 3) for v in range(8)]
    assert build_swap_structure(3)[[1, 2, 3]].tolist() == [4, 2, 6]
    swap_gate = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert np.array_equal(swap_matrix(2), swap_gate)
    assert np.array_equal(swap_matrix(1), np.eye(2))
    with pytest.raises(ValueError):
        build_swap_structure(0)
    with pytest.raises(ValueError):
        build_swap_structure(21)


def test_mixed_representation_t2_blocks():
    n = 16
    mixed = semiquantum_mixed(n, 2)
    g = dft_shifted(4)
    for row in range(4):
        for col in range(4):
            block = mixed[4 * row : 4 * row + 4, 4 * col : 4 * col + 4]
            if (row, col) in {(0, 0), (1, 2), (2, 1), (3, 3)}:
                assert np.array_equal(block, g)
            else:
                assert not block.any()


def test_mixed_matches_kron():
    n, t = 64, 3
    assert np.array_equal(semiquantum_mixed(n, t), np.kron(swap_matrix(t), dft_shifted(n // 8)))


@pytest.mark.parametrize("n", [64, 210, 256, 1024])
def test_semiquantum_unitary(n):
    for t in range(1, two_adic_valuation(n) + 1):
        assert unitarity_error(build_semiquantum(n, t)) < 1e-12


def test_semiquantum_rejects_beyond_T():
    with pytest.raises(ValueError):
        build_semiquantum(210, 2)
    with pytest.raises(ValueError):
        build_semiquantum(64, 7)
    with pytest.raises(ValueError):
        semiquantum_position_element(210, 2, 0, 0)


@pytest.mark.parametrize("n", [16, 64, 256])
def test_semiquantum_matches_position_closed_form(n):
    for t in range(1, two_adic_valuation(n) + 1):
        diff = np.max(np.abs(build_semiquantum(n, t) - semiquantum_position_matrix(n, t)))
        assert diff < 1e-12, (n, t, diff)


@pytest.mark.parametrize("n, t", [(64, 2), (64, 6), (48, 4), (2, 1)])
def test_position_element_scalar(n, t):
    bt = build_semiquantum(n, t)
    rng = np.random.default_rng(n + t)
    for k, col in rng.integers(0, n, size=(25, 2)):
        assert abs(semiquantum_position_element(n, t, int(k), int(col)) - bt[k, col]) < 1e-12


def test_position_element_rejects_indices():
    with pytest.raises(ValueError):
        semiquantum_position_element(16, 2, 16, 0)


@pytest.mark.parametrize("n", [64, 256, 1024, 96])
def test_semiquantum_two_point_value(n):
    half = ProjectorRange.left_half(n)
    for t in range(1, two_adic_valuation(n) + 1):
        f2 = frobenius_norm_sq(truncate(build_semiquantum(n, t), half))
        assert abs(f2 - n / 4) <= 1e-9 * n / 4


def test_deviation_curve_recorded():
    dev = semiquantum_deviation(256)
    assert len(dev) == 8
    assert dev[0] < 1e-12
    # frozen from a first run; B_t departs from B^t steadily up to the log-time
    expected = [0.0, 0.11807075, 0.1741855, 0.23436134, 0.30116591, 0.37546348, 0.45429582, 0.52943265]
    assert np.allclose(dev, expected, atol=1e-7)
    assert np.all(np.diff(dev) >= 0)
