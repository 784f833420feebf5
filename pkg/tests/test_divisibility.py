import numpy as np
import pytest

from gausschan.channel import (
    EPSILON_CANDIDATES,
    GaussianChannel,
    channel_from_positive,
    class_compose,
    compose,
    cp_check,
    divide,
    is_reversible,
    kernel_projector,
    p_map,
)
from gausschan.exceptions import NotPSD, Reversible
from gausschan.semigroup import infdiv_necessary
from tests.random_channels import (
    random_channel_matrices,
    random_hermitian_psd,
    random_symplectic,
)


def _assert_valid_division(c, division):
    for factor in (division.left, division.right):
        assert cp_check(factor.x, factor.y)
        assert not is_reversible(factor)
    product = compose(division.left, division.right)
    scale = max(1.0, np.linalg.norm(c.x, 2), np.linalg.norm(c.y, 2))
    assert np.linalg.norm(product.x - c.x, 2) <= 1e-8 * scale
    assert np.linalg.norm(product.y - c.y, 2) <= 1e-8 * scale
    assert division.residual <= 1e-8


def test_epsilon_candidates_halve_from_one_half():
    assert EPSILON_CANDIDATES[0] == 0.5
    assert EPSILON_CANDIDATES[-1] == 2.0**-20
    assert len(EPSILON_CANDIDATES) == 20


def test_p_map_of_attenuation():
    p = p_map(GaussianChannel.attenuation(0.5)).p
    # y = 0.5 I and x sigma x^T - sigma = -0.5 sigma
    expected = 0.5 * np.identity(2) - 0.5j * np.array([[0.0, 1.0], [-1.0, 0.0]])
    np.testing.assert_allclose(p, expected)


def test_p_map_vanishes_exactly_on_reversible_channels(rng):
    for _ in range(50):
        n = int(rng.integers(1, 4))
        c = GaussianChannel.reversible(random_symplectic(rng, n, scale=0.3))
        assert np.linalg.norm(p_map(c).p, 2) <= 1e-9

        noisy = GaussianChannel(*random_channel_matrices(rng, n))
        assert not is_reversible(noisy)
        assert np.linalg.norm(p_map(noisy).p, 2) > 1e-3

    for n in (1, 2, 3):
        assert is_reversible(channel_from_positive(np.zeros((2 * n, 2 * n))))


def test_channel_from_positive_round_trip(rng):
    for _ in range(100):
        n = int(rng.integers(1, 4))
        p = random_hermitian_psd(rng, 2 * n)
        c = channel_from_positive(p)
        assert np.linalg.norm(p_map(c).p - p, 2) <= 1e-8 * max(1.0, np.linalg.norm(p, 2))


def test_channel_from_positive_rejects_non_psd():
    with pytest.raises(NotPSD):
        channel_from_positive(-np.identity(2))


def test_class_compose_matches_p_map_of_product(rng):
    c1 = GaussianChannel(*random_channel_matrices(rng, 2))
    c2 = GaussianChannel(*random_channel_matrices(rng, 2))
    lhs = class_compose(p_map(c1), c1.x, p_map(c2))
    np.testing.assert_allclose(lhs, p_map(compose(c1, c2)).p, atol=1e-10)


def test_divide_attenuation():
    c = GaussianChannel.attenuation(0.5)
    division = divide(c)
    assert division.branch == "positive_class"
    assert division.epsilon in EPSILON_CANDIDATES
    assert division.epsilon == EPSILON_CANDIDATES[division.attempts - 1]
    _assert_valid_division(c, division)


def test_divide_with_fixed_epsilon():
    c = GaussianChannel.attenuation(0.3)
    division = divide(c, epsilon=0.25)
    assert division.epsilon == 0.25 and division.attempts == 1
    _assert_valid_division(c, division)
    with pytest.raises(ValueError):
        divide(c, epsilon=1.5)


def test_divide_rank_deficient_uses_kernel_projector():
    c = GaussianChannel(np.diag([1.0, 0.0]), np.diag([0.5, 2.0]))
    division = divide(c)
    assert division.branch == "kernel_projector"
    np.testing.assert_allclose(division.right.x, np.identity(2))
    np.testing.assert_allclose(division.right.y, np.diag([0.0, 1.0]), atol=1e-12)
    _assert_valid_division(c, division)


def test_kernel_projector():
    x = np.diag([2.0, 0.0, 1.0, 0.0])
    np.testing.assert_allclose(kernel_projector(x), np.diag([0.0, 1.0, 0.0, 1.0]), atol=1e-12)


def test_divide_rejects_reversible(rng):
    with pytest.raises(Reversible):
        divide(GaussianChannel.identity(1))
    with pytest.raises(Reversible):
        divide(GaussianChannel.reversible(random_symplectic(rng, 2)))


def test_mirror_is_divisible_but_not_infinitesimal_divisible():
    mirror = GaussianChannel.phase_conjugating_mirror(1)
    assert not infdiv_necessary(mirror)
    division = divide(mirror)
    _assert_valid_division(mirror, division)


def test_random_channels_are_divisible(rng):
    for i in range(200):
        n = (1, 2, 3)[i % 3]
        singular = i < 20
        c = GaussianChannel(*random_channel_matrices(rng, n, singular=singular))
        assert not is_reversible(c)
        division = divide(c)
        if singular:
            assert division.branch == "kernel_projector"
        _assert_valid_division(c, division)
