import numpy as np
import pytest

from gausschan.channel import (
    GaussianChannel,
    compose,
    idempotent_normal_form,
    is_idempotent,
    symplectic_conjugate,
)
from gausschan.exceptions import DegenerateNoise, NotIdempotent
from gausschan.linalg import is_symplectic
from tests.random_channels import random_symplectic

CASES = [
    (1, 0, [1.0]),
    (1, 0, [2.5]),
    (1, 1, []),
    (2, 0, [1.0, 2.5]),
    (2, 1, [2.5]),
    (2, 1, [1.0]),
]


def normal_form_channel(n, k, noise):
    x = np.diag([1.0] * (2 * k) + [0.0] * (2 * (n - k)))
    y = np.diag([0.0] * (2 * k) + [v for v in noise for _ in range(2)])
    return GaussianChannel(x, y)


@pytest.mark.parametrize("n,k,noise", CASES)
def test_normal_form_of_canonical_idempotent(n, k, noise):
    c = normal_form_channel(n, k, noise)
    assert is_idempotent(c)
    form = idempotent_normal_form(c)
    assert form.k == k
    assert sorted(form.noise) == pytest.approx(sorted(noise), abs=1e-6)
    assert is_symplectic(form.s)


@pytest.mark.parametrize("n,k,noise", CASES)
def test_normal_form_survives_symplectic_conjugation(rng, n, k, noise):
    for _ in range(5):
        s = random_symplectic(rng, n, scale=0.4)
        c = symplectic_conjugate(normal_form_channel(n, k, noise), s)
        assert is_idempotent(c)
        form = idempotent_normal_form(c)
        assert form.k == k
        assert sorted(form.noise) == pytest.approx(sorted(noise), abs=1e-6)

        target_x = np.diag([1.0] * (2 * k) + [0.0] * (2 * (n - k)))
        np.testing.assert_allclose(form.s @ c.x @ np.linalg.inv(form.s), target_x, atol=1e-6)


def test_non_idempotent_channels():
    att = GaussianChannel.attenuation(0.5)
    assert not is_idempotent(att)
    with pytest.raises(NotIdempotent):
        idempotent_normal_form(att)


@pytest.mark.parametrize("n,k,noise", CASES)
def test_idempotent_channels_are_closed_under_composition(rng, n, k, noise):
    s = random_symplectic(rng, n, scale=0.4)
    c = symplectic_conjugate(normal_form_channel(n, k, noise), s)
    square = compose(c, c)
    np.testing.assert_allclose(square.x, c.x, atol=1e-9)
    np.testing.assert_allclose(square.y, c.y, atol=1e-9)


@pytest.mark.parametrize("n", [1, 2])
def test_conjugation_preserves_idempotency_both_ways(rng, n):
    for _ in range(5):
        s = random_symplectic(rng, n, scale=0.4)
        s_inv = np.linalg.inv(s)
        idempotent = normal_form_channel(n, n - 1, [2.5])
        assert is_idempotent(symplectic_conjugate(idempotent, s))

        attenuation = GaussianChannel.attenuation(0.5, n=n)
        conj = symplectic_conjugate(attenuation, s)
        assert not is_idempotent(conj)
        back = symplectic_conjugate(conj, s_inv)
        np.testing.assert_allclose(back.x, attenuation.x, atol=1e-9)
        assert not is_idempotent(back)


def test_discarded_modes_without_noise_have_no_normal_form():
    # not CP: no noise on the discarded mode
    c = GaussianChannel._trusted(np.diag([1.0, 1.0, 0.0, 0.0]), np.zeros((4, 4)))
    assert is_idempotent(c)
    with pytest.raises(DegenerateNoise):
        idempotent_normal_form(c)
