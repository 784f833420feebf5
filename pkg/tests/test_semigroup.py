import math

import numpy as np
import pytest

from gausschan.channel import cp_check
from gausschan.exceptions import (
    Indeterminate,
    NotAntisymmetric,
    NotPSD,
    NotSymmetric,
    SingularKroneckerSum,
)
from gausschan.linalg import Tolerance, symplectic_form
from gausschan.semigroup import (
    Generator,
    bounded_noise_check,
    evolve,
    generator_from_drift,
    invariant_state,
    lindblad_export,
    perturb_to_simple_form,
    semigroup_law_check,
    simple_form,
)
from tests.random_channels import quadrature_noise, random_generator_matrices

SQUEEZING_NOISE = np.array([[1.0, 0.5], [0.5, 1.0]])


def test_attenuation_semigroup_closed_form():
    g = Generator.attenuation()
    np.testing.assert_allclose(g.drift, -np.identity(2))
    np.testing.assert_allclose(g.noise_rate, 2.0 * np.identity(2))
    for t in (0.5, 1.0, 2.0):
        c = evolve(g, t)
        np.testing.assert_allclose(c.x, math.exp(-t) * np.identity(2), atol=1e-9)
        np.testing.assert_allclose(c.y, (1 - math.exp(-2 * t)) * np.identity(2), atol=1e-9)

    form = simple_form(g)
    assert form.unique
    np.testing.assert_allclose(form.anchor, np.identity(2), atol=1e-9)
    state = invariant_state(form)
    assert state is not None
    np.testing.assert_allclose(state.cov, np.identity(2), atol=1e-9)
    assert bounded_noise_check(g)[0]


def test_amplification_semigroup_closed_form():
    g = Generator.amplification()
    for t in (0.5, 1.0, 2.0):
        c = evolve(g, t)
        np.testing.assert_allclose(c.x, math.exp(t) * np.identity(2), atol=1e-9)
        np.testing.assert_allclose(c.y, (math.exp(2 * t) - 1) * np.identity(2), atol=1e-9)

    form = simple_form(g)
    np.testing.assert_allclose(form.anchor, -np.identity(2), atol=1e-9)
    assert invariant_state(form) is None
    assert bounded_noise_check(g) == (False, None)


def test_evolve_at_zero_is_identity():
    c = evolve(Generator.attenuation(n=2), 0.0)
    np.testing.assert_allclose(c.x, np.identity(4))
    np.testing.assert_allclose(c.y, np.zeros((4, 4)))
    with pytest.raises(ValueError):
        evolve(Generator.attenuation(), -1.0)


def test_squeezing_with_correlated_noise_has_no_simple_form():
    g = Generator.squeezing(SQUEEZING_NOISE)
    np.testing.assert_allclose(g.drift, np.diag([1.0, -1.0]))
    with pytest.raises(SingularKroneckerSum):
        simple_form(g)
    with pytest.raises(Indeterminate):
        bounded_noise_check(g)

    perturbed, form, delta = perturb_to_simple_form(g, delta=1e-3)
    assert delta == 1e-3
    assert form.unique
    for t in (0.5, 1.0):
        np.testing.assert_allclose(form.noise_at(t), evolve(perturbed, t).y, atol=1e-6)


def test_squeezing_with_diagonal_noise_has_simple_form():
    form = simple_form(Generator.squeezing(np.identity(2)))
    assert not form.unique
    np.testing.assert_allclose(form.anchor, np.diag([-1.0, 1.0]), atol=1e-9)


def test_generator_validation():
    sigma = symplectic_form(1)
    with pytest.raises(NotAntisymmetric):
        Generator(np.identity(2), np.identity(2), np.zeros((2, 2)))
    with pytest.raises(NotSymmetric):
        Generator(np.zeros((2, 2)), sigma + np.identity(2), np.zeros((2, 2)))
    with pytest.raises(NotPSD):
        Generator(2.0 * sigma, np.identity(2), np.zeros((2, 2)))


def test_generator_from_drift_recovers_generator(rng):
    a, b, h = random_generator_matrices(rng, 2)
    g = Generator(a, b, h)
    back = generator_from_drift(g.drift, g.noise_rate)
    np.testing.assert_allclose(back.a, g.a, atol=1e-12)
    np.testing.assert_allclose(back.b, g.b, atol=1e-12)
    np.testing.assert_allclose(back.h, g.h, atol=1e-12)


def test_noise_integral_matches_quadrature(rng):
    for i in range(50):
        n = 1 + i % 3
        g = Generator(*random_generator_matrices(rng, n))
        t = float(rng.uniform(0.1, 2.0))
        c = evolve(g, t)
        oracle = quadrature_noise(g.drift, g.noise_rate, t)
        scale = max(1.0, np.linalg.norm(oracle, 2))
        assert np.linalg.norm(c.y - oracle, 2) <= 1e-6 * scale
        assert cp_check(c.x, c.y)


def test_lindblad_export_factorizes_noise(rng):
    h, rows = lindblad_export(Generator.attenuation())
    np.testing.assert_allclose(h, np.zeros((2, 2)))
    # b + i a = I + i sigma has rank one
    assert rows.shape == (1, 2)
    np.testing.assert_allclose(
        rows.conj().T @ rows, np.identity(2) + 1j * symplectic_form(1), atol=1e-12
    )

    g = Generator(*random_generator_matrices(rng, 2))
    _, rows = lindblad_export(g)
    np.testing.assert_allclose(rows.conj().T @ rows, g.b + 1j * g.a, atol=1e-9)

    _, rows = lindblad_export(Generator.hamiltonian(np.identity(2)))
    assert rows.shape == (0, 2)


def mode_mixing_generator():
    a = np.zeros((4, 4))
    a[0, 3], a[3, 0] = 1.0, -1.0
    return Generator(a, np.diag([1.0, 0.0, 0.0, 1.0]), np.zeros((4, 4)))


def test_mode_mixing_generator_stays_completely_positive():
    g = mode_mixing_generator()
    np.testing.assert_allclose(g.noise_rate, 2.0 * np.diag([1.0, 0.0, 0.0, 1.0]))
    for t in (0.05, 0.1, 0.5, 1.0, 3.0):
        c = evolve(g, t)
        assert cp_check(c.x, c.y)
        oracle = quadrature_noise(g.drift, g.noise_rate, t)
        np.testing.assert_allclose(c.y, oracle, atol=1e-8)

    back = generator_from_drift(g.drift, g.noise_rate)
    np.testing.assert_allclose(back.a, g.a, atol=1e-12)
    np.testing.assert_allclose(back.b, g.b, atol=1e-12)


def test_evolve_is_completely_positive_on_a_time_grid(rng):
    tol = Tolerance(abs_eps=1e-9, rel_eps=1e-7)
    for i in range(10):
        g = Generator(*random_generator_matrices(rng, 1 + i % 2, scale=0.3))
        for t in np.linspace(0.0, 5.0, 11):
            c = evolve(g, float(t), tol)
            assert cp_check(c.x, c.y, tol)


def test_semigroup_law_on_random_generators(rng):
    tol = Tolerance.uniform(1e-7)
    for i in range(50):
        g = Generator(*random_generator_matrices(rng, 1 + i % 3))
        for t, s in rng.uniform(0.0, 1.0, size=(20, 2)):
            assert semigroup_law_check(g, float(t), float(s), tol)


def test_rotation_has_zero_anchor_and_no_invariant_state():
    g = Generator.hamiltonian(np.identity(2))
    np.testing.assert_allclose(g.drift, -symplectic_form(1))
    form = simple_form(g)
    assert not form.unique
    np.testing.assert_allclose(form.anchor, np.zeros((2, 2)), atol=1e-12)
    for t in (0.5, 1.0, 2.0):
        np.testing.assert_allclose(form.noise_at(t), evolve(g, t).y, atol=1e-12)
    bounded, anchor = bounded_noise_check(g)
    assert bounded
    np.testing.assert_allclose(anchor, np.zeros((2, 2)), atol=1e-12)
    assert invariant_state(form) is None


@pytest.mark.parametrize("delta", [1e-3, 1e-4])
def test_perturbation_moves_the_flow_by_order_delta(delta):
    g = Generator.squeezing(SQUEEZING_NOISE)
    perturbed, _, used = perturb_to_simple_form(g, delta=delta)
    assert used == delta
    for t in (0.5, 1.0):
        exact, near = evolve(g, t), evolve(perturbed, t)
        assert np.linalg.norm(near.x - exact.x, 2) <= 10.0 * delta
        assert np.linalg.norm(near.y - exact.y, 2) <= 100.0 * delta
