import numpy as np
import pytest

from gausschan.exceptions import IllConditioned, NotSymplectic
from gausschan.linalg import is_symplectic, symplectic_form
from gausschan.semigroup import (
    EmbeddabilityStatus,
    embeddable_x,
    evolve,
    generator_from_log,
    hamiltonian_log,
    in_exp_sp,
    split_exp_sp,
    split_generators,
)
from tests.random_channels import random_symplectic


def test_unpaired_negative_eigenvalues_are_not_embeddable():
    verdict = embeddable_x(np.diag([-1.0, -2.0]))
    assert verdict.status is EmbeddabilityStatus.NO
    assert verdict.generator is None
    assert sorted(r.eigenvalue for r in verdict.reports) == pytest.approx([-2.0, -1.0])


def test_minus_identity_is_embeddable():
    verdict = embeddable_x(-np.identity(2))
    assert verdict.is_yes
    np.testing.assert_allclose(evolve(verdict.generator, 1.0).x, -np.identity(2), atol=1e-9)


def test_positive_diagonal_witness():
    x = np.diag([2.0, 0.5])
    verdict = embeddable_x(x)
    assert verdict.is_yes
    np.testing.assert_allclose(evolve(verdict.generator, 1.0).x, x, atol=1e-6)


def test_singular_x_is_not_embeddable():
    verdict = embeddable_x(np.diag([1.0, 0.0]))
    assert verdict.status is EmbeddabilityStatus.NO
    assert verdict.detail == "x is singular"


def test_witness_for_general_x(rng):
    for _ in range(10):
        x = np.identity(4) + 0.3 * rng.normal(size=(4, 4))
        verdict = embeddable_x(x)
        if verdict.is_yes:
            np.testing.assert_allclose(evolve(verdict.generator, 1.0).x, x, atol=1e-6)


def test_generator_from_log_reversible():
    sigma = symplectic_form(1)
    g = generator_from_log(np.pi * sigma, reversible=True)
    assert not g.a.any() and not g.b.any()
    np.testing.assert_allclose(g.h, -np.pi * np.identity(2))
    with pytest.raises(IllConditioned):
        generator_from_log(np.array([[0.5, 0.0], [0.0, 0.5]]), reversible=True)


def test_in_exp_sp_verdicts(rng):
    assert in_exp_sp(-np.identity(2)).status is EmbeddabilityStatus.INDETERMINATE
    assert embeddable_x(-np.identity(2)).is_yes

    p, _ = split_exp_sp(random_symplectic(rng, 2))
    verdict = in_exp_sp(p)
    assert verdict.is_yes
    assert not verdict.generator.a.any() and not verdict.generator.b.any()
    np.testing.assert_allclose(evolve(verdict.generator, 1.0).x, p, atol=1e-8)

    with pytest.raises(NotSymplectic):
        in_exp_sp(np.diag([2.0, 2.0]))


def test_symplectic_with_unpaired_negative_spectrum():
    s = np.diag([-2.0, -0.5])
    assert is_symplectic(s)
    assert in_exp_sp(s).status is EmbeddabilityStatus.NO


def test_split_exp_sp_factors(rng):
    for i in range(50):
        n = 1 + i % 3
        s = random_symplectic(rng, n)
        p, o = split_exp_sp(s)
        for factor in (p, o):
            sigma = symplectic_form(n)
            assert np.linalg.norm(factor @ sigma @ factor.T - sigma, 2) <= 1e-8
        assert np.linalg.norm(p @ o - s, 2) <= 1e-8
        np.testing.assert_allclose(p, p.T)
        np.testing.assert_allclose(o @ o.T, np.identity(2 * n), atol=1e-10)

        g_p, g_o = split_generators(s)
        np.testing.assert_allclose(evolve(g_p, 1.0).x, p, atol=1e-8)
        np.testing.assert_allclose(evolve(g_o, 1.0).x, o, atol=1e-8)


def test_hamiltonian_log_of_rotation():
    theta = 0.7
    rotation = np.array([[np.cos(theta), np.sin(theta)], [-np.sin(theta), np.cos(theta)]])
    log = hamiltonian_log(rotation)
    np.testing.assert_allclose(log, theta * symplectic_form(1), atol=1e-12)
    with pytest.raises(ValueError):
        hamiltonian_log(np.array([[1.0, 1.0], [0.0, 1.0]]))


@pytest.mark.parametrize(
    "s",
    [-np.identity(2), -np.identity(4), np.diag([-1.0, -1.0, 1.0, 1.0])],
)
def test_split_generators_handle_reflections(s):
    log = hamiltonian_log(s)
    n = s.shape[0] // 2
    sigma = symplectic_form(n)
    # Hamiltonian: log sigma^T is symmetric
    np.testing.assert_allclose(log @ sigma.T, (log @ sigma.T).T, atol=1e-12)

    g_p, g_o = split_generators(s)
    np.testing.assert_allclose(evolve(g_p, 1.0).x, np.identity(2 * n), atol=1e-10)
    np.testing.assert_allclose(evolve(g_o, 1.0).x, s, atol=1e-10)
    assert not evolve(g_o, 1.0).y.any()


def test_hamiltonian_log_of_minus_identity_is_a_half_turn():
    log = hamiltonian_log(-np.identity(2))
    np.testing.assert_allclose(np.abs(log), np.pi * np.abs(symplectic_form(1)), atol=1e-12)
