import numpy as np
import pytest

from steerlab import linalg as la
from steerlab.assemblage import Assemblage, lhs_reconstruct, steer, validate_assemblage
from steerlab.errors import DimensionError
from steerlab.measurements import noisy, parent_povm, projective
from steerlab.states import DensityMatrix, make_state, random_state

X, Y, Z = np.eye(3)


def test_ghz_sigma_z_conditionals():
    a = steer(make_state("ghz"), [projective(Z), projective(X)])
    p00 = np.zeros((4, 4)); p00[0, 0] = 0.5
    p11 = np.zeros((4, 4)); p11[3, 3] = 0.5
    assert np.allclose(a[(1, 0)], p00, atol=1e-15)
    assert np.allclose(a[(-1, 0)], p11, atol=1e-15)


def test_ghz_sigma_x_conditionals_are_bell_states():
    a = steer(make_state("ghz"), [projective(X), projective(Y)])
    phi_plus = make_state("bell:phi+").matrix
    phi_minus = make_state("bell:phi-").matrix
    assert np.allclose(a[(1, 0)], phi_plus / 2, atol=1e-15)
    assert np.allclose(a[(-1, 0)], phi_minus / 2, atol=1e-15)


def test_product_state_is_unsteerable(rng):
    rab = random_state(rng, 2).matrix
    rc = random_state(rng, 1).matrix
    rho = DensityMatrix(la.kron(rab, rc), (2, 2, 2))
    povms = [noisy(X, 0.9), noisy(Y, 0.4)]
    a = steer(rho, povms)
    for z in (0, 1):
        for c in (1, -1):
            p = np.trace(rc @ povms[z].effect(c)).real
            assert np.allclose(a[(c, z)], p * rab, atol=1e-14)


def test_trivial_measurement_halves_marginal():
    rho = make_state("ghz")
    a = steer(rho, [noisy(X, 0), noisy(Y, 0)])
    half = rho.reduced([0, 1]) / 2
    for k in a.entries:
        assert np.allclose(a[k], half, atol=1e-15)


def test_reconstruction_ghz_eta_06():
    rho = make_state("ghz")
    pair = [noisy(X, 0.6), noisy(Y, 0.6)]
    assert steer(rho, pair).max_deviation(lhs_reconstruct(rho, parent_povm(*pair))) <= 1e-12


def test_reconstruction_eta_zero():
    rho = make_state("noisy_ghz", 0.7)
    a = lhs_reconstruct(rho, parent_povm(noisy(X, 0), noisy(Y, 0)))
    for k in a.entries:
        assert np.allclose(a[k], rho.reduced([0, 1]) / 2, atol=1e-15)


@pytest.mark.parametrize("eta", [0.1, 0.5, 0.7, 1 / np.sqrt(2)])
@pytest.mark.parametrize("v", np.linspace(0, 1, 6))
def test_reconstruction_over_grid(eta, v):
    rho = make_state("noisy_ghz", v)
    pair = [noisy(X, eta), noisy(-Y, eta)]
    a = steer(rho, pair)
    assert a.max_deviation(lhs_reconstruct(rho, parent_povm(*pair))) <= 1e-12
    for z in (0, 1):
        assert np.max(np.abs(a[(1, z)] + a[(-1, z)] - rho.reduced([0, 1]))) <= 1e-12


def test_random_assemblages_valid(rng):
    for _ in range(100):
        rho = random_state(rng, 3)
        povms = [noisy(v / np.linalg.norm(v), rng.uniform()) for v in rng.normal(size=(2, 3))]
        assert validate_assemblage(steer(rho, povms)).ok(1e-10)


def test_corrupted_assemblage_reported():
    a = steer(make_state("ghz"), [projective(X), projective(Y)])
    entries = dict(a.entries)
    entries[(1, 0)] = entries[(1, 0)] - 0.3 * np.eye(4)
    rep = validate_assemblage(Assemblage(entries))
    assert rep.min_eigenvalue < -0.1
    assert not rep.ok()


def test_uniform_assemblage_passes():
    rho = make_state("noisy_ghz", 0.3)
    assert validate_assemblage(steer(rho, [noisy(X, 0), noisy(Z, 0)])).ok()


def test_two_qubit_state_rejected():
    with pytest.raises(DimensionError):
        steer(make_state("singlet"), [projective(X), projective(Y)])
