import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nmrjj import DomainError, SpinNumber, coherent_state, deviation_density, expectation, spin_operators
from nmrjj.spin import CoherentAngles

from oracles import coherent_amplitudes, spin_matrices

SPINS = [0.5, 1, 1.5, 3.5]


def test_spin_number():
    s = SpinNumber(7)
    assert s.I == 3.5 and s.dim == 8
    assert SpinNumber.from_value(3.5) == s
    assert list(s.m_values) == [3.5, 2.5, 1.5, 0.5, -0.5, -1.5, -2.5, -3.5]
    assert str(s) == "7/2"
    for bad in (0, -1, 2.5, True):
        with pytest.raises(DomainError):
            SpinNumber(bad)
    with pytest.raises(DomainError):
        SpinNumber.from_value(0.3)


def test_spin_half_is_pauli_over_two():
    ops = spin_operators(0.5)
    assert np.array_equal(ops.Iz, np.diag([0.5, -0.5]))
    assert np.allclose(ops.Ix, [[0, 0.5], [0.5, 0]], atol=0)
    assert np.allclose(ops.Iy, [[0, -0.5j], [0.5j, 0]], atol=0)


def test_spin_one_casimir():
    ops = spin_operators(1)
    assert np.array_equal(np.diag(ops.Iz).real, [1, 0, -1])
    assert np.abs(ops.Isq - 2 * np.eye(3)).max() < 1e-12


def test_spin_seven_halves_ladder_entry():
    # <5/2| Ix |7/2> = sqrt(I(I+1) - m(m-1)) / 2 with m = 7/2
    Ix = spin_operators(3.5).Ix
    expected = math.sqrt(3.5 * 4.5 - 3.5 * 2.5) / 2
    assert expected == pytest.approx(math.sqrt(7) / 2)
    assert Ix[1, 0].real == pytest.approx(expected, abs=1e-15)
    assert Ix[1, 0] == pytest.approx(1.3229, abs=5e-5)


@pytest.mark.parametrize("I", SPINS)
def test_operators_match_loop_oracle(I):
    ops = spin_operators(I)
    for ours, ref in zip(ops[:3], spin_matrices(I)):
        assert np.abs(ours - ref).max() < 1e-14


@pytest.mark.parametrize("I", SPINS)
def test_commutators_and_casimir(I):
    Ix, Iy, Iz, Isq = spin_operators(I)
    comm = lambda a, b: a @ b - b @ a
    assert np.abs(comm(Ix, Iy) - 1j * Iz).max() < 1e-12
    assert np.abs(comm(Iy, Iz) - 1j * Ix).max() < 1e-12
    assert np.abs(comm(Iz, Ix) - 1j * Iy).max() < 1e-12
    assert np.abs(Isq - I * (I + 1) * np.eye(len(Iz))).max() < 1e-12


def test_operators_are_read_only():
    with pytest.raises(ValueError):
        spin_operators(1).Iz[0, 0] = 5


def test_coherent_poles():
    north = coherent_state(3.5, 0.0, 1.234)
    assert abs(abs(north[0]) - 1) < 1e-15
    rho = deviation_density(coherent_state(3.5, math.pi, 0.0))
    assert expectation(spin_operators(3.5).Iz, rho) == pytest.approx(-3.5, abs=1e-12)


@pytest.mark.parametrize("theta, z", [(math.pi / 4, 2.4749), (3 * math.pi / 4, -2.4749)])
def test_paper_initial_states(theta, z):
    ops = spin_operators(3.5)
    rho = deviation_density(coherent_state(3.5, theta, math.pi))
    assert expectation(ops.Iz, rho) == pytest.approx(z, abs=1e-4)
    assert expectation(ops.Iz, rho) == pytest.approx(3.5 * math.cos(theta), abs=1e-12)
    assert expectation(ops.Ix, rho) == pytest.approx(-3.5 * math.sin(theta), abs=1e-12)


@pytest.mark.parametrize("I", SPINS)
@pytest.mark.parametrize("theta, phi", [(0.3, 0.0), (math.pi / 4, math.pi), (2.0, 5.5), (math.pi, 1.0)])
def test_coherent_state_matches_wigner_d(I, theta, phi):
    assert np.abs(coherent_state(I, theta, phi) - coherent_amplitudes(I, theta, phi)).max() < 1e-12


@settings(max_examples=60, deadline=None)
@given(
    I=st.sampled_from(SPINS),
    theta=st.floats(0, math.pi),
    phi=st.floats(0, 2 * math.pi, exclude_max=True),
)
def test_coherent_expectations_on_sphere(I, theta, phi):
    Ix, Iy, Iz, _ = spin_operators(I)
    rho = deviation_density(coherent_state(I, theta, phi))
    got = np.array([expectation(op, rho) for op in (Ix, Iy, Iz)]) / I
    want = [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
    assert np.abs(got - want).max() < 1e-10
    assert np.trace(rho).real == pytest.approx(1, abs=1e-12)
    assert np.trace(rho @ rho).real == pytest.approx(1, abs=1e-10)
    assert np.abs(rho - rho.conj().T).max() < 1e-12
    assert np.linalg.eigvalsh(rho).min() > -1e-12


def test_angle_domain():
    with pytest.raises(DomainError):
        CoherentAngles(-0.1, 0)
    with pytest.raises(DomainError):
        coherent_state(1, 0.5, 2 * math.pi)
    with pytest.raises(DomainError):
        coherent_state(1, 4.0, 0)


def test_deviation_density_examples():
    e0 = np.array([1, 0], complex)
    assert np.array_equal(deviation_density(e0), [[1, 0], [0, 0]])
    plus = np.array([1, 1]) / math.sqrt(2)
    assert np.allclose(deviation_density(plus), 0.5 * np.ones((2, 2)), atol=1e-15)
    with pytest.raises(DomainError):
        deviation_density(np.array([1.0, 1.0]))


def test_expectation_errors_and_symmetry():
    ops = spin_operators(3.5)
    rho = deviation_density(coherent_state(3.5, 0, 0))
    assert expectation(ops.Iz, rho) == pytest.approx(3.5, abs=1e-12)
    assert expectation(ops.Ix, rho) == pytest.approx(0, abs=1e-12)
    with pytest.raises(DomainError):
        expectation(spin_operators(1).Iz, rho)
    with pytest.raises(DomainError):
        expectation(ops.Ix + 1j * ops.Iy, rho)
