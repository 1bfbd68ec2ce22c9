import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cptlab.errors import DegenerateDriveError, DomainError
from cptlab.model import (
    KET1,
    KET2,
    SystemParams,
    basis_state,
    dark_state,
    devectorize,
    mixing_angle,
    projector,
    trace_distance,
    validate_density,
    vec_index,
    vectorize,
)


def test_params_reject_negative_and_nonfinite():
    with pytest.raises(DomainError):
        SystemParams(gamma=-1.0, omega1=1.0, omega2=1.0)
    with pytest.raises(DomainError):
        SystemParams(gamma=1.0, omega1=math.nan, omega2=1.0)
    with pytest.raises(DomainError):
        SystemParams(gamma=1.0, omega1=1.0, omega2=1.0, delta1=math.inf)


def test_params_derived_quantities():
    p = SystemParams(gamma=7.0, omega1=3.0, omega2=4.0, phi1=0.5, phi2=0.2)
    assert p.omega == pytest.approx(5.0)
    assert p.phi == pytest.approx(0.3)
    assert p.on_resonance
    assert not p.replace(delta1=1.0).on_resonance
    assert p.replace(gamma=1.0).gamma == 1.0


def test_mixing_angle_limits():
    assert mixing_angle(1.0, 1.0) == pytest.approx(math.pi / 4)
    assert mixing_angle(0.0, 5.0) == 0.0
    assert mixing_angle(5.0, 0.0) == pytest.approx(math.pi / 2)
    with pytest.raises(DegenerateDriveError):
        mixing_angle(0.0, 0.0)


def test_dark_state_examples():
    d = dark_state(1.0, 1.0)
    np.testing.assert_allclose(d, [0, 1 / math.sqrt(2), -1 / math.sqrt(2)], atol=1e-15)
    np.testing.assert_allclose(dark_state(0.0, 3.0), KET1, atol=1e-15)
    np.testing.assert_allclose(dark_state(3.0, 0.0), -KET2, atol=1e-15)


@given(st.floats(0.01, 100), st.floats(0.01, 100), st.floats(-math.pi, math.pi))
def test_dark_state_normalised_and_orthogonal_to_excited(o1, o2, phi):
    d = dark_state(o1, o2, phi)
    assert np.vdot(d, d).real == pytest.approx(1.0, abs=1e-14)
    assert d[0] == 0


def test_vectorization_is_row_major_and_round_trips(rng):
    rho = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    v = vectorize(rho)
    assert v[vec_index(1, 2)] == rho[1, 2]
    np.testing.assert_array_equal(devectorize(v), rho)
    with pytest.raises(DomainError):
        vectorize(np.zeros((2, 2)))
    with pytest.raises(DomainError):
        devectorize(np.zeros(8))


def test_validate_density_flags_each_defect():
    good = basis_state("mixed")
    assert validate_density(good)
    assert not validate_density(2 * good).unit_trace
    bad = good.copy()
    bad[0, 1] = 0.1
    assert not validate_density(bad).hermitian
    neg = np.diag([1.5, -0.5, 0.0]).astype(complex)
    assert not validate_density(neg).positive


def test_basis_states_and_trace_distance():
    assert trace_distance(basis_state(1), basis_state("1")) == 0.0
    assert trace_distance(basis_state(1), basis_state(2)) == pytest.approx(1.0)
    assert trace_distance(projector(dark_state(1, 1)), basis_state(1)) == pytest.approx(
        math.sqrt(0.5)
    )
    with pytest.raises(DomainError):
        basis_state("3")
