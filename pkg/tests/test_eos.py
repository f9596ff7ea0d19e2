"""Tests for the equation of state and characteristic speeds."""

import math

import numpy as np
import pytest

from aw_rascle.tools.eos import (
    EosParams,
    State,
    lambda1,
    lambda2,
    pressure,
    pressure_derivative,
    pressure_second_derivative,
    rarefaction_slope,
    validate_initial_state,
)
from aw_rascle.utils.errors import DensityDomainError, ParameterError


@pytest.fixture
def case_i_params() -> EosParams:
    """Extended Chaplygin constants of the first delta-shock experiment."""
    return EosParams(A=1.0, a=0.01, B=1.0, Gamma=2.0, kappa=0.25)


@pytest.fixture
def quadratic_params() -> EosParams:
    """p = rho^2 - 1/rho, so p'(1) = 3."""
    return EosParams(A=1.0, a=0.0, B=1.0, Gamma=2.0, kappa=1.0)


def test_pressure_generalized_chaplygin() -> None:
    """Test A = 0 reduces to -B/rho^kappa."""
    params = EosParams(A=0.0, a=0.0, B=1.0, Gamma=2.0, kappa=1.0)
    assert pressure(params, 1.0) == pytest.approx(-1.0)


def test_pressure_cancellation(quadratic_params: EosParams) -> None:
    """Test the two pressure terms cancel at rho = 1."""
    assert pressure(quadratic_params, 1.0) == pytest.approx(0.0, abs=1e-15)


def test_pressure_van_der_waals_term(case_i_params: EosParams) -> None:
    """Test direct evaluation with the excluded-volume factor."""
    expected = (1.0 / 0.99) ** 2 - 1.0
    assert pressure(case_i_params, 1.0) == pytest.approx(expected, abs=1e-12)
    assert pressure(case_i_params, 1.0) == pytest.approx(0.020304, abs=1e-6)


def test_pressure_accepts_arrays(case_i_params: EosParams) -> None:
    """Test array input matches pointwise evaluation."""
    rho = np.array([0.5, 1.0, 2.0])
    values = pressure(case_i_params, rho)
    assert isinstance(values, np.ndarray)
    assert values == pytest.approx([float(pressure(case_i_params, r)) for r in rho])


def test_pressure_derivative_examples(quadratic_params: EosParams) -> None:
    """Test p' against hand-computed values."""
    assert pressure_derivative(quadratic_params, 1.0) == pytest.approx(3.0, rel=1e-12)
    chaplygin = EosParams(A=0.0, a=0.0, B=1.0, Gamma=2.0, kappa=0.5)
    assert pressure_derivative(chaplygin, 4.0) == pytest.approx(0.0625, rel=1e-12)


def test_pressure_derivative_matches_finite_differences(case_i_params: EosParams) -> None:
    """Test p' against central differences at random admissible densities."""
    rng = np.random.default_rng(7)
    for rho in rng.uniform(0.1, 90.0, size=100):
        h = 1e-6 * rho
        fd = (pressure(case_i_params, rho + h) - pressure(case_i_params, rho - h)) / (2 * h)
        exact = pressure_derivative(case_i_params, rho)
        assert exact > 0
        assert abs(fd - exact) / exact < 1e-5


def test_pressure_is_increasing(case_i_params: EosParams) -> None:
    """Test p is strictly increasing across the density domain."""
    rho = np.linspace(1e-3, 99.0, 2000)
    assert np.all(np.diff(pressure(case_i_params, rho)) > 0)


def test_pressure_diverges_at_domain_ends(case_i_params: EosParams) -> None:
    """Test the sign change between the vacuum and the van der Waals pole."""
    rho_max = 1.0 / case_i_params.a
    assert pressure(case_i_params, 1e-8) < 0
    assert pressure(case_i_params, rho_max - 1e-8 * rho_max) > 0


@pytest.mark.parametrize("rho", [0.0, -1.0, 100.0, 150.0, math.inf])
def test_density_outside_domain_rejected(case_i_params: EosParams, rho: float) -> None:
    """Test densities outside (0, 1/a) raise DensityDomainError."""
    with pytest.raises(DensityDomainError):
        pressure(case_i_params, rho)


def test_pressure_derivative_domain_error(case_i_params: EosParams) -> None:
    """Test p' shares the pressure's domain check."""
    with pytest.raises(DensityDomainError):
        pressure_derivative(case_i_params, 100.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"A": -1.0, "a": 0.01, "B": 1.0, "Gamma": 2.0, "kappa": 0.5},
        {"A": 1.0, "a": -0.01, "B": 1.0, "Gamma": 2.0, "kappa": 0.5},
        {"A": 1.0, "a": 0.01, "B": 0.0, "Gamma": 2.0, "kappa": 0.5},
        {"A": 1.0, "a": 0.01, "B": 1.0, "Gamma": 0.5, "kappa": 0.5},
        {"A": 1.0, "a": 0.01, "B": 1.0, "Gamma": 3.5, "kappa": 0.5},
        {"A": 1.0, "a": 0.01, "B": 1.0, "Gamma": 2.0, "kappa": 0.0},
        {"A": 1.0, "a": 0.01, "B": 1.0, "Gamma": 2.0, "kappa": 1.5},
        {"A": math.nan, "a": 0.01, "B": 1.0, "Gamma": 2.0, "kappa": 0.5},
    ],
)
def test_invalid_parameters_rejected(kwargs: dict[str, float]) -> None:
    """Test each out-of-range EOS constant is rejected."""
    with pytest.raises(ParameterError):
        EosParams(**kwargs)


def test_parameter_bounds_inclusive() -> None:
    """Test the closed ends of the Gamma and kappa ranges are admitted."""
    EosParams(A=0.0, a=0.0, B=1.0, Gamma=1.0, kappa=1.0)
    EosParams(A=1.0, a=0.5, B=1.0, Gamma=3.0, kappa=1.0)


def test_rho_max() -> None:
    assert EosParams(A=1.0, a=0.01, B=1.0, Gamma=2.0, kappa=0.5).rho_max == pytest.approx(100.0)
    assert EosParams(A=1.0, a=0.0, B=1.0, Gamma=2.0, kappa=0.5).rho_max == math.inf


def test_state_rejects_non_positive_density() -> None:
    """Test State rejects zero density and non-finite velocity."""
    with pytest.raises(DensityDomainError):
        State(rho=0.0, v=1.0)
    with pytest.raises(DensityDomainError):
        State(rho=1.0, v=math.nan)


def test_initial_state_needs_non_negative_velocity(case_i_params: EosParams) -> None:
    """Test initial data must have v >= 0."""
    validate_initial_state(case_i_params, State(1.0, 0.0))
    with pytest.raises(DensityDomainError):
        validate_initial_state(case_i_params, State(1.0, -0.1))


def test_characteristic_speeds(quadratic_params: EosParams) -> None:
    """Test lambda1 = v - rho p' and lambda2 = v."""
    s = State(rho=1.0, v=5.0)
    assert lambda1(quadratic_params, s) == pytest.approx(2.0)
    assert lambda2(s) == 5.0


def test_strict_hyperbolicity(case_i_params: EosParams) -> None:
    """Test lambda1 < lambda2 at random admissible states."""
    rng = np.random.default_rng(11)
    for rho, v in zip(rng.uniform(1e-3, 99.9, 200), rng.uniform(0.0, 20.0, 200)):
        s = State(rho=float(rho), v=float(v))
        assert lambda1(case_i_params, s) < lambda2(s)


def test_lambda1_decreases_towards_vacuum() -> None:
    """Test lambda1 -> -infinity as rho -> 0 for the Chaplygin pressure."""
    params = EosParams(A=0.0, a=0.0, B=1.0, Gamma=2.0, kappa=0.5)
    speeds = [lambda1(params, State(rho=rho, v=1.0)) for rho in (1e-2, 1e-4, 1e-6)]
    assert speeds[0] > speeds[1] > speeds[2]
    assert speeds[2] < -100


def test_rarefaction_slope_examples(quadratic_params: EosParams) -> None:
    """Test the rarefaction slope closed form on simple pressures."""
    assert rarefaction_slope(quadratic_params, 1.0) == pytest.approx(-6.0)
    linear = EosParams(A=0.0, a=0.0, B=1.0, Gamma=2.0, kappa=1.0)
    assert rarefaction_slope(linear, 3.7) == 0.0
    half = EosParams(A=0.0, a=0.0, B=1.0, Gamma=2.0, kappa=0.5)
    assert rarefaction_slope(half, 1.0) == pytest.approx(-0.25)


def test_rarefaction_slope_matches_second_derivative(case_i_params: EosParams) -> None:
    """Test the closed form against -2p' - rho p'' with p'' by finite differences."""
    for rho in np.linspace(0.2, 95.0, 40):
        h = 1e-6 * rho
        fd_second = (
            pressure_derivative(case_i_params, rho + h)
            - pressure_derivative(case_i_params, rho - h)
        ) / (2 * h)
        assert fd_second == pytest.approx(
            pressure_second_derivative(case_i_params, rho), rel=1e-5
        )
        expected = -2 * pressure_derivative(case_i_params, rho) - rho * fd_second
        closed = rarefaction_slope(case_i_params, rho)
        assert closed < 0
        assert abs(closed - expected) / abs(expected) < 1e-4


def test_rarefaction_slope_matches_lambda1_along_curve(quadratic_params: EosParams) -> None:
    """Test d(lambda1)/d(rho) along v = const - p(rho) by finite differences."""
    const = 5.0 + float(pressure(quadratic_params, 1.0))

    def speed(rho: float) -> float:
        v = const - float(pressure(quadratic_params, rho))
        return lambda1(quadratic_params, State(rho=rho, v=v))

    h = 1e-6
    fd = (speed(1.0 + h) - speed(1.0 - h)) / (2 * h)
    assert fd == pytest.approx(-6.0, rel=1e-6)
