"""Extended Chaplygin equation of state and the characteristic fields of the system.

    p(rho) = A * (rho / (1 - a*rho))**Gamma - B / rho**kappa

Every function accepts a scalar density or a numpy array of densities, so the
upwind scheme can evaluate a whole grid in one call.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from aw_rascle.utils.config import DENSITY_GUARD
from aw_rascle.utils.errors import DensityDomainError, ParameterError


Density = float | NDArray[np.float64]


@dataclass(frozen=True)
class EosParams:
    """The five EOS constants. A = 0 and a = 0 are admitted as exact values."""

    A: float
    a: float
    B: float
    Gamma: float
    kappa: float

    def __post_init__(self) -> None:
        values = {
            "A": self.A,
            "a": self.a,
            "B": self.B,
            "Gamma": self.Gamma,
            "kappa": self.kappa,
        }
        for name, value in values.items():
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
        if self.A < 0:
            raise ParameterError(f"A must be >= 0, got {self.A}")
        if self.a < 0:
            raise ParameterError(f"a must be >= 0, got {self.a}")
        if self.B <= 0:
            raise ParameterError(f"B must be > 0, got {self.B}")
        if not 1.0 <= self.Gamma <= 3.0:
            raise ParameterError(f"Gamma must lie in [1, 3], got {self.Gamma}")
        if not 0.0 < self.kappa <= 1.0:
            raise ParameterError(f"kappa must lie in (0, 1], got {self.kappa}")

    @property
    def rho_max(self) -> float:
        """Upper end of the density domain, 1/a (infinite when a = 0)."""
        return math.inf if self.a == 0 else 1.0 / self.a

    @property
    def rho_upper_guard(self) -> float:
        """Largest density used as a bisection end point."""
        return self.rho_max * (1.0 - DENSITY_GUARD)

    def with_pressure_constants(self, A: float, a: float) -> "EosParams":
        """Copy with a different (A, a) pair, keeping B, Gamma and kappa."""
        return EosParams(A=A, a=a, B=self.B, Gamma=self.Gamma, kappa=self.kappa)


@dataclass(frozen=True)
class State:
    """A (density, velocity) pair."""

    rho: float
    v: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rho) and math.isfinite(self.v)):
            raise DensityDomainError(f"state must be finite, got ({self.rho}, {self.v})")
        if self.rho <= 0:
            raise DensityDomainError(f"density must be > 0, got {self.rho}")


def check_density(p: EosParams, rho: ArrayLike) -> None:
    """Raise DensityDomainError unless every rho lies in (0, 1/a)."""
    values = np.asarray(rho, dtype=float)
    if np.any(~np.isfinite(values)) or np.any(values <= 0):
        raise DensityDomainError(f"density must be finite and > 0, got {rho!r}")
    if p.a > 0 and np.any(values >= p.rho_max):
        raise DensityDomainError(
            f"density must be < 1/a = {p.rho_max:.17g}, got {rho!r}"
        )


def check_state(p: EosParams, s: State) -> State:
    check_density(p, s.rho)
    return s


def validate_initial_state(p: EosParams, s: State) -> State:
    """Admissibility of user-supplied data: density in (0, 1/a) and v >= 0."""
    check_state(p, s)
    if s.v < 0:
        raise DensityDomainError(f"initial velocity must be >= 0, got {s.v}")
    return s


def pressure(p: EosParams, rho: Density) -> Density:
    check_density(p, rho)
    chaplygin = p.B / np.power(rho, p.kappa)
    if p.A == 0:
        return -chaplygin
    return p.A * np.power(rho / (1.0 - p.a * rho), p.Gamma) - chaplygin


def pressure_derivative(p: EosParams, rho: Density) -> Density:
    """p'(rho); strictly positive on the admissible domain."""
    check_density(p, rho)
    chaplygin = p.kappa * p.B / np.power(rho, p.kappa + 1.0)
    if p.A == 0:
        return chaplygin
    return (
        p.Gamma
        * p.A
        * np.power(rho, p.Gamma - 1.0)
        / np.power(1.0 - p.a * rho, p.Gamma + 1.0)
        + chaplygin
    )


def pressure_second_derivative(p: EosParams, rho: Density) -> Density:
    check_density(p, rho)
    chaplygin = -p.kappa * (p.kappa + 1.0) * p.B / np.power(rho, p.kappa + 2.0)
    if p.A == 0:
        return chaplygin
    return (
        p.Gamma
        * p.A
        * np.power(rho, p.Gamma - 2.0)
        * (p.Gamma - 1.0 + 2.0 * p.a * rho)
        / np.power(1.0 - p.a * rho, p.Gamma + 2.0)
        + chaplygin
    )


def lambda1(p: EosParams, s: State) -> float:
    """Genuinely nonlinear speed v - rho*p'(rho)."""
    return float(s.v - s.rho * pressure_derivative(p, s.rho))


def lambda2(s: State) -> float:
    """Linearly degenerate speed v."""
    return float(s.v)


def rarefaction_slope(p: EosParams, rho: Density) -> Density:
    """d(lambda1)/d(rho) along the curve v + p(rho) = const.

    Equals -2p' - rho*p''; never positive, and negative unless A = 0 and kappa = 1.
    """
    check_density(p, rho)
    chaplygin = (p.kappa * p.kappa - p.kappa) * p.B / np.power(rho, p.kappa + 1.0)
    if p.A == 0:
        return chaplygin
    return (
        -(p.Gamma * p.Gamma + p.Gamma)
        * p.A
        * np.power(rho, p.Gamma - 1.0)
        / np.power(1.0 - p.a * rho, p.Gamma + 2.0)
        + chaplygin
    )
