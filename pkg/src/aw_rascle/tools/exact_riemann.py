"""Exact self-similar Riemann solution (S+J or R+J) for two-state initial data."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from typing import TypedDict

import numpy as np
from numpy.typing import NDArray
from scipy import optimize

from aw_rascle.tools.eos import (
    Density,
    EosParams,
    State,
    check_state,
    lambda1,
    pressure,
    pressure_derivative,
    validate_initial_state,
)
from aw_rascle.utils.config import (
    BISECTION_MAX_ITER,
    DENSITY_GUARD,
    UNBOUNDED_DENSITY_CAP,
)
from aw_rascle.utils.errors import (
    DegenerateWaveError,
    DeltaShockRegimeError,
    NoRootError,
)

logger = logging.getLogger(__name__)

# smallest rtol scipy's bisect accepts
_RTOL = 4 * np.finfo(float).eps
_XTOL = 1e-300
_DENSITY_FLOOR = 1e-300


class Region(Enum):
    """Side of the left state's wave curve the right state lies on."""

    REGION_I = "I"  # right.v < left.v: shock
    REGION_II = "II"  # right.v > left.v: rarefaction
    COINCIDENT = "coincident"


class WaveKind(Enum):
    CONSTANT = "constant"
    CONTACT = "contact"
    SHOCK_CONTACT = "S+J"
    RAREFACTION_CONTACT = "R+J"


class SolutionSummary(TypedDict):
    """Flat view of a RiemannSolution for tables and CSV rows."""

    kind: str
    rho_star: float
    v_star: float
    sigma1: float
    fan_head: float
    fan_tail: float
    sigma2: float


@dataclass(frozen=True)
class RiemannSolution:
    """Classified self-similar solution.

    star is None for CONSTANT; sigma1 is set for SHOCK_CONTACT only, fan_head and
    fan_tail for RAREFACTION_CONTACT only. CONTACT covers equal velocities with
    different densities (a lone contact discontinuity).
    """

    kind: WaveKind
    left: State
    right: State
    sigma2: float
    star: State | None = None
    sigma1: float | None = None
    fan_head: float | None = None
    fan_tail: float | None = None

    def summary(self) -> SolutionSummary:
        nan = math.nan
        return {
            "kind": self.kind.value,
            "rho_star": self.star.rho if self.star else nan,
            "v_star": self.star.v if self.star else nan,
            "sigma1": self.sigma1 if self.sigma1 is not None else nan,
            "fan_head": self.fan_head if self.fan_head is not None else nan,
            "fan_tail": self.fan_tail if self.fan_tail is not None else nan,
            "sigma2": self.sigma2,
        }


def classify(left: State, right: State) -> Region:
    """Both wave curves satisfy v + p = v_l + p_l, so the velocity alone decides."""
    if right.v < left.v:
        return Region.REGION_I
    if right.v > left.v:
        return Region.REGION_II
    return Region.COINCIDENT


def riemann_invariant(p: EosParams, s: State) -> float:
    """v + p(rho), constant across the lambda1-wave."""
    return float(s.v + pressure(p, s.rho))


def wave_curve_velocity(p: EosParams, left: State, rho: Density) -> Density:
    """Velocity on the S/R curve through the left state: v_l + p_l - p(rho)."""
    return riemann_invariant(p, left) - pressure(p, rho)


def _bisect(f: Callable[[float], float], lo: float, hi: float) -> float:
    try:
        root, result = optimize.bisect(
            f,
            lo,
            hi,
            xtol=_XTOL,
            rtol=_RTOL,
            maxiter=BISECTION_MAX_ITER,
            full_output=True,
        )
    except RuntimeError as e:
        raise NoRootError(f"bisection failed on [{lo:.17g}, {hi:.17g}]: {e}") from e
    logger.debug("bisection on [%g, %g]: %d iterations", lo, hi, result.iterations)
    return float(root)


def _upper_bracket(p: EosParams, rho_start: float, p_target: float) -> float:
    """Density whose pressure reaches p_target, searching above rho_start."""
    if p.a > 0:
        hi = p.rho_upper_guard
        if pressure(p, hi) >= p_target:
            return hi
    else:
        hi = rho_start
        while hi < UNBOUNDED_DENSITY_CAP:
            hi *= 2.0
            if pressure(p, hi) >= p_target:
                return hi
        logger.warning(
            "bracket expansion reached %g without attaining pressure %g",
            UNBOUNDED_DENSITY_CAP,
            p_target,
        )
    if p.A == 0:
        raise DeltaShockRegimeError(
            f"pressure {p_target:.17g} is not attainable with A = 0 "
            "(pressure range is bounded above); the solution exists only as the "
            "a, A -> 0 limit, see limit_analysis.predict"
        )
    raise NoRootError(f"pressure {p_target:.17g} is not attainable above rho={rho_start}")


def _lower_bracket(p: EosParams, rho_start: float, p_target: float) -> float:
    lo = rho_start * DENSITY_GUARD
    while lo > _DENSITY_FLOOR:
        if pressure(p, lo) <= p_target:
            return lo
        lo *= DENSITY_GUARD
    raise NoRootError(f"pressure {p_target:.17g} is not attainable below rho={rho_start}")


def solve_star_density(p: EosParams, left: State, v_star: float) -> float:
    """Density rho* on the left wave curve with velocity v_star.

    Solves p(rho*) = v_l + p(rho_l) - v_star by bisection on the monotone pressure;
    the bracket lies above rho_l for v_star < v_l (shock) and below it otherwise.
    """
    check_state(p, left)
    if v_star == left.v:
        return left.rho

    p_target = riemann_invariant(p, left) - v_star

    def residual(rho: float) -> float:
        return float(pressure(p, rho)) - p_target

    if v_star < left.v:
        lo, hi = left.rho, _upper_bracket(p, left.rho, p_target)
    else:
        lo, hi = _lower_bracket(p, left.rho, p_target), left.rho

    if residual(hi) == 0.0:
        return hi
    if residual(lo) == 0.0:
        return lo
    return _bisect(residual, lo, hi)


def shock_speed_expressions(
    p: EosParams, left: State, star: State
) -> tuple[float, float]:
    """Both forms of the shock speed; they agree when v + p is matched across S."""
    if star.rho == left.rho:
        raise DegenerateWaveError(f"shock speed undefined for equal densities {left.rho}")
    jump = (pressure(p, star.rho) - pressure(p, left.rho)) / (star.rho - left.rho)
    return (
        float(left.v - star.rho * jump),
        float(star.v - left.rho * jump),
    )


def shock_speed(p: EosParams, left: State, star: State) -> float:
    return shock_speed_expressions(p, left, star)[0]


def solve(p: EosParams, left: State, right: State) -> RiemannSolution:
    """Construct the exact Riemann solution for left/right data."""
    validate_initial_state(p, left)
    validate_initial_state(p, right)

    region = classify(left, right)
    logger.debug("classified %s | %s as %s", left, right, region.value)

    if region is Region.COINCIDENT:
        kind = WaveKind.CONSTANT if left == right else WaveKind.CONTACT
        return RiemannSolution(
            kind=kind,
            left=left,
            right=right,
            sigma2=right.v,
            star=None if kind is WaveKind.CONSTANT else left,
        )

    star = State(rho=solve_star_density(p, left, right.v), v=right.v)

    if region is Region.REGION_I:
        return RiemannSolution(
            kind=WaveKind.SHOCK_CONTACT,
            left=left,
            right=right,
            star=star,
            sigma1=shock_speed(p, left, star),
            sigma2=right.v,
        )

    return RiemannSolution(
        kind=WaveKind.RAREFACTION_CONTACT,
        left=left,
        right=right,
        star=star,
        fan_head=lambda1(p, left),
        fan_tail=lambda1(p, star),
        sigma2=right.v,
    )


def _fan_state(p: EosParams, sol: RiemannSolution, xi: float) -> State:
    """State inside the fan with lambda1 = xi; lambda1 decreases in rho along the curve."""
    assert sol.star is not None
    left, star = sol.left, sol.star

    def residual(rho: float) -> float:
        v = float(wave_curve_velocity(p, left, rho))
        return v - rho * float(pressure_derivative(p, rho)) - xi

    if xi == sol.fan_head:
        return left
    if xi == sol.fan_tail:
        return star
    rho = _bisect(residual, star.rho, left.rho)
    return State(rho=rho, v=float(wave_curve_velocity(p, left, rho)))


def sample(p: EosParams, sol: RiemannSolution, xi: float) -> State:
    """Solution at xi = x/t; exact wave locations return the right-limit state."""
    match sol.kind:
        case WaveKind.CONSTANT:
            return sol.left
        case WaveKind.CONTACT:
            return sol.left if xi < sol.sigma2 else sol.right
        case WaveKind.SHOCK_CONTACT:
            assert sol.sigma1 is not None and sol.star is not None
            if xi < sol.sigma1:
                return sol.left
            return sol.star if xi < sol.sigma2 else sol.right
        case WaveKind.RAREFACTION_CONTACT:
            assert sol.fan_head is not None and sol.fan_tail is not None
            assert sol.star is not None
            if xi < sol.fan_head:
                return sol.left
            if xi <= sol.fan_tail:
                return _fan_state(p, sol, xi)
            return sol.star if xi < sol.sigma2 else sol.right


def sample_profile(
    p: EosParams, sol: RiemannSolution, x: NDArray[np.float64], t: float
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Exact (rho, v) at positions x and time t > 0."""
    rho = np.empty_like(x, dtype=float)
    v = np.empty_like(x, dtype=float)
    for j, xj in enumerate(x):
        s = sample(p, sol, float(xj) / t)
        rho[j], v[j] = s.rho, s.v
    return rho, v


def rh_residual(
    p: EosParams, left: State, right: State, sigma: float
) -> tuple[float, float]:
    """Rankine-Hugoniot residuals with [q] = q_left - q_right."""
    w_l = riemann_invariant(p, left)
    w_r = riemann_invariant(p, right)
    mass = -sigma * (left.rho - right.rho) + (left.rho * left.v - right.rho * right.v)
    momentum = -sigma * (left.rho * w_l - right.rho * w_r) + (
        left.rho * left.v * w_l - right.rho * right.v * w_r
    )
    return float(mass), float(momentum)
