"""Vanishing-pressure limit (a, A -> 0) of the Riemann solution.

Region I(a) data develops a delta shock on x = v_r t with weight rho_l (v_l - v_r) t;
region I(b) keeps a bounded intermediate density; region II never forms a vacuum.
The asymptotic statements are checked on finite (A, a) sweeps.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from aw_rascle.tools import exact_riemann
from aw_rascle.tools.eos import EosParams, State
from aw_rascle.utils.errors import PreconditionError, RiemannToolkitError

logger = logging.getLogger(__name__)

Pair = tuple[float, float]  # (A, a)


class LimitRegion(Enum):
    IA = "Ia"
    IB = "Ib"
    II = "II"


@dataclass(frozen=True)
class LimitPrediction:
    """Limit of the Riemann solution as a, A -> 0.

    The delta fields are None outside region Ia.
    """

    region: LimitRegion
    step_left: float
    step_right: float
    delta_speed: float | None = None
    weight_coefficient: float | None = None
    pressure_limit: float | None = None

    @property
    def has_delta(self) -> bool:
        return self.region is LimitRegion.IA


@dataclass(frozen=True)
class SweepRow:
    """One (A, a) point of a limit sweep; error is set when the solve failed."""

    A: float
    a: float
    rho_star: float = math.nan
    sigma1: float = math.nan
    sigma2: float = math.nan
    eos_term: float = math.nan
    rh_mass: float = math.nan
    kind: str = ""
    error: str = ""

    @property
    def ok(self) -> bool:
        return not self.error


def limit_threshold(left: State, B: float, kappa: float) -> float:
    """v_l - B/rho_l**kappa, the asymptote of the limiting shock curve."""
    return left.v - B / left.rho**kappa


def classify_limit(left: State, right: State, B: float, kappa: float) -> LimitRegion:
    if right.v >= left.v:
        return LimitRegion.II
    if right.v <= limit_threshold(left, B, kappa):
        return LimitRegion.IA
    return LimitRegion.IB


def predict(left: State, right: State, B: float, kappa: float) -> LimitPrediction:
    """Limit prediction; depends only on the data, B and kappa, never on (A, a)."""
    region = classify_limit(left, right, B, kappa)
    if region is not LimitRegion.IA:
        return LimitPrediction(region=region, step_left=left.rho, step_right=right.rho)
    return LimitPrediction(
        region=region,
        step_left=left.rho,
        step_right=right.rho,
        delta_speed=right.v,
        weight_coefficient=left.rho * (left.v - right.v),
        pressure_limit=left.v - right.v - B / left.rho**kappa,
    )


def limit_star_density(left: State, right: State, B: float, kappa: float) -> float:
    """Intermediate density of the A = 0 solution, (B / (v_r - v_l + B/rho_l**kappa))**(1/kappa).

    Finite in regions Ib and II; infinite in Ia, where the delta shock forms.
    """
    denominator = right.v - left.v + B / left.rho**kappa
    if denominator <= 0:
        return math.inf
    return float((B / denominator) ** (1.0 / kappa))


def delta_weight(prediction: LimitPrediction, t: float) -> float:
    """w(t) = rho_l (v_l - v_r) t in region Ia, 0 elsewhere."""
    if prediction.weight_coefficient is None:
        return 0.0
    return prediction.weight_coefficient * t


def limit_profile(
    prediction: LimitPrediction,
    left: State,
    right: State,
    B: float,
    kappa: float,
    x: NDArray[np.float64],
    t: float,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Limit density and velocity at time t.

    In region Ia this is the step part, with the jump on x = v_r t; the Dirac part
    is reported by delta_weight and is not representable pointwise. Elsewhere the
    limit is the exact solution of the A = a = 0 pressure -B/rho**kappa.
    """
    if prediction.has_delta:
        support = right.v * t
        rho = np.where(x < support, prediction.step_left, prediction.step_right)
        v = np.where(x < support, left.v, right.v)
        return rho.astype(float), v.astype(float)
    # Gamma only multiplies A, so any admissible value gives the same pressure
    params = EosParams(A=0.0, a=0.0, B=B, Gamma=1.0, kappa=kappa)
    sol = exact_riemann.solve(params, left, right)
    return exact_riemann.sample_profile(params, sol, x, t)


def rh_mass_identity(left: State, right: State, row: SweepRow) -> float:
    """sigma2 rho_r - sigma1 rho_l + rho_l v_l - rho_r v_r, equal to rho*(sigma2 - sigma1)."""
    return (
        row.sigma2 * right.rho
        - row.sigma1 * left.rho
        + left.rho * left.v
        - right.rho * right.v
    )


def sweep_row(left: State, right: State, base: EosParams, pair: Pair) -> SweepRow:
    A, a = pair
    try:
        params = base.with_pressure_constants(A=A, a=a)
        sol = exact_riemann.solve(params, left, right)
    except RiemannToolkitError as e:
        logger.warning("sweep pair A=%g, a=%g failed: %s", A, a, e)
        return SweepRow(A=A, a=a, error=str(e))

    star = sol.star if sol.star is not None else left
    rho_star = star.rho
    sigma2 = sol.sigma2
    # the rarefaction has no shock speed; its fan tail bounds the lambda1-wave
    if sol.sigma1 is not None:
        sigma1 = sol.sigma1
    elif sol.fan_tail is not None:
        sigma1 = sol.fan_tail
    else:
        sigma1 = sigma2
    eos_term = A * (rho_star / (1.0 - a * rho_star)) ** params.Gamma
    return SweepRow(
        A=A,
        a=a,
        rho_star=rho_star,
        sigma1=sigma1,
        sigma2=sigma2,
        eos_term=eos_term,
        rh_mass=rho_star * (sigma2 - sigma1),
        kind=sol.kind.value,
    )


def sweep(
    left: State,
    right: State,
    base: EosParams,
    pairs: list[Pair],
    workers: int = 1,
) -> list[SweepRow]:
    """Solve the Riemann problem for each (A, a) pair, in input order.

    B, Gamma and kappa come from base. Failed pairs are returned as rows with
    error set and the sweep continues.
    """
    for A, a in pairs:
        if A <= 0 or a <= 0:
            raise PreconditionError(f"sweep pairs must be positive, got (A={A}, a={a})")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda pair: sweep_row(left, right, base, pair), pairs))
    return [sweep_row(left, right, base, pair) for pair in pairs]


@dataclass(frozen=True)
class VacuumCheck:
    no_vacuum: bool
    infimum: float
    floor: float


def no_vacuum_check(
    left: State,
    right: State,
    base: EosParams,
    pairs: list[Pair],
    workers: int = 1,
    floor: float | None = None,
) -> VacuumCheck:
    """Intermediate density of region II data stays above a positive floor.

    The floor defaults to half the A = 0 intermediate density, which the sweep
    approaches from above as A, a -> 0.
    """
    if right.v < left.v:
        raise PreconditionError("no-vacuum check applies to region II data (v_r >= v_l)")
    if floor is None:
        floor = 0.5 * limit_star_density(left, right, base.B, base.kappa)
    if left == right:
        return VacuumCheck(no_vacuum=left.rho > floor, infimum=left.rho, floor=floor)

    rows = sweep(left, right, base, pairs, workers=workers)
    for row in rows:
        if not row.ok:
            raise RiemannToolkitError(f"pair A={row.A}, a={row.a}: {row.error}")
    infimum = min(row.rho_star for row in rows)
    logger.debug("no-vacuum sweep: infimum %.6g, floor %.6g", infimum, floor)
    return VacuumCheck(
        no_vacuum=math.isfinite(infimum) and infimum > floor, infimum=infimum, floor=floor
    )
