"""First-order upwind scheme for U_t + B(U) U_x = 0, U = (rho, v).

B is split by the coefficient matrix method, B = R Lambda L and
B+- = (B +- R|Lambda|L) / 2, and the update is

    U_j^{n+1} = U_j^n - dt/dx * (B-_j (U_{j+1} - U_j) + B+_j (U_j - U_{j-1}))

with B frozen at level n and zero-gradient ghost cells at both ends.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from aw_rascle.tools.eos import (
    EosParams,
    State,
    check_state,
    pressure_derivative,
    validate_initial_state,
)
from aw_rascle.utils.config import (
    DEFAULT_CFL,
    DEFAULT_MAX_STEPS,
    DEFAULT_N_CELLS,
    DEFAULT_T_END,
    DEFAULT_X_MAX,
    DEFAULT_X_MIN,
)
from aw_rascle.utils.errors import BlowUpError, MaxStepsExceededError, ParameterError

logger = logging.getLogger(__name__)

Matrix = NDArray[np.float64]


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centred grid on [x_min, x_max]."""

    x_min: float = DEFAULT_X_MIN
    x_max: float = DEFAULT_X_MAX
    n_cells: int = DEFAULT_N_CELLS

    def __post_init__(self) -> None:
        if not self.x_min < self.x_max:
            raise ParameterError(f"x_min must be < x_max, got [{self.x_min}, {self.x_max}]")
        if self.n_cells < 4:
            raise ParameterError(f"n_cells must be >= 4, got {self.n_cells}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def centers(self) -> NDArray[np.float64]:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx


@dataclass(frozen=True)
class SchemeConfig:
    cfl: float = DEFAULT_CFL
    t_end: float = DEFAULT_T_END
    boundary: Literal["outflow"] = "outflow"
    max_steps: int = DEFAULT_MAX_STEPS

    def __post_init__(self) -> None:
        if not 0.0 < self.cfl <= 1.0:
            raise ParameterError(f"cfl must lie in (0, 1], got {self.cfl}")
        if not self.t_end > 0:
            raise ParameterError(f"t_end must be > 0, got {self.t_end}")
        if self.boundary != "outflow":
            raise ParameterError(f"unsupported boundary {self.boundary!r}")
        if self.max_steps < 1:
            raise ParameterError(f"max_steps must be >= 1, got {self.max_steps}")


@dataclass(frozen=True)
class Field:
    grid: Grid
    rho: NDArray[np.float64]
    v: NDArray[np.float64]
    time: float = 0.0

    @property
    def max_density(self) -> float:
        return float(np.max(self.rho))


def _decompose(
    p: EosParams, rho: NDArray[np.float64], v: NDArray[np.float64]
) -> tuple[Matrix, Matrix, Matrix]:
    """Stacked R, Lambda, L of shape (n, 2, 2)."""
    dp = pressure_derivative(p, rho)
    n = rho.shape[0]
    R = np.zeros((n, 2, 2))
    R[:, 0, 0] = 1.0 / dp
    R[:, 0, 1] = -1.0 / dp
    R[:, 1, 1] = 1.0
    Lam = np.zeros((n, 2, 2))
    Lam[:, 0, 0] = v
    Lam[:, 1, 1] = v - rho * dp
    L = np.zeros((n, 2, 2))
    L[:, 0, 0] = dp
    L[:, 0, 1] = 1.0
    L[:, 1, 1] = 1.0
    return R, Lam, L


def _coefficient_matrices(
    p: EosParams, rho: NDArray[np.float64], v: NDArray[np.float64]
) -> Matrix:
    dp = pressure_derivative(p, rho)
    B = np.zeros((rho.shape[0], 2, 2))
    B[:, 0, 0] = v
    B[:, 0, 1] = rho
    B[:, 1, 1] = v - rho * dp
    return B


def _split_matrices(
    p: EosParams, rho: NDArray[np.float64], v: NDArray[np.float64]
) -> tuple[Matrix, Matrix]:
    R, Lam, L = _decompose(p, rho, v)
    B = R @ Lam @ L
    abs_B = R @ np.abs(Lam) @ L
    return 0.5 * (B + abs_B), 0.5 * (B - abs_B)


def _as_arrays(s: State) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    return np.array([s.rho]), np.array([s.v])


def coefficient_matrix(p: EosParams, s: State) -> Matrix:
    """B = [[v, rho], [0, v - rho p']]."""
    check_state(p, s)
    return _coefficient_matrices(p, *_as_arrays(s))[0]


def eigendecomposition(p: EosParams, s: State) -> tuple[Matrix, Matrix, Matrix]:
    """(R, Lambda, L) with B = R Lambda L and R L = I."""
    check_state(p, s)
    R, Lam, L = _decompose(p, *_as_arrays(s))
    return R[0], Lam[0], L[0]


def split(p: EosParams, s: State) -> tuple[Matrix, Matrix]:
    """(B_plus, B_minus) with nonnegative and nonpositive eigenvalues."""
    check_state(p, s)
    B_plus, B_minus = _split_matrices(p, *_as_arrays(s))
    return B_plus[0], B_minus[0]


def initial_field(p: EosParams, left: State, right: State, grid: Grid) -> Field:
    """Riemann data with the jump at x = 0."""
    validate_initial_state(p, left)
    validate_initial_state(p, right)
    x = grid.centers
    rho = np.where(x < 0.0, left.rho, right.rho).astype(float)
    v = np.where(x < 0.0, left.v, right.v).astype(float)
    return Field(grid=grid, rho=rho, v=v)


def max_speed(p: EosParams, f: Field) -> float:
    lam1 = f.v - f.rho * pressure_derivative(p, f.rho)
    return float(max(np.max(np.abs(lam1)), np.max(np.abs(f.v))))


def stable_dt(p: EosParams, f: Field, cfl: float = DEFAULT_CFL) -> float:
    """cfl * dx / max|lambda|, or cfl * dx when every speed is zero."""
    if not 0.0 < cfl <= 1.0:
        raise ParameterError(f"cfl must lie in (0, 1], got {cfl}")
    speed = max_speed(p, f)
    if speed == 0.0:
        return cfl * f.grid.dx
    return cfl * f.grid.dx / speed


def _check_admissible(
    p: EosParams, rho: NDArray[np.float64], v: NDArray[np.float64], time: float
) -> None:
    bad = ~np.isfinite(rho) | ~np.isfinite(v) | (rho <= 0.0)
    if p.a > 0:
        bad |= rho >= p.rho_max
    if np.any(bad):
        j = int(np.argmax(bad))
        raise BlowUpError(cell=j, time=time, rho=float(rho[j]), v=float(v[j]))


def step(p: EosParams, f: Field, dt: float) -> Field:
    """Advance one explicit upwind step; the result carries time + dt."""
    U = np.stack([f.rho, f.v], axis=1)
    padded = np.concatenate([U[:1], U, U[-1:]], axis=0)
    forward = padded[2:] - padded[1:-1]  # U_{j+1} - U_j
    backward = padded[1:-1] - padded[:-2]  # U_j - U_{j-1}

    B_plus, B_minus = _split_matrices(p, f.rho, f.v)
    flux = np.einsum("nij,nj->ni", B_minus, forward) + np.einsum(
        "nij,nj->ni", B_plus, backward
    )
    U_next = U - (dt / f.grid.dx) * flux

    time = f.time + dt
    rho, v = U_next[:, 0], U_next[:, 1]
    _check_admissible(p, rho, v, time)
    return replace(f, rho=rho, v=v, time=time)


def evolve(p: EosParams, f: Field, cfg: SchemeConfig) -> Field:
    """Step f until cfg.t_end, clipping the final dt."""
    steps = 0
    while f.time < cfg.t_end:
        if steps >= cfg.max_steps:
            raise MaxStepsExceededError(
                f"t={f.time:.6g} < t_end={cfg.t_end} after {steps} steps"
            )
        dt = stable_dt(p, f, cfg.cfl)
        if f.time + dt >= cfg.t_end:
            f = replace(step(p, f, cfg.t_end - f.time), time=cfg.t_end)
        else:
            f = step(p, f, dt)
        steps += 1
    logger.debug("reached t=%g in %d steps (N=%d)", f.time, steps, f.grid.n_cells)
    return f


def run(
    p: EosParams, left: State, right: State, grid: Grid, cfg: SchemeConfig
) -> Field:
    if not grid.x_min < 0.0 < grid.x_max:
        raise ParameterError(
            f"grid [{grid.x_min}, {grid.x_max}] must straddle the jump at x = 0"
        )
    return evolve(p, initial_field(p, left, right, grid), cfg)


def l1_error(f: Field, exact_rho: NDArray[np.float64]) -> float:
    return float(np.sum(np.abs(f.rho - exact_rho)) * f.grid.dx)


def steepest_velocity_gradient(f: Field) -> float:
    """Interface position x_{j+1/2} maximising |v_{j+1} - v_j|."""
    j = int(np.argmax(np.abs(np.diff(f.v))))
    return f.grid.x_min + (j + 1) * f.grid.dx


def excess_mass(f: Field, left: State, right: State) -> float:
    """Mass above the step rho_l | rho_r placed at x = v_r t."""
    grid = f.grid
    support = min(max(right.v * f.time, grid.x_min), grid.x_max)
    step_mass = left.rho * (support - grid.x_min) + right.rho * (grid.x_max - support)
    total = float(np.sum(f.rho) * grid.dx)
    return total - step_mass if math.isfinite(total) else math.nan
