"""One-dimensional solvers: steady third-order solve and theta-weighted stepping.

Two entry points cover the 1D catalog:

- :func:`steady_solve_3wsgd` solves the time-independent problem
  ``-(left derivative of order alpha) u = s`` with the third-order
  three-shift operator and Dirichlet end values folded in through the
  stencil's boundary columns.
- :func:`cn_wsgd_run` / :func:`cn_wsgd_run_variable` integrate the
  time-dependent diffusion problem with second-order shifted weights in
  space and a theta-weighted two-level scheme in time (theta = 1/2 is the
  trapezoidal scheme used for all reference tables).

Both factor their time-independent system matrix once with dense partial
pivoting and reuse the factorization across steps.

Error-norm conventions (matching the reference convergence tables): the
maximum norm is tracked as a running maximum over *all* time levels, while
the grid-weighted L2 norm is evaluated at the final time only.  Solutions
carry both a running and a final-time maximum error so reports can choose
either convention explicitly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import lapack

from . import weights as wt
from .errors import ParameterError, SolverError
from .operators import (
    assemble_3wsgd_matrix,
    assemble_wsgd_matrix,
    boundary_columns,
)
from .problems import Problem1D, l2_norm, max_norm

__all__ = [
    "SolverConfig1D",
    "Solution1D",
    "steady_solve_3wsgd",
    "assemble_cn_system",
    "cn_wsgd_run",
    "cn_wsgd_run_variable",
]

#: Shift schemes backed by the unconditional-stability theory of the solver.
SOLVER_SCHEMES = (wt.P1Q0, wt.P1QM1)

#: How the source term is sampled on each time slab: trapezoidal average of
#: the endpoint values, or the midpoint value.
SOURCE_SAMPLING = ("average", "midpoint")


@dataclass(frozen=True)
class SolverConfig1D:
    """Resolution and scheme selection for a 1D time-dependent run."""

    N: int
    M: int
    theta: float = 0.5
    scheme: str = wt.P1Q0
    T: float = 1.0
    source_sampling: str = "average"

    def __post_init__(self) -> None:
        if int(self.N) != self.N or self.N < 4:
            raise ParameterError(f"need at least N=4 spatial intervals, got {self.N}")
        if int(self.M) != self.M or self.M < 1:
            raise ParameterError(f"need at least M=1 time steps, got {self.M}")
        if self.scheme not in SOLVER_SCHEMES:
            raise ParameterError(
                f"unsupported scheme {self.scheme!r} for the time stepper;"
                f" expected one of {SOLVER_SCHEMES!r}"
            )
        if not self.T > 0.0:
            raise ParameterError(f"final time must be positive, got {self.T}")
        if self.source_sampling not in SOURCE_SAMPLING:
            raise ParameterError(
                f"unknown source sampling {self.source_sampling!r};"
                f" expected one of {SOURCE_SAMPLING!r}"
            )
        if not 0.5 <= self.theta <= 1.0:
            warnings.warn(
                f"theta={self.theta} lies outside the proven stability window"
                " [1/2, 1]; the run proceeds without stability guarantees",
                stacklevel=3,
            )

    @property
    def tau(self) -> float:
        return self.T / self.M


@dataclass
class Solution1D:
    """Result of a 1D solve: final-time grid values plus error diagnostics.

    ``values`` holds all ``N+1`` nodes including the boundary entries at the
    final time (steady solves report their single level with
    ``t_final=None``).  When the problem has a known exact solution,
    ``max_err_running`` is the maximum-norm error maximized over every time
    level, ``max_err_final``/``l2_err_final`` are measured at the final time
    only, all over interior nodes.  ``norm_history`` records the discrete L2
    norm of the interior solution at each time level.
    """

    x: np.ndarray
    values: np.ndarray
    problem_name: str
    t_final: Optional[float]
    config: Optional[SolverConfig1D] = None
    max_err_running: Optional[float] = None
    max_err_final: Optional[float] = None
    l2_err_final: Optional[float] = None
    norm_history: Optional[np.ndarray] = None


def _grid(problem: Problem1D, N: int):
    h = (problem.b - problem.a) / N
    x = problem.a + h * np.arange(N + 1)
    return h, x, x[1:N]


def _factor(matrix: np.ndarray, context: str):
    lu, piv, info = lapack.dgetrf(matrix)
    if info > 0:
        raise SolverError(f"{context}: singular system (zero pivot at index {info})")
    if info < 0:  # pragma: no cover - illegal argument, not reachable via API
        raise SolverError(f"{context}: factorization rejected argument {-info}")
    return lu, piv


def _solve(lu, piv, rhs: np.ndarray, context: str) -> np.ndarray:
    out, info = lapack.dgetrs(lu, piv, rhs)
    if info != 0:  # pragma: no cover - dgetrs only fails on bad arguments
        raise SolverError(f"{context}: triangular solve failed (code {info})")
    return out


def steady_solve_3wsgd(problem: Problem1D, N: int) -> Solution1D:
    """Solve the steady problem with the third-order three-shift operator.

    Discretizes ``-(left derivative of order alpha) u = source`` on ``N``
    intervals, moving the known end values to the right-hand side through
    the stencil's boundary columns, and solves the dense interior system by
    partial-pivoting LU.
    """
    if not problem.steady:
        raise ParameterError("steady_solve_3wsgd expects a problem built with steady=True")
    if not 1.0 < problem.alpha < 2.0:
        raise ParameterError(
            f"the steady solver covers orders strictly between 1 and 2, got {problem.alpha}"
        )
    if int(N) != N or N < 4:
        raise ParameterError(f"need at least N=4 intervals, got {N}")
    N = int(N)
    h, x, xi = _grid(problem, N)
    n = N - 1
    G = assemble_3wsgd_matrix(problem.alpha, n).to_dense()
    mu = wt.wsgd3_weights(problem.alpha, N + 1).values
    # Coefficients of the known end values u(a), u(b) in rows i = 1..N-1.
    col_left = mu[2 : N + 1].copy()
    col_right = np.zeros(n)
    col_right[-1] = mu[0]
    ua = float(problem.left_boundary(0.0))
    ub = float(problem.right_boundary(0.0))
    s = np.asarray(problem.source(xi, 0.0), dtype=float)
    rhs = -(h**problem.alpha) * s - col_left * ua - col_right * ub
    lu, piv = _factor(G, "steady solve")
    u_int = _solve(lu, piv, rhs, "steady solve")
    values = np.concatenate(([ua], u_int, [ub]))
    sol = Solution1D(x=x, values=values, problem_name=problem.name, t_final=None)
    if problem.exact is not None:
        e = u_int - np.asarray(problem.exact(xi, 0.0), dtype=float)
        sol.max_err_final = max_norm(e)
        sol.max_err_running = sol.max_err_final
        sol.l2_err_final = l2_norm(e, h)
    return sol


def assemble_cn_system(problem: Problem1D, config: SolverConfig1D):
    """Assemble the two time-stepping matrices ``(I - theta*B, I + (1-theta)*B)``.

    ``B`` scales the spatial operator by ``tau / h**alpha`` and weights the
    left/right-sided stencils row-wise by the diffusivities, which covers
    the constant-coefficient case (rows all weighted alike) and the
    variable-coefficient case through one code path.
    """
    h, _, xi = _grid(problem, config.N)
    n = config.N - 1
    A = assemble_wsgd_matrix(problem.alpha, config.scheme, n).to_dense()
    dl, dr = problem.diffusivity_values(xi)
    B = (config.tau / h**problem.alpha) * (dl[:, None] * A + dr[:, None] * A.T)
    eye = np.eye(n)
    return eye - config.theta * B, eye + (1.0 - config.theta) * B


def _run_theta_scheme(problem: Problem1D, config: SolverConfig1D) -> Solution1D:
    if problem.steady:
        raise ParameterError("time stepping expects a time-dependent problem")
    h, x, xi = _grid(problem, config.N)
    n = config.N - 1
    tau = config.tau
    theta = config.theta
    lhs, rhs_matrix = assemble_cn_system(problem, config)
    lu, piv = _factor(lhs, "time step")

    # Known-end-value coefficient columns, diffusivity-weighted per row.
    left_u0, right_u0, left_uN, right_uN = boundary_columns(
        problem.alpha, config.scheme, n
    )
    dl, dr = problem.diffusivity_values(xi)
    col_a = dl * left_u0 + dr * right_u0
    col_b = dl * left_uN + dr * right_uN
    scale = tau / h**problem.alpha

    U = np.empty(n)
    U[:] = problem.initial(xi)  # accepts per-node arrays or a constant
    norm_history = np.empty(config.M + 1)
    norm_history[0] = l2_norm(U, h)
    running_max = 0.0
    if problem.exact is not None:
        e0 = U - np.asarray(problem.exact(xi, 0.0), dtype=float)
        running_max = max_norm(e0)

    t_next = 0.0
    for step in range(config.M):
        t_now = step * tau
        t_next = (step + 1) * tau
        if config.source_sampling == "average":
            fv = 0.5 * (
                np.asarray(problem.source(xi, t_now), dtype=float)
                + np.asarray(problem.source(xi, t_next), dtype=float)
            )
        else:
            fv = np.asarray(problem.source(xi, t_now + 0.5 * tau), dtype=float)
        ga_now = float(problem.left_boundary(t_now))
        ga_next = float(problem.left_boundary(t_next))
        gb_now = float(problem.right_boundary(t_now))
        gb_next = float(problem.right_boundary(t_next))
        bvec = scale * (
            col_a * (theta * ga_next + (1.0 - theta) * ga_now)
            + col_b * (theta * gb_next + (1.0 - theta) * gb_now)
        )
        rhs = rhs_matrix @ U + tau * fv + bvec
        U = _solve(lu, piv, rhs, "time step")
        norm_history[step + 1] = l2_norm(U, h)
        if problem.exact is not None:
            e = U - np.asarray(problem.exact(xi, t_next), dtype=float)
            running_max = max(running_max, max_norm(e))

    values = np.concatenate(
        (
            [float(problem.left_boundary(t_next))],
            U,
            [float(problem.right_boundary(t_next))],
        )
    )
    sol = Solution1D(
        x=x,
        values=values,
        problem_name=problem.name,
        t_final=t_next,
        config=config,
        norm_history=norm_history,
    )
    if problem.exact is not None:
        e = U - np.asarray(problem.exact(xi, t_next), dtype=float)
        sol.max_err_final = max_norm(e)
        sol.l2_err_final = l2_norm(e, h)
        sol.max_err_running = running_max
    return sol


def cn_wsgd_run(problem: Problem1D, config: SolverConfig1D) -> Solution1D:
    """Integrate a (constant- or variable-coefficient) 1D problem in time.

    Each step solves ``(I - theta*B) U_next = (I + (1-theta)*B) U + tau*F +
    boundary terms`` with the once-factored left-hand side.
    """
    return _run_theta_scheme(problem, config)


def cn_wsgd_run_variable(problem: Problem1D, config: SolverConfig1D) -> Solution1D:
    """Variable-coefficient entry point; requires callable diffusivities.

    The stepping is shared with :func:`cn_wsgd_run`, so coefficient
    functions that happen to be constants reproduce the constant-coefficient
    trajectory bit for bit.
    """
    if not problem.has_variable_coefficients:
        raise ParameterError(
            "cn_wsgd_run_variable expects callable diffusivities;"
            " use cn_wsgd_run for constant coefficients"
        )
    return _run_theta_scheme(problem, config)
