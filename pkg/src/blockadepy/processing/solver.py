"""Steady states of a Liouvillian."""

import abc
import time
from typing import Literal, Optional

import numpy as np
import pydantic
from scipy import integrate, sparse
from scipy.sparse import linalg as sparse_linalg

from blockadepy.core import config, exceptions, hilbert_ops, models
from blockadepy.processing import liouvillian

logger = config.get_logger()
settings = config.Settings()

GROUND_STATE = hilbert_ops.BasisState(atom="g", m=0, n=0)


class SteadyStateResult(pydantic.BaseModel):
    """Outcome of a steady-state computation.

    Attributes:
        rho: The steady state.
        residual: Spectral norm of the devectorized L vec(rho).
        method: Which solver produced the state.
        converged: True if the residual is below the solver tolerance.
        hermitization_correction: Norm of the change made by (rho + rho^dag) / 2
            and renormalization.
        elapsed_time: Integration time reached, evolved solver only.
    """

    rho: models.DensityMatrix
    residual: float
    method: Literal["direct", "evolved"]
    converged: bool
    hermitization_correction: float = 0.0
    elapsed_time: Optional[float] = None


def residual_norm(L: liouvillian.Superoperator, matrix: np.ndarray) -> float:
    """Spectral norm of the time derivative at a (not necessarily valid) state."""
    derivative = liouvillian.devectorize(
        L.matrix @ liouvillian.vectorize(matrix), L.space.dim
    )
    return float(np.linalg.norm(derivative, ord=2))


def _to_density_matrix(
    space: hilbert_ops.HilbertSpace, matrix: np.ndarray
) -> tuple[models.DensityMatrix, float]:
    """Hermitize and renormalize a raw solution.

    Returns:
        The density matrix and the norm of the applied correction.

    Raises:
        SolverError: If the corrected matrix still violates the density-matrix
            invariants.
    """
    hermitian = (matrix + matrix.conj().T) / 2
    normalized = hermitian / np.trace(hermitian).real
    correction = float(np.linalg.norm(normalized - matrix, ord=2))
    try:
        rho = models.DensityMatrix(space=space, matrix=normalized)
    except pydantic.ValidationError as exc_info:
        raise exceptions.SolverError(
            f"Solution is not a valid density matrix: {exc_info}"
        ) from exc_info
    return rho, correction


class AbstractSteadyStateSolver(abc.ABC):
    """Abstract class defining the interface for the steady-state solvers."""

    @abc.abstractmethod
    def __init__(self) -> None:
        """Initialization function for the solver."""
        pass

    @abc.abstractmethod
    def solve(self, L: liouvillian.Superoperator) -> SteadyStateResult:
        """The solver must contain a solve function.

        The function must take the Liouvillian and return the steady state as a
        SteadyStateResult.
        """
        pass


class DirectSteadyStateSolver(AbstractSteadyStateSolver):
    """Sparse LU solve of L vec(rho) = 0 with one row replaced by the trace.

    The replaced row is the |g,0,0><g,0,0| coordinate, the largest steady-state
    entry in the weak-drive regime.

    Attributes:
        tolerance: Residual below which the result is flagged converged.
        hermitization_limit: Largest accepted post-solve correction.
    """

    def __init__(
        self,
        tolerance: float = settings.STEADY_STATE_TOLERANCE,
        hermitization_limit: float = settings.HERMITIZATION_LIMIT,
    ) -> None:
        """Initializes class.

        Args:
            tolerance: Residual below which the result is flagged converged.
            hermitization_limit: Largest accepted norm of the Hermitization and
                renormalization correction; larger corrections unflag convergence.
        """
        self.tolerance = tolerance
        self.hermitization_limit = hermitization_limit

    def solve(self, L: liouvillian.Superoperator) -> SteadyStateResult:
        """Solves for the steady state.

        Args:
            L: The Liouvillian.

        Returns:
            The steady state, Hermitized and renormalized to unit trace.

        Raises:
            SingularSystemError: If the modified system is singular, i.e. the
                steady state is not unique.
            SolverError: If the solution is not a valid density matrix.
        """
        space = L.space
        dim = space.dim
        row = hilbert_ops.basis_index(GROUND_STATE, space) * (dim + 1)

        system = L.matrix.tolil()
        system[row, :] = liouvillian.trace_functional(space)
        rhs = np.zeros(dim**2, dtype=complex)
        rhs[row] = 1.0

        logger.debug("Factorizing %s x %s system.", dim**2, dim**2)
        try:
            lu = sparse_linalg.splu(sparse.csc_matrix(system))
        except RuntimeError as exc_info:
            raise exceptions.SingularSystemError(
                f"Steady state is not unique, factorization failed: {exc_info}"
            ) from exc_info
        solution = lu.solve(rhs)
        if not np.all(np.isfinite(solution)):
            raise exceptions.SingularSystemError(
                "Steady state is not unique, the solution is not finite."
            )

        rho, correction = _to_density_matrix(
            space, liouvillian.devectorize(solution, dim)
        )
        residual = residual_norm(L, rho.matrix)
        converged = residual < self.tolerance and correction < self.hermitization_limit
        if not converged:
            logger.warning(
                "Direct steady state flagged: residual %s (tolerance %s), "
                "hermitization correction %s (limit %s).",
                residual,
                self.tolerance,
                correction,
                self.hermitization_limit,
            )
        return SteadyStateResult(
            rho=rho,
            residual=residual,
            method="direct",
            converged=converged,
            hermitization_correction=correction,
        )


class EvolvedSteadyStateSolver(AbstractSteadyStateSolver):
    """Integrates d vec(rho)/dt = L vec(rho) until the state stops changing.

    Attributes:
        rho0: The initial state. Defaults to the vacuum of the Liouvillian's space.
        tolerance: Norm of the time derivative at which integration stops.
        t_max: Longest integration time.
        rtol: Relative tolerance of the adaptive integrator.
        atol: Absolute tolerance of the adaptive integrator.
        method: Explicit Runge-Kutta scheme passed to scipy's solve_ivp.
    """

    def __init__(
        self,
        rho0: Optional[models.DensityMatrix] = None,
        tolerance: float = settings.EVOLVE_TOLERANCE,
        t_max: float = settings.EVOLVE_T_MAX,
        rtol: float = settings.EVOLVE_RTOL,
        atol: float = settings.EVOLVE_ATOL,
        method: Literal["RK45", "DOP853"] = "DOP853",
    ) -> None:
        """Initializes class.

        Args:
            rho0: The initial state, vacuum if None.
            tolerance: Stop once the spectral norm of d rho / dt drops below it.
            t_max: Longest integration time, in units of 1 / kappa.
            rtol: Relative tolerance of the integrator.
            atol: Absolute tolerance of the integrator.
            method: Explicit adaptive Runge-Kutta scheme.

        Raises:
            ValueError: If tolerance or t_max is not positive.
        """
        if tolerance <= 0 or t_max <= 0:
            raise ValueError("tolerance and t_max must be positive")
        self.rho0 = rho0
        self.tolerance = tolerance
        self.t_max = t_max
        self.rtol = rtol
        self.atol = atol
        self.method = method

    def solve(self, L: liouvillian.Superoperator) -> SteadyStateResult:
        """Evolves the initial state to the steady state.

        Args:
            L: The Liouvillian.

        Returns:
            The final state, Hermitized and renormalized.

        Raises:
            SpaceMismatchError: If rho0 and L live on different spaces.
            ConvergenceError: If the derivative norm is still above tolerance at
                t_max. The exception carries the last state and residual.
        """
        space = L.space
        rho0 = self.rho0
        if rho0 is None:
            rho0 = models.DensityMatrix.vacuum(space)
        if rho0.space != space:
            raise exceptions.SpaceMismatchError(
                "Initial state and Liouvillian live on different spaces."
            )

        if residual_norm(L, rho0.matrix) < self.tolerance:
            logger.debug("Initial state is already stationary.")
            return SteadyStateResult(
                rho=rho0,
                residual=residual_norm(L, rho0.matrix),
                method="evolved",
                converged=True,
                elapsed_time=0.0,
            )

        generator = L.matrix

        def rhs(_t: float, y: np.ndarray) -> np.ndarray:
            return generator @ y

        def settled(_t: float, y: np.ndarray) -> float:
            return residual_norm(L, liouvillian.devectorize(y, space.dim)) - (
                self.tolerance
            )

        settled.terminal = True  # type: ignore[attr-defined]
        settled.direction = -1  # type: ignore[attr-defined]

        logger.debug("Integrating towards the steady state, t_max=%s.", self.t_max)
        start = time.perf_counter()
        solution = integrate.solve_ivp(
            rhs,
            t_span=(0.0, self.t_max),
            y0=liouvillian.vectorize(rho0.matrix),
            method=self.method,
            events=settled,
            rtol=self.rtol,
            atol=self.atol,
        )
        logger.debug(
            "Integration finished at t=%s after %.2fs.",
            solution.t[-1],
            time.perf_counter() - start,
        )

        final = liouvillian.devectorize(solution.y[:, -1], space.dim)
        rho, correction = _to_density_matrix(space, final)
        residual = residual_norm(L, rho.matrix)
        result = SteadyStateResult(
            rho=rho,
            residual=residual,
            method="evolved",
            converged=solution.status == 1,
            hermitization_correction=correction,
            elapsed_time=float(solution.t[-1]),
        )
        if solution.status != 1:
            raise exceptions.ConvergenceError(
                f"Evolution did not settle by t_max={self.t_max}: last residual "
                f"{residual} (tolerance {self.tolerance}). {solution.message}",
                residual=residual,
                result=result,
            )
        return result


def steady_state_direct(
    L: liouvillian.Superoperator,
    tolerance: float = settings.STEADY_STATE_TOLERANCE,
) -> SteadyStateResult:
    """Steady state by sparse LU factorization of the trace-constrained system."""
    return DirectSteadyStateSolver(tolerance=tolerance).solve(L)


def steady_state_evolved(
    L: liouvillian.Superoperator,
    rho0: Optional[models.DensityMatrix] = None,
    tol: float = settings.EVOLVE_TOLERANCE,
    t_max: float = settings.EVOLVE_T_MAX,
) -> SteadyStateResult:
    """Steady state by adaptive time evolution from rho0 (vacuum if None)."""
    return EvolvedSteadyStateSolver(rho0=rho0, tolerance=tol, t_max=t_max).solve(L)
