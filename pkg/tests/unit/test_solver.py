"""Test the steady-state solvers."""

import numpy as np
import pytest

from blockadepy.core import exceptions, hilbert_ops, models
from blockadepy.processing import liouvillian, observables, solver


def decoupled_cavity(F: float, delta: float) -> models.SystemParams:
    """A driven cavity with the atom and mode b switched off."""
    return models.SystemParams.constrained(delta, J=0.0, g=0.0, F=F)


def test_direct_vacuum(default_space: hilbert_ops.HilbertSpace) -> None:
    """Test the undriven steady state."""
    params = models.SystemParams.constrained(10.0, J=6.0, g=4.0, F=0.0)
    L = liouvillian.liouvillian(params, default_space)

    result = solver.steady_state_direct(L)

    assert result.method == "direct"
    assert result.converged
    assert result.residual < 1e-12
    assert np.allclose(
        result.rho.matrix, models.DensityMatrix.vacuum(default_space).matrix
    )


@pytest.mark.parametrize("F, delta", [(0.1, 10.0), (0.1, 2.0), (0.05, 0.0)])
def test_direct_decoupled_cavity(
    F: float, delta: float, default_space: hilbert_ops.HilbertSpace
) -> None:
    """Test a coherent state: N_a = F^2 / (delta^2 + 1/4) and g2(0) = 1."""
    L = liouvillian.liouvillian(decoupled_cavity(F, delta), default_space)
    expected = F**2 / (delta**2 + 0.25)

    rho = solver.steady_state_direct(L).rho

    assert observables.mean_photon(rho) == pytest.approx(expected, rel=1e-6)
    assert observables.g2_zero(rho) == pytest.approx(1.0, abs=1e-6)


def test_direct_steady_state_is_stationary(
    default_space: hilbert_ops.HilbertSpace, blockade_params: models.SystemParams
) -> None:
    """Test the residual, trace and positivity of a driven steady state."""
    L = liouvillian.liouvillian(blockade_params, default_space)

    result = solver.steady_state_direct(L)

    assert result.converged
    assert result.residual < 1e-9
    assert np.trace(result.rho.matrix).real == pytest.approx(1.0, abs=1e-10)
    assert result.rho.min_eigenvalue >= -1e-8
    assert result.hermitization_correction < 1e-8


def test_direct_singular_system(small_space: hilbert_ops.HilbertSpace) -> None:
    """Test a Liouvillian without dissipation, whose steady state is not unique."""
    params = models.SystemParams(kappa_a=0.0, kappa_b=0.0, gamma=0.0, F=0.0)
    L = liouvillian.liouvillian(params, small_space)

    with pytest.raises(exceptions.SingularSystemError):
        solver.steady_state_direct(L)


def test_residual_norm_of_non_stationary_state(
    default_space: hilbert_ops.HilbertSpace, blockade_params: models.SystemParams
) -> None:
    """Test that the vacuum is not stationary under a drive."""
    L = liouvillian.liouvillian(blockade_params, default_space)

    residual = solver.residual_norm(
        L, models.DensityMatrix.vacuum(default_space).matrix
    )

    assert residual > 0.01


@pytest.mark.parametrize("start", ["vacuum", "mixed"])
def test_evolved_matches_direct(
    start: str, small_space: hilbert_ops.HilbertSpace
) -> None:
    """Test the time-evolution oracle against the direct solve."""
    params = models.SystemParams.constrained(10.0, J=6.0, g=4.0, F=0.3)
    L = liouvillian.liouvillian(params, small_space)
    rho0 = (
        models.DensityMatrix.vacuum(small_space)
        if start == "vacuum"
        else models.DensityMatrix.maximally_mixed(small_space)
    )

    evolved = solver.steady_state_evolved(L, rho0=rho0)
    direct = solver.steady_state_direct(L)

    assert evolved.method == "evolved"
    assert evolved.converged
    assert evolved.elapsed_time is not None and evolved.elapsed_time > 0
    assert observables.trace_distance(evolved.rho, direct.rho) < 1e-6


def test_evolved_settles_on_default_space_with_thermal_bath(
    default_space: hilbert_ops.HilbertSpace,
) -> None:
    """Test that the default stop tolerance is reached well before t_max."""
    params = models.SystemParams.constrained(
        -7.5, J=8.0, g=-6.0, F=0.25, n_th=0.08
    )
    L = liouvillian.liouvillian(params, default_space)

    evolved = solver.steady_state_evolved(L)
    direct = solver.steady_state_direct(L)

    assert evolved.converged
    assert evolved.elapsed_time is not None and evolved.elapsed_time < 500
    assert observables.trace_distance(evolved.rho, direct.rho) < 1e-6


def test_evolved_stationary_initial_state(
    small_space: hilbert_ops.HilbertSpace,
) -> None:
    """Test that an already stationary state is returned at t = 0."""
    params = models.SystemParams(F=0.0)
    L = liouvillian.liouvillian(params, small_space)

    result = solver.steady_state_evolved(L)

    assert result.elapsed_time == 0.0
    assert result.converged


def test_evolved_not_converged(small_space: hilbert_ops.HilbertSpace) -> None:
    """Test that a too short integration raises with the last result attached."""
    params = models.SystemParams.constrained(10.0, J=6.0, g=4.0, F=0.3)
    L = liouvillian.liouvillian(params, small_space)

    with pytest.raises(exceptions.ConvergenceError) as exc_info:
        solver.steady_state_evolved(L, tol=1e-12, t_max=0.5)

    assert exc_info.value.residual > 1e-12
    assert exc_info.value.result is not None
    assert not exc_info.value.result.converged


def test_evolved_space_mismatch(
    default_space: hilbert_ops.HilbertSpace, small_space: hilbert_ops.HilbertSpace
) -> None:
    """Test an initial state from another space."""
    L = liouvillian.liouvillian(models.SystemParams(), small_space)

    with pytest.raises(exceptions.SpaceMismatchError):
        solver.steady_state_evolved(
            L, rho0=models.DensityMatrix.vacuum(default_space)
        )


def test_evolved_invalid_settings() -> None:
    """Test non-positive tolerance."""
    with pytest.raises(ValueError):
        solver.EvolvedSteadyStateSolver(tolerance=0.0)
