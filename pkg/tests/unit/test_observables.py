"""Test the photon statistics."""

import math

import numpy as np
import pytest
from scipy import special

from blockadepy.core import exceptions, hilbert_ops, models
from blockadepy.processing import liouvillian, observables, solver


def fock_state(
    m: int, n: int, space: hilbert_ops.HilbertSpace
) -> models.DensityMatrix:
    """Projector onto |g,m,n>."""
    return models.DensityMatrix.from_state(
        hilbert_ops.BasisState(atom="g", m=m, n=n), space
    )


def coherent_state(
    alpha: float, space: hilbert_ops.HilbertSpace
) -> models.DensityMatrix:
    """Truncated coherent state of mode a, renormalized."""
    vector = np.zeros(space.dim, dtype=complex)
    for m in range(space.na_dim):
        state = hilbert_ops.BasisState(atom="g", m=m, n=0)
        vector[hilbert_ops.basis_index(state, space)] = alpha**m / math.sqrt(
            special.factorial(m)
        )
    vector /= np.linalg.norm(vector)
    return models.DensityMatrix(space=space, matrix=np.outer(vector, vector.conj()))


@pytest.mark.parametrize("m, expected", [(1, 0.0), (2, 0.5), (3, 2 / 3)])
def test_g2_fock_states(
    m: int, expected: float, default_space: hilbert_ops.HilbertSpace
) -> None:
    """Test g2(0) = 1 - 1/m for Fock states."""
    g2 = observables.g2_zero(fock_state(m, 0, default_space))

    assert g2 == pytest.approx(expected, abs=1e-12)


def test_g2_mode_b(default_space: hilbert_ops.HilbertSpace) -> None:
    """Test g2(0) of mode b for a two-photon Fock state."""
    g2 = observables.g2_zero(fock_state(0, 2, default_space), mode="b")

    assert g2 == pytest.approx(0.5)


def test_g2_coherent_state(default_space: hilbert_ops.HilbertSpace) -> None:
    """Test g2(0) close to 1 for a weak coherent state."""
    rho = coherent_state(0.05, default_space)

    assert observables.g2_zero(rho) == pytest.approx(1.0, abs=1e-6)
    assert observables.mean_photon(rho) == pytest.approx(0.0025, rel=1e-4)


def test_g2_undefined_for_vacuum(default_space: hilbert_ops.HilbertSpace) -> None:
    """Test the floor on the mean photon number."""
    with pytest.raises(exceptions.UndefinedCorrelationError):
        observables.g2_zero(models.DensityMatrix.vacuum(default_space))


def test_g2_thermal_state(default_space: hilbert_ops.HilbertSpace) -> None:
    """Test bunching of a truncated thermal state."""
    weights = np.array([0.1**m for m in range(default_space.na_dim)])
    weights /= weights.sum()
    matrix = np.zeros((default_space.dim, default_space.dim))
    for m, weight in enumerate(weights):
        index = hilbert_ops.basis_index(
            hilbert_ops.BasisState(atom="g", m=m, n=0), default_space
        )
        matrix[index, index] = weight
    rho = models.DensityMatrix(space=default_space, matrix=matrix)

    g2 = observables.g2_zero(rho)

    assert g2 == pytest.approx(2.0, abs=0.02)
    assert not observables.is_antibunched(g2)


def test_mean_photon_fock(default_space: hilbert_ops.HilbertSpace) -> None:
    """Test mean photon numbers of both modes."""
    rho = fock_state(3, 2, default_space)

    assert observables.mean_photon(rho, "a") == pytest.approx(3.0)
    assert observables.mean_photon(rho, "b") == pytest.approx(2.0)


def test_population_sums_to_one(default_space: hilbert_ops.HilbertSpace) -> None:
    """Test that the populations of all basis states add up to 1."""
    rho = models.DensityMatrix.maximally_mixed(default_space)

    total = sum(
        observables.population(rho, state)
        for state in hilbert_ops.all_basis_states(default_space)
    )

    assert total == pytest.approx(1.0, abs=1e-12)


def test_population_out_of_range(small_space: hilbert_ops.HilbertSpace) -> None:
    """Test a basis state outside the truncation."""
    rho = models.DensityMatrix.vacuum(small_space)

    with pytest.raises(exceptions.BasisStateError):
        observables.population(rho, hilbert_ops.BasisState(atom="g", m=3, n=0))


def test_is_antibunched() -> None:
    """Test the sub-Poissonian criterion."""
    assert observables.is_antibunched(0.5)
    assert not observables.is_antibunched(1.0)


def test_trace_distance(default_space: hilbert_ops.HilbertSpace) -> None:
    """Test orthogonal and identical states."""
    vacuum = models.DensityMatrix.vacuum(default_space)
    one_photon = fock_state(1, 0, default_space)

    assert observables.trace_distance(vacuum, one_photon) == pytest.approx(1.0)
    assert observables.trace_distance(vacuum, vacuum) == pytest.approx(0.0)


def test_trace_distance_space_mismatch(
    default_space: hilbert_ops.HilbertSpace, small_space: hilbert_ops.HilbertSpace
) -> None:
    """Test states from different spaces."""
    with pytest.raises(exceptions.SpaceMismatchError):
        observables.trace_distance(
            models.DensityMatrix.vacuum(default_space),
            models.DensityMatrix.vacuum(small_space),
        )


def test_compute_observables_blockade_point(
    default_space: hilbert_ops.HilbertSpace, blockade_params: models.SystemParams
) -> None:
    """Test antibunching and the dominance of |g,1,0> at the blockade point."""
    rho = solver.steady_state_direct(
        liouvillian.liouvillian(blockade_params, default_space)
    ).rho

    result = observables.compute_observables(rho)

    assert result.g2_a is not None and result.g2_a < 1
    assert result.antibunched
    assert result.g2_b is not None
    assert result.mean_n_a > 0
    assert result.populations[observables.G10] > result.populations[observables.G02]


def test_compute_observables_undriven(default_space: hilbert_ops.HilbertSpace) -> None:
    """Test that an undefined g2(0) is reported as None."""
    result = observables.compute_observables(models.DensityMatrix.vacuum(default_space))

    assert result.g2_a is None
    assert result.g2_b is None
    assert result.antibunched is None
    assert result.mean_n_a == 0.0
