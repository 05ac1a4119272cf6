"""Test the hilbert_ops module."""

import numpy as np
import pytest
from scipy import sparse

from blockadepy.core import exceptions, hilbert_ops


def test_make_space_dimension() -> None:
    """Test the tensor-product dimension."""
    space = hilbert_ops.make_space(5, 5)

    assert space.dim == 50


@pytest.mark.parametrize("na_dim, nb_dim", [(1, 5), (5, 2)])
def test_make_space_too_small(na_dim: int, nb_dim: int) -> None:
    """Test the truncation minima."""
    with pytest.raises(exceptions.TruncationError):
        hilbert_ops.make_space(na_dim, nb_dim)


@pytest.mark.parametrize(
    "atom, m, n, expected", [("g", 0, 0, 0), ("g", 1, 0, 5), ("e", 0, 0, 25)]
)
def test_basis_index_known_values(atom: str, m: int, n: int, expected: int) -> None:
    """Test the atom-major ordering on the default space."""
    space = hilbert_ops.make_space(5, 5)

    index = hilbert_ops.basis_index(
        hilbert_ops.BasisState(atom=atom, m=m, n=n), space
    )

    assert index == expected


def test_basis_index_bijection(small_space: hilbert_ops.HilbertSpace) -> None:
    """Test that basis_state inverts basis_index over the whole space."""
    indices = [
        hilbert_ops.basis_index(state, small_space)
        for state in hilbert_ops.all_basis_states(small_space)
    ]

    assert indices == list(range(small_space.dim))


def test_basis_index_out_of_range() -> None:
    """Test a photon count beyond the truncation."""
    space = hilbert_ops.make_space(5, 5)

    with pytest.raises(exceptions.BasisStateError):
        hilbert_ops.basis_index(hilbert_ops.BasisState(atom="g", m=5, n=0), space)


def test_basis_state_out_of_range(small_space: hilbert_ops.HilbertSpace) -> None:
    """Test an index outside the space."""
    with pytest.raises(exceptions.BasisStateError):
        hilbert_ops.basis_state(small_space.dim, small_space)


def test_annihilator_action(default_space: hilbert_ops.HilbertSpace) -> None:
    """Test a|g,2,0> = sqrt(2)|g,1,0> and b|g,0,2> = sqrt(2)|g,0,1>."""
    a = hilbert_ops.annihilator_a(default_space)
    b = hilbert_ops.annihilator_b(default_space)

    def ket(m: int, n: int) -> np.ndarray:
        state = hilbert_ops.BasisState(atom="g", m=m, n=n)
        return hilbert_ops.ket(state, default_space)

    assert np.allclose(a.matrix @ ket(2, 0), np.sqrt(2) * ket(1, 0))
    assert np.allclose(b.matrix @ ket(0, 2), np.sqrt(2) * ket(0, 1))
    assert np.allclose(a.matrix @ ket(0, 3), 0)


def test_sigma_minus_action(default_space: hilbert_ops.HilbertSpace) -> None:
    """Test sigma|e,1,2> = |g,1,2> and sigma|g,1,2> = 0."""
    sigma = hilbert_ops.sigma_minus(default_space)
    excited = hilbert_ops.ket(
        hilbert_ops.BasisState(atom="e", m=1, n=2), default_space
    )
    ground = hilbert_ops.ket(hilbert_ops.BasisState(atom="g", m=1, n=2), default_space)

    assert np.allclose(sigma.matrix @ excited, ground)
    assert np.allclose(sigma.matrix @ ground, 0)


def test_sigma_minus_squares_to_zero(default_space: hilbert_ops.HilbertSpace) -> None:
    """Test that the atom cannot be lowered twice."""
    sigma = hilbert_ops.sigma_minus(default_space)

    assert hilbert_ops.mul(sigma, sigma).matrix.count_nonzero() == 0


def test_commuting_operators(default_space: hilbert_ops.HilbertSpace) -> None:
    """Test that operators of different subsystems commute."""
    a = hilbert_ops.annihilator_a(default_space)
    b = hilbert_ops.annihilator_b(default_space)
    sigma = hilbert_ops.sigma_minus(default_space)

    for first, second in [(a, b), (a, sigma), (b.dag(), sigma)]:
        assert hilbert_ops.commutator(first, second).matrix.count_nonzero() == 0


def test_canonical_commutator_below_cutoff(
    default_space: hilbert_ops.HilbertSpace,
) -> None:
    """Test [a, a^dag] = 1 away from the truncation edge."""
    a = hilbert_ops.annihilator_a(default_space)

    diagonal = hilbert_ops.commutator(a, a.dag()).matrix.diagonal()

    states = hilbert_ops.all_basis_states(default_space)
    below_cutoff = np.array([state.m < default_space.na_dim - 1 for state in states])
    assert np.allclose(diagonal[below_cutoff], 1)


def test_operator_algebra(small_space: hilbert_ops.HilbertSpace) -> None:
    """Test the operator overloads against the module functions."""
    a = hilbert_ops.annihilator_a(small_space)
    identity = hilbert_ops.identity(small_space)

    combined = 2.0 * a + identity - hilbert_ops.zero(small_space)

    expected = 2.0 * a.matrix + sparse.identity(small_space.dim)
    assert np.allclose(combined.matrix.toarray(), expected.toarray())
    product = (a @ a.dag()).matrix.toarray()
    assert np.allclose(product, (a.matrix @ a.dag().matrix).toarray())


def test_space_mismatch(
    default_space: hilbert_ops.HilbertSpace, small_space: hilbert_ops.HilbertSpace
) -> None:
    """Test combining operators of different spaces."""
    with pytest.raises(exceptions.SpaceMismatchError):
        hilbert_ops.add(
            hilbert_ops.annihilator_a(default_space),
            hilbert_ops.annihilator_a(small_space),
        )


def test_operator_shape_check(small_space: hilbert_ops.HilbertSpace) -> None:
    """Test the shape validation of QOperator."""
    with pytest.raises(ValueError):
        hilbert_ops.QOperator(space=small_space, matrix=np.eye(3))


def test_basis_state_label() -> None:
    """Test the compact label."""
    assert hilbert_ops.BasisState(atom="g", m=0, n=2).label == "g02"
