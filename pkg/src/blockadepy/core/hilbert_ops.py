"""Truncated atom x mode-a x mode-b Hilbert spaces and their operators.

Basis ordering is atom-major, then mode a, then mode b:

    index = s * na_dim * nb_dim + m * nb_dim + n,   s = 0 for |g>, 1 for |e>.

Every vectorization and CSV dump in blockadepy relies on this ordering.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Literal, Union

import numpy as np
import pydantic
from scipy import sparse

from blockadepy.core import config, exceptions

if TYPE_CHECKING:
    from blockadepy.core import models

logger = config.get_logger()

ATOM_DIM = 2
MIN_NA_DIM = 2
MIN_NB_DIM = 3

_ATOM_LEVELS = {"g": 0, "e": 1}


class HilbertSpace(pydantic.BaseModel):
    """Truncation bounds of the tensor-product space atom x mode a x mode b.

    Attributes:
        atom_dim: Dimension of the two-level atom, always 2.
        na_dim: Number of Fock levels kept for mode a (photons 0..na_dim-1).
        nb_dim: Number of Fock levels kept for mode b. Must hold two photons for
            the second-order conversion process.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    atom_dim: Literal[2] = ATOM_DIM
    na_dim: int = 5
    nb_dim: int = 5

    @pydantic.field_validator("na_dim")
    def validate_na_dim(cls, v: int) -> int:
        """Validate that mode a can hold at least one photon.

        Args:
            cls: The class.
            v: The number of Fock levels of mode a.

        Returns:
            v: The number of levels if it is valid.

        Raises:
            ValueError: If fewer than 2 levels are requested.
        """
        if v < MIN_NA_DIM:
            raise ValueError(f"na_dim must be >= {MIN_NA_DIM}, got {v}")
        return v

    @pydantic.field_validator("nb_dim")
    def validate_nb_dim(cls, v: int) -> int:
        """Validate that mode b can hold at least two photons.

        Args:
            cls: The class.
            v: The number of Fock levels of mode b.

        Returns:
            v: The number of levels if it is valid.

        Raises:
            ValueError: If fewer than 3 levels are requested.
        """
        if v < MIN_NB_DIM:
            raise ValueError(f"nb_dim must be >= {MIN_NB_DIM}, got {v}")
        return v

    @property
    def dim(self) -> int:
        """Total dimension of the tensor-product space."""
        return self.atom_dim * self.na_dim * self.nb_dim


class BasisState(pydantic.BaseModel):
    """A product basis state |atom, m, n>.

    Attributes:
        atom: Atomic level, "g" (ground) or "e" (excited).
        m: Photon count of mode a.
        n: Photon count of mode b.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    atom: Literal["g", "e"]
    m: int = pydantic.Field(ge=0)
    n: int = pydantic.Field(ge=0)

    @property
    def label(self) -> str:
        """Compact label, e.g. `g10` for |g,1,0>."""
        return f"{self.atom}{self.m}{self.n}"


class QOperator(pydantic.BaseModel):
    """Sparse complex operator tagged with the space it acts on."""

    model_config = pydantic.ConfigDict(arbitrary_types_allowed=True, frozen=True)

    space: HilbertSpace
    matrix: sparse.csr_matrix

    @pydantic.field_validator("matrix", mode="before")
    def coerce_matrix(cls, v: object) -> sparse.csr_matrix:
        """Store every operator as a complex CSR matrix.

        Args:
            cls: The class.
            v: Any sparse matrix or dense array.

        Returns:
            The matrix in complex CSR format.
        """
        return sparse.csr_matrix(v, dtype=complex)

    @pydantic.model_validator(mode="after")
    def validate_shape(self) -> "QOperator":
        """Validate that the matrix shape matches the space dimension.

        Returns:
            The validated operator.

        Raises:
            ValueError: If the matrix is not dim x dim.
        """
        if self.matrix.shape != (self.space.dim, self.space.dim):
            raise ValueError(
                f"Operator shape {self.matrix.shape} does not match space "
                f"dimension {self.space.dim}"
            )
        return self

    def dag(self) -> "QOperator":
        """Conjugate transpose."""
        return dagger(self)

    def __add__(self, other: "QOperator") -> "QOperator":
        """Operator sum."""
        return add(self, other)

    def __sub__(self, other: "QOperator") -> "QOperator":
        """Operator difference."""
        return add(self, scale(-1.0, other))

    def __mul__(self, coefficient: Union[complex, float]) -> "QOperator":
        """Scalar multiple."""
        return scale(coefficient, self)

    __rmul__ = __mul__

    def __matmul__(self, other: "QOperator") -> "QOperator":
        """Operator product."""
        return mul(self, other)


def make_space(na_dim: int = 5, nb_dim: int = 5) -> HilbertSpace:
    """Build a truncated Hilbert space.

    Args:
        na_dim: Fock levels of mode a, at least 2.
        nb_dim: Fock levels of mode b, at least 3.

    Returns:
        The HilbertSpace with dim = 2 * na_dim * nb_dim.

    Raises:
        TruncationError: If the truncation cannot represent the conversion of one
            mode-a photon into two mode-b photons.
    """
    try:
        return HilbertSpace(na_dim=na_dim, nb_dim=nb_dim)
    except pydantic.ValidationError as exc_info:
        raise exceptions.TruncationError(
            f"Truncation (na_dim={na_dim}, nb_dim={nb_dim}) is below the minimum "
            f"({MIN_NA_DIM}, {MIN_NB_DIM}): {exc_info}"
        ) from exc_info


def basis_index(state: BasisState, space: HilbertSpace) -> int:
    """Position of a basis state in the atom-major ordering.

    Args:
        state: The basis state.
        space: The space to index into.

    Returns:
        s * na_dim * nb_dim + m * nb_dim + n.

    Raises:
        BasisStateError: If a photon count exceeds the truncation.
    """
    if state.m >= space.na_dim or state.n >= space.nb_dim:
        raise exceptions.BasisStateError(
            f"State |{state.atom},{state.m},{state.n}> is outside the space "
            f"(na_dim={space.na_dim}, nb_dim={space.nb_dim})."
        )
    s = _ATOM_LEVELS[state.atom]
    return s * space.na_dim * space.nb_dim + state.m * space.nb_dim + state.n


def basis_state(index: int, space: HilbertSpace) -> BasisState:
    """Inverse of basis_index.

    Args:
        index: Position in the atom-major ordering.
        space: The space to index into.

    Returns:
        The basis state stored at index.

    Raises:
        BasisStateError: If index is outside [0, dim).
    """
    if not 0 <= index < space.dim:
        raise exceptions.BasisStateError(
            f"Index {index} is outside [0, {space.dim})."
        )
    s, rest = divmod(index, space.na_dim * space.nb_dim)
    m, n = divmod(rest, space.nb_dim)
    return BasisState(atom="g" if s == 0 else "e", m=m, n=n)


def all_basis_states(space: HilbertSpace) -> list[BasisState]:
    """Every basis state of a space, in index order."""
    return [basis_state(index, space) for index in range(space.dim)]


def ket(state: BasisState, space: HilbertSpace) -> np.ndarray:
    """Dense column vector of a basis state."""
    vector = np.zeros(space.dim, dtype=complex)
    vector[basis_index(state, space)] = 1.0
    return vector


def _ladder(levels: int) -> sparse.csr_matrix:
    """Truncated bosonic annihilation operator, a|m> = sqrt(m)|m-1>."""
    return sparse.diags(np.sqrt(np.arange(1, levels)), offsets=1, format="csr")


def _embed(
    space: HilbertSpace,
    atom_op: sparse.spmatrix,
    a_op: sparse.spmatrix,
    b_op: sparse.spmatrix,
) -> QOperator:
    matrix = sparse.kron(atom_op, sparse.kron(a_op, b_op, format="csr"), format="csr")
    return QOperator(space=space, matrix=matrix)


def identity(space: HilbertSpace) -> QOperator:
    """Identity operator on the full space."""
    return QOperator(space=space, matrix=sparse.identity(space.dim, format="csr"))


def zero(space: HilbertSpace) -> QOperator:
    """Zero operator on the full space."""
    return QOperator(space=space, matrix=sparse.csr_matrix((space.dim, space.dim)))


def annihilator_a(space: HilbertSpace) -> QOperator:
    """Annihilation operator of mode a tensored with identities."""
    return _embed(
        space,
        sparse.identity(space.atom_dim),
        _ladder(space.na_dim),
        sparse.identity(space.nb_dim),
    )


def annihilator_b(space: HilbertSpace) -> QOperator:
    """Annihilation operator of mode b tensored with identities."""
    return _embed(
        space,
        sparse.identity(space.atom_dim),
        sparse.identity(space.na_dim),
        _ladder(space.nb_dim),
    )


def sigma_minus(space: HilbertSpace) -> QOperator:
    """Atomic lowering operator |g><e| tensored with identities."""
    lowering = sparse.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
    return _embed(
        space,
        lowering,
        sparse.identity(space.na_dim),
        sparse.identity(space.nb_dim),
    )


def _check_same_space(first: QOperator, second: QOperator) -> None:
    if first.space != second.space:
        raise exceptions.SpaceMismatchError(
            f"Operators act on different spaces: {first.space} vs {second.space}."
        )


def add(first: QOperator, second: QOperator) -> QOperator:
    """Sum of two operators on the same space.

    Raises:
        SpaceMismatchError: If the operators act on different spaces.
    """
    _check_same_space(first, second)
    return QOperator(space=first.space, matrix=first.matrix + second.matrix)


def scale(coefficient: Union[complex, float], operator: QOperator) -> QOperator:
    """Scalar multiple of an operator."""
    return QOperator(space=operator.space, matrix=coefficient * operator.matrix)


def mul(first: QOperator, second: QOperator) -> QOperator:
    """Matrix product first @ second.

    Raises:
        SpaceMismatchError: If the operators act on different spaces.
    """
    _check_same_space(first, second)
    return QOperator(space=first.space, matrix=first.matrix @ second.matrix)


def dagger(operator: QOperator) -> QOperator:
    """Conjugate transpose of an operator."""
    return QOperator(space=operator.space, matrix=operator.matrix.conj().transpose())


def commutator(first: QOperator, second: QOperator) -> QOperator:
    """[first, second] = first @ second - second @ first."""
    return mul(first, second) - mul(second, first)


def expectation(operator: QOperator, rho: "models.DensityMatrix") -> complex:
    """Tr(rho @ operator).

    Args:
        operator: The observable.
        rho: The state.

    Returns:
        The complex expectation value.

    Raises:
        SpaceMismatchError: If the state and operator live on different spaces.
    """
    if operator.space != rho.space:
        raise exceptions.SpaceMismatchError(
            f"Operator space {operator.space} does not match state space "
            f"{rho.space}."
        )
    return complex(np.trace(operator.matrix @ rho.matrix))
