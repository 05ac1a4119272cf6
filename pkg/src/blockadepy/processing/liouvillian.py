"""Lindblad generator on column-stacked density matrices.

A density matrix rho is vectorized by stacking its columns, so that column j
occupies entries j * dim .. (j + 1) * dim - 1 and

    vec(A rho B) = (B^T kron A) vec(rho).
"""

import numpy as np
import pydantic
from scipy import sparse

from blockadepy.core import config, exceptions, hilbert_ops, models
from blockadepy.processing import model

logger = config.get_logger()


class Superoperator(pydantic.BaseModel):
    """A sparse linear map on vectorized density matrices of a space."""

    model_config = pydantic.ConfigDict(arbitrary_types_allowed=True, frozen=True)

    space: hilbert_ops.HilbertSpace
    matrix: sparse.csr_matrix

    @pydantic.field_validator("matrix", mode="before")
    def coerce_matrix(cls, v: object) -> sparse.csr_matrix:
        """Store every superoperator as a complex CSR matrix.

        Args:
            cls: The class.
            v: Any sparse matrix or dense array.

        Returns:
            The matrix in complex CSR format.
        """
        return sparse.csr_matrix(v, dtype=complex)

    @pydantic.model_validator(mode="after")
    def validate_shape(self) -> "Superoperator":
        """Validate that the matrix is dim^2 x dim^2."""
        size = self.space.dim**2
        if self.matrix.shape != (size, size):
            raise ValueError(
                f"Superoperator shape {self.matrix.shape} does not match "
                f"({size}, {size})"
            )
        return self

    def __add__(self, other: "Superoperator") -> "Superoperator":
        """Sum of two superoperators on the same space."""
        if self.space != other.space:
            raise exceptions.SpaceMismatchError(
                "Superoperators act on different spaces."
            )
        return Superoperator(space=self.space, matrix=self.matrix + other.matrix)

    def __mul__(self, coefficient: float) -> "Superoperator":
        """Scalar multiple."""
        return Superoperator(space=self.space, matrix=coefficient * self.matrix)

    __rmul__ = __mul__


def vectorize(matrix: np.ndarray) -> np.ndarray:
    """Stack the columns of a matrix into one vector."""
    return np.asarray(matrix).reshape(-1, order="F")


def devectorize(vector: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of vectorize."""
    return np.asarray(vector).reshape((dim, dim), order="F")


def trace_functional(space: hilbert_ops.HilbertSpace) -> np.ndarray:
    """Row vector <<I| with <<I| vec(rho) = Tr(rho)."""
    return vectorize(np.eye(space.dim))


def _left(operator: hilbert_ops.QOperator) -> sparse.csr_matrix:
    """vec(A rho) = (I kron A) vec(rho)."""
    return sparse.kron(
        sparse.identity(operator.space.dim), operator.matrix, format="csr"
    )


def _right(operator: hilbert_ops.QOperator) -> sparse.csr_matrix:
    """vec(rho A) = (A^T kron I) vec(rho)."""
    return sparse.kron(
        operator.matrix.transpose(), sparse.identity(operator.space.dim), format="csr"
    )


def unitary_part(hamiltonian: hilbert_ops.QOperator) -> Superoperator:
    """Superoperator of rho -> -i [H, rho].

    Args:
        hamiltonian: The Hamiltonian.

    Returns:
        -i (I kron H - H^T kron I).
    """
    return Superoperator(
        space=hamiltonian.space,
        matrix=-1j * (_left(hamiltonian) - _right(hamiltonian)),
    )


def dissipator(c: hilbert_ops.QOperator) -> Superoperator:
    """Superoperator of D[c] rho = c rho c^dag - (c^dag c rho + rho c^dag c) / 2.

    Args:
        c: The jump operator.

    Returns:
        The dissipator in the column-stacking convention.
    """
    c_dag_c = c.dag() @ c
    jump = sparse.kron(c.matrix.conj(), c.matrix, format="csr")
    matrix = jump - 0.5 * (_left(c_dag_c) + _right(c_dag_c))
    return Superoperator(space=c.space, matrix=matrix)


def liouvillian(
    params: models.SystemParams, space: hilbert_ops.HilbertSpace
) -> Superoperator:
    """Full Lindblad generator with thermal baths.

    L = -i[H, .] + kappa_a (n+1) D[a] + kappa_a n D[a^dag]
        + gamma (n+1) D[sigma] + gamma n D[sigma^dag]
        + kappa_b (n+1) D[b] + kappa_b n D[b^dag]

    A single thermal occupation n = n_th is shared by the three baths.

    Args:
        params: The system parameters.
        space: The truncated Hilbert space.

    Returns:
        The Liouvillian superoperator.
    """
    logger.debug("Assembling Liouvillian on a space of dimension %s.", space.dim)
    generator = unitary_part(model.hamiltonian(params, space))
    channels = (
        (hilbert_ops.annihilator_a(space), params.kappa_a),
        (hilbert_ops.sigma_minus(space), params.gamma),
        (hilbert_ops.annihilator_b(space), params.kappa_b),
    )
    for c, rate in channels:
        if rate == 0:
            continue
        generator = generator + rate * (params.n_th + 1) * dissipator(c)
        if params.n_th > 0:
            generator = generator + rate * params.n_th * dissipator(c.dag())
    generator.matrix.eliminate_zeros()
    logger.debug("Liouvillian assembled with %s nonzeros.", generator.matrix.nnz)
    return generator


def apply(L: Superoperator, rho: models.DensityMatrix) -> np.ndarray:
    """Time derivative d rho / dt = L rho, as a dim x dim matrix.

    Args:
        L: The Liouvillian.
        rho: The state.

    Returns:
        The devectorized product L vec(rho).

    Raises:
        SpaceMismatchError: If the state and generator live on different spaces.
    """
    if L.space != rho.space:
        raise exceptions.SpaceMismatchError(
            f"Superoperator space {L.space} does not match state space {rho.space}."
        )
    return devectorize(L.matrix @ vectorize(rho.matrix), rho.space.dim)
