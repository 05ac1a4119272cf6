"""Rotating-frame Hamiltonian and the analytic single-excitation spectrum."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from blockadepy.core import config, exceptions, hilbert_ops, models

logger = config.get_logger()


@dataclass
class EigenFrequencies:
    """Eigenvalues of the single-excitation block under constrained detunings.

    Attributes:
        xi_plus: delta + sqrt(2 g^2 + J^2).
        xi_zero: delta, the eigenvalue of the dark combination.
        xi_minus: delta - sqrt(2 g^2 + J^2).
    """

    xi_plus: float
    xi_zero: float
    xi_minus: float


@dataclass
class CpbCouplings:
    """Nonlinear couplings that put a single-excitation level on drive resonance.

    Attributes:
        g_plus: The positive root sqrt((delta^2 - J^2) / 2).
        g_minus: The negative root.
    """

    g_plus: float
    g_minus: float


def hamiltonian(
    params: models.SystemParams, space: hilbert_ops.HilbertSpace
) -> hilbert_ops.QOperator:
    """Assemble the Hamiltonian in the frame rotating at the drive frequency.

    H = delta_a a^dag a + delta_e sigma^dag sigma + delta_b b^dag b
        + J (a^dag sigma + sigma^dag a) + g (a^dag b^2 + b^dag^2 a) + F (a^dag + a)

    The result is symmetrized as (H + H^dag) / 2, so it is exactly Hermitian.

    Args:
        params: The system parameters.
        space: The truncated Hilbert space.

    Returns:
        The Hamiltonian operator.
    """
    a = hilbert_ops.annihilator_a(space)
    b = hilbert_ops.annihilator_b(space)
    sigma = hilbert_ops.sigma_minus(space)
    a_dag, b_dag, sigma_dag = a.dag(), b.dag(), sigma.dag()

    h = (
        params.delta_a * (a_dag @ a)
        + params.delta_e * (sigma_dag @ sigma)
        + params.delta_b * (b_dag @ b)
        + params.J * (a_dag @ sigma + sigma_dag @ a)
        + params.g * (a_dag @ b @ b + b_dag @ b_dag @ a)
        + params.F * (a_dag + a)
    )
    matrix = (h.matrix + h.matrix.conj().transpose()) / 2
    matrix.eliminate_zeros()
    return hilbert_ops.QOperator(space=space, matrix=matrix)


def excitation_number(space: hilbert_ops.HilbertSpace) -> hilbert_ops.QOperator:
    """N = a^dag a + sigma^dag sigma + b^dag b / 2, conserved by H when F = 0."""
    a = hilbert_ops.annihilator_a(space)
    b = hilbert_ops.annihilator_b(space)
    sigma = hilbert_ops.sigma_minus(space)
    return a.dag() @ a + sigma.dag() @ sigma + 0.5 * (b.dag() @ b)


def single_excitation_matrix(params: models.SystemParams) -> np.ndarray:
    """Hamiltonian block on (|g,1,0>, |e,0,0>, |g,0,2>), drive neglected.

    Args:
        params: The system parameters.

    Returns:
        The real symmetric 3 x 3 matrix.
    """
    root2_g = math.sqrt(2) * params.g
    return np.array(
        [
            [params.delta_a, params.J, root2_g],
            [params.J, params.delta_e, 0.0],
            [root2_g, 0.0, 2 * params.delta_b],
        ]
    )


def eigenfrequencies(params: models.SystemParams) -> EigenFrequencies:
    """Closed-form eigenvalues of the single-excitation block.

    Args:
        params: System parameters with delta_a = delta_e = 2 * delta_b.

    Returns:
        The three eigenfrequencies delta + r, delta, delta - r with
        r = sqrt(2 g^2 + J^2).

    Raises:
        UnconstrainedDetuningError: If the detunings are not constrained.
    """
    if not params.is_constrained:
        raise exceptions.UnconstrainedDetuningError(
            "Closed-form eigenfrequencies need delta_a = delta_e = 2 * delta_b, got "
            f"({params.delta_a}, {params.delta_e}, {params.delta_b})."
        )
    delta = params.delta_a
    r = math.sqrt(2 * params.g**2 + params.J**2)
    return EigenFrequencies(xi_plus=delta + r, xi_zero=delta, xi_minus=delta - r)


def cpb_condition(delta: float, J: float) -> Optional[CpbCouplings]:
    """Nonlinear couplings satisfying sqrt(2) g = +-sqrt(delta^2 - J^2).

    Args:
        delta: The constrained detuning.
        J: The linear atom/cavity coupling.

    Returns:
        The two roots, or None when delta^2 < J^2 and there is no real solution.
    """
    difference = delta**2 - J**2
    if difference < 0:
        return None
    g_star = math.sqrt(difference / 2)
    return CpbCouplings(g_plus=g_star, g_minus=-g_star)


def cpb_linear_coupling(delta: float, g: float) -> Optional[float]:
    """Non-negative J that satisfies the blockade condition for a given g.

    Solves J^2 = delta^2 - 2 g^2; the resonance sits at +-J.

    Returns:
        |J|, or None when delta^2 < 2 g^2.
    """
    difference = delta**2 - 2 * g**2
    if difference < 0:
        return None
    return math.sqrt(difference)


def on_cpb_condition(
    params: models.SystemParams, tolerance: float = 1e-6
) -> bool:
    """True if |sqrt(2) |g| - sqrt(delta^2 - J^2)| < tolerance."""
    couplings = cpb_condition(params.delta_a, params.J)
    if couplings is None:
        return False
    return abs(math.sqrt(2) * (abs(params.g) - couplings.g_plus)) < tolerance
