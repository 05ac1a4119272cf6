"""Photon statistics and populations of a steady state."""

from typing import Literal, Optional

import numpy as np
import pydantic

from blockadepy.core import config, exceptions, hilbert_ops, models

logger = config.get_logger()
settings = config.Settings()

IMAGINARY_TOLERANCE = 1e-10

G10 = hilbert_ops.BasisState(atom="g", m=1, n=0)
E00 = hilbert_ops.BasisState(atom="e", m=0, n=0)
G02 = hilbert_ops.BasisState(atom="g", m=0, n=2)


class ObservableSet(pydantic.BaseModel):
    """Observables extracted from one steady state.

    Attributes:
        g2_a: Zero-delay correlation of mode a, None when undefined.
        g2_b: Zero-delay correlation of mode b, None when undefined.
        mean_n_a: Brightness of mode a.
        mean_n_b: Brightness of mode b.
        populations: Populations of |g,1,0>, |e,0,0> and |g,0,2>.
    """

    g2_a: Optional[float] = None
    g2_b: Optional[float] = None
    mean_n_a: float
    mean_n_b: float
    populations: dict[hilbert_ops.BasisState, float]

    @property
    def antibunched(self) -> Optional[bool]:
        """Sub-Poissonian statistics of mode a, None when g2 is undefined."""
        if self.g2_a is None:
            return None
        return is_antibunched(self.g2_a)


def _mode_annihilator(
    space: hilbert_ops.HilbertSpace, mode: Literal["a", "b"]
) -> hilbert_ops.QOperator:
    if mode == "a":
        return hilbert_ops.annihilator_a(space)
    if mode == "b":
        return hilbert_ops.annihilator_b(space)
    raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")


def _real(value: complex, what: str) -> float:
    if abs(value.imag) > IMAGINARY_TOLERANCE:
        raise ValueError(
            f"{what} has imaginary part {value.imag}, expected a real value"
        )
    return value.real


def mean_photon(rho: models.DensityMatrix, mode: Literal["a", "b"] = "a") -> float:
    """Mean photon number Tr(rho n) of a mode.

    Args:
        rho: The state.
        mode: Which cavity mode.

    Returns:
        The real mean photon number.
    """
    annihilator = _mode_annihilator(rho.space, mode)
    number = annihilator.dag() @ annihilator
    return _real(hilbert_ops.expectation(number, rho), f"<n_{mode}>")


def g2_zero(
    rho: models.DensityMatrix,
    mode: Literal["a", "b"] = "a",
    floor: float = settings.G2_FLOOR,
) -> float:
    """Zero-delay second-order correlation <a^dag a^dag a a> / <a^dag a>^2.

    Args:
        rho: The state.
        mode: Which cavity mode.
        floor: Smallest mean photon number for which g2(0) is defined.

    Returns:
        The real g2(0).

    Raises:
        UndefinedCorrelationError: If the mean photon number is below floor.
    """
    annihilator = _mode_annihilator(rho.space, mode)
    creator = annihilator.dag()
    mean = _real(hilbert_ops.expectation(creator @ annihilator, rho), f"<n_{mode}>")
    if mean < floor:
        raise exceptions.UndefinedCorrelationError(
            f"Mean photon number of mode {mode} is {mean}, below the floor {floor}; "
            "g2(0) is undefined."
        )
    pairs = creator @ creator @ annihilator @ annihilator
    numerator = _real(hilbert_ops.expectation(pairs, rho), f"<{mode}^dag^2 {mode}^2>")
    return numerator / mean**2


def population(rho: models.DensityMatrix, state: hilbert_ops.BasisState) -> float:
    """Diagonal element of rho at a basis state.

    Raises:
        BasisStateError: If the state is outside the space of rho.
    """
    index = hilbert_ops.basis_index(state, rho.space)
    return _real(complex(rho.matrix[index, index]), f"P_{state.label}")


def is_antibunched(g2: float) -> bool:
    """Sub-Poissonian criterion g2(0) < 1."""
    return g2 < 1


def trace_distance(first: models.DensityMatrix, second: models.DensityMatrix) -> float:
    """Half the trace norm of the difference of two states.

    Raises:
        SpaceMismatchError: If the states live on different spaces.
    """
    if first.space != second.space:
        raise exceptions.SpaceMismatchError("States live on different spaces.")
    difference = first.matrix - second.matrix
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(difference))))


def _optional_g2(
    rho: models.DensityMatrix, mode: Literal["a", "b"]
) -> Optional[float]:
    try:
        return g2_zero(rho, mode)
    except exceptions.UndefinedCorrelationError:
        return None


def compute_observables(rho: models.DensityMatrix) -> ObservableSet:
    """Collect g2(0), brightness and the single-excitation populations."""
    return ObservableSet(
        g2_a=_optional_g2(rho, "a"),
        g2_b=_optional_g2(rho, "b"),
        mean_n_a=mean_photon(rho, "a"),
        mean_n_b=mean_photon(rho, "b"),
        populations={state: population(rho, state) for state in (G10, E00, G02)},
    )
