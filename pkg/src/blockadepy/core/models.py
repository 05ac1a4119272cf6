"""Internal data model."""

import math
from typing import Optional

import numpy as np
import pydantic
from pydantic import BaseModel, field_validator, model_validator

from blockadepy.core import config, hilbert_ops

logger = config.get_logger()

HERMITIAN_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-10
POSITIVITY_SLACK = 1e-8


class SystemParams(BaseModel):
    """Rates and detunings of the driven atom/two-cavity system.

    All values are in units of the cavity decay rate kappa.

    Attributes:
        delta_a: Detuning of mode a from the drive.
        delta_e: Detuning of the atomic transition.
        delta_b: Detuning of mode b.
        J: Linear atom/mode-a coupling.
        g: Second-order nonlinear coupling between mode a and mode b.
        F: Drive amplitude on mode a.
        kappa_a: Decay rate of mode a.
        kappa_b: Decay rate of mode b.
        gamma: Atomic spontaneous emission rate.
        n_th: Mean thermal photon number shared by all three baths.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    delta_a: float = 10.0
    delta_e: float = 10.0
    delta_b: float = 5.0
    J: float = 0.0
    g: float = 0.0
    F: float = 0.1
    kappa_a: float = 1.0
    kappa_b: float = 1.0
    gamma: float = 1.0
    n_th: float = 0.0

    @field_validator("*")
    def validate_finite(cls, v: float) -> float:
        """Validate that every parameter is finite.

        Args:
            cls: The class.
            v: The parameter value.

        Returns:
            v: The value if it is finite.

        Raises:
            ValueError: If the value is NaN or infinite.
        """
        if not math.isfinite(v):
            raise ValueError("system parameters must be finite")
        return v

    @field_validator("n_th")
    def validate_thermal_occupation(cls, v: float) -> float:
        """Validate that the thermal photon number is not negative.

        Args:
            cls: The class.
            v: The mean thermal photon number.

        Returns:
            v: The value if it is valid.

        Raises:
            ValueError: If n_th < 0.
        """
        if v < 0:
            raise ValueError("n_th must be >= 0")
        return v

    @model_validator(mode="after")
    def flag_non_positive_rates(self) -> "SystemParams":
        """Warn when a decay rate leaves the supported (dissipative) regime."""
        for name in ("kappa_a", "kappa_b", "gamma"):
            value = getattr(self, name)
            if value <= 0:
                logger.warning(
                    "%s=%s is outside the supported regime (rates > 0); gain "
                    "behaviour is not validated.",
                    name,
                    value,
                )
        return self

    @classmethod
    def constrained(cls, delta: float, **kwargs: float) -> "SystemParams":
        """Build parameters with delta_a = delta_e = delta and delta_b = delta / 2.

        Args:
            delta: The common detuning.
            **kwargs: Any other SystemParams field.

        Returns:
            The parameter set.
        """
        return cls(**ConstrainedDetuning(delta=delta).expand(), **kwargs)

    @property
    def is_constrained(self) -> bool:
        """True if the detunings satisfy delta_a = delta_e = 2 * delta_b."""
        return self.delta_a == self.delta_e and math.isclose(
            self.delta_b, self.delta_a / 2, rel_tol=1e-12, abs_tol=1e-12
        )


class ConstrainedDetuning(BaseModel):
    """The single detuning used when delta_a = delta_e = delta, delta_b = delta / 2."""

    model_config = pydantic.ConfigDict(frozen=True)

    delta: float

    def expand(self) -> dict[str, float]:
        """SystemParams detuning fields for this constraint."""
        return {
            "delta_a": self.delta,
            "delta_e": self.delta,
            "delta_b": self.delta / 2,
        }


class DensityMatrix(BaseModel):
    """A Hermitian, unit-trace, positive semi-definite state.

    Attributes:
        space: The Hilbert space of the state.
        matrix: Dense complex dim x dim matrix.
    """

    model_config = pydantic.ConfigDict(arbitrary_types_allowed=True, frozen=True)

    space: hilbert_ops.HilbertSpace
    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    def coerce_matrix(cls, v: object) -> np.ndarray:
        """Store the state as a dense complex array.

        Args:
            cls: The class.
            v: The matrix to store.

        Returns:
            The matrix as a complex ndarray.
        """
        return np.asarray(v, dtype=complex)

    @model_validator(mode="after")
    def validate_state(self) -> "DensityMatrix":
        """Validate shape, Hermiticity, trace and positivity.

        Returns:
            The validated state.

        Raises:
            ValueError: If any density-matrix invariant is violated.
        """
        dim = self.space.dim
        if self.matrix.shape != (dim, dim):
            raise ValueError(
                f"Density matrix shape {self.matrix.shape} does not match space "
                f"dimension {dim}"
            )
        if np.max(np.abs(self.matrix - self.matrix.conj().T)) > HERMITIAN_TOLERANCE:
            raise ValueError("Density matrix must be Hermitian")
        if abs(np.trace(self.matrix) - 1) > TRACE_TOLERANCE:
            raise ValueError("Density matrix must have unit trace")
        if self.min_eigenvalue < -POSITIVITY_SLACK:
            raise ValueError("Density matrix must be positive semi-definite")
        return self

    @property
    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue of the Hermitian part."""
        hermitian = (self.matrix + self.matrix.conj().T) / 2
        return float(np.linalg.eigvalsh(hermitian)[0])

    @classmethod
    def from_state(
        cls, state: hilbert_ops.BasisState, space: hilbert_ops.HilbertSpace
    ) -> "DensityMatrix":
        """Projector onto a single basis state."""
        vector = hilbert_ops.ket(state, space)
        return cls(space=space, matrix=np.outer(vector, vector.conj()))

    @classmethod
    def vacuum(cls, space: hilbert_ops.HilbertSpace) -> "DensityMatrix":
        """The projector onto |g,0,0>."""
        return cls.from_state(hilbert_ops.BasisState(atom="g", m=0, n=0), space)

    @classmethod
    def maximally_mixed(cls, space: hilbert_ops.HilbertSpace) -> "DensityMatrix":
        """The identity divided by the dimension."""
        return cls(space=space, matrix=np.eye(space.dim) / space.dim)


class SweepAxis(BaseModel):
    """A linearly spaced parameter axis.

    Attributes:
        name: A SystemParams field, or `delta` for the constrained detuning.
        min: First grid value.
        max: Last grid value.
        count: Number of grid points, at least 2.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    name: str
    min: float
    max: float
    count: int

    @field_validator("name")
    def validate_name(cls, v: str) -> str:
        """Validate that the axis names a sweepable parameter.

        Args:
            cls: The class.
            v: The parameter name.

        Returns:
            v: The name if it is valid.

        Raises:
            ValueError: If the name is neither a SystemParams field nor `delta`.
        """
        if v not in SWEEPABLE_PARAMETERS:
            raise ValueError(
                f"Unknown sweep parameter '{v}'. Choose from "
                f"{sorted(SWEEPABLE_PARAMETERS)}."
            )
        return v

    @field_validator("count")
    def validate_count(cls, v: int) -> int:
        """Validate that the axis has at least two points.

        Args:
            cls: The class.
            v: The number of points.

        Returns:
            v: The count if it is valid.

        Raises:
            ValueError: If count < 2.
        """
        if v < 2:
            raise ValueError("count must be >= 2")
        return v

    @model_validator(mode="after")
    def validate_range(self) -> "SweepAxis":
        """Validate that min < max."""
        if not self.min < self.max:
            raise ValueError(f"Axis '{self.name}' requires min < max")
        return self

    @classmethod
    def parse(cls, text: str) -> "SweepAxis":
        """Parse `name:min:max:count`.

        Args:
            text: The axis description, e.g. `g:-10:10:201`.

        Returns:
            The SweepAxis.

        Raises:
            ValueError: If the text does not have four colon-separated fields.
        """
        parts = text.split(":")
        if len(parts) != 4:
            raise ValueError(f"Axis '{text}' must be formatted as name:min:max:count")
        name, low, high, count = parts
        return cls(name=name, min=float(low), max=float(high), count=int(count))

    def to_text(self) -> str:
        """Inverse of parse."""
        return f"{self.name}:{self.min!r}:{self.max!r}:{self.count}"

    def values(self) -> np.ndarray:
        """The grid values of the axis."""
        return np.linspace(self.min, self.max, self.count)


SWEEPABLE_PARAMETERS = frozenset(SystemParams.model_fields) | {"delta"}


def with_parameter(params: SystemParams, name: str, value: float) -> SystemParams:
    """Copy of params with one field, or the constrained `delta`, replaced.

    Args:
        params: The base parameters.
        name: A SystemParams field name or `delta`.
        value: The new value.

    Returns:
        A new, validated SystemParams.
    """
    if name == "delta":
        update = ConstrainedDetuning(delta=value).expand()
    else:
        update = {name: value}
    return SystemParams(**(params.model_dump() | update))


def apply_updates(
    params: SystemParams, updates: Optional[dict[str, float]] = None
) -> SystemParams:
    """Apply several with_parameter updates in order."""
    for name, value in (updates or {}).items():
        params = with_parameter(params, name, value)
    return params
