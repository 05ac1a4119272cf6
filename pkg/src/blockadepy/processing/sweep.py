"""Parameter sweeps of the steady-state photon statistics."""

import math
from dataclasses import dataclass
from typing import Literal, Optional

import joblib
import numpy as np
import pydantic

from blockadepy.core import config, exceptions, hilbert_ops, models
from blockadepy.processing import liouvillian, observables, solver

logger = config.get_logger()
settings = config.Settings()


class SweepSpec(pydantic.BaseModel):
    """A 1-D or 2-D grid over system parameters.

    Attributes:
        base: Parameters shared by every grid point.
        axis1: The inner (fastest varying) axis.
        axis2: Optional outer axis.
        log_g2: Plot log10 g2(0) rather than g2(0).
    """

    model_config = pydantic.ConfigDict(frozen=True)

    base: models.SystemParams = models.SystemParams()
    axis1: models.SweepAxis
    axis2: Optional[models.SweepAxis] = None
    log_g2: bool = True

    @pydantic.model_validator(mode="after")
    def validate_distinct_axes(self) -> "SweepSpec":
        """Validate that the two axes sweep different parameters."""
        if self.axis2 is None:
            return self
        clash = {self.axis1.name, self.axis2.name}
        if len(clash) == 1 or (
            "delta" in clash and clash & {"delta_a", "delta_e", "delta_b"}
        ):
            raise ValueError(
                f"Axes '{self.axis1.name}' and '{self.axis2.name}' overlap."
            )
        return self

    @property
    def axes(self) -> list[models.SweepAxis]:
        """The axes in column order."""
        return [self.axis1] if self.axis2 is None else [self.axis1, self.axis2]

    def grid(self) -> list[dict[str, float]]:
        """Axis values of every point, axis2-major then axis1."""
        inner = [{self.axis1.name: float(v)} for v in self.axis1.values()]
        if self.axis2 is None:
            return inner
        return [
            {**point, self.axis2.name: float(outer)}
            for outer in self.axis2.values()
            for point in inner
        ]


class SweepRow(pydantic.BaseModel):
    """Observables at one grid point.

    Attributes:
        values: Axis name to value.
        g2_a: g2(0) of mode a, None when undefined or when the solve failed.
        mean_n_a: Brightness of mode a.
        p_g10: Population of |g,1,0>.
        p_g02: Population of |g,0,2>.
        residual: Steady-state residual, NaN when the solve failed.
        status: ok, undefined_g2 or solver_failed.
    """

    values: dict[str, float]
    g2_a: Optional[float] = None
    mean_n_a: Optional[float] = None
    p_g10: Optional[float] = None
    p_g02: Optional[float] = None
    residual: float = math.nan
    status: Literal["ok", "undefined_g2", "solver_failed"]

    @property
    def log10_g2(self) -> Optional[float]:
        """log10 of g2(0), None when it is undefined or not positive."""
        if self.g2_a is None or self.g2_a <= 0:
            return None
        return math.log10(self.g2_a)


@dataclass
class Minimum:
    """A refined local minimum of g2(0) along one axis.

    Attributes:
        location: Parabolic vertex position along the axis.
        g2_value: g2(0) at the vertex.
    """

    location: float
    g2_value: float


def evaluate_point(
    params: models.SystemParams,
    space: hilbert_ops.HilbertSpace,
    values: dict[str, float],
    tolerance: float = settings.STEADY_STATE_TOLERANCE,
) -> SweepRow:
    """Independent Liouvillian build and steady-state solve for one grid point.

    Failures are recorded in the row status and never raised.

    Args:
        params: Parameters at this point.
        space: The truncated Hilbert space.
        values: The axis values to record.
        tolerance: Residual below which the solve counts as successful.

    Returns:
        The SweepRow for this point.
    """
    try:
        result = solver.steady_state_direct(
            liouvillian.liouvillian(params, space), tolerance=tolerance
        )
    except exceptions.SolverError:
        return SweepRow(values=values, status="solver_failed")

    rho = result.rho
    try:
        g2 = observables.g2_zero(rho, "a")
    except exceptions.UndefinedCorrelationError:
        g2 = None

    if not result.converged:
        status = "solver_failed"
    elif g2 is None:
        status = "undefined_g2"
    else:
        status = "ok"

    return SweepRow(
        values=values,
        g2_a=g2,
        mean_n_a=observables.mean_photon(rho, "a"),
        p_g10=observables.population(rho, observables.G10),
        p_g02=observables.population(rho, observables.G02),
        residual=result.residual,
        status=status,
    )


def run_sweep(
    spec: SweepSpec,
    space: Optional[hilbert_ops.HilbertSpace] = None,
    workers: Optional[int] = None,
    tolerance: float = settings.STEADY_STATE_TOLERANCE,
) -> list[SweepRow]:
    """Evaluate every grid point of a sweep.

    Points are farmed out to a joblib worker pool; results come back in grid
    order, so the output does not depend on the number of workers.

    Args:
        spec: The sweep specification.
        space: The truncated Hilbert space, 5 x 5 photon levels if None.
        workers: Pool width, Settings().N_WORKERS if None.
        tolerance: Residual below which a point counts as solved.

    Returns:
        One SweepRow per grid point, axis2-major then axis1.
    """
    space = space if space is not None else hilbert_ops.make_space()
    workers = workers if workers is not None else settings.N_WORKERS
    grid = spec.grid()
    logger.debug("Running sweep of %s points on %s workers.", len(grid), workers)

    jobs = (
        joblib.delayed(evaluate_point)(
            models.apply_updates(spec.base, point), space, point, tolerance
        )
        for point in grid
    )
    rows = joblib.Parallel(n_jobs=workers)(jobs)

    failed = sum(row.status == "solver_failed" for row in rows)
    if failed:
        logger.warning("%s of %s sweep points failed to solve.", failed, len(rows))
    logger.debug("Sweep complete.")
    return list(rows)


def find_minima(rows: list[SweepRow], axis: str) -> list[Minimum]:
    """Strict interior local minima of g2(0) along one axis.

    Each minimum is refined by the vertex of the parabola through the bracketing
    samples. A candidate counts only when it and both grid neighbours are ok
    rows.

    Args:
        rows: Rows of a 1-D sweep.
        axis: The swept parameter name.

    Returns:
        The refined minima in axis order; empty for monotone data.

    Raises:
        SweepError: If fewer than three usable rows are available.
    """
    ordered = sorted(rows, key=lambda row: row.values[axis])
    usable = [row.status == "ok" and row.g2_a is not None for row in ordered]
    if sum(usable) < 3:
        raise exceptions.SweepError(
            f"find_minima needs at least 3 ok rows, got {sum(usable)}."
        )
    x = np.array([row.values[axis] for row in ordered])
    y = np.array(
        [row.g2_a if ok else np.nan for row, ok in zip(ordered, usable)], dtype=float
    )

    minima = []
    for i in range(1, len(ordered) - 1):
        if not all(usable[i - 1 : i + 2]):
            continue
        if not (y[i] < y[i - 1] and y[i] < y[i + 1]):
            continue
        curvature, slope, offset = np.polyfit(x[i - 1 : i + 2], y[i - 1 : i + 2], 2)
        if curvature > 0:
            location = -slope / (2 * curvature)
            value = np.polyval([curvature, slope, offset], location)
        else:
            location, value = x[i], y[i]
        minima.append(Minimum(location=float(location), g2_value=float(value)))
    return minima
