"""Python based runner."""

import math
import pathlib
from typing import Any, Literal, Optional, Union

import numpy as np
import pydantic

from blockadepy.core import config, exceptions, hilbert_ops, models
from blockadepy.io.readers import readers
from blockadepy.io.writers import writers
from blockadepy.processing import (
    figures,
    liouvillian,
    model,
    observables,
    solver,
    sweep,
)

logger = config.get_logger()
settings = config.Settings()

PARAM_FIELDS = tuple(models.SystemParams.model_fields)

TRACE_PRESERVATION_LIMIT = 1e-12
HERMITICITY_LIMIT = 1e-12
POSITIVITY_LIMIT = -1e-8
NORMALIZATION_LIMIT = 1e-10
ORACLE_LIMIT = 1e-6
TRUNCATION_LIMIT = 0.01
ORACLE_POINTS = 3

# Mode b fills in photon pairs, so the comparison starts at seven b levels.
TRUNCATION_SPACES = ((5, 7), (7, 9))

FIG4A_POINT = models.SystemParams.constrained(10.0, J=6.0, g=4 * math.sqrt(2), F=0.1)


class RunConfig(pydantic.BaseModel):
    """Flat, fully resolved configuration of one run.

    The ten SystemParams fields appear under their own names; the key `delta`
    is accepted on input and expands to delta_a = delta_e = delta,
    delta_b = delta / 2.
    """

    model_config = pydantic.ConfigDict(extra="forbid", frozen=True)

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

    na_dim: int = 5
    nb_dim: int = 5

    tolerance: float = settings.STEADY_STATE_TOLERANCE
    evolve_tolerance: float = settings.EVOLVE_TOLERANCE
    t_max: float = settings.EVOLVE_T_MAX
    start: Literal["vacuum", "mixed"] = "vacuum"
    seed: int = 0

    axis1: Optional[models.SweepAxis] = None
    axis2: Optional[models.SweepAxis] = None
    log_g2: bool = True
    points_1d: int = settings.POINTS_1D
    points_2d: int = settings.POINTS_2D

    out: Optional[str] = None
    workers: int = pydantic.Field(default_factory=lambda: config.Settings().N_WORKERS)

    @pydantic.model_validator(mode="before")
    @classmethod
    def expand_delta(cls, data: Any) -> Any:
        """Expand the constrained detuning alias `delta`."""
        if isinstance(data, dict) and "delta" in data:
            data = dict(data)
            delta = data.pop("delta")
            data |= models.ConstrainedDetuning(delta=delta).expand()
        return data

    @pydantic.field_validator("axis1", "axis2", mode="before")
    @classmethod
    def parse_axis(cls, v: Any) -> Any:
        """Accept axes written as `name:min:max:count`."""
        if isinstance(v, str):
            return models.SweepAxis.parse(v)
        return v

    @pydantic.field_serializer("axis1", "axis2")
    def serialize_axis(self, v: Optional[models.SweepAxis]) -> Optional[str]:
        """Write axes as `name:min:max:count`."""
        return v.to_text() if v is not None else None

    @pydantic.field_validator("tolerance", "evolve_tolerance", "t_max")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        """Validate that solver settings are positive."""
        if not v > 0:
            raise ValueError("solver tolerances and t_max must be positive")
        return v

    @pydantic.field_validator("workers", "points_1d", "points_2d")
    @classmethod
    def validate_counts(cls, v: int) -> int:
        """Validate worker and grid counts."""
        if v < 1:
            raise ValueError("counts must be >= 1")
        return v

    @pydantic.model_validator(mode="after")
    def validate_model_inputs(self) -> "RunConfig":
        """Check params and truncation against the physics preconditions."""
        models.SystemParams(**self.param_values())
        hilbert_ops.HilbertSpace(na_dim=self.na_dim, nb_dim=self.nb_dim)
        return self

    def param_values(self) -> dict[str, float]:
        """The SystemParams fields of this configuration."""
        return {name: getattr(self, name) for name in PARAM_FIELDS}

    def param_overrides(self) -> dict[str, float]:
        """The SystemParams fields set explicitly rather than left at default."""
        return {
            name: getattr(self, name)
            for name in PARAM_FIELDS
            if name in self.model_fields_set
        }

    @property
    def params(self) -> models.SystemParams:
        """The system parameters."""
        return models.SystemParams(**self.param_values())

    @property
    def space(self) -> hilbert_ops.HilbertSpace:
        """The truncated Hilbert space."""
        return hilbert_ops.make_space(self.na_dim, self.nb_dim)

    def to_json(self) -> str:
        """Serialize as a flat JSON object."""
        return self.model_dump_json(indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        """Inverse of to_json."""
        return cls.model_validate_json(text)


def load_config(
    config_file: Optional[Union[pathlib.Path, str]] = None,
    overrides: Optional[list[str]] = None,
    **flags: Any,
) -> RunConfig:
    """Resolve a RunConfig.

    Precedence, lowest first: defaults (and BLOCKADEPY_N_WORKERS), the config
    file, `key=value` overrides, then explicit flags that are not None.

    Args:
        config_file: Optional flat JSON configuration file.
        overrides: `key=value` strings.
        **flags: Dedicated command line values, e.g. workers, na_dim, out.

    Returns:
        The validated configuration.

    Raises:
        ConfigError: If any source is unreadable or the result is invalid.
    """
    values: dict[str, Any] = {}
    if config_file is not None:
        values.update(readers.read_config_file(config_file))
    for text in overrides or []:
        key, value = readers.parse_override(text)
        if key == "delta":
            for name in ("delta_a", "delta_e", "delta_b"):
                values.pop(name, None)
        elif key in ("delta_a", "delta_e", "delta_b"):
            values.pop("delta", None)
        values[key] = value
    values.update({key: value for key, value in flags.items() if value is not None})

    try:
        return RunConfig(**values)
    except (pydantic.ValidationError, ValueError) as exc_info:
        raise exceptions.ConfigError(f"Invalid configuration: {exc_info}") from exc_info


class PointReport(pydantic.BaseModel):
    """Steady-state observables and analytic predictions at one point."""

    params: models.SystemParams
    observable_set: observables.ObservableSet
    residual: float
    converged: bool
    eigenfrequencies: Optional[model.EigenFrequencies] = None
    spectrum: list[float]
    cpb: Optional[model.CpbCouplings] = None
    on_cpb_condition: bool

    def format(self) -> str:
        """Human-readable report."""
        obs = self.observable_set
        g2 = f"{obs.g2_a:.6e}" if obs.g2_a is not None else "undefined (<n_a> ~ 0)"
        lines = [
            f"g2(0) mode a      : {g2}",
            f"antibunched       : {obs.antibunched}",
            f"N_a               : {obs.mean_n_a:.6e}",
            f"N_b               : {obs.mean_n_b:.6e}",
            f"P_g10             : {obs.populations[observables.G10]:.6e}",
            f"P_e00             : {obs.populations[observables.E00]:.6e}",
            f"P_g02             : {obs.populations[observables.G02]:.6e}",
            f"residual          : {self.residual:.3e}"
            f" ({'ok' if self.converged else 'FLAGGED'})",
        ]
        if self.eigenfrequencies is not None:
            xi = self.eigenfrequencies
            lines.append(
                f"xi+ / xi0 / xi-   : {xi.xi_plus:.6f} / {xi.xi_zero:.6f} / "
                f"{xi.xi_minus:.6f}"
            )
        else:
            lines.append(
                "xi (numerical)    : "
                + " / ".join(f"{value:.6f}" for value in reversed(self.spectrum))
            )
        if self.cpb is None:
            lines.append("CPB g*            : no real CPB solution (delta^2 < J^2)")
        else:
            lines.append(f"CPB g*            : +-{self.cpb.g_plus:.6f}")
        if self.on_cpb_condition:
            lines.append("on analytic CPB condition")
        return "\n".join(lines)


def run_point(run_config: RunConfig) -> PointReport:
    """Solve one parameter point and compare with the analytic spectrum.

    Args:
        run_config: The run configuration.

    Returns:
        The point report.

    Raises:
        SolverError: If the steady state cannot be computed.
    """
    params = run_config.params
    L = liouvillian.liouvillian(params, run_config.space)
    result = solver.steady_state_direct(L, tolerance=run_config.tolerance)

    eigen = model.eigenfrequencies(params) if params.is_constrained else None
    return PointReport(
        params=params,
        observable_set=observables.compute_observables(result.rho),
        residual=result.residual,
        converged=result.converged,
        eigenfrequencies=eigen,
        spectrum=np.linalg.eigvalsh(model.single_excitation_matrix(params)).tolist(),
        cpb=model.cpb_condition(params.delta_a, params.J),
        on_cpb_condition=model.on_cpb_condition(params),
    )


def _output_path(run_config: RunConfig, default: str) -> pathlib.Path:
    return pathlib.Path(run_config.out if run_config.out is not None else default)


def run_sweep(run_config: RunConfig) -> tuple[list[sweep.SweepRow], pathlib.Path]:
    """Run the sweep described by axis1/axis2 and write it as CSV.

    Args:
        run_config: The run configuration; axis1 is required.

    Returns:
        The rows and the path of the written CSV file.

    Raises:
        ConfigError: If no axis1 is configured.
    """
    if run_config.axis1 is None:
        raise exceptions.ConfigError("A sweep needs axis1 (name:min:max:count).")
    spec = sweep.SweepSpec(
        base=run_config.params,
        axis1=run_config.axis1,
        axis2=run_config.axis2,
        log_g2=run_config.log_g2,
    )
    output = _output_path(run_config, "sweep.csv")
    writers.validate_output(output)

    rows = sweep.run_sweep(
        spec,
        space=run_config.space,
        workers=run_config.workers,
        tolerance=run_config.tolerance,
    )
    writers.write_sweep_csv(
        rows, spec, output, settings=run_config.model_dump(mode="json")
    )
    return rows, output


def run_figure(
    preset_name: str,
    run_config: RunConfig,
    overrides: Optional[dict[str, float]] = None,
    plot_script: bool = True,
) -> list[pathlib.Path]:
    """Reproduce one figure preset as CSV files.

    Args:
        preset_name: One of figures.PRESET_NAMES.
        run_config: Supplies truncation (raised to the preset minimum),
            tolerance, workers, grid sizes and the output directory (`out`,
            default current directory).
        overrides: Parameter overrides applied on top of the preset.
        plot_script: Also write a matplotlib script for the emitted data.

    Returns:
        Paths of all written files.

    Raises:
        ConfigError: If the preset is unknown or the output directory is missing.
    """
    try:
        preset = figures.get_preset(
            preset_name,
            points_1d=run_config.points_1d,
            points_2d=run_config.points_2d,
        )
        if overrides:
            preset = preset.model_copy(
                update={"base": models.apply_updates(preset.base, overrides)}
            )
    except (ValueError, pydantic.ValidationError) as exc_info:
        raise exceptions.ConfigError(str(exc_info)) from exc_info

    out_dir = _output_path(run_config, ".")
    if not out_dir.is_dir():
        raise exceptions.DirectoryNotFoundError(
            f"The directory:{out_dir} does not exist."
        )

    space = preset.space(run_config.space)
    computed = []
    for curve, spec in preset.sweeps():
        logger.info("Computing %s %s.", preset.name, curve.label or "")
        rows = sweep.run_sweep(
            spec,
            space=space,
            workers=run_config.workers,
            tolerance=run_config.tolerance,
        )
        computed.append((curve, spec, rows))

    written = []
    for curve, spec, rows in computed:
        path = out_dir / f"{preset.file_stem(curve)}.csv"
        header = {
            "preset": preset.name,
            "curve": curve.label,
            **spec.base.model_dump(),
            "axis1": spec.axis1.to_text(),
            "axis2": spec.axis2.to_text() if spec.axis2 is not None else None,
            "na_dim": space.na_dim,
            "nb_dim": space.nb_dim,
            "tolerance": run_config.tolerance,
        }
        writers.write_sweep_csv(rows, spec, path, settings=header)
        written.append(path)

    overlay = None
    cpb_frame = figures.analytic_cpb_curve(preset)
    if cpb_frame is not None:
        overlay = out_dir / f"{preset.name}_cpb.csv"
        writers.write_frame(cpb_frame, overlay)
        written.append(overlay)

    if plot_script:
        script = out_dir / f"{preset.name}_plot.py"
        writers.write_plot_script(
            script,
            title=preset.name,
            csv_files={
                curve.label: path for (curve, _, _), path in zip(computed, written)
            },
            x=preset.axis1.name,
            column=preset.plot_column,
            y=preset.axis2.name if preset.axis2 is not None else None,
            overlay=overlay,
        )
        written.append(script)
    return written


class EvolveReport(pydantic.BaseModel):
    """Time-evolved steady state compared with the direct solve."""

    evolved: solver.SteadyStateResult
    direct: solver.SteadyStateResult
    trace_distance: float
    observable_set: observables.ObservableSet

    def format(self) -> str:
        """Human-readable report."""
        g2 = self.observable_set.g2_a
        return "\n".join(
            [
                f"integrated until t : {self.evolved.elapsed_time}",
                f"evolved residual   : {self.evolved.residual:.3e}",
                f"direct residual    : {self.direct.residual:.3e}",
                f"trace distance     : {self.trace_distance:.3e}",
                f"g2(0) mode a       : {g2 if g2 is not None else 'undefined'}",
                f"N_a                : {self.observable_set.mean_n_a:.6e}",
            ]
        )


def run_evolve(run_config: RunConfig) -> EvolveReport:
    """Evolve to the steady state and compare with the direct solver.

    Raises:
        ConvergenceError: If the evolution does not settle by t_max.
        SolverError: If the direct solve fails.
    """
    space = run_config.space
    L = liouvillian.liouvillian(run_config.params, space)
    rho0 = (
        models.DensityMatrix.maximally_mixed(space)
        if run_config.start == "mixed"
        else models.DensityMatrix.vacuum(space)
    )
    evolved = solver.steady_state_evolved(
        L, rho0=rho0, tol=run_config.evolve_tolerance, t_max=run_config.t_max
    )
    direct = solver.steady_state_direct(L, tolerance=run_config.tolerance)
    return EvolveReport(
        evolved=evolved,
        direct=direct,
        trace_distance=observables.trace_distance(evolved.rho, direct.rho),
        observable_set=observables.compute_observables(evolved.rho),
    )


class CheckResult(pydantic.BaseModel):
    """Outcome of one invariant check."""

    name: str
    passed: bool
    value: float
    limit: float
    detail: str = ""


class ValidationReport(pydantic.BaseModel):
    """Outcome of the invariant suite."""

    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        """True if every check passed."""
        return all(check.passed for check in self.checks)

    def format(self) -> str:
        """One line per check."""
        return "\n".join(
            f"[{'PASS' if check.passed else 'FAIL'}] {check.name}: "
            f"{check.value:.3e} (limit {check.limit:.1e}) {check.detail}".rstrip()
            for check in self.checks
        )


def random_density_matrix(
    space: hilbert_ops.HilbertSpace, rng: np.random.Generator
) -> models.DensityMatrix:
    """A random full-rank state, G G^dag / Tr(G G^dag) for complex Gaussian G."""
    shape = (space.dim, space.dim)
    ginibre = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    matrix = ginibre @ ginibre.conj().T
    matrix = (matrix + matrix.conj().T) / 2
    return models.DensityMatrix(space=space, matrix=matrix / np.trace(matrix).real)


def random_regime_params(rng: np.random.Generator) -> models.SystemParams:
    """Draw a point with |delta| <= 15, |J|, |g| <= 10, F <= 0.3, n_th <= 0.1."""
    return models.SystemParams.constrained(
        float(rng.uniform(-15, 15)),
        J=float(rng.uniform(-10, 10)),
        g=float(rng.uniform(-10, 10)),
        F=float(rng.uniform(0.05, 0.3)),
        n_th=float(rng.uniform(0, 0.1)),
    )


def _check(name: str, value: float, limit: float, passed: bool) -> CheckResult:
    return CheckResult(name=name, passed=passed, value=value, limit=limit)


def _failed(name: str, limit: float, exc_info: Exception) -> CheckResult:
    return CheckResult(
        name=name, passed=False, value=math.nan, limit=limit, detail=str(exc_info)
    )


def run_validation(run_config: RunConfig) -> ValidationReport:
    """Run the structural invariant suite.

    Checks trace and Hermiticity preservation of L, positivity and normalization
    of the direct steady state, agreement between the direct and evolved solvers
    at random points, and the truncation convergence of g2(0) at the drive
    strength study point.

    Args:
        run_config: Supplies the parameters, truncation, tolerances and seed.

    Returns:
        The report with one CheckResult per item.
    """
    space = run_config.space
    rng = np.random.default_rng(run_config.seed)
    L = liouvillian.liouvillian(run_config.params, space)
    checks = []

    leak = np.abs(L.matrix.transpose() @ liouvillian.trace_functional(space)).max()
    checks.append(
        _check(
            "trace_preservation",
            float(leak),
            TRACE_PRESERVATION_LIMIT,
            leak <= TRACE_PRESERVATION_LIMIT,
        )
    )

    derivative = liouvillian.apply(L, random_density_matrix(space, rng))
    skew = float(np.abs(derivative - derivative.conj().T).max())
    checks.append(
        _check(
            "hermiticity_preservation",
            skew,
            HERMITICITY_LIMIT,
            skew <= HERMITICITY_LIMIT,
        )
    )

    try:
        rho = solver.steady_state_direct(L, tolerance=run_config.tolerance).rho
        lowest = rho.min_eigenvalue
        checks.append(
            _check(
                "steady_state_positivity",
                lowest,
                POSITIVITY_LIMIT,
                lowest >= POSITIVITY_LIMIT,
            )
        )
        norm_error = abs(float(np.sum(np.diag(rho.matrix).real)) - 1)
        checks.append(
            _check(
                "population_normalization",
                norm_error,
                NORMALIZATION_LIMIT,
                norm_error <= NORMALIZATION_LIMIT,
            )
        )
    except exceptions.SolverError as exc_info:
        checks.append(_failed("steady_state_positivity", POSITIVITY_LIMIT, exc_info))
        checks.append(
            _failed("population_normalization", NORMALIZATION_LIMIT, exc_info)
        )

    for index in range(ORACLE_POINTS):
        name = f"oracle_equivalence_{index}"
        params = random_regime_params(rng)
        L_random = liouvillian.liouvillian(params, space)
        try:
            direct = solver.steady_state_direct(
                L_random, tolerance=run_config.tolerance
            )
            evolved = solver.steady_state_evolved(
                L_random, tol=run_config.evolve_tolerance, t_max=run_config.t_max
            )
        except exceptions.SolverError as exc_info:
            checks.append(_failed(name, ORACLE_LIMIT, exc_info))
            continue
        distance = observables.trace_distance(direct.rho, evolved.rho)
        checks.append(_check(name, distance, ORACLE_LIMIT, distance < ORACLE_LIMIT))

    try:
        coarse, fine = (
            observables.g2_zero(
                solver.steady_state_direct(
                    liouvillian.liouvillian(FIG4A_POINT, trunc),
                    tolerance=run_config.tolerance,
                ).rho
            )
            for trunc in (hilbert_ops.make_space(*dims) for dims in TRUNCATION_SPACES)
        )
        change = abs(fine - coarse) / abs(fine)
        checks.append(
            CheckResult(
                name="truncation_convergence",
                passed=change < TRUNCATION_LIMIT,
                value=change,
                limit=TRUNCATION_LIMIT,
                detail=" -> ".join(str(dims) for dims in TRUNCATION_SPACES),
            )
        )
    except (exceptions.SolverError, exceptions.UndefinedCorrelationError) as exc_info:
        checks.append(_failed("truncation_convergence", TRUNCATION_LIMIT, exc_info))

    report = ValidationReport(checks=checks)
    logger.info("Validation %s.", "passed" if report.passed else "FAILED")
    return report
