"""Sweep presets for the blockade maps and curves.

Every preset fixes the parameters of one figure panel and lists the curves drawn
in it. The "1" variants of the 2-D maps reuse the grid of their partner and plot
the brightness instead of g2(0).
"""

import math
from typing import Literal, Optional

import polars as pl
import pydantic

from blockadepy.core import config, hilbert_ops, models
from blockadepy.processing import model, sweep

logger = config.get_logger()
settings = config.Settings()

PresetName = Literal[
    "fig2a",
    "fig2a1",
    "fig2b",
    "fig2b1",
    "fig2c",
    "fig2c1",
    "fig3a",
    "fig3b",
    "fig4a",
    "fig4b",
]
PRESET_NAMES: tuple[str, ...] = PresetName.__args__  # type: ignore[attr-defined]


class Curve(pydantic.BaseModel):
    """One curve (or map) of a preset.

    Attributes:
        label: Suffix used in the output file name, empty for single-curve presets.
        updates: Parameter overrides on top of the preset base.
    """

    label: str = ""
    updates: dict[str, float] = {}


class FigurePreset(pydantic.BaseModel):
    """Fixed parameters, axes and curves of one figure panel.

    Attributes:
        name: The preset name.
        base: Parameters shared by every curve.
        axis1: The inner axis.
        axis2: Optional outer axis for 2-D maps.
        curves: The curves to compute.
        plot_column: CSV column shown by the plotting script.
        log_g2: Plot on a logarithmic g2(0) scale.
        min_trunc: Smallest (na_dim, nb_dim) the preset is computed on.
    """

    name: PresetName
    base: models.SystemParams
    axis1: models.SweepAxis
    axis2: Optional[models.SweepAxis] = None
    curves: list[Curve] = [Curve()]
    plot_column: Literal["g2", "log10_g2", "n_a"] = "log10_g2"
    log_g2: bool = True
    min_trunc: Optional[tuple[int, int]] = None

    def sweeps(self) -> list[tuple[Curve, sweep.SweepSpec]]:
        """The SweepSpec of every curve."""
        return [
            (
                curve,
                sweep.SweepSpec(
                    base=models.apply_updates(self.base, curve.updates),
                    axis1=self.axis1,
                    axis2=self.axis2,
                    log_g2=self.log_g2,
                ),
            )
            for curve in self.curves
        ]

    def space(self, space: hilbert_ops.HilbertSpace) -> hilbert_ops.HilbertSpace:
        """The given truncation, raised to min_trunc where it falls short."""
        if self.min_trunc is None:
            return space
        na_dim = max(space.na_dim, self.min_trunc[0])
        nb_dim = max(space.nb_dim, self.min_trunc[1])
        if (na_dim, nb_dim) != (space.na_dim, space.nb_dim):
            logger.warning(
                "Raising the truncation of %s from (%s, %s) to (%s, %s).",
                self.name,
                space.na_dim,
                space.nb_dim,
                na_dim,
                nb_dim,
            )
        return hilbert_ops.make_space(na_dim, nb_dim)

    def file_stem(self, curve: Curve) -> str:
        """Output file name without suffix."""
        return f"{self.name}_{curve.label}" if curve.label else self.name


def get_preset(
    name: str,
    points_1d: int = settings.POINTS_1D,
    points_2d: int = settings.POINTS_2D,
) -> FigurePreset:
    """Build a figure preset.

    Args:
        name: One of PRESET_NAMES.
        points_1d: Grid points of 1-D curves.
        points_2d: Grid points per axis of 2-D maps.

    Returns:
        The preset.

    Raises:
        ValueError: If the preset name is unknown.
    """
    if name not in PRESET_NAMES:
        raise ValueError(f"Unknown preset '{name}'. Choose from {PRESET_NAMES}.")

    def axis(param: str, low: float, high: float, count: int) -> models.SweepAxis:
        return models.SweepAxis(name=param, min=low, max=high, count=count)

    zero_temperature = {"F": 0.1, "n_th": 0.0}
    column: Literal["log10_g2", "n_a"] = "n_a" if name.endswith("1") else "log10_g2"
    panel = name.rstrip("1") if name.startswith("fig2") else name

    if panel == "fig2a":
        return FigurePreset(
            name=name,
            base=models.SystemParams.constrained(10.0, **zero_temperature),
            axis1=axis("g", -10.0, 10.0, points_2d),
            axis2=axis("J", -10.0, 10.0, points_2d),
            plot_column=column,
        )
    if panel == "fig2b":
        return FigurePreset(
            name=name,
            base=models.SystemParams.constrained(10.0, J=2.0, **zero_temperature),
            axis1=axis("g", -10.0, 10.0, points_2d),
            axis2=axis("delta", 0.0, 20.0, points_2d),
            plot_column=column,
        )
    if panel == "fig2c":
        return FigurePreset(
            name=name,
            base=models.SystemParams.constrained(10.0, g=5.0, **zero_temperature),
            axis1=axis("J", -10.0, 10.0, points_2d),
            axis2=axis("delta", 0.0, 20.0, points_2d),
            plot_column=column,
        )
    if panel == "fig3a":
        return FigurePreset(
            name=name,
            base=models.SystemParams.constrained(10.0, **zero_temperature),
            axis1=axis("g", -10.0, 10.0, points_1d),
            curves=[Curve(label=f"J{j}", updates={"J": float(j)}) for j in (5, 7, 9)],
            plot_column="g2",
            log_g2=False,
        )
    if panel == "fig3b":
        return FigurePreset(
            name=name,
            base=models.SystemParams.constrained(10.0, **zero_temperature),
            axis1=axis("J", -10.0, 10.0, points_1d),
            curves=[Curve(label=f"g{g}", updates={"g": float(g)}) for g in (5, 6, 7)],
        )
    if panel == "fig4a":
        return FigurePreset(
            name=name,
            base=models.SystemParams.constrained(
                10.0, J=6.0, g=4 * math.sqrt(2), n_th=0.0
            ),
            axis1=axis("F", 0.01, 2.0, points_1d),
            min_trunc=(8, 8),
        )
    return FigurePreset(
        name=name,
        base=models.SystemParams.constrained(8.0, g=5.0, F=0.1),
        axis1=axis("J", -6.0, 6.0, points_1d),
        curves=[
            Curve(label=f"nth{n_th}", updates={"n_th": n_th})
            for n_th in (0.001, 0.01, 0.1)
        ],
    )


def analytic_cpb_curve(preset: FigurePreset) -> Optional[pl.DataFrame]:
    """Blockade condition drawn over a 2-D map.

    For every value of the outer axis, gives the values of the inner axis that
    put a single-excitation level on resonance with the drive.

    Args:
        preset: A figure preset.

    Returns:
        A frame with the outer-axis column and `<axis1>_plus`, `<axis1>_minus`
        columns, or None for 1-D presets and inner axes other than g or J.
    """
    if preset.axis2 is None or preset.axis1.name not in ("g", "J"):
        return None

    outer, plus, minus = [], [], []
    for value in preset.axis2.values():
        params = models.with_parameter(preset.base, preset.axis2.name, float(value))
        if preset.axis1.name == "g":
            couplings = model.cpb_condition(params.delta_a, params.J)
            root = couplings.g_plus if couplings is not None else None
        else:
            root = model.cpb_linear_coupling(params.delta_a, params.g)
        if root is None:
            continue
        outer.append(float(value))
        plus.append(root)
        minus.append(-root)

    return pl.DataFrame(
        {
            preset.axis2.name: outer,
            f"{preset.axis1.name}_plus": plus,
            f"{preset.axis1.name}_minus": minus,
        },
        schema={
            preset.axis2.name: pl.Float64,
            f"{preset.axis1.name}_plus": pl.Float64,
            f"{preset.axis1.name}_minus": pl.Float64,
        },
    )
