"""Write sweep results and plotting scripts."""

import json
import pathlib
from typing import Any, Optional

import polars as pl

from blockadepy.core import config, exceptions
from blockadepy.processing import sweep

logger = config.get_logger()

RESULT_COLUMNS = ("g2", "log10_g2", "n_a", "p_g10", "p_g02", "residual", "status")


def validate_output(
    output: pathlib.Path, valid_suffixes: tuple[str, ...] = (".csv",)
) -> None:
    """Validates that the output path exists and is a valid format.

    Args:
        output: The file to be written.
        valid_suffixes: Accepted file extensions.

    Raises:
        InvalidFileTypeError: If the extension is not one of valid_suffixes.
        DirectoryNotFoundError: If the parent directory does not exist.
    """
    if not output.parent.exists():
        raise exceptions.DirectoryNotFoundError(
            f"The directory:{output.parent} does not exist."
        )
    if output.suffix not in valid_suffixes:
        raise exceptions.InvalidFileTypeError(
            f"The extension: {output.suffix} is not supported. "
            f"Please save the file as one of {valid_suffixes}.",
        )


def rows_to_frame(rows: list[sweep.SweepRow], axes: list[str]) -> pl.DataFrame:
    """Tabulate sweep rows, axis columns first.

    Args:
        rows: The sweep rows in grid order.
        axes: The axis names, in column order.

    Returns:
        A polars DataFrame with the axis columns followed by RESULT_COLUMNS.
    """
    columns: dict[str, list[Any]] = {name: [] for name in (*axes, *RESULT_COLUMNS)}
    for row in rows:
        for name in axes:
            columns[name].append(row.values[name])
        columns["g2"].append(row.g2_a)
        columns["log10_g2"].append(row.log10_g2)
        columns["n_a"].append(row.mean_n_a)
        columns["p_g10"].append(row.p_g10)
        columns["p_g02"].append(row.p_g02)
        columns["residual"].append(row.residual)
        columns["status"].append(row.status)

    schema: dict[str, Any] = {name: pl.Float64 for name in columns}
    schema["status"] = pl.Utf8
    return pl.DataFrame(columns, schema=schema)


def _comment_block(settings: Optional[dict[str, Any]]) -> str:
    if not settings:
        return ""
    return "".join(
        f"# {key}: {json.dumps(value)}\n" for key, value in settings.items()
    )


def write_frame(
    frame: pl.DataFrame,
    output: pathlib.Path,
    settings: Optional[dict[str, Any]] = None,
) -> None:
    """Write a frame as CSV, preceded by `#` comment lines.

    Args:
        frame: The data to write.
        output: Destination .csv file.
        settings: Resolved configuration written as `# key: value` lines.
    """
    validate_output(output)
    with output.open("w", newline="") as handle:
        handle.write(_comment_block(settings))
        frame.write_csv(handle, separator=",")
    logger.debug("Results saved in: %s", output)


def write_sweep_csv(
    rows: list[sweep.SweepRow],
    spec: sweep.SweepSpec,
    output: pathlib.Path,
    settings: Optional[dict[str, Any]] = None,
) -> None:
    """Write the rows of one sweep.

    Args:
        rows: The sweep rows in grid order.
        spec: The sweep that produced them.
        output: Destination .csv file.
        settings: Resolved configuration for the comment block.
    """
    logger.debug("Saving sweep results.")
    frame = rows_to_frame(rows, [axis.name for axis in spec.axes])
    write_frame(frame, output, settings)


def read_sweep_csv(path: pathlib.Path) -> pl.DataFrame:
    """Read a CSV written by write_frame, skipping the comment block."""
    return pl.read_csv(path, comment_prefix="#")


_PLOT_1D = '''"""Plot {title}. Requires matplotlib and polars."""

import matplotlib.pyplot as plt
import polars as pl

FILES = {files!r}

fig, ax = plt.subplots()
for label, path in FILES.items():
    data = pl.read_csv(path, comment_prefix="#").filter(pl.col("status") == "ok")
    ax.plot(data["{x}"], data["{column}"], label=label or None)
ax.set_xlabel("{x}")
ax.set_ylabel("{column}")
if len(FILES) > 1:
    ax.legend()
fig.savefig("{stem}.png", dpi=200)
'''

_PLOT_2D = '''"""Plot {title}. Requires matplotlib and polars."""

import matplotlib.pyplot as plt
import polars as pl

data = pl.read_csv({path!r}, comment_prefix="#")
grid = data.pivot(index="{y}", on="{x}", values="{column}")
x = [float(name) for name in grid.columns[1:]]
y = grid["{y}"].to_list()

fig, ax = plt.subplots()
mesh = ax.pcolormesh(x, y, grid.drop("{y}").to_numpy(), shading="auto")
fig.colorbar(mesh, label="{column}")
{overlay}ax.set_xlabel("{x}")
ax.set_ylabel("{y}")
fig.savefig("{stem}.png", dpi=200)
'''

_OVERLAY = '''cpb = pl.read_csv({path!r})
for column in ("{x}_plus", "{x}_minus"):
    ax.plot(cpb[column], cpb["{y}"], "w:")
'''


def write_plot_script(
    output: pathlib.Path,
    title: str,
    csv_files: dict[str, pathlib.Path],
    x: str,
    column: str,
    y: Optional[str] = None,
    overlay: Optional[pathlib.Path] = None,
) -> None:
    """Write a standalone matplotlib script that plots emitted CSV files.

    Nothing is plotted in-process; the script is run separately.

    Args:
        output: Destination .py file.
        title: Title used in the script docstring.
        csv_files: Curve label to CSV path; a 2-D map takes a single entry.
        x: Inner axis column.
        column: Result column to plot.
        y: Outer axis column of a 2-D map, None for curves.
        overlay: Optional analytic-condition CSV drawn over a 2-D map.
    """
    validate_output(output, valid_suffixes=(".py",))
    names = {label: path.name for label, path in csv_files.items()}
    if y is None:
        script = _PLOT_1D.format(
            title=title, files=names, x=x, column=column, stem=output.stem
        )
    else:
        overlay_code = (
            _OVERLAY.format(path=overlay.name, x=x, y=y) if overlay is not None else ""
        )
        script = _PLOT_2D.format(
            title=title,
            path=next(iter(names.values())),
            x=x,
            y=y,
            column=column,
            overlay=overlay_code,
            stem=output.stem,
        )
    output.write_text(script)
    logger.debug("Plot script saved in: %s", output)
