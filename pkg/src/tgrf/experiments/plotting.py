"""Deterministic SVG line plots of sweep tables

Plots are drawn with the object-oriented matplotlib API on an SVG canvas, with a
fixed hash salt and no date metadata, so the same table always produces the
same bytes.  Series are tagged with SVG ids: `line-<group>` for a polyline,
`marker-<group>` for a group with a single point, and `guide-<column>` for
reference curves.

"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import MalformedTableError


@dataclass(frozen=True)
class AxesSpec:
    """Which table columns to plot and how

    Parameters
    ----------
    x, y : str
        Column names for the axes.
    group : str or None
        Column whose distinct values become separate series.
    xscale, yscale : {"log", "linear"}
    guides : tuple of str
        Columns drawn as dashed reference curves, rescaled so that their
        geometric mean matches that of `y`.  Nonpositive values are skipped.
    title, xlabel, ylabel : str

    """
    x: str
    y: str
    group: str = None
    xscale: str = "log"
    yscale: str = "log"
    guides: tuple = field(default_factory=tuple)
    title: str = ""
    xlabel: str = None
    ylabel: str = None


def sweep_axes(kind):
    """Axes of the two sweep plots"""
    if kind == "fig2":
        return AxesSpec(x="h", y="ratio", group="scheme", ylabel="extended / original points")
    return AxesSpec(
        x="nu", y="gamma_star", group="scheme", ylabel="minimal γ",
        guides=("nu_pow_neg_half", "nu_half_log_nu"),
    )


def _check_table(table, axes):
    if table is None or len(table) == 0:
        raise MalformedTableError("Cannot plot an empty table")
    needed = [axes.x, axes.y] + ([axes.group] if axes.group else []) + list(axes.guides)
    missing = [c for c in needed if c not in table.columns]
    if missing:
        raise MalformedTableError(f"Table lacks columns {missing}")
    for column in [axes.x, axes.y] + list(axes.guides):
        try:
            np.asarray(table[column], dtype=float)
        except (TypeError, ValueError) as e:
            raise MalformedTableError(f"Column '{column}' is not numeric") from e


def _finite(x, y, log_x, log_y):
    keep = np.isfinite(x) & np.isfinite(y)
    if log_x:
        keep &= x > 0
    if log_y:
        keep &= y > 0
    return x[keep], y[keep]


def svg_plot(table, axes):
    """Render `table` as an SVG document

    Parameters
    ----------
    table : pandas.DataFrame
    axes : AxesSpec

    Returns
    -------
    svg : str

    Raises
    ------
    MalformedTableError
        If the table is empty or lacks numeric columns named in `axes`.

    """
    import io
    import matplotlib
    from matplotlib.figure import Figure
    from matplotlib.backends.backend_svg import FigureCanvasSVG

    _check_table(table, axes)
    log_x, log_y = axes.xscale == "log", axes.yscale == "log"
    rc = {"svg.hashsalt": "tgrf", "svg.fonttype": "none", "path.simplify": False}
    with matplotlib.rc_context(rc):
        figure = Figure(figsize=(6.4, 4.8))
        FigureCanvasSVG(figure)
        ax = figure.add_subplot()
        ax.set_xscale(axes.xscale)
        ax.set_yscale(axes.yscale)

        groups = [(None, table)] if axes.group is None else [
            (key, table[table[axes.group] == key]) for key in sorted(table[axes.group].unique(), key=str)
        ]
        all_y = []
        for key, rows in groups:
            rows = rows.sort_values(axes.x)
            x, y = _finite(rows[axes.x].to_numpy(dtype=float), rows[axes.y].to_numpy(dtype=float), log_x, log_y)
            if len(x) == 0:
                continue
            all_y.append(y)
            label = "series" if key is None else str(key)
            if len(x) == 1:
                ax.plot(x, y, marker="o", linestyle="none", label=label, gid=f"marker-{label}")
            else:
                ax.plot(x, y, marker="o", label=label, gid=f"line-{label}")

        if all_y and axes.guides:
            y_scale = np.exp(np.mean(np.log(np.concatenate(all_y)))) if log_y else np.mean(np.concatenate(all_y))
            unique = table.drop_duplicates(subset=[axes.x]).sort_values(axes.x)
            for column in axes.guides:
                x, g = _finite(unique[axes.x].to_numpy(dtype=float), unique[column].to_numpy(dtype=float), log_x, True)
                if len(x) < 2:
                    continue
                g = g * y_scale / np.exp(np.mean(np.log(g)))
                ax.plot(x, g, linestyle="--", color="0.5", linewidth=1, label=column, gid=f"guide-{column}")

        ax.set_xlabel(axes.xlabel or axes.x)
        ax.set_ylabel(axes.ylabel or axes.y)
        if axes.title:
            ax.set_title(axes.title)
        ax.legend(loc="best")
        buffer = io.StringIO()
        figure.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()
