"""Two-panel sweep figures: false-alarm probability and throughput."""

from __future__ import annotations

from dataclasses import dataclass

from matplotlib.figure import Figure

from .data import SweepData, load_sweep


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    out_path: str        # format chosen by extension (.svg or .png)
    title: str = ""
    log_x: bool = False


def _alpha_label(alpha: float) -> str:
    return f"alpha = {alpha:g}"


def build_figure(data: SweepData, title: str = "",
                 log_x: bool = False) -> Figure:
    """Assemble the figure; plotting is a pure function of the CSV data."""
    fig = Figure(figsize=(11.0, 4.5))
    ax_pfa, ax_gamma = fig.subplots(1, 2)
    for series in data.series:
        ax_pfa.plot(series.values, series.pfa, marker="o", markersize=4,
                    label=_alpha_label(series.alpha))
        ax_gamma.plot(series.values, series.gamma_bps, marker="o",
                      markersize=4, label=_alpha_label(series.alpha))
    ax_pfa.set_xlabel(data.x_label)
    ax_pfa.set_ylabel("probability of false alarm")
    ax_gamma.set_xlabel(data.x_label)
    ax_gamma.set_ylabel("network throughput (bit/s)")
    for ax in (ax_pfa, ax_gamma):
        if log_x:
            ax.set_xscale("log")
        ax.grid(True, alpha=0.3)
        ax.legend()
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    return fig


def render_sweep(spec: FigureSpec) -> None:
    """Render one sweep CSV to the image file named in the spec."""
    data = load_sweep(spec.csv_path)
    fig = build_figure(data, title=spec.title, log_x=spec.log_x)
    fig.savefig(spec.out_path)
