"""Two-panel figures (false-alarm probability + throughput) from sweep CSVs.

Consumes only the CSV file contract of the metrics tool; never imports it.
"""

from .data import SchemaError, SweepData, SweepSeries, load_sweep
from .render import FigureSpec, build_figure, render_sweep

__version__ = "0.1.0"

__all__ = [
    "FigureSpec",
    "SchemaError",
    "SweepData",
    "SweepSeries",
    "build_figure",
    "load_sweep",
    "render_sweep",
    "__version__",
]
