"""Bar-chart rendering of comparison CSVs."""

__version__ = "0.1.0"

from .plot import SeriesRow, parse_series, render
