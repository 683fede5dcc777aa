"""Static plots of the approximation measure at best approximants."""

from .plot import InputError, PlotSpec, RefLine, RenderResult, read_points, render

__all__ = [
    "InputError",
    "PlotSpec",
    "RefLine",
    "RenderResult",
    "read_points",
    "render",
]
