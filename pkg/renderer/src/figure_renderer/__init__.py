"""Publication-style figures from reservoir-stability CSV artifacts."""

from .render import FigureKind, RenderSpec, render, render_pc, render_spectra, render_trace
from .schemas import SchemaError

__all__ = [
    "FigureKind", "RenderSpec", "render",
    "render_pc", "render_spectra", "render_trace", "SchemaError",
]

__version__ = "0.1.0"
