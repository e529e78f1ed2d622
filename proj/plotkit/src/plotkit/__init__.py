"""Offline rendering of wgcasimir scan files."""

from plotkit.render import FIGURE_IDS, FigureJob, RenderSummary, render
from plotkit.schema import Scan, SchemaError, load

__all__ = ["FIGURE_IDS", "FigureJob", "RenderSummary", "Scan", "SchemaError", "load", "render"]
