"""Density maps and line cuts for the wgcasimir figure presets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from plotkit.schema import Scan, SchemaError, load  # noqa: E402


@dataclass(frozen=True)
class FigureLayout:
    observables: tuple[str, ...]
    overlays: tuple[str, ...] = ()
    overlay_style: dict = field(default_factory=dict)
    line_cut: bool = False


_EIG_STYLE = {"color": "white", "linestyle": "--", "linewidth": 1.0}
_SINGLE_STYLE = {"color": "0.8", "linestyle": ":", "linewidth": 1.0}
_ZERO_STYLE = {"color": "white", "linestyle": "--", "linewidth": 1.2}
_RIDGE_STYLE = {"color": "red", "linestyle": ":", "linewidth": 1.2}

_LAYOUTS = {
    "fig2": FigureLayout(("spectrum",), line_cut=True),
    **{
        f"fig3{s}": FigureLayout(("I_minus",), ("pair_eig", "single_eig2"),
                                 {"pair_eig": _EIG_STYLE, "single_eig2": _SINGLE_STYLE})
        for s in "abcd"
    },
    **{f"fig4{s}": FigureLayout(("I_minus", "I_plus", "directivity")) for s in "abcd"},
    "fig5a": FigureLayout(("G2mm",), ("g2_zero_line",), {"g2_zero_line": _ZERO_STYLE}),
    "fig5b": FigureLayout(("G2mm",)),
    "fig6": FigureLayout(("G2mm",), ("pair_eig",), {"pair_eig": _RIDGE_STYLE}),
}

FIGURE_IDS = tuple(_LAYOUTS)

_AXIS_TEXT = {
    "Omega_detuning": r"$(\Omega - 2\omega_0)/\gamma_{1D}$",
    "omega_detuning": r"$(\omega - \omega_0)/\gamma_{1D}$",
    "qd": r"$qd$",
    "U": r"$U/\gamma_{1D}$",
}

_OBSERVABLE_TEXT = {
    "I1": r"$I_1$",
    "I_minus": r"$I_-$",
    "I_plus": r"$I_+$",
    "G2mm": r"$G^{(2)}_{--}$",
    "spectrum": r"$S(\omega)$",
    "directivity": r"$(I_- - I_+)/(I_- + I_+)$",
}


@dataclass
class FigureJob:
    inputs: list[Path]
    figure_id: str
    output: Path
    cmap: str = "viridis"
    xlabel: str | None = None
    ylabel: str | None = None
    overlays: bool = True
    log: bool = False


@dataclass
class RenderSummary:
    output: Path
    panels: int
    mask_markers: int
    overlay_curves: int


def _axis_text(label: str) -> str:
    if label.startswith("phi_"):
        return rf"$\phi_{{{label[4:]}}}$"
    return _AXIS_TEXT.get(label, label)


def _extent(values: np.ndarray) -> tuple[float, float]:
    if values.size == 1:
        return values[0] - 0.5, values[0] + 0.5
    half = 0.5 * (values[-1] - values[0]) / (values.size - 1)
    return values[0] - half, values[-1] + half


def _orient(scan: Scan) -> tuple[bool, np.ndarray, np.ndarray, str, str]:
    """Puts the drive-frequency axis vertical when present."""
    swap = scan.axis1.label == "Omega_detuning"
    a, b = (scan.axis2, scan.axis1) if swap else (scan.axis1, scan.axis2)
    return swap, a.values, b.values, a.label, b.label


def _merge(scans: list[Scan]) -> Scan:
    base = scans[0]
    for other in scans[1:]:
        if other.shape != base.shape or other.axis1.label != base.axis1.label or other.axis2.label != base.axis2.label:
            raise SchemaError("inputs of one figure must share their axes")
        for key, values in other.layers.items():
            base.layers.setdefault(key, values)
        for key, values in other.masks.items():
            base.masks.setdefault(key, values)
        for key, values in other.overlays.items():
            base.overlays.setdefault(key, values)
    return base


def _density(ax, scan: Scan, data: np.ndarray, job: FigureJob, title: str):
    swap, x, y, xl, yl = _orient(scan)
    image = data if swap else data.T
    shown = np.where(image > 0, image, np.nan) if job.log else image
    norm = None
    if job.log and np.any(np.isfinite(shown)):
        norm = matplotlib.colors.LogNorm(vmin=np.nanmin(shown), vmax=np.nanmax(shown))
    x0, x1 = _extent(x)
    y0, y1 = _extent(y)
    im = ax.imshow(shown, origin="lower", aspect="auto", extent=(x0, x1, y0, y1), cmap=job.cmap, norm=norm,
                   interpolation="nearest")
    ax.set_xlabel(job.xlabel or _axis_text(xl))
    ax.set_ylabel(job.ylabel or _axis_text(yl))
    ax.set_title(title, fontsize=9)
    ax.figure.colorbar(im, ax=ax)
    return swap, x, y


def _mask_markers(ax, scan: Scan, engine: str, swap: bool, x: np.ndarray, y: np.ndarray) -> int:
    mask = scan.masks.get(engine)
    if mask is None or not mask.any():
        return 0
    flags = mask if swap else mask.T
    iy, ix = np.nonzero(flags)
    ax.scatter(x[ix], y[iy], marker="x", s=12, color="red", linewidths=0.8)
    return int(ix.size)


def _overlay_curves(ax, scan: Scan, layout: FigureLayout) -> int:
    """Overlay values are drive detunings that depend on the horizontal parameter only."""
    if scan.axis2.label == "Omega_detuning":
        x, pick = scan.axis1.values, lambda v: v[:, 0]
    elif scan.axis1.label == "Omega_detuning":
        x, pick = scan.axis2.values, lambda v: v[0, :]
    else:
        return 0
    drawn = 0
    limits = ax.get_xlim(), ax.get_ylim()
    for name in sorted(scan.overlays):
        family = next((f for f in layout.overlays if name == f or name.startswith(f + "_")), None)
        if family is None:
            continue
        curve = pick(scan.overlays[name])
        if not np.any(np.isfinite(curve)):
            continue
        ax.plot(x, curve, **layout.overlay_style.get(family, {}))
        drawn += 1
    ax.set_xlim(limits[0])
    ax.set_ylim(limits[1])
    return drawn


def _line_cut(ax, scan: Scan, swap: bool) -> None:
    """Row of the map at Omega = 2 omega0 + U."""
    omega_axis, scan_axis = (scan.axis1, scan.axis2) if swap else (scan.axis2, scan.axis1)
    target = float(scan.config.get("anharmonicity", math.nan))
    if omega_axis.label != "Omega_detuning" or not math.isfinite(target):
        raise SchemaError("a line cut needs an Omega_detuning axis and the anharmonicity in the config")
    k = int(np.argmin(np.abs(omega_axis.values - target)))
    for engine in scan.engines_for("spectrum"):
        data = scan.layers[("spectrum", engine)]
        row = data[k, :] if swap else data[:, k]
        ax.plot(scan_axis.values, row, label=engine)
    ax.set_xlabel(_axis_text(scan_axis.label))
    ax.set_ylabel(_OBSERVABLE_TEXT["spectrum"])
    ax.set_title(rf"cut at $(\Omega - 2\omega_0)/\gamma_{{1D}}$ = {omega_axis.values[k]:.4g}", fontsize=9)
    ax.legend(fontsize=8)


def render(job: FigureJob) -> RenderSummary:
    if job.figure_id not in _LAYOUTS:
        raise SchemaError(f"unknown figure id: {job.figure_id}")
    layout = _LAYOUTS[job.figure_id]
    if not job.inputs:
        raise SchemaError("no input files")
    scan = _merge([load(p) for p in job.inputs])

    panels: list[tuple[str, str]] = []
    for observable in layout.observables:
        engines = scan.engines_for(observable)
        if not engines:
            raise SchemaError(f"{job.figure_id} needs a {observable}_<engine> column")
        panels.extend((observable, e) for e in engines)
    if layout.line_cut:
        panels = panels[:1]

    count = len(panels) + (1 if layout.line_cut else 0)
    ncols = min(count, 3)
    nrows = math.ceil(count / ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(4.2 * ncols, 3.4 * nrows), squeeze=False)
    markers = curves = 0
    swap = False
    for ax, (observable, engine) in zip(axes.flat, panels):
        title = f"{_OBSERVABLE_TEXT[observable]} ({engine})"
        swap, x, y = _density(ax, scan, scan.layers[(observable, engine)], job, title)
        markers += _mask_markers(ax, scan, engine, swap, x, y)
        if job.overlays:
            curves += _overlay_curves(ax, scan, layout)
    if layout.line_cut:
        _line_cut(axes.flat[len(panels)], scan, swap)
    for ax in list(axes.flat)[count:]:
        ax.set_visible(False)
    fig.suptitle(job.figure_id, fontsize=10)
    fig.tight_layout()
    output = Path(job.output)
    output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(output, dpi=110)
    plt.close(fig)
    return RenderSummary(output, count, markers, curves)
