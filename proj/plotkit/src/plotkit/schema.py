"""Strict readers for the scan CSV and JSON files written by the wgcasimir CLI."""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

OBSERVABLES = ("I1", "I_minus", "I_plus", "G2mm", "spectrum", "directivity")
ENGINES = ("master", "diagrams", "analytic")
UNITS = "all frequencies in units of gamma_1D"
HEADER_KEYS = ("wgcasimir scan", "units", "config", "axes", "provenance")

_LAYER = re.compile(rf"^({'|'.join(OBSERVABLES)})_({'|'.join(ENGINES)})$")
_MASK = re.compile(rf"^mask_({'|'.join(ENGINES)})$")
_OVERLAY = re.compile(r"^overlay_(pair_eig_\d+|single_eig2_\d+|g2_zero_line)$")
_AXIS_PARAMETER = re.compile(r"^(Omega|omega_scan|qd|U|phi_\d+)$")
_AXIS_LABELS = {"Omega": "Omega_detuning", "omega_scan": "omega_detuning"}


class SchemaError(ValueError):
    """Input file does not follow the scan schema."""


@dataclass
class Axis:
    parameter: str
    label: str
    values: np.ndarray


@dataclass
class Scan:
    """One two-axis scan; every array has shape (len(axis1), len(axis2))."""

    config: dict
    axis1: Axis
    axis2: Axis
    layers: dict[tuple[str, str], np.ndarray] = field(default_factory=dict)
    masks: dict[str, np.ndarray] = field(default_factory=dict)
    overlays: dict[str, np.ndarray] = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.axis1.values.size, self.axis2.values.size)

    def engines_for(self, observable: str) -> list[str]:
        return [e for e in ENGINES if (observable, e) in self.layers]


def _axis_meta(meta: dict, where: str) -> tuple[str, str]:
    if not isinstance(meta, dict):
        raise SchemaError(f"{where}: axis entry is not an object")
    try:
        parameter, label = meta["parameter"], meta["label"]
    except KeyError as err:
        raise SchemaError(f"{where}: axis entry lacks {err.args[0]}") from None
    if not _AXIS_PARAMETER.match(str(parameter)):
        raise SchemaError(f"{where}: unknown axis parameter: {parameter}")
    if label != _AXIS_LABELS.get(parameter, parameter):
        raise SchemaError(f"{where}: axis label {label} does not match parameter {parameter}")
    return parameter, label


def _classify(name: str) -> tuple[str, object]:
    if m := _LAYER.match(name):
        return "layer", (m.group(1), m.group(2))
    if m := _MASK.match(name):
        return "mask", m.group(1)
    if m := _OVERLAY.match(name):
        return "overlay", m.group(1)
    raise SchemaError(f"unknown column: {name}")


def _number(text: str, column: str, row: int) -> float:
    if text == "nan":
        return math.nan
    try:
        return float(text)
    except ValueError:
        raise SchemaError(f"column {column}, data row {row}: not a number: {text!r}") from None


def _check_mask(values: np.ndarray, column: str) -> np.ndarray:
    if not np.all(np.isin(values, (0.0, 1.0))):
        raise SchemaError(f"column {column}: mask values must be 0 or 1")
    return values.astype(bool)


def _check_grid(name: str, column: np.ndarray, outer: bool) -> np.ndarray:
    """Rows are axis1-outer; returns the distinct axis values or raises."""
    values = column[:, 0] if outer else column[0, :]
    expected = values[:, None] if outer else values[None, :]
    if not np.array_equal(column, np.broadcast_to(expected, column.shape)):
        raise SchemaError(f"column {name}: values do not form an axis1-outer grid")
    return values.copy()


def load_csv(path: str | Path) -> Scan:
    text = Path(path).read_text()
    lines = text.splitlines()
    header: dict[str, str] = {}
    body_start = 0
    for k, line in enumerate(lines):
        if not line.startswith("#"):
            body_start = k
            break
        content = line[1:].strip()
        key, _, value = content.partition(":")
        key = key.strip() if value else content
        if key not in HEADER_KEYS:
            raise SchemaError(f"unknown header line: {line}")
        header[key] = value.strip()
    else:
        raise SchemaError("no column row")
    missing = [k for k in HEADER_KEYS if k not in header]
    if missing:
        raise SchemaError(f"missing header line: {missing[0]}")
    if header["units"] != UNITS:
        raise SchemaError(f"unexpected units line: {header['units']}")
    try:
        config = json.loads(header["config"])
        axes = json.loads(header["axes"])
        provenance = json.loads(header["provenance"])
    except json.JSONDecodeError as err:
        raise SchemaError(f"header JSON does not parse: {err}") from None
    if not isinstance(axes, dict) or set(axes) != {"axis1", "axis2"}:
        raise SchemaError("axes header needs exactly axis1 and axis2")
    p1, l1 = _axis_meta(axes["axis1"], "axis1")
    p2, l2 = _axis_meta(axes["axis2"], "axis2")
    n1, n2 = int(axes["axis1"].get("size", 0)), int(axes["axis2"].get("size", 0))
    if n1 < 1 or n2 < 1:
        raise SchemaError("axis sizes must be positive")

    reader = csv.reader(io.StringIO("\n".join(lines[body_start:])))
    columns = next(reader)
    if len(columns) < 3:
        raise SchemaError("expected two axis columns and at least one data column")
    if columns[0] != l1:
        raise SchemaError(f"unknown column: {columns[0]} (expected axis label {l1})")
    if columns[1] != l2:
        raise SchemaError(f"unknown column: {columns[1]} (expected axis label {l2})")
    kinds = [_classify(c) for c in columns[2:]]
    if len(set(columns)) != len(columns):
        raise SchemaError("duplicate column names")

    rows = [r for r in reader if r]
    if len(rows) != n1 * n2:
        raise SchemaError(f"expected {n1 * n2} data rows, found {len(rows)}")
    data = np.empty((len(rows), len(columns)))
    for i, row in enumerate(rows):
        if len(row) != len(columns):
            raise SchemaError(f"data row {i} has {len(row)} fields, expected {len(columns)}")
        for j, text in enumerate(row):
            data[i, j] = _number(text, columns[j], i)
    grid = data.reshape(n1, n2, len(columns))

    scan = Scan(
        config=config,
        axis1=Axis(p1, l1, _check_grid(l1, grid[:, :, 0], outer=True)),
        axis2=Axis(p2, l2, _check_grid(l2, grid[:, :, 1], outer=False)),
        provenance=provenance,
    )
    for k, (kind, key) in enumerate(kinds):
        values = grid[:, :, k + 2].copy()
        if kind == "layer":
            scan.layers[key] = values
        elif kind == "mask":
            scan.masks[key] = _check_mask(values, columns[k + 2])
        else:
            scan.overlays[key] = values
    if not scan.layers:
        raise SchemaError("no observable columns")
    return scan


def _json_matrix(data: object, shape: tuple[int, int], where: str) -> np.ndarray:
    if not isinstance(data, list) or len(data) != shape[0] * shape[1]:
        raise SchemaError(f"{where}: data length does not match shape {list(shape)}")
    try:
        flat = np.array([math.nan if v is None else float(v) for v in data])
    except (TypeError, ValueError):
        raise SchemaError(f"{where}: non-numeric entry") from None
    return flat.reshape(shape)


def load_json(path: str | Path) -> Scan:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as err:
        raise SchemaError(f"JSON does not parse: {err}") from None
    keys = {"units", "config", "axes", "shape", "arrays", "mask", "overlays", "provenance"}
    if not isinstance(doc, dict) or set(doc) != keys:
        extra = sorted(set(doc) - keys) if isinstance(doc, dict) else []
        raise SchemaError(f"unknown key: {extra[0]}" if extra else f"top-level keys must be {sorted(keys)}")
    if doc["units"] != UNITS:
        raise SchemaError(f"unexpected units: {doc['units']}")
    if not isinstance(doc["axes"], list) or len(doc["axes"]) != 2:
        raise SchemaError("axes must hold two entries")
    axes = []
    for k, meta in enumerate(doc["axes"]):
        parameter, label = _axis_meta(meta, f"axis{k + 1}")
        axes.append(Axis(parameter, label, np.asarray(meta.get("values", []), dtype=float)))
    shape = tuple(int(n) for n in doc["shape"])
    if shape != (axes[0].values.size, axes[1].values.size):
        raise SchemaError(f"shape {list(shape)} does not match the axis lengths")

    scan = Scan(config=doc["config"], axis1=axes[0], axis2=axes[1], provenance=doc["provenance"])
    for entry in doc["arrays"]:
        column = entry.get("column", "")
        kind, key = _classify(column)
        if kind != "layer" or key != (entry.get("observable"), entry.get("engine")):
            raise SchemaError(f"unknown column: {column}")
        scan.layers[key] = _json_matrix(entry.get("data"), shape, column)
    for entry in doc["mask"]:
        name = f"mask_{entry.get('engine')}"
        _classify(name)
        scan.masks[entry["engine"]] = _check_mask(_json_matrix(entry.get("data"), shape, name), name)
    for entry in doc["overlays"]:
        name = f"overlay_{entry.get('name')}"
        _classify(name)
        scan.overlays[entry["name"]] = _json_matrix(entry.get("data"), shape, name)
    if not scan.layers:
        raise SchemaError("no observable arrays")
    return scan


def load(path: str | Path) -> Scan:
    """Read a scan file; the format follows the suffix (.json, otherwise CSV)."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such input: {path}")
    return load_json(path) if path.suffix.lower() == ".json" else load_csv(path)
