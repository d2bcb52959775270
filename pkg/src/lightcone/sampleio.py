"""JSON formats for sample sets, ground-truth sidecars, and fit reports.

Files carry the metric (n and the invariant speed c) explicitly in a
header so the convention always travels with the data.  Numbers are
written through Python's shortest round-trip float repr, so reloading
reproduces the exact binary values, and writing is byte-deterministic
(sorted keys, fixed indentation).
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict

import numpy as np

from . import __version__
from .boost import AffineLorentzMap
from .minkowski import Metric
from .recover import AxisGrid, FitReport, SampleSet

FORMAT = "lightcone-samples-v1"
REPORT_FORMAT = "lightcone-report-v1"


class SampleFormatError(ValueError):
    """The file is not a well-formed sample file."""


def _dump(path: str, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def save_samples(path: str, s: SampleSet, seed=None, kind=None) -> None:
    markers: dict = {
        "collinear": [list(t) for t in s.collinear],
        "parallel": [list(t) for t in s.parallel],
        "null_pairs": [list(t) for t in s.null_pairs],
    }
    if s.axis_grid is not None:
        markers["axis_grid"] = {
            "axis": list(s.axis_grid.axis),
            "values": list(s.axis_grid.values),
            "indices": list(s.axis_grid.indices),
        }
    payload = {
        "format": FORMAT,
        "tool": f"lightcone {__version__}",
        "metric": {"n": s.metric.n, "c": s.metric.c},
        "seed": seed,
        "kind": kind,
        "pairs": [{"x": list(x), "y": list(y)} for x, y in zip(s.x, s.y)],
        "markers": markers,
    }
    _dump(path, payload)


def load_samples(path: str) -> tuple[SampleSet, dict]:
    """Read a sample file; returns the SampleSet and a metadata dict with
    ``seed`` and ``kind``.  Raises SampleFormatError on malformed input."""
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SampleFormatError(f"{path}: not valid JSON ({exc})") from exc
    try:
        if payload.get("format") != FORMAT:
            raise SampleFormatError(
                f"{path}: unknown format {payload.get('format')!r}, expected {FORMAT!r}"
            )
        metric = Metric(int(payload["metric"]["n"]), float(payload["metric"]["c"]))
        pairs = payload["pairs"]
        x = np.array([p["x"] for p in pairs], dtype=float)
        y = np.array([p["y"] for p in pairs], dtype=float)
        markers = payload.get("markers", {})
        axis_grid = None
        if "axis_grid" in markers:
            g = markers["axis_grid"]
            axis_grid = AxisGrid(
                axis=np.asarray(g["axis"], dtype=float),
                values=tuple(float(v) for v in g["values"]),
                indices=tuple(int(i) for i in g["indices"]),
            )
        samples = SampleSet(
            metric=metric,
            x=x,
            y=y,
            collinear=[tuple(t) for t in markers.get("collinear", [])],
            parallel=[tuple(t) for t in markers.get("parallel", [])],
            null_pairs=[tuple(t) for t in markers.get("null_pairs", [])],
            axis_grid=axis_grid,
        )
    except SampleFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SampleFormatError(f"{path}: malformed sample file ({exc})") from exc
    return samples, {"seed": payload.get("seed"), "kind": payload.get("kind")}


def save_truth(path: str, truth: dict) -> None:
    _dump(path, {"format": "lightcone-truth-v1", "tool": f"lightcone {__version__}", **truth})


def load_truth(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _clean(value):
    # JSON has no NaN/Inf; map them to null
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def map_to_dict(m: AffineLorentzMap) -> dict:
    return {"alpha": m.alpha, "L": m.L.tolist(), "a": m.a.tolist()}


def map_from_dict(d: dict) -> AffineLorentzMap:
    return AffineLorentzMap(float(d["alpha"]), np.asarray(d["L"]), np.asarray(d["a"]))


def report_to_dict(report: FitReport, s: SampleSet, input_path=None) -> dict:
    body = {
        "cone_preservation": asdict(report.cone),
        "collinearity": asdict(report.collinearity),
        "parallelism": asdict(report.parallelism),
        "max_residual": _clean(report.max_residual),
        "fit_threshold": report.fit_threshold,
        "total_violations": report.total_violations,
        "failure": report.failure,
        "single_cone_vertex": report.single_cone_vertex,
        "single_cone_counterexamples": report.single_cone_counterexamples,
        "num_samples": report.num_samples,
        "recovered": map_to_dict(report.recovered) if report.recovered else None,
    }
    if report.field_map is not None:
        body["field_map"] = {k: _clean(v) for k, v in asdict(report.field_map).items()}
    else:
        body["field_map"] = None
    body["cone_preservation"]["worst_pair"] = (
        list(report.cone.worst_pair) if report.cone.worst_pair else None
    )
    body["cone_preservation"]["worst_excess"] = _clean(report.cone.worst_excess)
    return {
        "format": REPORT_FORMAT,
        "tool": f"lightcone {__version__}",
        "input": input_path,
        "metric": {"n": s.metric.n, "c": s.metric.c},
        "report": body,
    }


def save_report(path: str, report: FitReport, s: SampleSet, input_path=None) -> None:
    _dump(path, report_to_dict(report, s, input_path))
