"""Chart specifications for data facts, exportable as grammar-of-graphics JSON.

The mapping from fact type to mark is fixed: proportion facts get pies,
ranking facts bars, order-sensitive facts lines, spread facts box plots,
distribution-shape facts density areas, and paired series scatter points.
Exported documents are self-contained (inline data) and deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

MARK_BY_TYPE = {
    "dominance": "arc",
    "top2": "bar",
    "extreme": "bar",
    "trend": "line",
    "seasonality": "line",
    "change_point": "line",
    "outlier": "boxplot",
    "kurtosis": "density",
    "skewness": "density",
    "evenness": "density",
    "correlation": "point",
}

_VL_SCHEMA = "https://vega.github.io/schema/vega-lite/v5.json"


@dataclass(frozen=True)
class ChartDatum:
    label: Optional[str] = None
    value: Optional[float] = None
    x: Optional[float] = None
    y: Optional[float] = None
    highlight: bool = False


@dataclass(frozen=True)
class ChartSpec:
    """Mark + inline data + encodings; annotations carry the fact's attributes."""

    mark: str
    data: tuple[ChartDatum, ...]
    encodings: tuple[tuple[str, str, str], ...]  # (channel, field, scale type)
    annotations: tuple[str, ...]
    title: str


_ENCODINGS_BY_MARK = {
    "arc": (("theta", "value", "quantitative"), ("color", "label", "nominal")),
    "bar": (("x", "label", "nominal"), ("y", "value", "quantitative")),
    "line": (("x", "label", "ordinal"), ("y", "value", "quantitative")),
    "boxplot": (("y", "value", "quantitative"),),
    "density": (("x", "value", "quantitative"),),
    "point": (("x", "x", "quantitative"), ("y", "y", "quantitative")),
}


def build_chart(
    fact_type: str,
    labels: Sequence[str],
    values: Sequence[Optional[float]],
    *,
    highlights: frozenset[str] = frozenset(),
    annotations: Sequence[str] = (),
    title: str = "",
) -> ChartSpec:
    """Chart for a single labeled series; missing values are left out."""
    mark = MARK_BY_TYPE[fact_type]
    data = tuple(
        ChartDatum(label=l, value=v, highlight=l in highlights)
        for l, v in zip(labels, values)
        if v is not None
    )
    return ChartSpec(
        mark=mark,
        data=data,
        encodings=_ENCODINGS_BY_MARK[mark],
        annotations=tuple(annotations),
        title=title,
    )


def build_scatter_chart(
    labels: Sequence[str],
    xs: Sequence[Optional[float]],
    ys: Sequence[Optional[float]],
    *,
    annotations: Sequence[str] = (),
    title: str = "",
) -> ChartSpec:
    """Paired-series chart; points missing either coordinate are left out."""
    data = tuple(
        ChartDatum(label=l, x=x, y=y)
        for l, x, y in zip(labels, xs, ys)
        if x is not None and y is not None
    )
    return ChartSpec(
        mark="point",
        data=data,
        encodings=_ENCODINGS_BY_MARK["point"],
        annotations=tuple(annotations),
        title=title,
    )


def spec_for(fact) -> ChartSpec:
    """The chart attached to a fact (facts always carry one)."""
    return fact.chart


def _datum_to_doc(d: ChartDatum) -> dict:
    doc: dict = {}
    if d.label is not None:
        doc["label"] = d.label
    if d.value is not None:
        doc["value"] = d.value
    if d.x is not None:
        doc["x"] = d.x
    if d.y is not None:
        doc["y"] = d.y
    if d.highlight:
        doc["highlight"] = True
    return doc


def export_grammar_json(spec: ChartSpec) -> str:
    """Serialize to a Vega-Lite document; inverse of ``parse_grammar_json``."""
    doc: dict = {
        "$schema": _VL_SCHEMA,
        "title": spec.title,
        "data": {"values": [_datum_to_doc(d) for d in spec.data]},
        "encoding": {
            channel: {"field": field, "type": scale}
            for channel, field, scale in spec.encodings
        },
        "usermeta": {"annotations": list(spec.annotations)},
    }
    if spec.mark == "density":
        doc["mark"] = {"type": "area"}
        doc["transform"] = [{"density": "value"}]
        doc["encoding"] = {
            "x": {"field": "value", "type": "quantitative"},
            "y": {"field": "density", "type": "quantitative"},
        }
    else:
        doc["mark"] = {"type": spec.mark}
    if any(d.highlight for d in spec.data) and spec.mark in ("arc", "bar", "line"):
        doc["encoding"]["opacity"] = {
            "condition": {"test": "datum.highlight === true", "value": 1.0},
            "value": 0.55,
        }
    return json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def parse_grammar_json(text: str) -> ChartSpec:
    """Read an exported document back into a structurally equal ChartSpec."""
    doc = json.loads(text)
    mark = doc["mark"]["type"]
    if mark == "area" and any("density" in t for t in doc.get("transform", [])):
        mark = "density"
    data = tuple(
        ChartDatum(
            label=row.get("label"),
            value=row.get("value"),
            x=row.get("x"),
            y=row.get("y"),
            highlight=bool(row.get("highlight", False)),
        )
        for row in doc["data"]["values"]
    )
    # encodings are fully determined by the mark; the document's encoding
    # block only adds derived styling (opacity) on top of them
    return ChartSpec(
        mark=mark,
        data=data,
        encodings=_ENCODINGS_BY_MARK[mark],
        annotations=tuple(doc.get("usermeta", {}).get("annotations", [])),
        title=doc.get("title", ""),
    )
