"""Tunable thresholds for fact detection and recommendation weighting.

Defaults are the shipped behavior; a JSON config file can override any
subset. Top-level keys: "detectors" and "recommend"; field names below are
the config key names.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import TableScopeError


class BadConfig(TableScopeError):
    """Config file is unreadable or has unknown keys."""


@dataclass(frozen=True)
class DetectorConfig:
    dominance_min_len: int = 3
    dominance_ratio: float = 0.5
    top2_min_len: int = 4
    top2_share: float = 0.6
    top2_margin: float = 1.5
    extreme_min_len: int = 4
    extreme_sigmas: float = 2.0
    extreme_score_div: float = 4.0
    outlier_min_len: int = 5
    outlier_z: float = 2.5
    outlier_score_div: float = 5.0
    trend_min_len: int = 4
    trend_r: float = 0.8
    seasonality_min_len: int = 8
    seasonality_autocorr: float = 0.7
    kurtosis_min_len: int = 8
    kurtosis_threshold: float = 1.0
    kurtosis_score_div: float = 3.0
    skewness_min_len: int = 8
    skewness_threshold: float = 1.0
    skewness_score_div: float = 3.0
    evenness_min_len: int = 4
    evenness_cv: float = 0.1
    correlation_min_len: int = 4
    correlation_r: float = 0.8
    change_point_min_len: int = 6
    change_point_shift: float = 2.0
    change_point_score_div: float = 4.0


@dataclass(frozen=True)
class RecommendConfig:
    weight_type: float = 0.4
    weight_attributes: float = 0.3
    weight_text: float = 0.3
    page_score: str = "max"  # max | mean

    def __post_init__(self) -> None:
        if self.page_score not in ("max", "mean"):
            raise BadConfig(f"page_score must be max or mean, got {self.page_score!r}")


@dataclass(frozen=True)
class EngineConfig:
    detectors: DetectorConfig = DetectorConfig()
    recommend: RecommendConfig = RecommendConfig()


def _merge(cls, base, overrides: dict, where: str):
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = set(overrides) - known
    if unknown:
        raise BadConfig(f"{where}: unknown keys {sorted(unknown)}")
    return dataclasses.replace(base, **overrides)


def load_config(path: str | Path | None) -> EngineConfig:
    """Defaults, overridden by a JSON file when given."""
    if path is None:
        return EngineConfig()
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise BadConfig(f"cannot read config {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise BadConfig("config root must be an object")
    unknown = set(doc) - {"detectors", "recommend"}
    if unknown:
        raise BadConfig(f"unknown top-level keys {sorted(unknown)}")
    detectors = _merge(DetectorConfig, DetectorConfig(),
                       doc.get("detectors", {}), "detectors")
    recommend = _merge(RecommendConfig, RecommendConfig(),
                       doc.get("recommend", {}), "recommend")
    return EngineConfig(detectors=detectors, recommend=recommend)
