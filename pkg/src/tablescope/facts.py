"""Data-fact detection over block data forms.

Eleven fact types in three families: point facts about individual values
(dominance, top2, extreme, outlier), shape facts about a series as a whole
(trend, seasonality, kurtosis, skewness, evenness), and compound facts
relating parts of a block (correlation, change_point). Each hit carries a
score in [0, 1], the implicated labels, a templated description, and a
ready chart spec.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .blocks import Block, DataForm, EmptyBlock, FormProvenance, transform
from .charts import ChartSpec, build_chart, build_scatter_chart
from .config import DetectorConfig, EngineConfig
from .errors import TableScopeError
from .model import BlockLocation, HierTable


class UnknownFactType(TableScopeError):
    pass


@dataclass(frozen=True)
class FactType:
    name: str
    category: str  # point | shape | compound


FACT_TYPES: tuple[FactType, ...] = (
    FactType("dominance", "point"),
    FactType("top2", "point"),
    FactType("extreme", "point"),
    FactType("outlier", "point"),
    FactType("trend", "shape"),
    FactType("seasonality", "shape"),
    FactType("kurtosis", "shape"),
    FactType("skewness", "shape"),
    FactType("evenness", "shape"),
    FactType("correlation", "compound"),
    FactType("change_point", "compound"),
)

FACT_TYPE_BY_NAME = {t.name: t for t in FACT_TYPES}
ALL_TYPE_NAMES = frozenset(FACT_TYPE_BY_NAME)


@dataclass(frozen=True)
class Hit:
    """Raw detector output before it is wrapped into a DataFact."""

    score: float
    labels: tuple[str, ...]  # implicated series labels, in series order
    tags: tuple[str, ...]    # non-label attribute tags
    description: str


@dataclass(frozen=True)
class DataFact:
    id: str
    fact_type: FactType
    block_id: str
    provenance: FormProvenance
    score: float
    attributes: frozenset[str]
    description: str
    chart: ChartSpec

    def __post_init__(self) -> None:
        if not (0.0 <= self.score <= 1.0):
            raise ValueError(f"score {self.score} outside [0, 1]")
        if not self.attributes:
            raise ValueError("facts must carry at least one attribute")


def block_display(location: BlockLocation) -> str:
    row = "/".join(location.row_path) or "all rows"
    col = "/".join(location.col_path) or "all columns"
    return f"{row} × {col}"


# --- series math (plain python; short series dominate) -----------------------


def _mean(xs: list[float]) -> float:
    return sum(xs) / len(xs)


def _sample_sd(xs: list[float]) -> float:
    m = _mean(xs)
    return math.sqrt(sum((x - m) ** 2 for x in xs) / (len(xs) - 1))


def _pearson(xs: list[float], ys: list[float]) -> Optional[float]:
    mx, my = _mean(xs), _mean(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        return None
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / math.sqrt(sxx * syy)


def _central_moments(xs: list[float]) -> tuple[float, float, float]:
    """(m2, m3, m4) population central moments."""
    n = len(xs)
    m = _mean(xs)
    m2 = sum((x - m) ** 2 for x in xs) / n
    m3 = sum((x - m) ** 3 for x in xs) / n
    m4 = sum((x - m) ** 4 for x in xs) / n
    return m2, m3, m4


# --- detectors ---------------------------------------------------------------


def _detect_dominance(form: DataForm, cfg: DetectorConfig, block: str) -> Optional[Hit]:
    present = form.present()
    if len(present) < cfg.dominance_min_len:
        return None
    values = [v for _, _, v in present]
    if any(v < 0 for v in values):
        return None
    total = sum(values)
    if total <= 0:
        return None
    best = max(present, key=lambda t: t[2])
    ratio = best[2] / total
    if ratio < cfg.dominance_ratio:
        return None
    return Hit(
        score=min(1.0, ratio),
        labels=(best[1],),
        tags=(),
        description=f"`{best[1]}` dominates `{block}` ({ratio * 100:.1f}% of total).",
    )


def _detect_top2(form: DataForm, cfg: DetectorConfig, block: str) -> Optional[Hit]:
    present = form.present()
    if len(present) < cfg.top2_min_len:
        return None
    values = [v for _, _, v in present]
    if any(v < 0 for v in values):
        return None
    total = sum(values)
    if total <= 0:
        return None
    ranked = sorted(present, key=lambda t: (-t[2], t[0]))
    v1, v2, v3 = ranked[0][2], ranked[1][2], ranked[2][2]
    share = (v1 + v2) / total
    if share < cfg.top2_share or v2 < cfg.top2_margin * v3:
        return None
    l1, l2 = ranked[0][1], ranked[1][1]
    return Hit(
        score=min(1.0, share),
        labels=(l1, l2),
        tags=(),
        description=(
            f"`{l1}` and `{l2}` together lead `{block}` "
            f"({share * 100:.1f}% of total)."
        ),
    )


def _deviation_score(x: float, rest: list[float], sigmas: float,
                     div: float) -> Optional[float]:
    sd = _sample_sd(rest)
    dev = abs(x - _mean(rest))
    if sd == 0.0:
        return 1.0 if dev > 0 else None
    if dev < sigmas * sd:
        return None
    return min(1.0, dev / (div * sd))


def _detect_extreme(form: DataForm, cfg: DetectorConfig, block: str) -> Optional[Hit]:
    present = form.present()
    if len(present) < cfg.extreme_min_len:
        return None
    best: Optional[tuple[float, str, str]] = None
    for side, pick in (("highest", max), ("lowest", min)):
        chosen = pick(present, key=lambda t: t[2])
        rest = [v for i, _, v in present if i != chosen[0]]
        score = _deviation_score(chosen[2], rest, cfg.extreme_sigmas,
                                 cfg.extreme_score_div)
        if score is not None and (best is None or score > best[0]):
            best = (score, chosen[1], side)
    if best is None:
        return None
    score, label, side = best
    return Hit(
        score=score,
        labels=(label,),
        tags=(side,),
        description=f"`{label}` is an extreme {side} value against the rest of `{block}`.",
    )


def _detect_outlier(form: DataForm, cfg: DetectorConfig, block: str) -> Optional[Hit]:
    present = form.present()
    if len(present) < cfg.outlier_min_len:
        return None
    hits: list[tuple[float, str]] = []
    for i, label, value in present:
        rest = [v for j, _, v in present if j != i]
        sd = _sample_sd(rest)
        dev = abs(value - _mean(rest))
        if sd == 0.0:
            if dev > 0:
                hits.append((1.0, label))
            continue
        z = dev / sd
        if z >= cfg.outlier_z:
            hits.append((min(1.0, z / cfg.outlier_score_div), label))
    if not hits:
        return None
    labels = tuple(l for _, l in hits)
    shown = ", ".join(f"`{l}`" for l in labels)
    return Hit(
        score=max(s for s, _ in hits),
        labels=labels,
        tags=(),
        description=f"{shown} deviate sharply from the rest of `{block}`.",
    )


def _detect_trend(form: DataForm, cfg: DetectorConfig, block: str) -> Optional[Hit]:
    present = form.present()
    if len(present) < cfg.trend_min_len:
        return None
    xs = [float(i) for i, _, _ in present]
    ys = [v for _, _, v in present]
    r = _pearson(xs, ys)
    if r is None or abs(r) < cfg.trend_r:
        return None
    direction = "increasing" if r > 0 else "decreasing"
    return Hit(
        score=min(1.0, abs(r)),
        labels=(),
        tags=(direction,),
        description=f"`{block}` follows an {direction} trend "
                    f"across its {len(present)} points."
        if r > 0 else
        f"`{block}` follows a {direction} trend across its {len(present)} points.",
    )


def _detect_seasonality(form: DataForm, cfg: DetectorConfig, block: str) -> Optional[Hit]:
    if any(v is None for v in form.values):
        return None  # gaps would shift every lag
    n = len(form.values)
    if n < cfg.seasonality_min_len:
        return None
    xs = [float(v) for v in form.values]  # type: ignore[arg-type]
    m = _mean(xs)
    denom = sum((x - m) ** 2 for x in xs)
    if denom == 0.0:
        return None
    best_r, best_k = None, None
    for k in range(2, n // 2 + 1):
        r = sum((xs[t] - m) * (xs[t + k] - m) for t in range(n - k)) / denom
        if best_r is None or r > best_r:
            best_r, best_k = r, k
    if best_r is None or best_r < cfg.seasonality_autocorr:
        return None
    return Hit(
        score=min(1.0, best_r),
        labels=(),
        tags=(f"lag:{best_k}",),
        description=f"`{block}` repeats with a period of {best_k} steps.",
    )


def _detect_kurtosis(form: DataForm, cfg: DetectorConfig, block: str) -> Optional[Hit]:
    present = form.present()
    if len(present) < cfg.kurtosis_min_len:
        return None
    xs = [v for _, _, v in present]
    m2, _, m4 = _central_moments(xs)
    if m2 == 0.0:
        return None
    g2 = m4 / (m2 * m2) - 3.0
    if abs(g2) < cfg.kurtosis_threshold:
        return None
    shape = "peaked" if g2 > 0 else "flat"
    wording = "sharply peaked" if g2 > 0 else "flat and spread out"
    return Hit(
        score=min(1.0, abs(g2) / cfg.kurtosis_score_div),
        labels=(),
        tags=(shape,),
        description=f"values in `{block}` are {wording} relative to a normal shape.",
    )


def _detect_skewness(form: DataForm, cfg: DetectorConfig, block: str) -> Optional[Hit]:
    present = form.present()
    if len(present) < cfg.skewness_min_len:
        return None
    xs = [v for _, _, v in present]
    m2, m3, _ = _central_moments(xs)
    if m2 == 0.0:
        return None
    g1 = m3 / (m2 ** 1.5)
    if abs(g1) < cfg.skewness_threshold:
        return None
    side = "right_skewed" if g1 > 0 else "left_skewed"
    return Hit(
        score=min(1.0, abs(g1) / cfg.skewness_score_div),
        labels=(),
        tags=(side,),
        description=f"values in `{block}` lean to the "
                    f"{'right' if g1 > 0 else 'left'}.",
    )


def _detect_evenness(form: DataForm, cfg: DetectorConfig, block: str) -> Optional[Hit]:
    present = form.present()
    if len(present) < cfg.evenness_min_len:
        return None
    xs = [v for _, _, v in present]
    m = _mean(xs)
    if m == 0.0:
        return None
    cv = _sample_sd(xs) / abs(m)
    if cv > cfg.evenness_cv:
        return None
    return Hit(
        score=1.0 - cv / cfg.evenness_cv,
        labels=(),
        tags=("even",),
        description=f"values in `{block}` are nearly uniform.",
    )


def _detect_change_point(form: DataForm, cfg: DetectorConfig, block: str) -> Optional[Hit]:
    present = form.present()
    n = len(present)
    if n < cfg.change_point_min_len:
        return None
    xs = [v for _, _, v in present]
    best: Optional[tuple[float, int]] = None  # (shift, split)
    for k in range(2, n - 1):
        left, right = xs[:k], xs[k:]
        ml, mr = _mean(left), _mean(right)
        ss = sum((x - ml) ** 2 for x in left) + sum((x - mr) ** 2 for x in right)
        pooled = math.sqrt(ss / (n - 2))
        if pooled == 0.0:
            if ml != mr:
                shift = math.inf
            else:
                continue
        else:
            shift = abs(ml - mr) / pooled
        if best is None or shift > best[0]:
            best = (shift, k)
    if best is None or best[0] < cfg.change_point_shift:
        return None
    shift, k = best
    label = present[k][1]
    score = 1.0 if math.isinf(shift) else min(1.0, shift / cfg.change_point_score_div)
    return Hit(
        score=score,
        labels=(label,),
        tags=(),
        description=f"`{block}` shifts to a different level at `{label}`.",
    )


def detect_correlation(
    form_a: DataForm, form_b: DataForm, cfg: DetectorConfig, block: str
) -> Optional[Hit]:
    """Pearson relation between two homogeneous series of one block."""
    pairs = [
        (a, b)
        for a, b in zip(form_a.values, form_b.values)
        if a is not None and b is not None
    ]
    if len(pairs) < cfg.correlation_min_len:
        return None
    r = _pearson([a for a, _ in pairs], [b for _, b in pairs])
    if r is None or abs(r) < cfg.correlation_r:
        return None
    la = form_a.provenance.subjects[0] if form_a.provenance.subjects else "first"
    lb = form_b.provenance.subjects[0] if form_b.provenance.subjects else "second"
    direction = "positive" if r > 0 else "negative"
    wording = "together" if r > 0 else "inversely"
    return Hit(
        score=min(1.0, abs(r)),
        labels=(la, lb),
        tags=(direction,),
        description=f"`{la}` and `{lb}` move {wording} in `{block}` (r={r:.2f}).",
    )


_SERIES_DETECTORS: dict[str, Callable[[DataForm, DetectorConfig, str], Optional[Hit]]] = {
    "dominance": _detect_dominance,
    "top2": _detect_top2,
    "extreme": _detect_extreme,
    "outlier": _detect_outlier,
    "trend": _detect_trend,
    "seasonality": _detect_seasonality,
    "kurtosis": _detect_kurtosis,
    "skewness": _detect_skewness,
    "evenness": _detect_evenness,
    "change_point": _detect_change_point,
}


def detect(
    fact_type: str | FactType,
    form: DataForm,
    cfg: Optional[DetectorConfig] = None,
    block_name: str = "",
) -> Optional[Hit]:
    """Run one single-series detector; correlation pairs use
    ``detect_correlation``."""
    name = fact_type.name if isinstance(fact_type, FactType) else fact_type
    if name == "correlation":
        raise UnknownFactType("correlation runs on a pair of series")
    if name not in _SERIES_DETECTORS:
        raise UnknownFactType(name)
    return _SERIES_DETECTORS[name](form, cfg or DetectorConfig(), block_name)


# --- fact assembly -----------------------------------------------------------


def _attributes_for(hit: Hit, provenance: FormProvenance, kind: str,
                    aggregator: str, location: BlockLocation) -> frozenset[str]:
    attrs = set(hit.labels) | set(hit.tags) | {kind}
    if aggregator != "none":
        attrs.add(aggregator)
    attrs.update(provenance.subjects)
    attrs.update(location.row_path)
    attrs.update(location.col_path)
    return frozenset(attrs)


def extract_block_facts(
    table: HierTable, block: Block, config: Optional[EngineConfig] = None
) -> tuple[DataFact, ...]:
    """All facts of one block, in a stable order (type name, then source form)."""
    cfg = (config or EngineConfig()).detectors
    try:
        forms = transform(table, block)
    except EmptyBlock:
        return ()
    name = block_display(block.location)
    staged: list[tuple[FactType, FormProvenance, Hit, frozenset[str], ChartSpec]] = []

    for form in forms:
        for type_name, detector in _SERIES_DETECTORS.items():
            hit = detector(form, cfg, name)
            if hit is None:
                continue
            attrs = _attributes_for(hit, form.provenance, form.kind,
                                    form.aggregator, block.location)
            chart = build_chart(
                type_name, form.labels, form.values,
                highlights=frozenset(hit.labels),
                annotations=tuple(sorted(attrs)),
                title=hit.description,
            )
            staged.append((FACT_TYPE_BY_NAME[type_name], form.provenance,
                           hit, attrs, chart))

    for kind in ("row_series", "col_series"):
        series = [f for f in forms if f.kind == kind]
        for i in range(len(series)):
            for j in range(i + 1, len(series)):
                hit = detect_correlation(series[i], series[j], cfg, name)
                if hit is None:
                    continue
                prov = FormProvenance(
                    block.id,
                    f"pair[{series[i].provenance.transform}"
                    f"&{series[j].provenance.transform}]",
                    subjects=series[i].provenance.subjects
                    + series[j].provenance.subjects,
                )
                attrs = _attributes_for(hit, prov, kind, "none", block.location)
                chart = build_scatter_chart(
                    series[i].labels, series[i].values, series[j].values,
                    annotations=tuple(sorted(attrs)),
                    title=hit.description,
                )
                staged.append((FACT_TYPE_BY_NAME["correlation"], prov,
                               hit, attrs, chart))

    staged.sort(key=lambda item: (item[0].name, item[1].key))
    facts: list[DataFact] = []
    counters: dict[str, int] = {}
    for fact_type, prov, hit, attrs, chart in staged:
        k = counters.get(fact_type.name, 0)
        counters[fact_type.name] = k + 1
        facts.append(DataFact(
            id=f"{block.id}__{fact_type.name}__{k}",
            fact_type=fact_type,
            block_id=block.id,
            provenance=prov,
            score=hit.score,
            attributes=attrs,
            description=hit.description,
            chart=chart,
        ))
    return tuple(facts)


def filter_facts(facts, enabled_types: frozenset[str] | set[str]):
    """Keep facts whose type is enabled."""
    return tuple(f for f in facts if f.fact_type.name in enabled_types)
