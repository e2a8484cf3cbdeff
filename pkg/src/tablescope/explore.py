"""Semantic-zoom exploration sessions.

A session walks the header-layer graph one level at a time. Zoom targets
are recommended by comparing the focused fact against the facts of each
candidate page (type match, attribute overlap, description similarity);
manual page switches move within one total-depth level. Every action is
appended to a path log that can be exported as segmented exploration paths.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Optional

from .blocks import Block, blocks_for
from .config import EngineConfig, RecommendConfig
from .errors import TableScopeError
from .facts import ALL_TYPE_NAMES, DataFact, extract_block_facts
from .layout import (
    EmbedPolicy,
    HeaderLayerGraph,
    Page,
    UnknownFact,
    build_header_layer,
    build_page,
)
from .layout import swap_embedded as _swap_on_page
from .model import BlockLocation, HierTable


class DepthMismatch(TableScopeError):
    pass


class InvalidFilter(TableScopeError):
    pass


Combo = tuple[int, int]


@dataclass(frozen=True, eq=False)
class TableContext:
    """Everything derived once per table: graph, blocks, facts, indexes."""

    table: HierTable
    config: EngineConfig
    graph: HeaderLayerGraph
    blocks_by_combo: dict[Combo, tuple[Block, ...]]
    blocks_by_id: dict[str, Block]
    facts_by_block: dict[str, tuple[DataFact, ...]]
    facts_by_id: dict[str, DataFact]


def build_context(table: HierTable, config: Optional[EngineConfig] = None) -> TableContext:
    cfg = config or EngineConfig()
    graph = build_header_layer(table)
    blocks_by_combo: dict[Combo, tuple[Block, ...]] = {}
    blocks_by_id: dict[str, Block] = {}
    facts_by_block: dict[str, tuple[DataFact, ...]] = {}
    facts_by_id: dict[str, DataFact] = {}
    for node in graph.nodes:
        blocks = blocks_for(table, node.r_depth, node.c_depth)
        blocks_by_combo[node.combo] = blocks
        for block in blocks:
            blocks_by_id[block.id] = block
            facts = extract_block_facts(table, block, cfg)
            facts_by_block[block.id] = facts
            for fact in facts:
                facts_by_id[fact.id] = fact
    return TableContext(
        table=table,
        config=cfg,
        graph=graph,
        blocks_by_combo=blocks_by_combo,
        blocks_by_id=blocks_by_id,
        facts_by_block=facts_by_block,
        facts_by_id=facts_by_id,
    )


@dataclass(frozen=True)
class PathStep:
    timestamp: float
    action: str  # select | zoom_in | zoom_out | switch_page | swap_chart | filter
    combo_before: Combo
    combo_after: Combo
    fact_ids: tuple[str, ...]
    note: str = ""


@dataclass(frozen=True)
class Recommendation:
    zoom_in: Optional[Combo] = None
    zoom_out: Optional[Combo] = None

    def for_direction(self, direction: str) -> Optional[Combo]:
        return self.zoom_in if direction == "in" else self.zoom_out


@dataclass(frozen=True)
class ExplorationSession:
    table_id: str
    current: Page
    selected_block: Optional[str] = None
    focused_fact: Optional[str] = None
    enabled_types: frozenset[str] = ALL_TYPE_NAMES
    path_log: tuple[PathStep, ...] = ()
    recommendation: Recommendation = Recommendation()


def new_session(ctx: TableContext, table_id: str) -> ExplorationSession:
    """Fresh session on the first page of the shallowest level."""
    start = ctx.graph.group(1)[0].combo
    session = ExplorationSession(
        table_id=table_id,
        current=_plain_page(ctx, start, ALL_TYPE_NAMES),
    )
    return _with_recommendation(ctx, session)


def _plain_page(ctx: TableContext, combo: Combo, enabled: frozenset[str]) -> Page:
    return build_page(ctx.table, combo, ctx.facts_by_block, EmbedPolicy(enabled))


# --- similarity --------------------------------------------------------------

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def _term_freq(text: str) -> Counter:
    return Counter(_TOKEN_RE.findall(text.lower()))


def _cosine(a: Counter, b: Counter) -> float:
    if not a or not b:
        return 0.0
    dot = sum(n * b[t] for t, n in a.items())
    if dot == 0:
        return 0.0
    na = sum(n * n for n in a.values()) ** 0.5
    nb = sum(n * n for n in b.values()) ** 0.5
    return dot / (na * nb)


def fact_similarity(focused: DataFact, other: DataFact,
                    cfg: Optional[RecommendConfig] = None) -> float:
    """Weighted blend of type match, attribute Jaccard, and description
    cosine. With the default weights (sum 1) the result is in [0, 1]."""
    cfg = cfg or RecommendConfig()
    same_type = 1.0 if focused.fact_type.name == other.fact_type.name else 0.0
    union = focused.attributes | other.attributes
    jaccard = len(focused.attributes & other.attributes) / len(union) if union else 0.0
    cos = _cosine(_term_freq(focused.description), _term_freq(other.description))
    return (cfg.weight_type * same_type
            + cfg.weight_attributes * jaccard
            + cfg.weight_text * cos)


def similarity(focused: DataFact, candidate_facts: Iterable[DataFact],
               cfg: Optional[RecommendConfig] = None) -> float:
    """Page-level score: how well a candidate page's facts echo the focused
    one. Empty candidate set scores 0."""
    cfg = cfg or RecommendConfig()
    scores = [fact_similarity(focused, f, cfg) for f in candidate_facts]
    if not scores:
        return 0.0
    if cfg.page_score == "mean":
        return sum(scores) / len(scores)
    return max(scores)


def _prefix_comparable(a: tuple[str, ...], b: tuple[str, ...]) -> bool:
    short, long = (a, b) if len(a) <= len(b) else (b, a)
    return long[: len(short)] == short


def _related(location: BlockLocation, blocks: Iterable[Block]) -> tuple[Block, ...]:
    """Blocks whose location lies on the same header lineage (both paths
    prefix-comparable) as the given one."""
    return tuple(
        b for b in blocks
        if _prefix_comparable(b.location.row_path, location.row_path)
        and _prefix_comparable(b.location.col_path, location.col_path)
    )


def candidates(graph: HeaderLayerGraph, combo: Combo, direction: str) -> tuple[Combo, ...]:
    """Zoom targets one level in ("in") or out ("out"), in page-index order."""
    next_combos = graph.children(combo) if direction == "in" else graph.parents(combo)
    return tuple(sorted(next_combos, key=lambda c: graph.node(c).page_index))


def _candidate_pool(ctx: TableContext, session: ExplorationSession,
                    combo: Combo) -> tuple[DataFact, ...]:
    blocks = ctx.blocks_by_combo[combo]
    if session.selected_block is not None:
        anchor = ctx.blocks_by_id[session.selected_block].location
        related = _related(anchor, blocks)
        if related:
            blocks = related
    facts: list[DataFact] = []
    for block in blocks:
        facts.extend(f for f in ctx.facts_by_block[block.id]
                     if f.fact_type.name in session.enabled_types)
    return tuple(facts)


def recommend(ctx: TableContext, session: ExplorationSession,
              direction: str) -> Optional[Combo]:
    """Best zoom target, or None at a boundary.

    With a focused fact: argmax of page similarity over the candidates,
    earlier page index winning ties. Without one: keep the selected block's
    row depth when possible, else take the first candidate.
    """
    cands = candidates(ctx.graph, session.current.combo, direction)
    if not cands:
        return None
    if session.focused_fact is None:
        if session.selected_block is not None:
            same_r = [c for c in cands if c[0] == session.current.combo[0]]
            if same_r:
                return same_r[0]
        return cands[0]
    focused = ctx.facts_by_id[session.focused_fact]
    best: Optional[Combo] = None
    best_score = -1.0
    for combo in cands:  # page-index order; strict > keeps the earlier page
        score = similarity(focused, _candidate_pool(ctx, session, combo),
                           ctx.config.recommend)
        if score > best_score:
            best, best_score = combo, score
    return best


def _with_recommendation(ctx: TableContext, session: ExplorationSession) -> ExplorationSession:
    return replace(session, recommendation=Recommendation(
        zoom_in=recommend(ctx, session, "in"),
        zoom_out=recommend(ctx, session, "out"),
    ))


def _log(session: ExplorationSession, step: PathStep) -> ExplorationSession:
    return replace(session, path_log=session.path_log + (step,))


# --- actions -----------------------------------------------------------------


def select(ctx: TableContext, session: ExplorationSession, block_id: str,
           now: float) -> ExplorationSession:
    """Select a block on the current page; its embedded fact becomes the
    focus."""
    focused = session.current.embedded_for(block_id)
    session = replace(session, selected_block=block_id, focused_fact=focused)
    session = _log(session, PathStep(
        timestamp=now,
        action="select",
        combo_before=session.current.combo,
        combo_after=session.current.combo,
        fact_ids=(focused,) if focused else (),
    ))
    return _with_recommendation(ctx, session)


def _biased_page(ctx: TableContext, combo: Combo, enabled: frozenset[str],
                 focus: DataFact) -> Page:
    """Embed, per block, the enabled fact most similar to the prior focus;
    remaining facts stay in policy order."""
    policy = EmbedPolicy(enabled)
    blocks = ctx.blocks_by_combo[combo]
    embedded: list[Optional[str]] = []
    alternatives: list[tuple[str, ...]] = []
    for block in blocks:
        ranked = policy.rank(ctx.facts_by_block[block.id])
        if not ranked:
            embedded.append(None)
            alternatives.append(())
            continue
        best = max(ranked, key=lambda f: fact_similarity(focus, f, ctx.config.recommend))
        embedded.append(best.id)
        alternatives.append(tuple(f.id for f in ranked if f.id != best.id))
    return Page(combo=combo, blocks=blocks, embedded=tuple(embedded),
                alternatives=tuple(alternatives))


def zoom(ctx: TableContext, session: ExplorationSession, direction: str,
         now: float) -> ExplorationSession:
    """Move to the recommended page, re-embedding charts toward the prior
    focus and carrying the selection to the most similar related block. At a
    boundary the session only logs the attempt."""
    if direction not in ("in", "out"):
        raise ValueError(f"direction must be 'in' or 'out', got {direction!r}")
    action = f"zoom_{direction}"
    before = session.current.combo
    target = recommend(ctx, session, direction)
    if target is None:
        session = _log(session, PathStep(
            timestamp=now, action=action, combo_before=before,
            combo_after=before, fact_ids=(), note="boundary",
        ))
        return _with_recommendation(ctx, session)

    prior_focus = (ctx.facts_by_id[session.focused_fact]
                   if session.focused_fact is not None else None)
    prior_anchor = (ctx.blocks_by_id[session.selected_block].location
                    if session.selected_block is not None else None)

    if prior_focus is None:
        page = _plain_page(ctx, target, session.enabled_types)
        selected: Optional[str] = None
        focused: Optional[str] = None
        involved: set[str] = set()
    else:
        page = _biased_page(ctx, target, session.enabled_types, prior_focus)
        involved = {prior_focus.id}
        selected = None
        focused = None
        if prior_anchor is not None:
            related = _related(prior_anchor, page.blocks)
            best_score = -1.0
            for block in related:
                fact_id = page.embedded_for(block.id)
                if fact_id is not None:
                    involved.add(fact_id)
                score = (-1.0 if fact_id is None else fact_similarity(
                    prior_focus, ctx.facts_by_id[fact_id], ctx.config.recommend))
                if score > best_score:
                    best_score, selected = score, block.id
            if selected is not None:
                focused = page.embedded_for(selected)
                if focused is not None:
                    involved.add(focused)

    session = replace(session, current=page, selected_block=selected,
                      focused_fact=focused)
    session = _log(session, PathStep(
        timestamp=now, action=action, combo_before=before, combo_after=target,
        fact_ids=tuple(sorted(involved)),
    ))
    return _with_recommendation(ctx, session)


def switch_page(ctx: TableContext, session: ExplorationSession, combo: Combo,
                now: float) -> ExplorationSession:
    """Jump to another page of the same total depth. The selection survives
    only when its block still exists there (i.e. the combo is unchanged)."""
    node = ctx.graph.node(combo)  # raises UnknownCombo
    before = session.current.combo
    if node.s_depth != before[0] + before[1]:
        raise DepthMismatch(
            f"cannot switch from {before} to {combo}: total depth differs")
    if combo == before:
        page = session.current
        selected, focused = session.selected_block, session.focused_fact
    else:
        page = _plain_page(ctx, combo, session.enabled_types)
        selected, focused = None, None
    session = replace(session, current=page, selected_block=selected,
                      focused_fact=focused)
    session = _log(session, PathStep(
        timestamp=now, action="switch_page", combo_before=before,
        combo_after=combo, fact_ids=(),
    ))
    return _with_recommendation(ctx, session)


def swap_chart(ctx: TableContext, session: ExplorationSession, block_id: str,
               fact_id: str, now: float) -> ExplorationSession:
    """Embed one of a block's other facts; focus follows when the block is
    the selected one."""
    if fact_id not in ctx.facts_by_id:
        raise UnknownFact(f"unknown fact {fact_id}")
    old = session.current.embedded_for(block_id)
    page = _swap_on_page(session.current, block_id, fact_id)
    focused = session.focused_fact
    if block_id == session.selected_block:
        focused = fact_id
    session = replace(session, current=page, focused_fact=focused)
    involved = tuple(sorted({f for f in (old, fact_id) if f is not None}))
    session = _log(session, PathStep(
        timestamp=now, action="swap_chart", combo_before=page.combo,
        combo_after=page.combo, fact_ids=involved,
    ))
    return _with_recommendation(ctx, session)


def set_filters(ctx: TableContext, session: ExplorationSession,
                types: Iterable[str], now: float) -> ExplorationSession:
    """Change the enabled fact types and rebuild the page under the new set.
    Focus re-points to the selected block's new embedded fact."""
    enabled = frozenset(types)
    unknown = enabled - ALL_TYPE_NAMES
    if unknown:
        raise InvalidFilter(f"unknown fact types: {sorted(unknown)}")
    page = build_page(ctx.table, session.current.combo, ctx.facts_by_block,
                      EmbedPolicy(enabled))
    focused = session.focused_fact
    if session.selected_block is not None:
        focused = page.embedded_for(session.selected_block)
    elif focused is not None:
        focused = None
    session = replace(session, enabled_types=enabled, current=page,
                      focused_fact=focused)
    session = _log(session, PathStep(
        timestamp=now, action="filter", combo_before=page.combo,
        combo_after=page.combo, fact_ids=(),
    ))
    return _with_recommendation(ctx, session)


# --- path export -------------------------------------------------------------


def export_path(session: ExplorationSession) -> dict:
    """Exploration paths: segments starting at each select action. Steps
    before the first selection are navigation preamble and form no path."""
    paths: list[list[PathStep]] = []
    current: Optional[list[PathStep]] = None
    for step in session.path_log:
        if step.action == "select":
            current = [step]
            paths.append(current)
        elif current is not None:
            current.append(step)
    return {
        "table_id": session.table_id,
        "paths": [
            {
                "steps": [
                    {
                        "timestamp": s.timestamp,
                        "action": s.action,
                        "combo_before": list(s.combo_before),
                        "combo_after": list(s.combo_after),
                        "fact_ids": list(s.fact_ids),
                        "note": s.note,
                    }
                    for s in steps
                ],
                "fact_count": len({f for s in steps for f in s.fact_ids}),
            }
            for steps in paths
        ],
    }
