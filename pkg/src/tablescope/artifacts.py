"""Serialized artifact documents shared by the CLI and the HTTP service.

Both surfaces must emit byte-identical facts/pages documents for the same
table, so every builder here is deterministic and the JSON encoding is
centralized in ``to_json``.
"""

from __future__ import annotations

from typing import Optional

import json

from .charts import export_grammar_json
from .explore import TableContext
from .facts import ALL_TYPE_NAMES, DataFact
from .layout import EmbedPolicy, GridGeometry, build_page, make_placements


def to_json(doc) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def fact_doc(fact: DataFact) -> dict:
    return {
        "id": fact.id,
        "type": fact.fact_type.name,
        "category": fact.fact_type.category,
        "block_id": fact.block_id,
        "score": fact.score,
        "attributes": sorted(fact.attributes),
        "description": fact.description,
        "transform": fact.provenance.transform,
        "subjects": list(fact.provenance.subjects),
        "chart_file": f"{fact.id}.json",
    }


def ordered_facts(ctx: TableContext,
                  enabled_types: frozenset[str] = ALL_TYPE_NAMES,
                  combo: Optional[tuple[int, int]] = None) -> list[DataFact]:
    """All facts in canonical order: graph node order, block order within a
    page, extraction order within a block."""
    out: list[DataFact] = []
    for node in ctx.graph.nodes:
        if combo is not None and node.combo != combo:
            continue
        for block in ctx.blocks_by_combo[node.combo]:
            out.extend(f for f in ctx.facts_by_block[block.id]
                       if f.fact_type.name in enabled_types)
    return out


def facts_document(ctx: TableContext,
                   enabled_types: frozenset[str] = ALL_TYPE_NAMES,
                   combo: Optional[tuple[int, int]] = None) -> dict:
    facts = ordered_facts(ctx, enabled_types, combo)
    return {"count": len(facts), "facts": [fact_doc(f) for f in facts]}


def hover_summary(ctx: TableContext, combo: tuple[int, int],
                  enabled_types: frozenset[str] = ALL_TYPE_NAMES) -> dict:
    """Per-combo rollup shown on navigation-node hover."""
    blocks_with_facts = 0
    total = 0
    for block in ctx.blocks_by_combo[combo]:
        n = sum(1 for f in ctx.facts_by_block[block.id]
                if f.fact_type.name in enabled_types)
        if n:
            blocks_with_facts += 1
        total += n
    return {"blocks_with_facts": blocks_with_facts, "total_facts": total}


def graph_doc(ctx: TableContext,
              enabled_types: frozenset[str] = ALL_TYPE_NAMES) -> dict:
    return {
        "nodes": [
            {
                "combo": [n.r_depth, n.c_depth],
                "s_depth": n.s_depth,
                "page_index": n.page_index,
                "hover": hover_summary(ctx, n.combo, enabled_types),
            }
            for n in ctx.graph.nodes
        ],
        "edges": [[list(a), list(b)] for a, b in ctx.graph.edges],
    }


def page_doc(ctx: TableContext, combo: tuple[int, int],
             enabled_types: frozenset[str] = ALL_TYPE_NAMES,
             geometry: GridGeometry = GridGeometry()) -> dict:
    page = build_page(ctx.table, combo, ctx.facts_by_block,
                      EmbedPolicy(enabled_types))
    placements = make_placements(page, ctx.facts_by_id, geometry)
    blocks = []
    for block, embedded, alternatives, placement in zip(
            page.blocks, page.embedded, page.alternatives, placements):
        blocks.append({
            "id": block.id,
            "location": {
                "row_path": list(block.location.row_path),
                "col_path": list(block.location.col_path),
            },
            "rect": list(block.rect),
            "embedded": embedded,
            "alternatives": list(alternatives),
            "pixel_rect": list(placement.pixel_rect),
            "glyph": placement.glyph,
        })
    node = ctx.graph.node(combo)
    return {
        "combo": [combo[0], combo[1]],
        "s_depth": node.s_depth,
        "page_index": node.page_index,
        "blocks": blocks,
    }


def pages_document(ctx: TableContext,
                   enabled_types: frozenset[str] = ALL_TYPE_NAMES,
                   combo: Optional[tuple[int, int]] = None) -> dict:
    combos = [n.combo for n in ctx.graph.nodes
              if combo is None or n.combo == combo]
    return {
        "graph": graph_doc(ctx, enabled_types),
        "pages": [page_doc(ctx, c, enabled_types) for c in combos],
    }


def chart_documents(ctx: TableContext,
                    enabled_types: frozenset[str] = ALL_TYPE_NAMES,
                    combo: Optional[tuple[int, int]] = None) -> dict[str, str]:
    """Filename -> rendered grammar JSON, one file per exported fact."""
    return {
        f"{f.id}.json": export_grammar_json(f.chart)
        for f in ordered_facts(ctx, enabled_types, combo)
    }
