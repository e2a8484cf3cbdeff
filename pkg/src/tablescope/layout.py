"""Two-layer page layout.

The header layer is a graph over depth combinations (one node per
(r_depth, c_depth) pair, parent-child edges between adjacent sums). The
block layer assigns each block of a page one embedded chart plus an
ordered alternatives list, and turns block rects into pixel placements.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Optional

from .blocks import Block, blocks_for
from .charts import ChartSpec
from .errors import TableScopeError
from .facts import ALL_TYPE_NAMES, DataFact
from .model import HeaderTree, HierTable, resolve_node


class UnknownCombo(TableScopeError):
    pass


class UnknownBlock(TableScopeError):
    pass


class UnknownFact(TableScopeError):
    pass


@dataclass(frozen=True)
class ComboNode:
    r_depth: int
    c_depth: int
    page_index: int  # position within the s_depth group, r_depth descending

    @property
    def s_depth(self) -> int:
        return self.r_depth + self.c_depth

    @property
    def combo(self) -> tuple[int, int]:
        return (self.r_depth, self.c_depth)


@dataclass(frozen=True)
class HeaderLayerGraph:
    nodes: tuple[ComboNode, ...]
    edges: tuple[tuple[tuple[int, int], tuple[int, int]], ...]

    def node(self, combo: tuple[int, int]) -> ComboNode:
        for n in self.nodes:
            if n.combo == combo:
                return n
        raise UnknownCombo(f"no depth combination {combo}")

    def has(self, combo: tuple[int, int]) -> bool:
        return any(n.combo == combo for n in self.nodes)

    def children(self, combo: tuple[int, int]) -> tuple[tuple[int, int], ...]:
        return tuple(b for a, b in self.edges if a == combo)

    def parents(self, combo: tuple[int, int]) -> tuple[tuple[int, int], ...]:
        return tuple(a for a, b in self.edges if b == combo)

    def group(self, s_depth: int) -> tuple[ComboNode, ...]:
        return tuple(n for n in self.nodes if n.s_depth == s_depth)


def build_header_layer(table: HierTable) -> HeaderLayerGraph:
    """Graph over all depth combinations except (0, 0).

    Node count is (r+1)(s+1)-1. An edge a->b exists when b adds exactly one
    level on exactly one axis. Within an s_depth group nodes are ordered by
    r_depth descending; that position is the page index.
    """
    r, s = table.row_header.depth, table.col_header.depth
    combos = [
        (rd, cd)
        for rd in range(r + 1)
        for cd in range(s + 1)
        if (rd, cd) != (0, 0)
    ]
    combos.sort(key=lambda rc: (rc[0] + rc[1], -rc[0]))
    nodes = []
    index = 0
    prev_s = None
    for rd, cd in combos:
        if rd + cd != prev_s:
            prev_s, index = rd + cd, 0
        nodes.append(ComboNode(rd, cd, index))
        index += 1
    have = {(rd, cd) for rd, cd in combos}
    edges = []
    for rd, cd in combos:
        for child in ((rd + 1, cd), (rd, cd + 1)):
            if child in have:
                edges.append(((rd, cd), child))
    edges.sort(key=lambda e: (e[0][0] + e[0][1], -e[0][0], -e[1][0]))
    return HeaderLayerGraph(nodes=tuple(nodes), edges=tuple(edges))


def block_grid_rect(
    row_tree: HeaderTree,
    col_tree: HeaderTree,
    row_path: tuple[str, ...],
    col_path: tuple[str, ...],
) -> tuple[int, int, int, int]:
    """Body-grid rect of the block named by the two header paths."""
    x1, x2 = resolve_node(row_tree, tuple(row_path)).leaf_span
    y1, y2 = resolve_node(col_tree, tuple(col_path)).leaf_span
    return (x1, x2, y1, y2)


@dataclass(frozen=True)
class EmbedPolicy:
    """Which fact each block shows first: highest score wins, ties go to the
    lexicographically first type name, then the smaller fact id. Facts of
    disabled types are never embedded or listed."""

    enabled_types: frozenset[str] = field(default_factory=lambda: ALL_TYPE_NAMES)

    def rank(self, facts: tuple[DataFact, ...]) -> tuple[DataFact, ...]:
        allowed = [f for f in facts if f.fact_type.name in self.enabled_types]
        return tuple(sorted(allowed, key=lambda f: (-f.score, f.fact_type.name, f.id)))


@dataclass(frozen=True)
class Page:
    """One depth combination rendered: blocks in row-major order, the
    embedded fact id per block (aligned by index), and the remaining fact
    ids per block."""

    combo: tuple[int, int]
    blocks: tuple[Block, ...]
    embedded: tuple[Optional[str], ...]
    alternatives: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if not (len(self.blocks) == len(self.embedded) == len(self.alternatives)):
            raise ValueError("blocks, embedded, alternatives must align")

    def index_of(self, block_id: str) -> int:
        for i, b in enumerate(self.blocks):
            if b.id == block_id:
                return i
        raise UnknownBlock(f"block {block_id} not on page {self.combo}")

    def embedded_for(self, block_id: str) -> Optional[str]:
        return self.embedded[self.index_of(block_id)]

    def alternatives_for(self, block_id: str) -> tuple[str, ...]:
        return self.alternatives[self.index_of(block_id)]


def build_page(
    table: HierTable,
    combo: tuple[int, int],
    facts_by_block: Mapping[str, tuple[DataFact, ...]],
    policy: EmbedPolicy,
) -> Page:
    blocks = blocks_for(table, combo[0], combo[1])
    embedded: list[Optional[str]] = []
    alternatives: list[tuple[str, ...]] = []
    for block in blocks:
        ranked = policy.rank(facts_by_block.get(block.id, ()))
        embedded.append(ranked[0].id if ranked else None)
        alternatives.append(tuple(f.id for f in ranked[1:]))
    return Page(combo=combo, blocks=blocks, embedded=tuple(embedded),
                alternatives=tuple(alternatives))


def swap_embedded(page: Page, block_id: str, fact_id: str) -> Page:
    """Embed fact_id in its block; the prior embedded fact moves to the head
    of the alternatives. Swapping to the already-embedded fact is a no-op."""
    i = page.index_of(block_id)
    current = page.embedded[i]
    if fact_id == current:
        return page
    alts = list(page.alternatives[i])
    if fact_id not in alts:
        raise UnknownFact(f"fact {fact_id} is not available on block {block_id}")
    alts.remove(fact_id)
    if current is not None:
        alts.insert(0, current)
    embedded = list(page.embedded)
    embedded[i] = fact_id
    alternatives = list(page.alternatives)
    alternatives[i] = tuple(alts)
    return replace(page, embedded=tuple(embedded), alternatives=tuple(alternatives))


@dataclass(frozen=True)
class GridGeometry:
    """Pixel metrics of the rendered body grid."""

    cell_width: int = 90
    cell_height: int = 28
    chart_fill: float = 0.9
    min_chart_width: int = 60
    min_chart_height: int = 40


@dataclass(frozen=True)
class Placement:
    block_id: str
    rect: tuple[int, int, int, int]  # grid (x1, x2, y1, y2), rows then cols
    pixel_rect: tuple[float, float, float, float]  # (left, top, right, bottom)
    chart: Optional[ChartSpec]
    glyph: bool  # chart box under the minimum; render as an expandable dot


def make_placements(
    page: Page,
    facts_by_id: Mapping[str, DataFact],
    geometry: GridGeometry = GridGeometry(),
) -> tuple[Placement, ...]:
    """One placement per block: the chart box fills 90% of the block's pixel
    region, centered, so boxes of distinct blocks can never overlap."""
    placements = []
    for block, fact_id in zip(page.blocks, page.embedded):
        x1, x2, y1, y2 = block.rect
        left, right = y1 * geometry.cell_width, y2 * geometry.cell_width
        top, bottom = x1 * geometry.cell_height, x2 * geometry.cell_height
        w = (right - left) * geometry.chart_fill
        h = (bottom - top) * geometry.chart_fill
        cx, cy = (left + right) / 2, (top + bottom) / 2
        pixel_rect = (cx - w / 2, cy - h / 2, cx + w / 2, cy + h / 2)
        chart = facts_by_id[fact_id].chart if fact_id is not None else None
        placements.append(Placement(
            block_id=block.id,
            rect=block.rect,
            pixel_rect=pixel_rect,
            chart=chart,
            glyph=w < geometry.min_chart_width or h < geometry.min_chart_height,
        ))
    return tuple(placements)
