"""Blocks: rectangular body regions addressed by header label paths.

Fixing a row-header depth and a column-header depth slices the body into a
grid of blocks, one per (row node, column node) pair at those depths. Each
block can be re-shaped into small one-dimensional data forms (aggregated
series, extracted rows/columns, or the flat cell bag) that downstream fact
detectors consume.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from typing import Optional

from .errors import TableScopeError
from .model import BlockLocation, CellAddress, HeaderNode, HierTable, resolve_node


class EmptyBlock(TableScopeError):
    """Every cell of the block is missing; no data form can be built."""


AGGREGATORS = ("sum", "mean", "max", "min")

_SLUG_RE = re.compile(r"[^A-Za-z0-9_]+")


def block_id_for(location: BlockLocation) -> str:
    """Deterministic, URL- and filename-safe id for a block location."""
    raw = json.dumps([list(location.row_path), list(location.col_path)],
                     ensure_ascii=False)
    digest = hashlib.sha1(raw.encode("utf-8")).hexdigest()[:10]
    labels = list(location.row_path) + list(location.col_path)
    slug = "-".join(filter(None, (_SLUG_RE.sub("", l) for l in labels)))[:32]
    return f"{slug or 'root'}-{digest}"


@dataclass(frozen=True)
class Block:
    """One body region: location, header depths, and its grid rectangle.

    ``rect`` is (x1, x2, y1, y2): row index range then column index range,
    both half-open.
    """

    location: BlockLocation
    r_depth: int
    c_depth: int
    rect: tuple[int, int, int, int]
    id: str

    @property
    def n_rows(self) -> int:
        return self.rect[1] - self.rect[0]

    @property
    def n_cols(self) -> int:
        return self.rect[3] - self.rect[2]


def grid_rect(table: HierTable, row_path, col_path) -> tuple[int, int, int, int]:
    """Resolve label paths to the body rectangle (x1, x2, y1, y2) they span."""
    x1, x2 = resolve_node(table.row_header, tuple(row_path)).leaf_span
    y1, y2 = resolve_node(table.col_header, tuple(col_path)).leaf_span
    return (x1, x2, y1, y2)


def enumerate_depth_combinations(table: HierTable) -> tuple[tuple[int, int], ...]:
    """All (row depth, col depth) pairs except (0, 0), ordered by total depth
    then row depth."""
    r, s = table.row_header.depth, table.col_header.depth
    combos = [
        (rd, cd)
        for rd in range(r + 1)
        for cd in range(s + 1)
        if (rd, cd) != (0, 0)
    ]
    combos.sort(key=lambda rc: (rc[0] + rc[1], rc[0]))
    return tuple(combos)


def _paths_at_depth(tree, depth: int) -> list[tuple[tuple[str, ...], HeaderNode]]:
    out: list[tuple[tuple[str, ...], HeaderNode]] = [((), tree.root)]
    for _ in range(depth):
        out = [(path + (c.label,), c) for path, node in out for c in node.children]
    return out


def make_block(table: HierTable, row_path, col_path) -> Block:
    location = BlockLocation(row_path=tuple(row_path), col_path=tuple(col_path))
    return Block(
        location=location,
        r_depth=len(location.row_path),
        c_depth=len(location.col_path),
        rect=grid_rect(table, location.row_path, location.col_path),
        id=block_id_for(location),
    )


def blocks_for(table: HierTable, r_depth: int, c_depth: int) -> tuple[Block, ...]:
    """Every block at one depth combination, row-major. Their rects tile the
    body exactly."""
    rows = _paths_at_depth(table.row_header, r_depth)
    cols = _paths_at_depth(table.col_header, c_depth)
    return tuple(
        Block(
            location=BlockLocation(row_path=rp, col_path=cp),
            r_depth=r_depth,
            c_depth=c_depth,
            rect=(rn.leaf_span[0], rn.leaf_span[1], cn.leaf_span[0], cn.leaf_span[1]),
            id=block_id_for(BlockLocation(row_path=rp, col_path=cp)),
        )
        for rp, rn in rows
        for cp, cn in cols
    )


def _suffix_paths(tree, prefix: tuple[str, ...]) -> list[tuple[str, ...]]:
    """Leaf paths below ``prefix``, relative to it, in leaf order."""
    node = resolve_node(tree, prefix)
    out: list[tuple[str, ...]] = []

    def walk(n: HeaderNode, suffix: tuple[str, ...]) -> None:
        if n.is_leaf:
            out.append(suffix)
            return
        for c in n.children:
            walk(c, suffix + (c.label,))

    walk(node, ())
    return out


def cell_addresses(table: HierTable, block: Block) -> tuple[CellAddress, ...]:
    """Full leaf-path addresses of every cell in the block, row-major."""
    row_suffixes = _suffix_paths(table.row_header, block.location.row_path)
    col_suffixes = _suffix_paths(table.col_header, block.location.col_path)
    rp, cp = block.location.row_path, block.location.col_path
    return tuple(
        CellAddress(row_path=rp + rs, col_path=cp + cs)
        for rs in row_suffixes
        for cs in col_suffixes
    )


@dataclass(frozen=True)
class FormProvenance:
    """Where a data form came from: its block and the transform applied."""

    block_id: str
    transform: str
    subjects: tuple[str, ...] = ()

    @property
    def key(self) -> tuple[str, str, tuple[str, ...]]:
        return (self.block_id, self.transform, self.subjects)


@dataclass(frozen=True)
class DataForm:
    """A one-dimensional view of a block (plus one flat grid form per block).

    ``kind``: row_merge | col_merge | row_series | col_series | flat.
    Merges aggregate; series extract raw lines; flat keeps the whole grid.
    For flat forms ``grid`` holds the rows and labels/values carry the
    flattened detector view.
    """

    kind: str
    aggregator: str  # sum | mean | max | min | none
    labels: tuple[str, ...]
    values: tuple[Optional[float], ...]
    provenance: FormProvenance
    grid: tuple[tuple[Optional[float], ...], ...] = ()

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.values):
            raise ValueError("labels and values must align")

    def present(self) -> tuple[tuple[int, str, float], ...]:
        """(index, label, value) triples for non-missing entries."""
        return tuple(
            (i, l, v)
            for i, (l, v) in enumerate(zip(self.labels, self.values))
            if v is not None
        )


def _agg(values: list[float], how: str) -> float:
    if how == "sum":
        return float(sum(values))
    if how == "mean":
        return float(sum(values) / len(values))
    if how == "max":
        return max(values)
    if how == "min":
        return min(values)
    raise ValueError(f"unknown aggregator {how!r}")


def _cells(table: HierTable, rows: range, cols: range) -> list[float]:
    out = []
    for i in rows:
        row = table.body[i]
        for j in cols:
            if row[j] is not None:
                out.append(row[j])
    return out


def _label_of(suffix: tuple[str, ...]) -> str:
    return "/".join(suffix)


def transform(table: HierTable, block: Block) -> tuple[DataForm, ...]:
    """All data forms of a block.

    Merges group by the children of the block's row (column) node and
    aggregate each child's sub-rows x the block's full column span (mirrored
    for row_merge); emitted per aggregator when the merged-away axis has at
    least two lines. Series extract each grid row/column when at least two
    exist.
    Series with fewer than two present values are dropped; the flat form is
    always present. Raises EmptyBlock when every cell is missing.
    """
    x1, x2, y1, y2 = block.rect
    if not _cells(table, range(x1, x2), range(y1, y2)):
        raise EmptyBlock(f"block {block.id} has no present cells")

    row_node = resolve_node(table.row_header, block.location.row_path)
    col_node = resolve_node(table.col_header, block.location.col_path)
    forms: list[DataForm] = []

    # row_merge: merge the block's rows away, one value per column-side child.
    # Requires >= 2 rows to merge; single leaf lines stay series/flat only.
    if col_node.children:
        if x2 - x1 >= 2:
            for how in AGGREGATORS:
                labels, values = [], []
                for child in col_node.children:
                    cells = _cells(table, range(x1, x2), range(*child.leaf_span))
                    labels.append(child.label)
                    values.append(_agg(cells, how) if cells else None)
                forms.append(DataForm(
                    kind="row_merge", aggregator=how,
                    labels=tuple(labels), values=tuple(values),
                    provenance=FormProvenance(block.id, f"row_merge[{how}]"),
                ))

    # col_merge: merge the block's columns away, one value per row-side child.
    if row_node.children:
        if y2 - y1 >= 2:
            for how in AGGREGATORS:
                labels, values = [], []
                for child in row_node.children:
                    cells = _cells(table, range(*child.leaf_span), range(y1, y2))
                    labels.append(child.label)
                    values.append(_agg(cells, how) if cells else None)
                forms.append(DataForm(
                    kind="col_merge", aggregator=how,
                    labels=tuple(labels), values=tuple(values),
                    provenance=FormProvenance(block.id, f"col_merge[{how}]"),
                ))

    row_suffixes = _suffix_paths(table.row_header, block.location.row_path)
    col_suffixes = _suffix_paths(table.col_header, block.location.col_path)
    row_labels = tuple(_label_of(s) for s in row_suffixes)
    col_labels = tuple(_label_of(s) for s in col_suffixes)

    # row_series: one raw series per grid row of the rect.
    if x2 - x1 >= 2:
        for offset, label in enumerate(row_labels):
            values = tuple(table.body[x1 + offset][j] for j in range(y1, y2))
            if sum(v is not None for v in values) < 2:
                continue
            forms.append(DataForm(
                kind="row_series", aggregator="none",
                labels=col_labels, values=values,
                provenance=FormProvenance(block.id, f"row_series[{label}]",
                                          subjects=(label,)),
            ))

    # col_series: one raw series per grid column of the rect.
    if y2 - y1 >= 2:
        for offset, label in enumerate(col_labels):
            values = tuple(table.body[i][y1 + offset] for i in range(x1, x2))
            if sum(v is not None for v in values) < 2:
                continue
            forms.append(DataForm(
                kind="col_series", aggregator="none",
                labels=row_labels, values=values,
                provenance=FormProvenance(block.id, f"col_series[{label}]",
                                          subjects=(label,)),
            ))

    # flat: the whole grid; vector rects label by the long axis, general
    # rects label every cell.
    grid = tuple(tuple(table.body[i][y1:y2]) for i in range(x1, x2))
    flat_values: list[Optional[float]] = [v for row in grid for v in row]
    if x2 - x1 == 1:
        flat_labels = col_labels
    elif y2 - y1 == 1:
        flat_labels = row_labels
    else:
        flat_labels = tuple(
            f"{r}·{c}" for r in row_labels for c in col_labels
        )
    forms.append(DataForm(
        kind="flat", aggregator="none",
        labels=flat_labels, values=tuple(flat_values),
        provenance=FormProvenance(block.id, "flat"),
        grid=grid,
    ))
    return tuple(forms)


def raw_cells(table: HierTable, block: Block) -> dict:
    """Raw view of a block for display: labels on both axes plus the grid."""
    x1, x2, y1, y2 = block.rect
    return {
        "rows": [_label_of(s) for s in _suffix_paths(table.row_header,
                                                     block.location.row_path)],
        "cols": [_label_of(s) for s in _suffix_paths(table.col_header,
                                                     block.location.col_path)],
        "cells": [list(table.body[i][y1:y2]) for i in range(x1, x2)],
    }
