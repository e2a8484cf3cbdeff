"""Table ingestion: spreadsheet-like matrix grids and the canonical JSON form.

Matrix grids carry header bands (top rows / left columns) whose merged-cell
rectangles encode the header hierarchy. The canonical JSON document is the
package's lossless interchange format:

    {"title": str, "rowTree": node, "colTree": node, "body": [[number|null]]}
    node = {"label": str, "children": [node]}
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Optional

from .errors import TableScopeError
from .model import (
    ROOT_LABEL,
    HeaderNode,
    HeaderTree,
    HierTable,
    build_node,
    validate,
)


class MalformedMerge(TableScopeError):
    """A merge rectangle is out of grid, overlapping, or crosses a band boundary."""


class NonRectangularHierarchy(TableScopeError):
    """Header spans cannot be nested into a level-complete tree."""


class EmptyBody(TableScopeError):
    """The grid has no body cells below/right of the header bands."""


class SchemaViolation(TableScopeError):
    """Canonical JSON does not match the schema; carries the JSON path."""

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class MatrixTableFile:
    """A rectangular cell grid with merge rectangles and header band sizes.

    ``merges`` rectangles are (top, left, bottom, right), all inclusive.
    """

    cells: tuple[tuple[str, ...], ...]
    merges: tuple[tuple[int, int, int, int], ...] = ()
    header_rows: int = 1
    header_cols: int = 1
    title: str = ""

    def __post_init__(self) -> None:
        if self.header_rows < 1 or self.header_cols < 1:
            raise ValueError("header bands must be at least one row and one column")
        widths = {len(r) for r in self.cells}
        if len(widths) > 1:
            raise ValueError(f"ragged cell grid, widths {sorted(widths)}")

    @property
    def n_grid_rows(self) -> int:
        return len(self.cells)

    @property
    def n_grid_cols(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    @staticmethod
    def from_dict(doc: dict) -> "MatrixTableFile":
        cells = tuple(tuple(str(c) for c in row) for row in doc.get("cells", []))
        merges = tuple(tuple(int(v) for v in m) for m in doc.get("merges", []))
        return MatrixTableFile(
            cells=cells,
            merges=merges,  # type: ignore[arg-type]
            header_rows=int(doc.get("headerRows", 1)),
            header_cols=int(doc.get("headerCols", 1)),
            title=str(doc.get("title", "")),
        )


_CURRENCY = "$€£¥₩₹"
_NUM_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def parse_number(text: str) -> Optional[float]:
    """Best-effort numeric parse; thousands separators and currency marks are
    stripped, anything unparseable becomes missing (None)."""
    s = text.strip()
    if not s:
        return None
    negative = False
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1].strip()
        negative = True
    s = s.replace("−", "-").replace(" ", "")
    s = "".join(ch for ch in s if ch not in _CURRENCY)
    s = s.replace(",", "").replace("%", "").replace(" ", "")
    if not _NUM_RE.match(s):
        return None
    value = float(s)
    return -value if negative else value


def _region_of(i: int, j: int, hr: int, hc: int) -> str:
    if i < hr:
        return "corner" if j < hc else "cols"
    return "rows" if j < hc else "body"


def _check_merges(f: MatrixTableFile) -> None:
    h, w = f.n_grid_rows, f.n_grid_cols
    covered: set[tuple[int, int]] = set()
    for m in f.merges:
        top, left, bottom, right = m
        if not (0 <= top <= bottom < h and 0 <= left <= right < w):
            raise MalformedMerge(f"merge {m} outside the {h}x{w} grid")
        corners = {
            _region_of(top, left, f.header_rows, f.header_cols),
            _region_of(bottom, right, f.header_rows, f.header_cols),
        }
        if len(corners) > 1:
            raise MalformedMerge(f"merge {m} crosses a header/body boundary")
        if corners == {"body"}:
            raise MalformedMerge(f"merge {m} lies in the numeric body")
        for i in range(top, bottom + 1):
            for j in range(left, right + 1):
                if (i, j) in covered:
                    raise MalformedMerge(f"merge {m} overlaps another merge")
                covered.add((i, j))


def _band_tree(
    f: MatrixTableFile,
    *,
    axis: str,
) -> HeaderTree:
    """Build one header tree from a band. Levels run along the band's thin
    axis, positions along the body axis. Merged rectangles become nodes; a
    merge extending across several levels yields pass-through single children.
    """
    hr, hc = f.header_rows, f.header_cols
    if axis == "cols":
        n_levels, n_pos = hr, f.n_grid_cols - hc
        grid_at = lambda level, pos: (level, hc + pos)
    else:
        n_levels, n_pos = hc, f.n_grid_rows - hr
        grid_at = lambda level, pos: (hr + pos, level)

    owner: dict[tuple[int, int], tuple[int, int]] = {}
    for top, left, bottom, right in f.merges:
        for i in range(top, bottom + 1):
            for j in range(left, right + 1):
                owner[(i, j)] = (top, left)

    def cell_owner(level: int, pos: int) -> tuple[int, int]:
        ij = grid_at(level, pos)
        return owner.get(ij, ij)

    def label_at(level: int, pos: int) -> str:
        oi, oj = cell_owner(level, pos)
        return f.cells[oi][oj].strip()

    # Maximal same-owner runs per level, as {level: [(start, stop, owner)]}.
    runs: list[list[tuple[int, int, tuple[int, int]]]] = []
    for level in range(n_levels):
        level_runs: list[tuple[int, int, tuple[int, int]]] = []
        pos = 0
        while pos < n_pos:
            own = cell_owner(level, pos)
            stop = pos + 1
            while stop < n_pos and cell_owner(level, stop) == own:
                stop += 1
            level_runs.append((pos, stop, own))
            pos = stop
        runs.append(level_runs)

    def build(level: int, start: int, stop: int) -> list[HeaderNode]:
        nodes: list[HeaderNode] = []
        for r_start, r_stop, own in runs[level]:
            if r_stop <= start or r_start >= stop:
                continue
            if r_start < start or r_stop > stop:
                raise NonRectangularHierarchy(
                    f"{axis}: span [{r_start},{r_stop}) at level {level + 1} "
                    f"straddles its parent span [{start},{stop})"
                )
            oi, oj = own
            label = f.cells[oi][oj].strip()
            if level == n_levels - 1:
                if r_stop - r_start != 1:
                    raise NonRectangularHierarchy(
                        f"{axis}: leaf-level span [{r_start},{r_stop}) covers "
                        "several body lines with no deeper level to tell them apart"
                    )
                nodes.append(HeaderNode(label=label, leaf_span=(r_start, r_stop)))
            else:
                nodes.append(build_node(label, build(level + 1, r_start, r_stop)))
        return nodes

    root = build_node(ROOT_LABEL, build(0, 0, n_pos))
    tree = HeaderTree.from_root(root)
    if tree.depth != n_levels:
        raise NonRectangularHierarchy(f"{axis}: expected depth {n_levels}, got {tree.depth}")
    return tree


def parse_matrix(f: MatrixTableFile) -> HierTable:
    """Interpret a matrix grid as a hierarchical table.

    Raises MalformedMerge / NonRectangularHierarchy / EmptyBody; a returned
    table always passes ``model.validate``.
    """
    _check_merges(f)
    hr, hc = f.header_rows, f.header_cols
    n_rows = f.n_grid_rows - hr
    n_cols = f.n_grid_cols - hc
    if n_rows <= 0 or n_cols <= 0:
        raise EmptyBody(f"no body cells below row {hr} / right of column {hc}")

    col_tree = _band_tree(f, axis="cols")
    row_tree = _band_tree(f, axis="rows")
    body = tuple(
        tuple(parse_number(f.cells[hr + i][hc + j]) for j in range(n_cols))
        for i in range(n_rows)
    )
    table = HierTable(
        row_header=row_tree, col_header=col_tree, body=body, title=f.title
    )
    problems = validate(table)
    if problems:
        raise NonRectangularHierarchy("; ".join(problems))
    return table


# --- canonical JSON ---------------------------------------------------------


def _expect_dict(value: Any, path: str, keys: set[str]) -> dict:
    if not isinstance(value, dict):
        raise SchemaViolation(path, f"expected object, got {type(value).__name__}")
    extra = set(value) - keys
    if extra:
        raise SchemaViolation(path, f"unknown keys {sorted(extra)}")
    missing = keys - set(value)
    if missing:
        raise SchemaViolation(path, f"missing keys {sorted(missing)}")
    return value


def _node_from_doc(doc: Any, path: str) -> tuple[str, list]:
    node = _expect_dict(doc, path, {"label", "children"})
    if not isinstance(node["label"], str):
        raise SchemaViolation(f"{path}.label", "expected string")
    if not isinstance(node["children"], list):
        raise SchemaViolation(f"{path}.children", "expected array")
    children = [
        _node_from_doc(child, f"{path}.children[{i}]")
        for i, child in enumerate(node["children"])
    ]
    return node["label"], children


def _pad_to_depth(label: str, children: list, depth: int, target: int) -> tuple[str, list]:
    """Extend shallow leaves with single pass-through children copying the label."""
    if not children:
        out: tuple[str, list] = (label, [])
        for _ in range(target - depth):
            out = (label, [out])
        # the chain above is built bottom-up; unwrap to (label, kids) shape
        return out
    return label, [_pad_to_depth(c_label, c_kids, depth + 1, target)
                   for c_label, c_kids in children]


def _tree_depth(children: list, depth: int = 0) -> int:
    if not children:
        return depth
    return max(_tree_depth(kids, depth + 1) for _, kids in children)


def _build_tree(label: str, children: list, counter: list[int]) -> HeaderNode:
    if not children:
        node = HeaderNode(label=label, leaf_span=(counter[0], counter[0] + 1))
        counter[0] += 1
        return node
    return build_node(label, [_build_tree(l, k, counter) for l, k in children])


def _tree_from_doc(doc: Any, path: str) -> HeaderTree:
    label, children = _node_from_doc(doc, path)
    depth = _tree_depth(children)
    label, children = _pad_to_depth(label, children, 0, 0) if not children else (
        label,
        [_pad_to_depth(l, k, 1, depth) for l, k in children],
    )
    root = _build_tree(ROOT_LABEL, children, counter=[0])
    return HeaderTree.from_root(root)


def _reject_constant(name: str) -> float:
    raise SchemaViolation("$.body", f"non-finite number {name} is not allowed")


def parse_canonical(doc: str | dict) -> HierTable:
    """Parse the canonical JSON document into a table.

    Ragged header trees are padded with pass-through levels; the result always
    passes ``model.validate``. Raises SchemaViolation with the JSON path of
    the first offending field.
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc, parse_constant=_reject_constant)
        except json.JSONDecodeError as exc:
            raise SchemaViolation("$", f"invalid JSON: {exc}") from exc
    data = _expect_dict(doc, "$", {"title", "rowTree", "colTree", "body"})
    if not isinstance(data["title"], str):
        raise SchemaViolation("$.title", "expected string")
    row_tree = _tree_from_doc(data["rowTree"], "$.rowTree")
    col_tree = _tree_from_doc(data["colTree"], "$.colTree")
    if not isinstance(data["body"], list) or not data["body"]:
        raise SchemaViolation("$.body", "expected non-empty array of rows")
    body_rows: list[tuple[Optional[float], ...]] = []
    for i, row in enumerate(data["body"]):
        if not isinstance(row, list):
            raise SchemaViolation(f"$.body[{i}]", "expected array")
        cells: list[Optional[float]] = []
        for j, cell in enumerate(row):
            if cell is None:
                cells.append(None)
            elif isinstance(cell, (int, float)) and not isinstance(cell, bool):
                cells.append(float(cell))
            else:
                raise SchemaViolation(f"$.body[{i}][{j}]", "expected number or null")
        body_rows.append(tuple(cells))
    table = HierTable(
        row_header=row_tree,
        col_header=col_tree,
        body=tuple(body_rows),
        title=data["title"],
    )
    problems = validate(table)
    if problems:
        raise SchemaViolation("$", "; ".join(problems))
    return table


def _node_to_doc(node: HeaderNode) -> dict:
    return {"label": node.label, "children": [_node_to_doc(c) for c in node.children]}


def emit_canonical(table: HierTable) -> str:
    """Serialize to the canonical document; byte-stable for equal tables."""
    doc = {
        "title": table.title,
        "rowTree": _node_to_doc(table.row_header.root),
        "colTree": _node_to_doc(table.col_header.root),
        "body": [list(row) for row in table.body],
    }
    return json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
