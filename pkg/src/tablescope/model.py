"""Core data model for tables with hierarchical row and column headers.

A table is a numeric body grid plus two header trees. Every tree has a
virtual root at depth 0 spanning all leaves; real header levels start at
depth 1, and every leaf sits at the same depth (ragged input gets padded
during ingestion). Each node carries the half-open range of body leaves
it covers, so grid geometry is always derivable from a label path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import TableScopeError


class UnknownLabel(TableScopeError):
    """A label path does not resolve to a node of the tree."""


ROOT_LABEL = ""


@dataclass(frozen=True)
class HeaderNode:
    """One header cell: a label, its children, and the leaf range it spans."""

    label: str
    children: tuple["HeaderNode", ...] = ()
    leaf_span: tuple[int, int] = (0, 0)  # half-open [start, stop)

    def __post_init__(self) -> None:
        if self.leaf_span[0] > self.leaf_span[1]:
            raise ValueError(f"inverted leaf_span {self.leaf_span!r}")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def span_width(self) -> int:
        return self.leaf_span[1] - self.leaf_span[0]


@dataclass(frozen=True)
class HeaderTree:
    """A header hierarchy; ``depth`` counts real levels below the virtual root."""

    root: HeaderNode
    depth: int

    @staticmethod
    def from_root(root: HeaderNode) -> "HeaderTree":
        depth = 0
        stack = [(root, 0)]
        while stack:
            node, d = stack.pop()
            if node.is_leaf:
                depth = max(depth, d)
            stack.extend((c, d + 1) for c in node.children)
        return HeaderTree(root=root, depth=depth)

    @property
    def n_leaves(self) -> int:
        return self.root.span_width

    def nodes_at_depth(self, depth: int) -> tuple[HeaderNode, ...]:
        """All nodes at ``depth``, ordered by leaf position."""
        level = [self.root]
        for _ in range(depth):
            level = [c for node in level for c in node.children]
        return tuple(level)

    def walk(self) -> Iterator[tuple[tuple[str, ...], HeaderNode]]:
        """Yield (label path, node) for every node below the root, preorder."""
        stack: list[tuple[tuple[str, ...], HeaderNode]] = [
            ((c.label,), c) for c in reversed(self.root.children)
        ]
        while stack:
            path, node = stack.pop()
            yield path, node
            stack.extend((path + (c.label,), c) for c in reversed(node.children))

    def leaf_paths(self) -> tuple[tuple[str, ...], ...]:
        """Label paths of all depth-``depth`` leaves, in leaf order (preorder)."""
        return tuple(path for path, node in self.walk() if len(path) == self.depth)


def resolve_node(tree: HeaderTree, path: tuple[str, ...] | list[str]) -> HeaderNode:
    """Walk a label path from the root; raise UnknownLabel on a miss."""
    node = tree.root
    for i, label in enumerate(path):
        for child in node.children:
            if child.label == label:
                node = child
                break
        else:
            raise UnknownLabel(
                f"no node {label!r} under {'/'.join(path[:i]) or '<root>'}"
            )
    return node


def build_node(label: str, children: tuple[HeaderNode, ...] | list[HeaderNode] = (),
               start: int = 0) -> HeaderNode:
    """Build a node whose span is derived from its children (or 1 leaf at ``start``)."""
    kids = tuple(children)
    if not kids:
        return HeaderNode(label=label, leaf_span=(start, start + 1))
    return HeaderNode(label=label, children=kids,
                      leaf_span=(kids[0].leaf_span[0], kids[-1].leaf_span[1]))


def tree_from_nested(spec: list | tuple) -> HeaderTree:
    """Build a tree from nested ``(label, [children...])`` / ``"label"`` items.

    Leaf positions are assigned left to right; all branches must reach the
    same depth (use ``validate`` to check).
    """
    counter = [0]

    def build(item) -> HeaderNode:
        if isinstance(item, str):
            node = build_node(item, start=counter[0])
            counter[0] += 1
            return node
        label, kids = item
        if not kids:
            node = build_node(label, start=counter[0])
            counter[0] += 1
            return node
        return build_node(label, [build(k) for k in kids])

    children = [build(item) for item in spec]
    root = build_node(ROOT_LABEL, children) if children else HeaderNode(ROOT_LABEL)
    return HeaderTree.from_root(root)


@dataclass(frozen=True)
class HierTable:
    """Numeric body grid plus row/column header trees.

    Body cells are floats or ``None`` (missing is explicit, never a silent
    zero). Rows are indexed by row-header leaves, columns by column-header
    leaves.
    """

    row_header: HeaderTree
    col_header: HeaderTree
    body: tuple[tuple[Optional[float], ...], ...]
    title: str = ""
    source_id: str = ""

    @property
    def n_rows(self) -> int:
        return len(self.body)

    @property
    def n_cols(self) -> int:
        return len(self.body[0]) if self.body else 0

    def cell(self, row: int, col: int) -> Optional[float]:
        return self.body[row][col]


@dataclass(frozen=True)
class BlockLocation:
    """A block address: a row label path and a column label path."""

    row_path: tuple[str, ...]
    col_path: tuple[str, ...]


@dataclass(frozen=True)
class CellAddress:
    """A single body cell addressed by full leaf paths on both axes."""

    row_path: tuple[str, ...]
    col_path: tuple[str, ...]


def _check_tree(axis: str, tree: HeaderTree, n_leaves: int, out: list[str]) -> None:
    if tree.root.label != ROOT_LABEL:
        out.append(f"{axis}: root label must be {ROOT_LABEL!r}")
    if tree.root.leaf_span != (0, n_leaves):
        out.append(f"{axis}: root span {tree.root.leaf_span} != (0, {n_leaves})")

    def visit(node: HeaderNode, path: str, depth: int) -> None:
        here = path or "<root>"
        if node.is_leaf:
            if depth != tree.depth:
                out.append(f"{axis}: leaf {here} at depth {depth}, tree depth {tree.depth}")
            if node.span_width != 1:
                out.append(f"{axis}: leaf {here} spans {node.span_width} positions")
            return
        seen: set[str] = set()
        cursor = node.leaf_span[0]
        for child in node.children:
            if child.label in seen:
                out.append(f"{axis}: duplicate sibling label {child.label!r} under {here}")
            seen.add(child.label)
            if child.leaf_span[0] != cursor:
                out.append(
                    f"{axis}: child {child.label!r} of {here} starts at "
                    f"{child.leaf_span[0]}, expected {cursor}"
                )
            cursor = child.leaf_span[1]
        if cursor != node.leaf_span[1]:
            out.append(f"{axis}: children of {here} cover up to {cursor}, "
                       f"node ends at {node.leaf_span[1]}")
        for child in node.children:
            visit(child, f"{path}/{child.label}" if path else child.label, depth + 1)

    visit(tree.root, "", 0)


def validate(table: HierTable) -> tuple[str, ...]:
    """Structural check; returns violation strings instead of raising.

    Covers: span partitioning and ordering, sibling label uniqueness, uniform
    leaf depth, unit leaf spans, and body dimensions matching the leaf counts.
    """
    out: list[str] = []
    _check_tree("rows", table.row_header, table.n_rows, out)
    _check_tree("cols", table.col_header, table.n_cols, out)
    widths = {len(r) for r in table.body}
    if len(widths) > 1:
        out.append(f"body: ragged rows, widths {sorted(widths)}")
    if table.n_rows != table.row_header.n_leaves:
        out.append(f"body: {table.n_rows} rows != {table.row_header.n_leaves} row leaves")
    if table.n_cols != table.col_header.n_leaves:
        out.append(f"body: {table.n_cols} cols != {table.col_header.n_leaves} col leaves")
    return tuple(out)
