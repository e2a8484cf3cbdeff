"""Shared fixtures: the small hand-built tables the anchors use, the
desk-scale case table, and random-structure generators."""

from __future__ import annotations

import random

import pytest

from tablescope import parse_canonical
from tablescope.explore import build_context


def node(label, children=()):
    return {"label": label, "children": [node(*c) if isinstance(c, tuple)
                                         else node(c) for c in children]}


def canonical_doc(title, row_spec, col_spec, body):
    return {
        "title": title,
        "rowTree": node("", row_spec),
        "colTree": node("", col_spec),
        "body": body,
    }


T1_DOC = canonical_doc(
    "T1",
    [("A", ["a1", "a2"]), ("B", ["b1", "b2"])],
    ["Q1", "Q2", "Q3"],
    [[1, 2, 3], [4, 5, 6], [7, 8, 9], [10, 11, 12]],
)


@pytest.fixture(scope="session")
def t1():
    return parse_canonical(T1_DOC)


@pytest.fixture(scope="session")
def t1_ctx(t1):
    return build_context(t1)


# Two-level headers on both axes; "Block1" is row node "1" x column path
# ①→C, rect rows 0..2 x col 2..3.
NESTED_DOC = canonical_doc(
    "paired headers",
    [("1", ["1a", "1b"]), ("2", ["2a", "2b"])],
    [("①", ["A", "B", "C"]), ("②", ["D", "E"])],
    [
        [3.0, 1.0, 4.0, 1.0, 5.0],
        [9.0, 2.0, 6.0, 5.0, 3.0],
        [5.0, 8.0, 9.0, 7.0, 9.0],
        [3.0, 2.0, 3.0, 8.0, 4.0],
    ],
)


@pytest.fixture(scope="session")
def nested():
    return parse_canonical(NESTED_DOC)


NESTED_MATRIX = {
    "title": "paired headers",
    "headerRows": 2,
    "headerCols": 2,
    "cells": [
        ["", "", "①", "①", "①", "②", "②"],
        ["", "", "A", "B", "C", "D", "E"],
        ["1", "1a", "3", "1", "4", "1", "5"],
        ["1", "1b", "9", "2", "6", "5", "3"],
        ["2", "2a", "5", "8", "9", "7", "9"],
        ["2", "2b", "3", "2", "3", "8", "4"],
    ],
    "merges": [
        [0, 2, 0, 4],  # ① over three leaf columns
        [0, 5, 0, 6],  # ② over two
        [2, 0, 3, 0],  # row group "1"
        [4, 0, 5, 0],  # row group "2"
    ],
}


# Sales-style fixture with two zoom-in candidates from page (1, 0). The
# PS3 console runs slightly negative through Y16, so no per-year console
# breakdown can fire the nonnegative dominance rule; PSV's region split
# (NA-heavy) keeps a dominance fact alive on the console-breakdown page.
def _console_body():
    # per console: {region: [Y16Q1, Y16Q2, Y17Q1, Y17Q2]}
    sony = {
        "PS3": {"EU": [-0.2, -0.2, 1.8, 1.8],
                "JP": [-0.2, -0.2, 1.8, 1.8],
                "NA": [-0.2, -0.2, 1.8, 1.8]},
        "PS4": {"EU": [1.0, 1.0, 1.0, 1.0],
                "JP": [1.0, 1.0, 1.0, 1.0],
                "NA": [1.0, 1.0, 1.0, 1.0]},
        "PSV": {"EU": [2.0, 2.0, 2.5, 2.5],
                "JP": [2.0, 2.0, 2.5, 2.5],
                "NA": [8.0, 8.0, 2.5, 2.5]},
    }
    ms = {
        "X360": {"EU": [1.1, 1.1, 1.1, 1.1],
                 "JP": [1.1, 1.1, 1.1, 1.1],
                 "NA": [1.1, 1.1, 1.1, 1.1]},
        "XOne": {"EU": [0.9, 0.9, 0.9, 0.9],
                 "JP": [0.9, 0.9, 0.9, 0.9],
                 "NA": [0.9, 0.9, 0.9, 0.9]},
    }
    rows = []
    for consoles in (sony, ms):
        for console in consoles.values():
            for region in ("EU", "JP", "NA"):
                rows.append(list(console[region]))
    return rows


CONSOLE_DOC = canonical_doc(
    "console sales",
    [("Sony", [("PS3", ["EU", "JP", "NA"]),
               ("PS4", ["EU", "JP", "NA"]),
               ("PSV", ["EU", "JP", "NA"])]),
     ("MS", [("X360", ["EU", "JP", "NA"]),
             ("XOne", ["EU", "JP", "NA"])])],
    [("Y16", ["Q1", "Q2"]), ("Y17", ["Q1", "Q2"])],
    _console_body(),
)


@pytest.fixture(scope="session")
def console_table():
    return parse_canonical(CONSOLE_DOC)


@pytest.fixture(scope="session")
def console_ctx(console_table):
    return build_context(console_table)


# 40 x 20 desk-scale table: 2 companies x 5 consoles x 4 regions on rows,
# 5 years x 4 quarters on columns. Sony's numbers follow exact formulas
# (PS4 dominates every year from Y2014 on, PS3 dominates Y2013); Nintendo
# fills the other half with mild deterministic wiggle.

SONY_CONSOLES = ("PS3", "PS4", "PSV", "PSP", "PS2")
NINTENDO_CONSOLES = ("Wii", "WiiU", "3DS", "DS", "Switch")
REGIONS = ("EU", "NA", "JP", "Other")
YEARS = ("Y2013", "Y2014", "Y2015", "Y2016", "Y2017")
QUARTERS = ("Q1", "Q2", "Q3", "Q4")

YEARLY = {
    "PS3": [30, 8, 5, 3, 1],
    "PS4": [10, 20, 40, 60, 30],
    "PSV": [6, 6, 5, 4, 0.5],
    "PSP": [5, 3, 1, 0.5, 0.2],
    "PS2": [2, 1, 0.5, 0.2, 0.1],
    "Wii": [9, 7, 5, 3, 1],
    "WiiU": [3, 4, 3, 2, 1],
    "3DS": [8, 9, 7, 6, 5],
    "DS": [6, 4, 2, 1, 0.5],
    "Switch": [0.1, 0.2, 0.5, 1, 12],
}

REGION_W = {
    "PS3": [0.30, 0.28, 0.30, 0.12],
    "PS4": [0.35, 0.33, 0.20, 0.12],
    "PSV": [0.25, 0.25, 0.40, 0.10],
    "PSP": [0.20, 0.15, 0.45, 0.20],
    "PS2": [0.25, 0.25, 0.25, 0.25],
    "Wii": [0.30, 0.30, 0.25, 0.15],
    "WiiU": [0.30, 0.30, 0.25, 0.15],
    "3DS": [0.30, 0.30, 0.25, 0.15],
    "DS": [0.30, 0.30, 0.25, 0.15],
    "Switch": [0.30, 0.30, 0.25, 0.15],
}

QUARTER_W = [0.24, 0.19, 0.26, 0.31]


def case_cell(console: str, region_idx: int, year_idx: int, q_idx: int,
              row: int, col: int) -> float:
    base = YEARLY[console][year_idx] * REGION_W[console][region_idx] \
        * QUARTER_W[q_idx]
    wiggle = 1.0 + 0.02 * (((3 * row + 5 * col) % 7) - 3) / 3.0
    return round(base * wiggle, 9)


def build_case_doc():
    consoles = [("Sony", SONY_CONSOLES), ("Nintendo", NINTENDO_CONSOLES)]
    row_spec = [(company, [(c, list(REGIONS)) for c in cs])
                for company, cs in consoles]
    col_spec = [(y, list(QUARTERS)) for y in YEARS]
    body = []
    row = 0
    for _company, cs in consoles:
        for console in cs:
            for region_idx in range(len(REGIONS)):
                cells = []
                col = 0
                for year_idx in range(len(YEARS)):
                    for q_idx in range(len(QUARTERS)):
                        cells.append(case_cell(console, region_idx, year_idx,
                                               q_idx, row, col))
                        col += 1
                body.append(cells)
                row += 1
    return canonical_doc("game sales 2013-2017", row_spec, col_spec, body)


@pytest.fixture(scope="session")
def case_table():
    return parse_canonical(build_case_doc())


@pytest.fixture(scope="session")
def case_ctx(case_table):
    return build_context(case_table)


# --- random structure generators ----------------------------------------


def random_tree_spec(rng: random.Random, depth: int, leaves: int,
                     prefix: str = "n"):
    """Nested (label, children) spec of a level-complete tree with exactly
    ``leaves`` leaf nodes at ``depth``."""

    def build(level: int, count: int, tag: str):
        if level == depth:
            return [f"{tag}{i}" for i in range(count)]
        k = rng.randint(1, min(4, count))
        cuts = sorted(rng.sample(range(1, count), k - 1)) if k > 1 else []
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [count])]
        return [
            (f"{tag}{i}", build(level + 1, size, f"{tag}{i}_"))
            for i, size in enumerate(sizes)
        ]

    return build(1, leaves, prefix)


def random_table_doc(rng: random.Random, max_depth: int = 4,
                     max_leaves: int = 200, missing: float = 0.0):
    r_depth = rng.randint(1, max_depth)
    c_depth = rng.randint(1, max_depth)
    n_rows = 1 + int((max_leaves - 1) * rng.random() ** 2)
    n_cols = 1 + int((max_leaves - 1) * rng.random() ** 2)
    body = [
        [None if rng.random() < missing else round(rng.uniform(-50, 50), 3)
         for _ in range(n_cols)]
        for _ in range(n_rows)
    ]
    return canonical_doc(
        f"random {n_rows}x{n_cols}",
        random_tree_spec(rng, r_depth, n_rows, "r"),
        random_tree_spec(rng, c_depth, n_cols, "c"),
        body,
    )
