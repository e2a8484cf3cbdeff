"""tablescope: hierarchical-table fact extraction and semantic-zoom
exploration."""

from .blocks import (
    AGGREGATORS,
    Block,
    DataForm,
    EmptyBlock,
    FormProvenance,
    blocks_for,
    cell_addresses,
    enumerate_depth_combinations,
    grid_rect,
    raw_cells,
    transform,
)
from .charts import ChartSpec, build_chart, export_grammar_json, parse_grammar_json, spec_for
from .config import BadConfig, DetectorConfig, EngineConfig, RecommendConfig, load_config
from .errors import TableScopeError
from .explore import (
    DepthMismatch,
    ExplorationSession,
    InvalidFilter,
    PathStep,
    TableContext,
    build_context,
    candidates,
    export_path,
    new_session,
    recommend,
    select,
    set_filters,
    similarity,
    swap_chart,
    switch_page,
    zoom,
)
from .facts import (
    FACT_TYPES,
    DataFact,
    FactType,
    detect,
    detect_correlation,
    extract_block_facts,
    filter_facts,
)
from .ingest import (
    EmptyBody,
    MalformedMerge,
    MatrixTableFile,
    NonRectangularHierarchy,
    SchemaViolation,
    emit_canonical,
    parse_canonical,
    parse_matrix,
)
from .layout import (
    ComboNode,
    EmbedPolicy,
    GridGeometry,
    HeaderLayerGraph,
    Page,
    Placement,
    UnknownBlock,
    UnknownCombo,
    UnknownFact,
    block_grid_rect,
    build_header_layer,
    build_page,
    make_placements,
    swap_embedded,
)
from .model import (
    BlockLocation,
    CellAddress,
    HeaderNode,
    HeaderTree,
    HierTable,
    UnknownLabel,
    resolve_node,
    tree_from_nested,
    validate,
)
from .store import SessionStore, UnknownSession, UnknownTable

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
