// Mirrors of the service's JSON payloads. The client renders these verbatim;
// every decision about blocks, facts and pages stays on the server.

export type Combo = [number, number];

// grid rect is rows then cols: [x1, x2, y1, y2], half-open
export type GridRect = [number, number, number, number];
// pixel rect is [left, top, right, bottom]
export type PixelRect = [number, number, number, number];

export interface ChartSpec {
  [key: string]: unknown;
}

export interface BlockLocation {
  row_path: string[];
  col_path: string[];
}

export interface BlockDoc {
  id: string;
  location: BlockLocation;
  rect: GridRect;
  embedded: string | null;
  alternatives: string[];
  pixel_rect: PixelRect;
  glyph: boolean;
  chart: ChartSpec | null;
}

export interface PageDoc {
  combo: Combo;
  s_depth: number;
  page_index: number;
  blocks: BlockDoc[];
}

export interface NodeHover {
  blocks_with_facts: number;
  total_facts: number;
}

export interface GraphNode {
  combo: Combo;
  s_depth: number;
  page_index: number;
  hover: NodeHover;
}

export interface GraphDoc {
  nodes: GraphNode[];
  edges: [Combo, Combo][];
}

export interface Recommendation {
  in: Combo | null;
  out: Combo | null;
}

export interface ViewState {
  session_id: string;
  table_id: string;
  title: string;
  combo: Combo;
  s_depth: number;
  page: PageDoc;
  graph: GraphDoc;
  filters: string[];
  selected_block: string | null;
  focused_fact: string | null;
  recommendation: Recommendation;
  path_length: number;
  moved?: boolean;
}

export interface FactSummary {
  id: string;
  type: string;
  category: string;
  score: number;
  description: string;
  attributes: string[];
  chart: ChartSpec;
}

export interface AlternativesDoc {
  block_id: string;
  embedded: string | null;
  facts: FactSummary[];
}

export interface RawBlock {
  rows: string[];
  cols: string[];
  cells: (number | null)[][];
}

export const FACT_TYPES = [
  'change_point',
  'correlation',
  'dominance',
  'evenness',
  'extreme',
  'kurtosis',
  'outlier',
  'seasonality',
  'skewness',
  'top2',
  'trend',
] as const;

// fact ids look like {block}__{type}__{k}
export function factTypeOf(factId: string): string {
  const parts = factId.split('__');
  return parts.length >= 3 ? parts[parts.length - 2] : '';
}

export function comboKey(c: Combo): string {
  return `${c[0]},${c[1]}`;
}

export function sameCombo(a: Combo | null, b: Combo | null): boolean {
  return a !== null && b !== null && a[0] === b[0] && a[1] === b[1];
}
