import type { Combo, GraphDoc, GraphNode, Recommendation } from './types';
import { comboKey, sameCombo } from './types';

export interface NavHandlers {
  onSwitchPage(combo: Combo): void;
  onZoom(direction: 'in' | 'out'): void;
}

export interface NavUiState {
  current: Combo;
  sDepth: number;
  // page owning the selected block; its node keeps the red ring across switches
  selectedCombo: Combo | null;
  recommended: Recommendation;
}

const SVG_NS = 'http://www.w3.org/2000/svg';
const NODE_R = 14;
const ROW_GAP = 64;
const COL_GAP = 76;
const SQ = 6;

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

interface Laid {
  node: GraphNode;
  x: number;
  y: number;
}

function layout(graph: GraphDoc, width: number): Map<string, Laid> {
  const bySum = new Map<number, GraphNode[]>();
  for (const n of graph.nodes) {
    const row = bySum.get(n.s_depth) ?? [];
    row.push(n);
    bySum.set(n.s_depth, row);
  }
  const depths = [...bySum.keys()].sort((a, b) => a - b);
  const laid = new Map<string, Laid>();
  depths.forEach((s, rowIdx) => {
    const row = bySum.get(s)!.sort((a, b) => a.page_index - b.page_index);
    row.forEach((node, i) => {
      laid.set(comboKey(node.combo), {
        node,
        x: width / 2 + (i - (row.length - 1) / 2) * COL_GAP,
        y: NODE_R + 12 + rowIdx * ROW_GAP,
      });
    });
  });
  return laid;
}

// depth glyph: one green square per row level, one red square per column level
function depthGlyph(combo: Combo, cx: number, cy: number): SVGGElement {
  const g = svgEl('g');
  const total = combo[0] + combo[1];
  const x0 = cx - (total * (SQ + 2) - 2) / 2;
  for (let i = 0; i < total; i++) {
    const rect = svgEl('rect');
    rect.setAttribute('x', String(x0 + i * (SQ + 2)));
    rect.setAttribute('y', String(cy - SQ / 2));
    rect.setAttribute('width', String(SQ));
    rect.setAttribute('height', String(SQ));
    rect.setAttribute('class', i < combo[0] ? 'depth-sq-row' : 'depth-sq-col');
    g.append(rect);
  }
  return g;
}

export class NavPanel {
  readonly el: HTMLElement;
  private readonly handlers: NavHandlers;

  constructor(el: HTMLElement, handlers: NavHandlers) {
    this.el = el;
    this.el.classList.add('panel-nav');
    this.handlers = handlers;
  }

  render(graph: GraphDoc, ui: NavUiState): void {
    this.el.textContent = '';
    const widest = Math.max(
      1,
      ...[...groupSizes(graph).values()],
    );
    const width = Math.max(220, widest * COL_GAP + 40);
    const rows = new Set(graph.nodes.map((n) => n.s_depth)).size;
    const height = rows * ROW_GAP + 20;

    const svg = svgEl('svg');
    svg.setAttribute('viewBox', `0 0 ${width} ${height}`);
    svg.setAttribute('width', String(width));
    svg.setAttribute('height', String(height));

    const laid = layout(graph, width);
    for (const [a, b] of graph.edges) {
      const from = laid.get(comboKey(a));
      const to = laid.get(comboKey(b));
      if (!from || !to) continue;
      const line = svgEl('line');
      line.setAttribute('x1', String(from.x));
      line.setAttribute('y1', String(from.y));
      line.setAttribute('x2', String(to.x));
      line.setAttribute('y2', String(to.y));
      line.setAttribute('class', 'nav-edge');
      line.dataset.from = comboKey(a);
      line.dataset.to = comboKey(b);
      svg.append(line);
    }

    for (const { node, x, y } of laid.values()) {
      svg.append(this.nodeGroup(node, x, y, ui));
    }
    this.el.append(svg);
  }

  private nodeGroup(node: GraphNode, x: number, y: number, ui: NavUiState): SVGGElement {
    const g = svgEl('g');
    const classes = ['nav-node'];
    if (sameCombo(node.combo, ui.current)) classes.push('current');
    if (sameCombo(node.combo, ui.selectedCombo)) classes.push('selected-page');
    if (
      sameCombo(node.combo, ui.recommended.in) ||
      sameCombo(node.combo, ui.recommended.out)
    ) {
      classes.push('pulse');
    }
    g.setAttribute('class', classes.join(' '));
    g.dataset.combo = comboKey(node.combo);

    const circle = svgEl('circle');
    circle.setAttribute('cx', String(x));
    circle.setAttribute('cy', String(y));
    circle.setAttribute('r', String(NODE_R));
    g.append(circle);
    g.append(depthGlyph(node.combo, x, y));

    const tip = svgEl('title');
    tip.textContent =
      `page (${node.combo[0]}, ${node.combo[1]}): ` +
      `${node.hover.blocks_with_facts} blocks with facts, ` +
      `${node.hover.total_facts} facts`;
    g.append(tip);

    g.addEventListener('click', () => {
      if (node.s_depth === ui.sDepth) {
        this.handlers.onSwitchPage(node.combo);
      } else {
        this.handlers.onZoom(node.s_depth > ui.sDepth ? 'in' : 'out');
      }
    });
    return g;
  }
}

function groupSizes(graph: GraphDoc): Map<number, number> {
  const sizes = new Map<number, number>();
  for (const n of graph.nodes) {
    sizes.set(n.s_depth, (sizes.get(n.s_depth) ?? 0) + 1);
  }
  return sizes;
}
