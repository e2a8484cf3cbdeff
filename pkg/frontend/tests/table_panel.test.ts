import { afterEach, describe, expect, it, vi } from 'vitest';

import { TablePanel, WHEEL_DEBOUNCE_MS, cellGeometry, headerSpans } from '../src/table_panel';
import type { TableHandlers, TableUiState } from '../src/table_panel';
import type { RawBlock, ViewState } from '../src/types';
import initial from './fixtures/t1_initial.json';

const page = (initial as unknown as ViewState).page;

function handlers(): TableHandlers & { log: string[] } {
  const log: string[] = [];
  return {
    log,
    onSelect: (id) => log.push(`select:${id}`),
    onZoom: (d) => log.push(`zoom:${d}`),
    onRawToggle: (id) => log.push(`raw:${id}`),
    onGlobalZoom: (d) => log.push(`global:${d}`),
  };
}

const noMount = async () => {};

function ui(over: Partial<TableUiState> = {}): TableUiState {
  return { selectedBlock: null, raw: new Map(), zoomFactor: 1, ...over };
}

function panel() {
  const el = document.createElement('div');
  document.body.append(el);
  const h = handlers();
  return { el, h, panel: new TablePanel(el, h, noMount) };
}

function wheel(el: HTMLElement, deltaY: number, ctrlKey = false) {
  el.dispatchEvent(new WheelEvent('wheel', { deltaY, ctrlKey, bubbles: true, cancelable: true }));
}

afterEach(() => {
  document.body.innerHTML = '';
  vi.useRealTimers();
});

describe('geometry', () => {
  it('backs the cell size out of the pixel hints', () => {
    const geo = cellGeometry(page);
    // blocks at (1, 0): A rows 0..2 and B rows 2..4, both spanning cols 0..3
    expect(geo.cellW).toBeCloseTo(90, 6);
    expect(geo.cellH).toBeCloseTo(28, 6);
    expect(geo.rows).toBe(4);
    expect(geo.cols).toBe(3);
  });

  it('merges consecutive header runs prefix by prefix', () => {
    const spans = headerSpans(
      [
        { path: ['A', 'a1'], start: 0, end: 1 },
        { path: ['A', 'a2'], start: 1, end: 2 },
        { path: ['B', 'b1'], start: 2, end: 3 },
      ],
      2,
    );
    const level0 = spans.filter((s) => s.level === 0);
    expect(level0).toEqual([
      { label: 'A', level: 0, start: 0, end: 2 },
      { label: 'B', level: 0, start: 2, end: 3 },
    ]);
    expect(spans.filter((s) => s.level === 1)).toHaveLength(3);
  });
});

describe('rendering', () => {
  it('draws one chart tile per placement, inside its block region', () => {
    const { el, panel: p } = panel();
    p.render(page, ui());
    const regions = el.querySelectorAll<HTMLElement>('.block-region');
    const charts = el.querySelectorAll<HTMLElement>('.chart-box');
    expect(regions).toHaveLength(2);
    expect(charts).toHaveLength(2);
    for (const box of charts) {
      const region = box.parentElement!;
      const left = parseFloat(box.style.left);
      const top = parseFloat(box.style.top);
      expect(left).toBeGreaterThanOrEqual(0);
      expect(top).toBeGreaterThanOrEqual(0);
      expect(left + parseFloat(box.style.width)).toBeLessThanOrEqual(
        parseFloat(region.style.width) + 1e-6,
      );
      expect(top + parseFloat(box.style.height)).toBeLessThanOrEqual(
        parseFloat(region.style.height) + 1e-6,
      );
    }
  });

  it('marks the selected block', () => {
    const { el, panel: p } = panel();
    p.render(page, ui({ selectedBlock: page.blocks[0].id }));
    const selected = el.querySelectorAll<HTMLElement>('.block-region.selected');
    expect(selected).toHaveLength(1);
    expect(selected[0].dataset.blockId).toBe(page.blocks[0].id);
  });

  it('renders raw cells instead of the chart while toggled', () => {
    const { el, panel: p } = panel();
    const raw: RawBlock = { rows: ['a1'], cols: ['Q1', 'Q2'], cells: [[1.5, null]] };
    p.render(page, ui({ raw: new Map([[page.blocks[0].id, raw]]) }));
    const region = el.querySelector<HTMLElement>(
      `.block-region[data-block-id="${page.blocks[0].id}"]`,
    )!;
    expect(region.querySelector('.chart-box')).toBeNull();
    const cells = [...region.querySelectorAll('td')].map((td) => td.textContent);
    expect(cells).toContain('1.5');
    expect(cells).toContain('∅');
    // the other block keeps its chart
    expect(el.querySelectorAll('.chart-box')).toHaveLength(1);
  });

  it('is a pure function of state: re-render gives identical markup', () => {
    const { el, panel: p } = panel();
    p.render(page, ui());
    const first = el.innerHTML;
    p.render(page, ui());
    expect(el.innerHTML).toBe(first);
  });

  it('scales the canvas with the global zoom factor', () => {
    const { el, panel: p } = panel();
    p.render(page, ui({ zoomFactor: 1.4 }));
    const canvas = el.querySelector<HTMLElement>('.table-canvas')!;
    expect(canvas.style.transform).toBe('scale(1.4)');
  });
});

describe('gestures', () => {
  it('select on click, raw toggle on right-click', () => {
    const { el, h, panel: p } = panel();
    p.render(page, ui());
    const region = el.querySelector<HTMLElement>('.block-region')!;
    region.click();
    region.dispatchEvent(new MouseEvent('contextmenu', { bubbles: true, cancelable: true }));
    expect(h.log).toEqual([
      `select:${page.blocks[0].id}`,
      `raw:${page.blocks[0].id}`,
    ]);
  });

  it('debounces a wheel burst to a single zoom step', () => {
    vi.useFakeTimers({ toFake: ['Date'] });
    const { el, h } = panel();
    wheel(el, -120);
    wheel(el, -120);
    wheel(el, 120);
    expect(h.log).toEqual(['zoom:in']);

    vi.setSystemTime(Date.now() + WHEEL_DEBOUNCE_MS + 5);
    wheel(el, 120);
    expect(h.log).toEqual(['zoom:in', 'zoom:out']);
  });

  it('routes ctrl+wheel to the stateless global zoom', () => {
    const { el, h } = panel();
    wheel(el, -120, true);
    wheel(el, 120, true);
    expect(h.log).toEqual(['global:0.1', 'global:-0.1']);
  });
});
