import { afterEach, describe, expect, it } from 'vitest';

import { NavPanel } from '../src/nav_panel';
import type { NavHandlers, NavUiState } from '../src/nav_panel';
import type { ViewState } from '../src/types';
import initial from './fixtures/t1_initial.json';

const graph = (initial as unknown as ViewState).graph;

function setup(over: Partial<NavUiState> = {}) {
  const log: string[] = [];
  const handlers: NavHandlers = {
    onSwitchPage: (combo) => log.push(`page:${combo[0]},${combo[1]}`),
    onZoom: (d) => log.push(`zoom:${d}`),
  };
  const el = document.createElement('div');
  document.body.append(el);
  const panel = new NavPanel(el, handlers);
  const ui: NavUiState = {
    current: [1, 0],
    sDepth: 1,
    selectedCombo: null,
    recommended: { in: [2, 0], out: null },
    ...over,
  };
  panel.render(graph, ui);
  return { el, log, panel, ui };
}

const node = (el: HTMLElement, combo: string) =>
  el.querySelector<SVGGElement>(`.nav-node[data-combo="${combo}"]`)!;

afterEach(() => {
  document.body.innerHTML = '';
});

describe('glyph graph', () => {
  it('lays the combos out in depth rows', () => {
    const { el } = setup();
    expect(el.querySelectorAll('.nav-node')).toHaveLength(5);
    expect(el.querySelectorAll('.nav-edge')).toHaveLength(5);
    const ys = new Set(
      [...el.querySelectorAll<SVGCircleElement>('.nav-node circle')].map((c) =>
        c.getAttribute('cy'),
      ),
    );
    expect(ys.size).toBe(3);
  });

  it('draws the depth squares, row levels green before column levels red', () => {
    const { el } = setup();
    const squares = node(el, '2,1').querySelectorAll('rect');
    expect(squares).toHaveLength(3);
    const classes = [...squares].map((r) => r.getAttribute('class'));
    expect(classes).toEqual(['depth-sq-row', 'depth-sq-row', 'depth-sq-col']);
  });

  it('marks current, remembered selection and recommendation', () => {
    const { el } = setup({ selectedCombo: [0, 1] });
    expect(node(el, '1,0').classList.contains('current')).toBe(true);
    expect(node(el, '0,1').classList.contains('selected-page')).toBe(true);
    expect(node(el, '2,0').classList.contains('pulse')).toBe(true);
    expect(node(el, '1,1').classList.contains('pulse')).toBe(false);
  });

  it('hover summary comes from the server hover payload', () => {
    const { el } = setup();
    const tip = node(el, '0,1').querySelector('title')!;
    expect(tip.textContent).toContain('3 blocks with facts');
    expect(tip.textContent).toContain('9 facts');
  });

  it('same-depth click switches the page, other depths go through zoom', () => {
    const { el, log } = setup();
    node(el, '0,1').dispatchEvent(new MouseEvent('click', { bubbles: true }));
    node(el, '1,1').dispatchEvent(new MouseEvent('click', { bubbles: true }));
    expect(log).toEqual(['page:0,1', 'zoom:in']);
  });

  it('clicking a shallower row zooms out', () => {
    const { el, log } = setup({ current: [2, 1], sDepth: 3 });
    node(el, '1,0').dispatchEvent(new MouseEvent('click', { bubbles: true }));
    expect(log).toEqual(['zoom:out']);
  });
});
