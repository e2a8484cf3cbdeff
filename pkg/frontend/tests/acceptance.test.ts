// Shipping contract for the client, one test per clause, driven end to end
// through the App against recorded service responses.

import { afterEach, describe, expect, it, vi } from 'vitest';

import { Api } from '../src/api';
import { App } from '../src/app';
import type { ViewState } from '../src/types';
import alternatives from './fixtures/t1_alternatives.json';
import embedded from './fixtures/t1_embedded.json';
import filtered from './fixtures/t1_filtered.json';
import initial from './fixtures/t1_initial.json';
import selected from './fixtures/t1_selected.json';
import zoomed from './fixtures/t1_zoomed.json';
import { fakeService, flush } from './helpers';

const view = (doc: unknown) => doc as ViewState;

const fakeMount = async (el: HTMLElement) => {
  el.dataset.mounted = '1';
};

function appWith(routes: Parameters<typeof fakeService>[0]) {
  const { fetcher, calls } = fakeService(routes);
  const root = document.createElement('div');
  document.body.append(root);
  const app = new App(root, new Api('', fetcher), fakeMount);
  return { app, root, calls };
}

afterEach(() => {
  document.body.innerHTML = '';
  vi.useRealTimers();
});

describe('ui contract', () => {
  it('wheel-up emits exactly one zoom request', async () => {
    vi.useFakeTimers({ toFake: ['Date'] });
    const { app, root, calls } = appWith({
      'POST /sessions/s000001/zoom': zoomed,
    });
    app.setState(view(initial));

    const panel = root.querySelector('.slot-table')!;
    for (let i = 0; i < 3; i++) {
      panel.dispatchEvent(
        new WheelEvent('wheel', { deltaY: -120, bubbles: true, cancelable: true }),
      );
    }
    await flush();

    const zooms = calls.filter((c) => c.url.endsWith('/zoom'));
    expect(zooms).toHaveLength(1);
    expect(zooms[0].body).toEqual({ direction: 'in' });
  });

  it('toggling a fact-type filter removes those charts from the rendered grid', async () => {
    const { app, root, calls } = appWith({
      'POST /sessions/s000001/filters': filtered,
    });
    app.setState(view(initial));
    expect(root.querySelectorAll('[data-fact-type="trend"]').length).toBeGreaterThan(0);

    const box = root.querySelector<HTMLInputElement>('input[data-type="trend"]')!;
    expect(box.checked).toBe(true);
    box.click();
    await flush();

    const posts = calls.filter((c) => c.url.endsWith('/filters'));
    expect(posts).toHaveLength(1);
    const sent = posts[0].body as { types: string[] };
    expect(sent.types).toHaveLength(10);
    expect(sent.types).not.toContain('trend');

    expect(root.querySelectorAll('[data-fact-type="trend"]')).toHaveLength(0);
    expect(root.querySelectorAll('.block-region[data-fact-id]').length).toBeGreaterThan(0);
  });

  it('embedding an alternative swaps the chart without a page reload', async () => {
    const { app, root, calls } = appWith({
      'GET /sessions/s000001/block/A-9a8c4169b7/alternatives': alternatives,
      'POST /sessions/s000001/embed': embedded,
    });
    app.setState(view(selected));
    await flush();

    const tile = root.querySelector<HTMLElement>('.block-region[data-block-id="A-9a8c4169b7"]')!;
    expect(tile.dataset.factId).toBe('A-9a8c4169b7__trend__0');

    const row = root.querySelector(
      '.alt-list [data-fact-id="A-9a8c4169b7__change_point__0"]',
    )!;
    row.querySelector('button')!.click();
    await flush();

    const embeds = calls.filter((c) => c.url.endsWith('/embed'));
    expect(embeds).toHaveLength(1);
    expect(embeds[0].body).toEqual({
      block_id: 'A-9a8c4169b7',
      fact_id: 'A-9a8c4169b7__change_point__0',
    });

    const swapped = root.querySelector<HTMLElement>(
      '.block-region[data-block-id="A-9a8c4169b7"]',
    )!;
    expect(swapped.dataset.factId).toBe('A-9a8c4169b7__change_point__0');
    expect(swapped.dataset.factType).toBe('change_point');
    // same document, same mount point: nothing navigated or reloaded
    expect(root.isConnected).toBe(true);
    expect(app.root).toBe(root);
  });

  it('navigation glyph for T1 shows 5 nodes and 5 edges', () => {
    const { app, root } = appWith({});
    app.setState(view(initial));
    expect(root.querySelectorAll('.nav-node')).toHaveLength(5);
    expect(root.querySelectorAll('.nav-edge')).toHaveLength(5);
  });
});
