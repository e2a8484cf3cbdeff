import type { ChartSpec } from './types';

export type ChartMounter = (el: HTMLElement, spec: ChartSpec) => Promise<void>;

export function fallbackTile(el: HTMLElement): void {
  el.textContent = 'chart unavailable';
  el.classList.add('chart-fallback');
}

// vega-embed is loaded on demand so the grid code stays renderer-agnostic;
// a spec the renderer rejects degrades to a fallback tile instead of
// breaking the page.
export const mountChart: ChartMounter = async (el, spec) => {
  try {
    const { default: embed } = await import('vega-embed');
    await embed(el, spec as never, { actions: false, renderer: 'svg' });
  } catch {
    fallbackTile(el);
  }
};
