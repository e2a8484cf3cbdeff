import type { Api } from './api';
import type { ChartMounter } from './charts';
import { mountChart } from './charts';
import { AlternativesPanel } from './alternatives_panel';
import { FilterPanel } from './filter_panel';
import { NavPanel } from './nav_panel';
import { TablePanel } from './table_panel';
import type { Combo, RawBlock, ViewState } from './types';

const ZOOM_MIN = 0.4;
const ZOOM_MAX = 3;

/**
 * Wires the four panels to the session endpoints. Each user gesture maps to
 * exactly one request; every mutation response is the full next view state,
 * so rendering is always a plain function of the latest server answer plus
 * the small client-only flags (raw toggles, global zoom, selection memory).
 */
export class App {
  readonly root: HTMLElement;
  state: ViewState | null = null;

  private readonly api: Api;
  private readonly table: TablePanel;
  private readonly nav: NavPanel;
  private readonly filters: FilterPanel;
  private readonly alternatives: AlternativesPanel;
  private readonly status: HTMLElement;

  private raw = new Map<string, RawBlock>();
  private zoomFactor = 1;
  private selectedCombo: Combo | null = null;

  constructor(root: HTMLElement, api: Api, mount: ChartMounter = mountChart) {
    this.root = root;
    this.api = api;

    root.classList.add('tablescope');
    root.innerHTML = `
      <header class="toolbar">
        <span class="brand">tablescope</span>
        <label class="upload">open table <input type="file" accept=".json,application/json" /></label>
        <span class="zoom-controls">
          <button type="button" data-zoom="-1">−</button>
          <button type="button" data-zoom="1">+</button>
        </span>
        <span class="status"></span>
      </header>
      <main class="panels">
        <section class="slot-table"></section>
        <aside class="side">
          <section class="slot-nav"><h2>Pages</h2><div class="nav-body"></div></section>
          <section class="slot-filters"><h2>Fact types</h2><div class="filters-body"></div></section>
          <section class="slot-alternatives"><h2>Alternatives</h2><div class="alts-body"></div></section>
        </aside>
      </main>`;

    this.status = root.querySelector<HTMLElement>('.status')!;
    this.table = new TablePanel(
      root.querySelector<HTMLElement>('.slot-table')!,
      {
        onSelect: (blockId) => this.mutate(this.api.select(this.sid(), blockId)),
        onZoom: (direction) => this.mutate(this.api.zoom(this.sid(), direction)),
        onRawToggle: (blockId) => this.toggleRaw(blockId),
        onGlobalZoom: (delta) => this.globalZoom(delta),
      },
      mount,
    );
    this.nav = new NavPanel(root.querySelector<HTMLElement>('.nav-body')!, {
      onSwitchPage: (combo) => this.mutate(this.api.switchPage(this.sid(), combo)),
      onZoom: (direction) => this.mutate(this.api.zoom(this.sid(), direction)),
    });
    this.filters = new FilterPanel(root.querySelector<HTMLElement>('.filters-body')!, {
      onFilters: (types) => this.mutate(this.api.setFilters(this.sid(), types)),
    });
    this.alternatives = new AlternativesPanel(root.querySelector<HTMLElement>('.alts-body')!, {
      onEmbed: (blockId, factId) =>
        this.mutate(this.api.embed(this.sid(), blockId, factId)),
    });

    const upload = root.querySelector<HTMLInputElement>('.upload input')!;
    upload.addEventListener('change', () => {
      const file = upload.files?.[0];
      if (file) void this.openFile(file);
    });
    for (const button of root.querySelectorAll<HTMLButtonElement>('[data-zoom]')) {
      button.addEventListener('click', () =>
        this.globalZoom(0.2 * Number(button.dataset.zoom)),
      );
    }
  }

  private sid(): string {
    if (!this.state) throw new Error('no open session');
    return this.state.session_id;
  }

  async openFile(file: File): Promise<void> {
    try {
      const doc: unknown = JSON.parse(await file.text());
      await this.openTable(doc);
    } catch (err) {
      this.report(err);
    }
  }

  async openTable(doc: unknown): Promise<void> {
    try {
      const { table_id } = await this.api.addTable(doc);
      this.setState(await this.api.createSession(table_id));
    } catch (err) {
      this.report(err);
    }
  }

  setState(view: ViewState): void {
    this.state = view;
    if (view.selected_block === null) {
      this.selectedCombo = null;
    } else if (view.page.blocks.some((b) => b.id === view.selected_block)) {
      this.selectedCombo = view.combo;
    }
    for (const id of [...this.raw.keys()]) {
      if (!view.page.blocks.some((b) => b.id === id)) this.raw.delete(id);
    }
    this.renderAll();
    void this.refreshAlternatives();
  }

  private mutate(request: Promise<ViewState>): void {
    request.then(
      (view) => this.setState(view),
      (err) => this.report(err),
    );
  }

  private renderAll(): void {
    const view = this.state;
    if (!view) return;
    this.status.textContent =
      `${view.title} · page (${view.combo[0]}, ${view.combo[1]}) · ` +
      `${view.path_length} steps`;
    this.table.render(view.page, {
      selectedBlock: view.selected_block,
      raw: this.raw,
      zoomFactor: this.zoomFactor,
    });
    this.nav.render(view.graph, {
      current: view.combo,
      sDepth: view.s_depth,
      selectedCombo: this.selectedCombo,
      recommended: view.recommendation,
    });
    this.filters.render(view.filters);
  }

  private renderTableOnly(): void {
    const view = this.state;
    if (!view) return;
    this.table.render(view.page, {
      selectedBlock: view.selected_block,
      raw: this.raw,
      zoomFactor: this.zoomFactor,
    });
  }

  private async refreshAlternatives(): Promise<void> {
    const view = this.state;
    if (!view) return;
    const block = view.page.blocks.find((b) => b.id === view.selected_block) ?? null;
    if (!block) {
      this.alternatives.render(null, null);
      return;
    }
    try {
      const doc = await this.api.alternatives(view.session_id, block.id);
      this.alternatives.render(block, doc);
    } catch (err) {
      this.report(err);
    }
  }

  private async toggleRaw(blockId: string): Promise<void> {
    if (this.raw.has(blockId)) {
      this.raw.delete(blockId);
      this.renderTableOnly();
      return;
    }
    try {
      this.raw.set(blockId, await this.api.raw(this.sid(), blockId));
      this.renderTableOnly();
    } catch (err) {
      this.report(err);
    }
  }

  // css-only: scales the rendered table without touching the session
  private globalZoom(delta: number): void {
    this.zoomFactor = Math.min(ZOOM_MAX, Math.max(ZOOM_MIN, this.zoomFactor + delta));
    this.renderTableOnly();
  }

  private report(err: unknown): void {
    this.status.textContent = err instanceof Error ? err.message : String(err);
    this.status.classList.add('error');
    setTimeout(() => this.status.classList.remove('error'), 2000);
  }
}
