import type { AlternativesDoc, Combo, RawBlock, ViewState } from './types';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, detail: string) {
    super(detail);
    this.status = status;
  }
}

async function unwrap<T>(res: Response): Promise<T> {
  const body = await res.json().catch(() => ({}));
  if (!res.ok) {
    const detail = (body as { detail?: string }).detail ?? res.statusText;
    throw new ApiError(res.status, detail);
  }
  return body as T;
}

/**
 * Thin client over the session REST surface. Mutations are chained so at
 * most one is in flight at a time; the server journal then records the
 * same order the user acted in.
 */
export class Api {
  private readonly base: string;
  private readonly fetcher: FetchLike;
  private chain: Promise<unknown> = Promise.resolve();

  constructor(base = '', fetcher?: FetchLike) {
    this.base = base;
    this.fetcher = fetcher ?? ((input, init) => fetch(input, init));
  }

  private get<T>(path: string): Promise<T> {
    return this.fetcher(this.base + path).then((res) => unwrap<T>(res));
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    const run = () =>
      this.fetcher(this.base + path, {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(body),
      }).then((res) => unwrap<T>(res));
    const queued = this.chain.then(run, run);
    this.chain = queued.catch(() => undefined);
    return queued;
  }

  addTable(doc: unknown): Promise<{ table_id: string }> {
    return this.post('/tables', doc);
  }

  createSession(tableId: string): Promise<ViewState> {
    return this.post('/sessions', { table_id: tableId });
  }

  view(sessionId: string): Promise<ViewState> {
    return this.get(`/sessions/${sessionId}`);
  }

  select(sessionId: string, blockId: string): Promise<ViewState> {
    return this.post(`/sessions/${sessionId}/select`, { block_id: blockId });
  }

  zoom(sessionId: string, direction: 'in' | 'out'): Promise<ViewState> {
    return this.post(`/sessions/${sessionId}/zoom`, { direction });
  }

  switchPage(sessionId: string, combo: Combo): Promise<ViewState> {
    return this.post(`/sessions/${sessionId}/page`, {
      r_depth: combo[0],
      c_depth: combo[1],
    });
  }

  embed(sessionId: string, blockId: string, factId: string): Promise<ViewState> {
    return this.post(`/sessions/${sessionId}/embed`, {
      block_id: blockId,
      fact_id: factId,
    });
  }

  setFilters(sessionId: string, types: string[]): Promise<ViewState> {
    return this.post(`/sessions/${sessionId}/filters`, { types });
  }

  alternatives(sessionId: string, blockId: string): Promise<AlternativesDoc> {
    return this.get(`/sessions/${sessionId}/block/${blockId}/alternatives`);
  }

  raw(sessionId: string, blockId: string): Promise<RawBlock> {
    return this.get(`/sessions/${sessionId}/block/${blockId}/raw`);
  }

  exportPath(sessionId: string): Promise<unknown> {
    return this.get(`/sessions/${sessionId}/path`);
  }
}
