import { describe, expect, it } from 'vitest';

import { Api, ApiError } from '../src/api';
import type { FetchLike } from '../src/api';
import { fakeService, flush } from './helpers';

describe('request shapes', () => {
  it('sends each action to its endpoint with the documented body', async () => {
    const { fetcher, calls } = fakeService({
      'POST /sessions/s1/select': {},
      'POST /sessions/s1/page': {},
      'POST /sessions/s1/filters': {},
      'GET /sessions/s1/block/b1/raw': {},
    });
    const api = new Api('', fetcher);
    await api.select('s1', 'b1');
    await api.switchPage('s1', [2, 1]);
    await api.setFilters('s1', ['trend']);
    await api.raw('s1', 'b1');

    expect(calls.map((c) => `${c.method} ${c.url}`)).toEqual([
      'POST /sessions/s1/select',
      'POST /sessions/s1/page',
      'POST /sessions/s1/filters',
      'GET /sessions/s1/block/b1/raw',
    ]);
    expect(calls[0].body).toEqual({ block_id: 'b1' });
    expect(calls[1].body).toEqual({ r_depth: 2, c_depth: 1 });
    expect(calls[2].body).toEqual({ types: ['trend'] });
  });

  it('surfaces the service detail message on errors', async () => {
    const fetcher: FetchLike = async () =>
      new Response(JSON.stringify({ detail: 'combo (9, 9) does not exist' }), {
        status: 404,
        headers: { 'content-type': 'application/json' },
      });
    const api = new Api('', fetcher);
    const err = await api.zoom('s1', 'in').catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(404);
    expect((err as ApiError).message).toBe('combo (9, 9) does not exist');
  });
});

describe('mutation queue', () => {
  it('keeps at most one mutation in flight', async () => {
    const release: Array<() => void> = [];
    const seen: string[] = [];
    const fetcher: FetchLike = (url) => {
      seen.push(url);
      return new Promise((resolve) => {
        release.push(() =>
          resolve(
            new Response('{}', { status: 200, headers: { 'content-type': 'application/json' } }),
          ),
        );
      });
    };
    const api = new Api('', fetcher);
    const first = api.zoom('s1', 'in');
    const second = api.select('s1', 'b1');
    await flush();
    expect(seen).toEqual(['/sessions/s1/zoom']);

    release[0]();
    await first;
    await flush();
    expect(seen).toEqual(['/sessions/s1/zoom', '/sessions/s1/select']);
    release[1]();
    await second;
  });

  it('a failed mutation does not wedge the queue', async () => {
    let n = 0;
    const fetcher: FetchLike = async () => {
      n++;
      return n === 1
        ? new Response(JSON.stringify({ detail: 'nope' }), {
            status: 400,
            headers: { 'content-type': 'application/json' },
          })
        : new Response('{}', { status: 200, headers: { 'content-type': 'application/json' } });
    };
    const api = new Api('', fetcher);
    await expect(api.zoom('s1', 'in')).rejects.toBeInstanceOf(ApiError);
    await expect(api.zoom('s1', 'out')).resolves.toEqual({});
  });
});
