import type { FetchLike } from '../src/api';

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

type Responder = unknown | ((body: unknown) => unknown);

const JSON_HEADERS = { 'content-type': 'application/json' };

// Canned service: routes are "METHOD /path" keys; anything unrouted 404s the
// same way the real service reports unknown resources.
export function fakeService(routes: Record<string, Responder>): {
  fetcher: FetchLike;
  calls: RecordedCall[];
} {
  const calls: RecordedCall[] = [];
  const fetcher: FetchLike = async (url, init) => {
    const method = init?.method ?? 'GET';
    const body = init?.body ? (JSON.parse(init.body as string) as unknown) : undefined;
    calls.push({ url, method, body });
    const key = `${method} ${url}`;
    if (!(key in routes)) {
      return new Response(JSON.stringify({ detail: `no route ${key}` }), {
        status: 404,
        headers: JSON_HEADERS,
      });
    }
    const responder = routes[key];
    const payload =
      typeof responder === 'function' ? (responder as (b: unknown) => unknown)(body) : responder;
    return new Response(JSON.stringify(payload), { status: 200, headers: JSON_HEADERS });
  };
  return { fetcher, calls };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
