/**
 * Replays recorded API responses (see record_fixtures.py) through a fetch
 * mock and logs every request so tests can assert call counts.
 */

import fixtures from './fixtures/api-fixtures.json';

interface FixtureEntry {
  method: string;
  path: string;
  query: string;
  body: string;
  status: number;
  contentType: string;
  payload: string;
}

export interface LoggedRequest {
  method: string;
  path: string;
  query: string;
  body: string;
}

function stableStringify(value: unknown): string {
  if (Array.isArray(value)) {
    return `[${value.map(stableStringify).join(',')}]`;
  }
  if (value !== null && typeof value === 'object') {
    const entries = Object.entries(value as Record<string, unknown>)
      .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
      .map(([key, val]) => `${JSON.stringify(key)}:${stableStringify(val)}`);
    return `{${entries.join(',')}}`;
  }
  return JSON.stringify(value);
}

function keyOf(method: string, path: string, query: string, body: string): string {
  const canonicalQuery = new URLSearchParams(query);
  canonicalQuery.sort();
  return `${method} ${path}?${canonicalQuery.toString()} ${body}`;
}

export class MockApi {
  requests: LoggedRequest[] = [];
  private table = new Map<string, FixtureEntry>();

  constructor() {
    for (const entry of fixtures as FixtureEntry[]) {
      this.table.set(keyOf(entry.method, entry.path, entry.query, entry.body), entry);
    }
  }

  install(): void {
    globalThis.fetch = (async (input: RequestInfo | URL, init?: RequestInit) => {
      const url = new URL(String(input), 'http://localhost');
      const method = init?.method ?? 'GET';
      const rawBody = typeof init?.body === 'string' ? init.body : '';
      const body = rawBody ? stableStringify(JSON.parse(rawBody)) : '';
      if (init?.signal?.aborted) {
        throw new DOMException('aborted', 'AbortError');
      }
      this.requests.push({
        method,
        path: url.pathname,
        query: url.searchParams.toString(),
        body,
      });
      const entry = this.table.get(keyOf(method, url.pathname, url.search.slice(1), body));
      if (!entry) {
        return new Response(JSON.stringify({ detail: 'no fixture for request' }), {
          status: 501,
          headers: { 'content-type': 'application/json' },
        });
      }
      return new Response(entry.payload, {
        status: entry.status,
        headers: { 'content-type': entry.contentType },
      });
    }) as typeof fetch;
  }

  count(path: string): number {
    return this.requests.filter((request) => request.path === path).length;
  }

  /** Parsed JSON payload of a recorded fixture, for expected values. */
  fixture(method: string, path: string, query = '', body: unknown = undefined): FixtureEntry {
    const key = keyOf(method, path, query, body === undefined ? '' : stableStringify(body));
    const entry = this.table.get(key);
    if (!entry) {
      throw new Error(`no fixture recorded for ${key}`);
    }
    return entry;
  }

  /** First fixture matching method, path, and query, regardless of body. */
  findFixture(method: string, path: string, query = ''): FixtureEntry {
    for (const entry of fixtures as FixtureEntry[]) {
      if (entry.method === method && entry.path === path && entry.query === query) {
        return entry;
      }
    }
    throw new Error(`no fixture recorded for ${method} ${path}?${query}`);
  }

  fixtureJson<T>(method: string, path: string, query = '', body: unknown = undefined): T {
    return JSON.parse(this.fixture(method, path, query, body).payload) as T;
  }
}

export function installMockApi(): MockApi {
  const mock = new MockApi();
  mock.install();
  return mock;
}

export function mountRoot(): HTMLElement {
  document.body.innerHTML = '<div id="app"></div>';
  return document.getElementById('app') as HTMLElement;
}

export function selectionBody(
  preset: string,
  tau: number,
  pinned: string[] = [],
  excluded: string[] = [],
): unknown {
  return { preset, tau, pinned, excluded };
}

/** Wait until the callback stops throwing (microtask-friendly polling). */
export async function waitFor(check: () => void, timeoutMs = 2000): Promise<void> {
  const started = Date.now();
  let lastError: unknown;
  while (Date.now() - started < timeoutMs) {
    try {
      check();
      return;
    } catch (error) {
      lastError = error;
      await new Promise((resolve) => setTimeout(resolve, 5));
    }
  }
  throw lastError;
}
