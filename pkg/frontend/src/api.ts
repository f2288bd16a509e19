/**
 * Typed client for the /v1 analysis API.
 * All model numbers come from these responses; the dashboard only
 * displays them.
 */

import type {
  CompareResponse,
  LabeledList,
  PackageDetail,
  SelectionRequest,
  SelectionResponse,
  SummaryResponse,
} from './types';

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`API error ${status}: ${detail}`);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (body && typeof body.detail === 'string') {
      detail = body.detail;
    }
  } catch {
    // non-JSON error body: keep the status text
  }
  return new ApiError(response.status, detail);
}

export class ApiClient {
  constructor(private baseUrl: string = '') {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
      signal,
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  summary(): Promise<SummaryResponse> {
    return this.getJson<SummaryResponse>('/v1/summary');
  }

  selection(
    request: SelectionRequest,
    options: { limit?: number; offset?: number; signal?: AbortSignal } = {},
  ): Promise<SelectionResponse> {
    const limit = options.limit ?? 200;
    const offset = options.offset ?? 0;
    // sorted name lists keep request bodies canonical
    const body = {
      preset: request.preset,
      tau: request.tau,
      pinned: [...request.pinned].sort(),
      excluded: [...request.excluded].sort(),
    };
    return this.postJson<SelectionResponse>(
      `/v1/selection?limit=${limit}&offset=${offset}`,
      body,
      options.signal,
    );
  }

  packageDetail(name: string): Promise<PackageDetail> {
    return this.getJson<PackageDetail>(`/v1/package/${encodeURIComponent(name)}`);
  }

  compare(sets: LabeledList[]): Promise<CompareResponse> {
    return this.postJson<CompareResponse>('/v1/compare', { sets });
  }

  /** CSV bytes of the strategy table, exactly as the server renders them. */
  async compareCsv(sets: LabeledList[]): Promise<string> {
    const response = await fetch(this.baseUrl + '/v1/compare?format=csv', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ sets }),
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return response.text();
  }
}
