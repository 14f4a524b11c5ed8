import type {
  AnswerResponse,
  CreateSessionParams,
  DatasetsPayload,
  QueryPayload,
  RankingPayload,
  SessionState,
} from "./types";

/** Error carrying the HTTP status and the server's `detail` message.
 *
 * Status 0 means the request never reached the server (network failure).
 */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(status === 0 ? `network error: ${detail}` : `HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

function defaultFetch(): FetchLike {
  // Bind so the browser's fetch keeps its expected receiver.
  return globalThis.fetch.bind(globalThis);
}

/** Thin typed wrapper over the session endpoints.
 *
 * `baseUrl` is "" when the page is served by the API process itself; tests
 * point it at a separately spawned server. `fetchFn` is injectable so unit
 * tests can stub the transport.
 */
export class ApiClient {
  constructor(
    readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = defaultFetch(),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await this.fetchFn(this.baseUrl + path, init);
    } catch (e) {
      throw new ApiError(0, e instanceof Error ? e.message : String(e));
    }
    if (!resp.ok) {
      let detail = resp.statusText || `status ${resp.status}`;
      try {
        const body: unknown = await resp.json();
        if (body && typeof body === "object" && "detail" in body) {
          const d = (body as { detail: unknown }).detail;
          detail = typeof d === "string" ? d : JSON.stringify(d);
        }
      } catch {
        // non-JSON error body: keep the status text
      }
      throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
  }

  getDatasets(): Promise<DatasetsPayload> {
    return this.request("/datasets");
  }

  createSession(params: CreateSessionParams): Promise<SessionState> {
    return this.post("/sessions", params);
  }

  getState(sid: string): Promise<SessionState> {
    return this.request(`/sessions/${sid}`);
  }

  getQuery(sid: string): Promise<QueryPayload> {
    return this.request(`/sessions/${sid}/query`);
  }

  postAnswer(sid: string, preferred: number): Promise<AnswerResponse> {
    return this.post(`/sessions/${sid}/answer`, { preferred });
  }

  getRanking(sid: string, k: number): Promise<RankingPayload> {
    return this.request(`/sessions/${sid}/ranking?k=${k}`);
  }

  stopSession(sid: string): Promise<SessionState> {
    return this.post(`/sessions/${sid}/stop`);
  }
}
