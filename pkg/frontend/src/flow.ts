import { ApiClient, ApiError } from "./api";
import type {
  CreateSessionParams,
  DatasetsPayload,
  QueryPayload,
  RankedPattern,
  SessionState,
} from "./types";

export type Phase =
  | "setup" // no session yet; show the start form
  | "starting" // create request in flight
  | "question" // a pair is on screen, waiting for the user
  | "submitting" // answer request in flight
  | "finished" // session over; show final weights and ranking
  | "error"; // a request failed; show the banner with retry

/** Everything the renderer needs. All numbers come from server payloads —
 * the client never computes weights, progress, or status on its own. */
export interface FlowView {
  phase: Phase;
  busy: boolean;
  error: string | null;
  datasets: DatasetsPayload | null;
  session: SessionState | null;
  query: QueryPayload | null;
  measureNames: string[];
  weights: number[];
  lambdaMax: number | null;
  answered: number; // t from the latest server payload
  total: number; // T from the latest server payload
  top: RankedPattern[]; // latest top-10 after an answer
  ranking: RankedPattern[] | null; // full ranking once finished
}

export type FlowListener = (view: FlowView) => void;

function initialView(): FlowView {
  return {
    phase: "setup",
    busy: false,
    error: null,
    datasets: null,
    session: null,
    query: null,
    measureNames: [],
    weights: [],
    lambdaMax: null,
    answered: 0,
    total: 0,
    top: [],
    ranking: null,
  };
}

const FINAL_RANKING_K = 20;

/** Drives one interactive session against the HTTP service.
 *
 * Invariants enforced here:
 * - at most one answer per question reaches the server: `answer()` is a
 *   no-op unless a question is on screen and no request is in flight;
 * - the view only ever shows server-provided state; a 409 conflict (answer
 *   raced a finished/auto-advanced session) resyncs from GET state instead
 *   of guessing;
 * - any failed request lands in the error phase with a retry that resumes
 *   from the server's current state.
 */
export class SessionFlow {
  private view: FlowView = initialView();
  private listeners: FlowListener[] = [];
  private sid: string | null = null;
  private lastStart: CreateSessionParams | null = null;

  constructor(private readonly api: ApiClient) {}

  getView(): FlowView {
    return this.view;
  }

  sessionId(): string | null {
    return this.sid;
  }

  onChange(fn: FlowListener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  private emit(patch: Partial<FlowView>): void {
    this.view = { ...this.view, ...patch };
    for (const fn of [...this.listeners]) fn(this.view);
  }

  private applyState(state: SessionState): void {
    this.emit({
      session: state,
      measureNames: state.measure_names,
      weights: state.weights,
      lambdaMax: state.lambda_max,
      answered: state.t,
      total: state.T,
    });
  }

  private fail(e: unknown): void {
    const msg = e instanceof Error ? e.message : String(e);
    this.emit({ phase: "error", busy: false, error: msg });
  }

  /** Populate the dataset picker. A failure here is non-fatal: starting
   * without a dataset name uses the server's default. */
  async loadDatasets(): Promise<void> {
    try {
      const datasets = await this.api.getDatasets();
      this.emit({ datasets });
    } catch {
      this.emit({ datasets: null });
    }
  }

  async start(params: CreateSessionParams): Promise<void> {
    if (this.view.busy || this.sid !== null) return;
    this.lastStart = params;
    this.emit({ phase: "starting", busy: true, error: null });
    try {
      const state = await this.api.createSession(params);
      this.sid = state.id;
      this.applyState(state);
      await this.loadQuery();
    } catch (e) {
      this.fail(e);
    }
  }

  /** Fetch the next pair. 410 means the session is already over. */
  private async loadQuery(): Promise<void> {
    const sid = this.sid;
    if (sid === null) return;
    try {
      const query = await this.api.getQuery(sid);
      this.emit({ phase: "question", busy: false, error: null, query });
    } catch (e) {
      if (e instanceof ApiError && e.status === 410) {
        await this.finish();
        return;
      }
      this.fail(e);
    }
  }

  async answer(preferredId: number): Promise<void> {
    const { busy, phase, query } = this.view;
    const sid = this.sid;
    // At-most-once guard: ignore clicks while a request is in flight or when
    // no question is on screen, and ignore ids outside the current pair.
    if (busy || phase !== "question" || query === null || sid === null) return;
    if (!query.pair.some((p) => p.id === preferredId)) return;
    this.emit({ phase: "submitting", busy: true, error: null });
    try {
      const resp = await this.api.postAnswer(sid, preferredId);
      this.emit({
        weights: resp.weights,
        lambdaMax: resp.lambda_max,
        measureNames: resp.measure_names,
        answered: resp.t,
        total: resp.T,
        top: resp.top,
        query: null,
      });
      if (resp.status === "finished") {
        await this.finish();
      } else {
        await this.loadQuery();
      }
    } catch (e) {
      if (e instanceof ApiError && e.status === 409) {
        // The session moved on without us (e.g. finished elsewhere):
        // the server's state is the truth, so reload it.
        await this.resync();
        return;
      }
      this.fail(e);
    }
  }

  /** Reload ground truth from the server and resume wherever it is. */
  async resync(): Promise<void> {
    const sid = this.sid;
    if (sid === null) return;
    this.emit({ busy: true, error: null });
    try {
      const state = await this.api.getState(sid);
      this.applyState(state);
      if (state.status === "finished") {
        await this.finish();
      } else {
        await this.loadQuery();
      }
    } catch (e) {
      this.fail(e);
    }
  }

  async stop(): Promise<void> {
    const sid = this.sid;
    if (sid === null || this.view.phase === "finished" || this.view.busy) return;
    this.emit({ busy: true, error: null });
    try {
      const state = await this.api.stopSession(sid);
      this.applyState(state);
      await this.finish();
    } catch (e) {
      this.fail(e);
    }
  }

  /** After an error: retry from the server's current state, or retry the
   * original create if the session never came into being. */
  async retry(): Promise<void> {
    if (this.view.phase !== "error") return;
    if (this.sid !== null) {
      await this.resync();
    } else if (this.lastStart !== null) {
      this.emit({ phase: "setup", busy: false, error: null });
      await this.start(this.lastStart);
    } else {
      this.emit({ phase: "setup", busy: false, error: null });
    }
  }

  private async finish(): Promise<void> {
    const sid = this.sid;
    if (sid === null) return;
    try {
      const state = await this.api.getState(sid);
      const ranking = await this.api.getRanking(sid, FINAL_RANKING_K);
      this.applyState(state);
      this.emit({
        phase: "finished",
        busy: false,
        error: null,
        query: null,
        ranking: ranking.items,
      });
    } catch (e) {
      this.fail(e);
    }
  }
}
