/** Wire types for the ranking-session HTTP service.
 *
 * These mirror the server payloads field for field; the client renders them
 * as-is and never derives its own weights, progress, or status.
 */

export type SessionStatus = "ready" | "awaiting_answer" | "finished";

/** One association rule with its interestingness measures (raw and scaled). */
export interface PatternPayload {
  id: number;
  body: number[];
  head: number[];
  measures: Record<string, number>;
  scaled: Record<string, number>;
}

/** A pattern as it appears in a ranking, with its aggregate score. */
export interface RankedPattern extends PatternPayload {
  score: number;
}

/** One recorded answer: the pair asked and the order the user gave back. */
export interface AnswerRecord {
  t: number;
  query: number[];
  response: number[];
}

/** Full session state as returned by create, get-state, and stop. */
export interface SessionState {
  id: string;
  dataset: string;
  status: SessionStatus;
  t: number;
  T: number;
  theta: number;
  seed: number;
  scaling_mode: string;
  strategy: string;
  measure_names: string[];
  weights: number[];
  lambda_max: number;
  weight_trace: number[][];
  answers: AnswerRecord[];
  pending: number[] | null;
}

/** The pair to compare for question number `t` (1-based). */
export interface QueryPayload {
  t: number;
  T: number;
  status: SessionStatus;
  pair: PatternPayload[];
}

/** Server response to a submitted preference. */
export interface AnswerResponse {
  t: number;
  T: number;
  status: SessionStatus;
  weights: number[];
  lambda_max: number;
  measure_names: string[];
  top: RankedPattern[];
}

export interface RankingPayload {
  k: number;
  t: number;
  status: SessionStatus;
  items: RankedPattern[];
}

export interface DatasetInfo {
  name: string;
  patterns: number;
  measure_names: string[];
}

export interface DatasetsPayload {
  default: string;
  datasets: DatasetInfo[];
}

/** Body of POST /sessions. Omitted fields use server defaults. */
export interface CreateSessionParams {
  dataset?: string;
  T: number;
  theta?: number;
  seed?: number;
  scaling_mode?: string;
  strategy?: string;
}
