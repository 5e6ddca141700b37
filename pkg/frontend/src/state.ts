/**
 * Pure UI state transitions for the translation page.
 *
 * All network effects live elsewhere; these functions map (state, event)
 * to a new state, which keeps the staleness and history rules unit-testable
 * without a DOM. Requests are numbered, and a response only lands if its
 * request id still matches `latestRequestId` — an older request resolving
 * after a newer one can never overwrite the newer result.
 */

export type Direction = "t2e" | "e2t";

export interface TranslateSuccess {
  output: string;
  tokens: string[];
  logScore: number;
  modelId: string;
}

export interface ApiError {
  code: string;
  message: string;
}

export type Result =
  | { kind: "idle" }
  | { kind: "pending" }
  | { kind: "success"; value: TranslateSuccess }
  | { kind: "error"; error: ApiError };

export interface HistoryEntry {
  input: string;
  output: string;
  direction: Direction;
}

export interface UiState {
  inputText: string;
  direction: Direction;
  result: Result;
  history: HistoryEntry[];
  latestRequestId: number;
}

export const HISTORY_LIMIT = 50;

export function initialState(): UiState {
  return {
    inputText: "",
    direction: "t2e",
    result: { kind: "idle" },
    history: [],
    latestRequestId: 0,
  };
}

export function setInput(state: UiState, text: string): UiState {
  return { ...state, inputText: text };
}

export function canSubmit(state: UiState): boolean {
  return state.inputText.trim().length > 0;
}

/** Issue a new request: bumps the id and marks the result pending. */
export function startRequest(state: UiState): { state: UiState; requestId: number } {
  const requestId = state.latestRequestId + 1;
  return {
    state: { ...state, latestRequestId: requestId, result: { kind: "pending" } },
    requestId,
  };
}

export function resolveSuccess(
  state: UiState,
  requestId: number,
  input: string,
  value: TranslateSuccess,
): UiState {
  if (requestId !== state.latestRequestId) {
    return state; // stale response; a newer request owns the result slot
  }
  const entry: HistoryEntry = { input, output: value.output, direction: state.direction };
  const history = [entry, ...state.history].slice(0, HISTORY_LIMIT);
  return { ...state, result: { kind: "success", value }, history };
}

export function resolveError(state: UiState, requestId: number, error: ApiError): UiState {
  if (requestId !== state.latestRequestId) {
    return state;
  }
  return { ...state, result: { kind: "error", error } };
}

/**
 * Swap direction. The previous output becomes the new input (round-trip
 * affordance), and any pending result is discarded by bumping the request
 * id so in-flight responses land stale.
 */
export function toggleDirection(state: UiState): UiState {
  const nextInput =
    state.result.kind === "success" ? state.result.value.output : state.inputText;
  return {
    ...state,
    direction: state.direction === "t2e" ? "e2t" : "t2e",
    inputText: nextInput,
    result: { kind: "idle" },
    latestRequestId: state.latestRequestId + 1,
  };
}

/** Trailing-edge debounce used for auto-translate while typing. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): { call: (...args: A) => void; cancel: () => void } {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return {
    call: (...args: A) => {
      if (timer !== undefined) clearTimeout(timer);
      timer = setTimeout(() => {
        timer = undefined;
        fn(...args);
      }, waitMs);
    },
    cancel: () => {
      if (timer !== undefined) clearTimeout(timer);
      timer = undefined;
    },
  };
}
