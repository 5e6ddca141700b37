/**
 * Thin client for the translation service. Maps every failure mode —
 * HTTP error bodies, malformed JSON, network faults — onto the service's
 * `{code, message}` error shape so the UI renders them uniformly.
 */

import type { ApiError, Direction, TranslateSuccess } from "./state.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export type TranslateOutcome =
  | { ok: true; value: TranslateSuccess }
  | { ok: false; error: ApiError };

function asError(code: string, message: string): TranslateOutcome {
  return { ok: false, error: { code, message } };
}

export async function translate(
  text: string,
  direction: Direction,
  fetchImpl: FetchLike = fetch,
  baseUrl = "",
): Promise<TranslateOutcome> {
  let response: Response;
  try {
    response = await fetchImpl(`${baseUrl}/api/translate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text, direction }),
    });
  } catch {
    return asError("network_error", "could not reach the translation service");
  }

  let body: unknown;
  try {
    body = await response.json();
  } catch {
    return asError("bad_response", `service returned a non-JSON body (HTTP ${response.status})`);
  }

  if (!response.ok) {
    const error = (body as { error?: ApiError }).error;
    if (error && typeof error.code === "string" && typeof error.message === "string") {
      return { ok: false, error };
    }
    return asError("http_error", `service returned HTTP ${response.status}`);
  }

  const payload = body as {
    output?: unknown;
    tokens?: unknown;
    log_score?: unknown;
    model_id?: unknown;
  };
  if (typeof payload.output !== "string" || !Array.isArray(payload.tokens)) {
    return asError("bad_response", "service response is missing output fields");
  }
  return {
    ok: true,
    value: {
      output: payload.output,
      tokens: payload.tokens.map(String),
      logScore: typeof payload.log_score === "number" ? payload.log_score : 0,
      modelId: typeof payload.model_id === "string" ? payload.model_id : "unknown",
    },
  };
}

export async function health(
  fetchImpl: FetchLike = fetch,
  baseUrl = "",
): Promise<{ ready: boolean; detail: string }> {
  try {
    const response = await fetchImpl(`${baseUrl}/api/health`);
    if (response.ok) return { ready: true, detail: "service ready" };
    if (response.status === 503) return { ready: false, detail: "models are loading" };
    return { ready: false, detail: `service returned HTTP ${response.status}` };
  } catch {
    return { ready: false, detail: "could not reach the translation service" };
  }
}
