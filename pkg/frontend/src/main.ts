/**
 * DOM wiring for the single-page translation UI. All decision logic lives
 * in state.ts / api.ts; this file only reads events and renders state.
 */

import { translate } from "./api.js";
import {
  UiState,
  canSubmit,
  debounce,
  initialState,
  resolveError,
  resolveSuccess,
  setInput,
  startRequest,
  toggleDirection,
} from "./state.js";

const DEBOUNCE_MS = 300;

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

function start(): void {
  let state: UiState = initialState();

  const input = byId<HTMLTextAreaElement>("input-text");
  const output = byId<HTMLDivElement>("output-pane");
  const errorBox = byId<HTMLDivElement>("error-box");
  const submitBtn = byId<HTMLButtonElement>("submit-btn");
  const toggleBtn = byId<HTMLButtonElement>("toggle-btn");
  const directionLabel = byId<HTMLSpanElement>("direction-label");
  const historyList = byId<HTMLUListElement>("history-list");

  function render(): void {
    submitBtn.disabled = !canSubmit(state);
    directionLabel.textContent =
      state.direction === "t2e" ? "Text → Emoji" : "Emoji → Text";
    if (input.value !== state.inputText) input.value = state.inputText;

    errorBox.hidden = state.result.kind !== "error";
    if (state.result.kind === "error") {
      errorBox.textContent = `${state.result.error.code}: ${state.result.error.message}`;
    }
    if (state.result.kind === "success") {
      output.textContent = state.result.value.output;
    } else if (state.result.kind === "pending") {
      output.textContent = "…";
    } else if (state.result.kind === "idle") {
      output.textContent = "";
    }

    historyList.replaceChildren(
      ...state.history.map((entry) => {
        const li = document.createElement("li");
        li.textContent = `${entry.input} → ${entry.output}`;
        return li;
      }),
    );
  }

  async function submit(): Promise<void> {
    if (!canSubmit(state)) return;
    const text = state.inputText;
    const issued = startRequest(state);
    state = issued.state;
    render();
    const outcome = await translate(text, state.direction);
    state = outcome.ok
      ? resolveSuccess(state, issued.requestId, text, outcome.value)
      : resolveError(state, issued.requestId, outcome.error);
    render();
  }

  const autoTranslate = debounce(() => void submit(), DEBOUNCE_MS);

  input.addEventListener("input", () => {
    state = setInput(state, input.value);
    render();
    if (canSubmit(state)) autoTranslate.call();
  });
  submitBtn.addEventListener("click", () => {
    autoTranslate.cancel();
    void submit();
  });
  toggleBtn.addEventListener("click", () => {
    autoTranslate.cancel();
    state = toggleDirection(state);
    render();
  });

  render();
}

document.addEventListener("DOMContentLoaded", start);
