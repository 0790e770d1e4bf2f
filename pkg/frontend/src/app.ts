// DOM wiring: queue navigation, side-by-side sentence panels, span editing.

import { ReviewApi, type ReviewItem, type SpanPayload } from "./api.js";
import {
  LABELS,
  LABEL_COLORS,
  SpanEditor,
  isRenderable,
  progressSummary,
  spanIndexAt,
} from "./model.js";

const api = new ReviewApi("");

interface AppState {
  items: ReviewItem[];
  index: number;
  editor: SpanEditor | null;
  dragging: boolean;
  statusFilter: string;
  lastFailure: (() => Promise<void>) | null;
}

const state: AppState = {
  items: [],
  index: 0,
  editor: null,
  dragging: false,
  statusFilter: "",
  lastFailure: null,
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function showError(message: string, retry: (() => Promise<void>) | null): void {
  const banner = byId("error-banner");
  banner.innerHTML = "";
  if (!message) {
    banner.classList.add("hidden");
    return;
  }
  banner.classList.remove("hidden");
  banner.append(message);
  if (retry) {
    const button = el("button", { class: "retry" }, "Retry");
    button.onclick = () => {
      showError("", null);
      void retry();
    };
    banner.append(" ", button);
  }
  state.lastFailure = retry;
}

async function guarded(op: () => Promise<void>): Promise<void> {
  try {
    await op();
    showError("", null);
  } catch (err) {
    showError(`Request failed: ${String(err)}`, () => guarded(op));
  }
}

function renderSentence(
  container: HTMLElement,
  tokens: string[],
  spans: SpanPayload[],
  interactive: boolean,
): void {
  container.innerHTML = "";
  const editor = state.editor;
  const pending = interactive && editor ? editor.pendingSelection : null;
  tokens.forEach((text, i) => {
    const chip = el("span", { class: "token", "data-index": String(i) }, text);
    const spanIndex = spanIndexAt(spans, i);
    if (spanIndex !== null) {
      const span = spans[spanIndex]!;
      chip.style.background = LABEL_COLORS[span.label];
      chip.classList.add("in-span");
      chip.title = span.label;
      if (i === span.start) chip.classList.add("span-start");
      if (i === span.end - 1) chip.classList.add("span-end");
    }
    if (pending && pending.start <= i && i < pending.end) {
      chip.classList.add("selected");
    }
    if (interactive && editor) {
      chip.onmousedown = (event) => {
        event.preventDefault();
        if (spanIndexAt(editor.spans, i) !== null) {
          editor.removeSpanAt(i);
          renderEditor();
          return;
        }
        state.dragging = true;
        editor.beginSelection(i);
        renderEditor();
      };
      chip.onmouseenter = () => {
        if (state.dragging) {
          editor.extendSelection(i);
          renderEditor();
        }
      };
    }
    container.append(chip, " ");
  });
}

function renderPalette(): void {
  const palette = byId("palette");
  palette.innerHTML = "";
  for (const label of LABELS) {
    const button = el("button", { class: "label-button" }, label);
    button.style.background = LABEL_COLORS[label];
    button.onclick = () => {
      state.editor?.commitSelection(label);
      renderEditor();
    };
    palette.append(button);
  }
}

function renderQueue(): void {
  const list = byId("queue");
  list.innerHTML = "";
  state.items.forEach((item, i) => {
    const entry = el(
      "li",
      { class: i === state.index ? "current" : "" },
      el("span", { class: `status status-${item.status}` }, item.status),
      " ",
      `${item.id} · ${item.outcome}`,
    );
    entry.onclick = () => {
      void openItem(i);
    };
    list.append(entry);
  });
}

function renderEditor(): void {
  const editor = state.editor;
  const item = state.items[state.index];
  byId("item-meta").textContent = item
    ? `${item.id} — doc ${item.doc_id ?? "(anonymous)"} — status ${item.status} — ${item.outcome}`
    : "no item";
  if (!editor || !item) return;
  renderSentence(byId("target-sentence"), editor.tokens, editor.spans, true);
  renderSentence(byId("source-sentence"), item.source.tokens, item.source.spans, false);
  const message = byId("inline-message");
  message.textContent = editor.inlineMessage ?? "";
  const submit = byId("submit") as HTMLButtonElement;
  submit.disabled = !editor.canSubmit();
  byId("dirty-flag").textContent = editor.dirty ? "edited locally" : "";
}

async function refreshStats(): Promise<void> {
  const stats = await api.getStats();
  const progress = progressSummary(stats);
  byId("progress").textContent =
    `${progress.done}/${progress.total} reviewed (${progress.percent}%)`;
}

async function openItem(index: number): Promise<void> {
  if (index < 0 || index >= state.items.length) return;
  state.index = index;
  const item = state.items[index]!;
  state.editor = new SpanEditor(item);
  renderQueue();
  renderEditor();
}

async function loadItems(): Promise<void> {
  const query: Parameters<ReviewApi["getItems"]>[0] = { pageSize: 200 };
  if (state.statusFilter) query.status = state.statusFilter as never;
  const page = await api.getItems(query);
  // The server never sends source full-component items; keep the client
  // honest about it anyway.
  state.items = page.items.filter(isRenderable);
  state.index = Math.min(state.index, Math.max(0, state.items.length - 1));
  renderQueue();
  if (state.items.length) {
    await openItem(state.index);
  }
  await refreshStats();
}

async function submitCurrent(): Promise<void> {
  const editor = state.editor;
  if (!editor) return;
  const result = await editor.submit(api);
  if (result.kind === "network") {
    showError(result.message, submitCurrent);
    return;
  }
  if (result.kind === "ok") {
    state.items[state.index] = result.item;
  }
  renderQueue();
  renderEditor();
  await refreshStats();
}

async function acceptCurrent(): Promise<void> {
  const editor = state.editor;
  if (!editor) return;
  const result = await editor.accept(api);
  if (result.kind === "network") {
    showError(result.message, acceptCurrent);
    return;
  }
  if (result.kind === "ok") {
    state.items[state.index] = result.item;
  }
  renderQueue();
  renderEditor();
  await refreshStats();
}

async function skipCurrent(): Promise<void> {
  const item = state.items[state.index];
  if (!item) return;
  await guarded(async () => {
    const updated = await api.skip(item.id);
    state.items[state.index] = updated;
    state.editor = new SpanEditor(updated);
    renderQueue();
    renderEditor();
    await refreshStats();
  });
}

function wireControls(): void {
  (byId("submit") as HTMLButtonElement).onclick = () => void submitCurrent();
  (byId("accept") as HTMLButtonElement).onclick = () => void acceptCurrent();
  (byId("skip") as HTMLButtonElement).onclick = () => void skipCurrent();
  (byId("reset") as HTMLButtonElement).onclick = () => {
    state.editor?.reset();
    renderEditor();
  };
  (byId("clear") as HTMLButtonElement).onclick = () => {
    state.editor?.clearAllSpans();
    renderEditor();
  };
  (byId("prev") as HTMLButtonElement).onclick = () => void openItem(state.index - 1);
  (byId("next") as HTMLButtonElement).onclick = () => void openItem(state.index + 1);
  (byId("status-filter") as HTMLSelectElement).onchange = (event) => {
    state.statusFilter = (event.target as HTMLSelectElement).value;
    state.index = 0;
    void guarded(loadItems);
  };
  document.onmouseup = () => {
    state.dragging = false;
  };
  document.onkeydown = (event) => {
    if (event.target instanceof HTMLInputElement) return;
    if (event.key === "ArrowLeft") void openItem(state.index - 1);
    else if (event.key === "ArrowRight") void openItem(state.index + 1);
    else if (event.key === "a") void acceptCurrent();
    else if (event.key === "Escape") {
      state.editor?.cancelSelection();
      renderEditor();
    }
  };
}

export async function start(): Promise<void> {
  renderPalette();
  wireControls();
  await guarded(loadItems);
}

if (typeof document !== "undefined" && document.getElementById("queue")) {
  void start();
}
