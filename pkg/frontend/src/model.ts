// View-model logic for the span editor: selection normalization, validation
// mirroring the server's rules, and submit/reconcile state.

import type { ComponentLabel, ReviewItem, SessionStats, SpanPayload } from "./api.js";
import type { ReviewApi } from "./api.js";
import { ApiError } from "./api.js";

export const LABELS: ComponentLabel[] = ["Claim", "Premise", "MajorClaim"];

// Fixed palette, stable across sessions.
export const LABEL_COLORS: Record<ComponentLabel, string> = {
  Claim: "#2f6fb6",
  Premise: "#2e8b57",
  MajorClaim: "#b8860b",
};

export interface UiSpanSelection {
  anchor: number;
  focus: number;
  label: ComponentLabel;
}

/** Normalize an anchor/focus token pair into a half-open span. */
export function normalizeSelection(sel: UiSpanSelection): SpanPayload {
  const lo = Math.min(sel.anchor, sel.focus);
  const hi = Math.max(sel.anchor, sel.focus);
  return { start: lo, end: hi + 1, label: sel.label };
}

export function sortSpans(spans: SpanPayload[]): SpanPayload[] {
  return [...spans].sort((a, b) => a.start - b.start || a.end - b.end);
}

export function spansEqual(a: SpanPayload[], b: SpanPayload[]): boolean {
  const sa = sortSpans(a);
  const sb = sortSpans(b);
  return (
    sa.length === sb.length &&
    sa.every((s, i) => s.start === sb[i]!.start && s.end === sb[i]!.end && s.label === sb[i]!.label)
  );
}

/** Mirror of the server-side validation; returns an error message or null. */
export function validateSpans(spans: SpanPayload[], tokenCount: number): string | null {
  for (const span of spans) {
    if (!Number.isInteger(span.start) || !Number.isInteger(span.end)) {
      return `span bounds must be integers: [${span.start}, ${span.end})`;
    }
    if (span.start < 0 || span.end <= span.start || span.end > tokenCount) {
      return `invalid span bounds [${span.start}, ${span.end}) for ${tokenCount} tokens`;
    }
    if (!LABELS.includes(span.label)) {
      return `unknown label ${String(span.label)}`;
    }
  }
  const ordered = sortSpans(spans);
  for (let i = 1; i < ordered.length; i += 1) {
    if (ordered[i]!.start < ordered[i - 1]!.end) {
      return `spans [${ordered[i - 1]!.start}, ${ordered[i - 1]!.end}) and ` +
        `[${ordered[i]!.start}, ${ordered[i]!.end}) overlap`;
    }
  }
  return null;
}

/** Index of the span covering a token, or null. */
export function spanIndexAt(spans: SpanPayload[], token: number): number | null {
  const index = spans.findIndex((s) => s.start <= token && token < s.end);
  return index === -1 ? null : index;
}

/** Server already filters these out; the client never renders them either. */
export function isRenderable(item: ReviewItem): boolean {
  return item.source_class !== "full_component";
}

export interface Progress {
  done: number;
  total: number;
  percent: number;
}

export function progressSummary(stats: SessionStats): Progress {
  const done = stats.by_status.accepted + stats.by_status.edited + stats.by_status.skipped;
  const total = stats.reviewable;
  return { done, total, percent: total ? Math.round((100 * done) / total) : 100 };
}

export type SubmitResult =
  | { kind: "ok"; item: ReviewItem }
  | { kind: "rejected"; message: string }
  | { kind: "network"; message: string };

/**
 * Staged edits for one item.  Spans stay valid by construction: a selection
 * that would overlap an existing span is refused with an inline message, so
 * the editor can never produce a payload the server rejects for overlap or
 * range.
 */
export class SpanEditor {
  private staged: SpanPayload[];
  private selection: { anchor: number; focus: number } | null = null;
  private message: string | null = null;

  constructor(public item: ReviewItem) {
    this.staged = sortSpans(item.target.spans);
  }

  get tokens(): string[] {
    return this.item.target.tokens;
  }

  get spans(): SpanPayload[] {
    return [...this.staged];
  }

  get pendingSelection(): { start: number; end: number } | null {
    if (!this.selection) return null;
    const lo = Math.min(this.selection.anchor, this.selection.focus);
    const hi = Math.max(this.selection.anchor, this.selection.focus);
    return { start: lo, end: hi + 1 };
  }

  get inlineMessage(): string | null {
    return this.message;
  }

  get dirty(): boolean {
    return !spansEqual(this.staged, this.item.target.spans);
  }

  /** Submit allowed only with no selection pending and a valid payload. */
  canSubmit(): boolean {
    return this.selection === null && validateSpans(this.staged, this.tokens.length) === null;
  }

  beginSelection(token: number): void {
    if (token < 0 || token >= this.tokens.length) return;
    this.selection = { anchor: token, focus: token };
    this.message = null;
  }

  extendSelection(token: number): void {
    if (!this.selection || token < 0 || token >= this.tokens.length) return;
    this.selection.focus = token;
  }

  cancelSelection(): void {
    this.selection = null;
    this.message = null;
  }

  /** Turn the pending selection into a labeled span; refuses overlaps. */
  commitSelection(label: ComponentLabel): boolean {
    if (!this.selection) {
      this.message = "select tokens first";
      return false;
    }
    const span = normalizeSelection({ ...this.selection, label });
    const candidate = sortSpans([...this.staged, span]);
    const error = validateSpans(candidate, this.tokens.length);
    if (error) {
      this.message = error;
      return false;
    }
    this.staged = candidate;
    this.selection = null;
    this.message = null;
    return true;
  }

  /** Remove the span covering a token (click on a highlighted token). */
  removeSpanAt(token: number): boolean {
    const index = spanIndexAt(this.staged, token);
    if (index === null) return false;
    this.staged = this.staged.filter((_, i) => i !== index);
    this.message = null;
    return true;
  }

  clearAllSpans(): void {
    this.staged = [];
    this.selection = null;
    this.message = null;
  }

  reset(): void {
    this.staged = sortSpans(this.item.target.spans);
    this.selection = null;
    this.message = null;
  }

  /** POST the staged spans; on success the editor reflects the server state. */
  async submit(api: ReviewApi): Promise<SubmitResult> {
    if (!this.canSubmit()) {
      return { kind: "rejected", message: this.message ?? "pending selection" };
    }
    try {
      const item = await api.submitCorrection(this.item.id, this.staged);
      this.item = item;
      this.staged = sortSpans(item.target.spans);
      this.message = null;
      return { kind: "ok", item };
    } catch (err) {
      if (err instanceof ApiError) {
        // 422 and friends: keep local state, surface the violation.
        this.message = String(err.detail);
        return { kind: "rejected", message: this.message };
      }
      this.message = "network failure, not submitted";
      return { kind: "network", message: String(err) };
    }
  }

  /** Accept the item as-is (no-op correction -> server marks it accepted). */
  async accept(api: ReviewApi): Promise<SubmitResult> {
    this.reset();
    return this.submit(api);
  }
}
