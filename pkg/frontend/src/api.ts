// Typed client for the review server's HTTP+JSON API.

export type ComponentLabel = "Claim" | "Premise" | "MajorClaim";
export type ItemStatus = "pending" | "accepted" | "edited" | "skipped";
export type OutcomeClass = "full_O" | "full_component" | "partial";

export interface SpanPayload {
  start: number;
  end: number;
  label: ComponentLabel;
}

export interface SentencePayload {
  tokens: string[];
  spans: SpanPayload[];
}

export interface HistoryEntry {
  seq: number;
  ts: string;
  action: string;
  prior_spans: SpanPayload[];
  spans: SpanPayload[];
}

export interface ReviewItem {
  id: string;
  doc_id: string | null;
  status: ItemStatus;
  outcome: OutcomeClass;
  source_class: OutcomeClass;
  target: SentencePayload;
  source: SentencePayload;
  history: HistoryEntry[];
}

export interface ItemsPage {
  items: ReviewItem[];
  total: number;
  page: number;
  page_size: number;
}

export interface SessionStats {
  total: number;
  reviewable: number;
  by_status: Record<ItemStatus, number>;
  by_outcome: Record<OutcomeClass, number>;
}

export interface ExportResult {
  conll: string;
  audit: {
    manual_corrections: number;
    items_total: number;
    by_status: Record<ItemStatus, number>;
    events: number;
  };
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`HTTP ${status}: ${typeof detail === "string" ? detail : JSON.stringify(detail)}`);
    this.name = "ApiError";
  }
}

export interface ItemQuery {
  status?: ItemStatus;
  outcome?: OutcomeClass;
  page?: number;
  pageSize?: number;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ReviewApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
    private readonly token?: string,
  ) {}

  private headers(json: boolean): Record<string, string> {
    const headers: Record<string, string> = {};
    if (json) headers["Content-Type"] = "application/json";
    if (this.token) headers["X-Review-Token"] = this.token;
    return headers;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      let detail: unknown;
      try {
        const body = (await response.json()) as { detail?: unknown };
        detail = body.detail ?? body;
      } catch {
        detail = await response.text().catch(() => response.statusText);
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  getItems(query: ItemQuery = {}): Promise<ItemsPage> {
    const params = new URLSearchParams();
    if (query.status) params.set("status", query.status);
    if (query.outcome) params.set("outcome", query.outcome);
    if (query.page !== undefined) params.set("page", String(query.page));
    if (query.pageSize !== undefined) params.set("page_size", String(query.pageSize));
    const qs = params.toString();
    return this.request<ItemsPage>(`/items${qs ? "?" + qs : ""}`, {
      headers: this.headers(false),
    });
  }

  getItem(id: string): Promise<ReviewItem> {
    return this.request<ReviewItem>(`/items/${id}`, { headers: this.headers(false) });
  }

  submitCorrection(id: string, spans: SpanPayload[]): Promise<ReviewItem> {
    return this.request<ReviewItem>(`/items/${id}/correction`, {
      method: "POST",
      headers: this.headers(true),
      body: JSON.stringify(spans),
    });
  }

  skip(id: string): Promise<ReviewItem> {
    return this.request<ReviewItem>(`/items/${id}/skip`, {
      method: "POST",
      headers: this.headers(false),
    });
  }

  getStats(): Promise<SessionStats> {
    return this.request<SessionStats>("/stats", { headers: this.headers(false) });
  }

  getExport(): Promise<ExportResult> {
    return this.request<ExportResult>("/export", { headers: this.headers(false) });
  }
}
