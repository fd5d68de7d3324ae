/**
 * Typed client for the reading-session HTTP API.
 *
 * Thin fetch wrappers only: every show/hide outcome comes back from the
 * service, never from client-side logic.
 */

export interface ArticleSummary {
  id: string;
  sentences: number;
  preview: string;
}

export interface SentencePayload {
  index: number;
  text: string;
}

export interface CreateResponse {
  session_id: string;
  article: string;
  sentence: SentencePayload | null;
  done: boolean;
}

export interface FeedbackResponse {
  sentence: SentencePayload | null;
  done: boolean;
}

export interface StopResponse {
  unseen: SentencePayload[];
}

export interface ReviewResponse {
  coverage: number | null;
  coherence: number;
  ease: number;
  accepted_shown: number;
  interesting_unseen: number[];
}

export interface StatsResponse {
  phase: string;
  policy: string;
  article: string;
  document_length: number;
  shown: number;
  hidden: number;
  percent_read: number;
  acceptance_rate: number | null;
}

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const detail =
      typeof body === "object" && body !== null && "detail" in body
        ? String((body as { detail: unknown }).detail)
        : response.statusText;
    throw new ApiError(response.status, detail);
  }
  return body as T;
}

export class ReaderApi {
  constructor(private baseUrl: string) {}

  private post<T>(path: string, payload: unknown): Promise<T> {
    return fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    }).then((r) => unwrap<T>(r));
  }

  listArticles(): Promise<ArticleSummary[]> {
    return fetch(`${this.baseUrl}/articles`).then((r) => unwrap<ArticleSummary[]>(r));
  }

  createSession(article: string, policy: string): Promise<CreateResponse> {
    return this.post("/sessions", { article, policy });
  }

  submitFeedback(sessionId: string, index: number, accept: boolean): Promise<FeedbackResponse> {
    return this.post(`/sessions/${sessionId}/feedback`, { index, accept });
  }

  stopSession(sessionId: string): Promise<StopResponse> {
    return this.post(`/sessions/${sessionId}/stop`, {});
  }

  submitReview(
    sessionId: string,
    interesting: number[],
    coherence: number,
    ease: number,
  ): Promise<ReviewResponse> {
    return this.post(`/sessions/${sessionId}/review`, { interesting, coherence, ease });
  }

  sessionStats(sessionId: string): Promise<StatsResponse> {
    return fetch(`${this.baseUrl}/sessions/${sessionId}/stats`).then((r) =>
      unwrap<StatsResponse>(r),
    );
  }
}
