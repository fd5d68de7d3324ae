/**
 * Session state machine for the reader.
 *
 * The machine validates every user action against the current phase and a
 * single-request lock, and turns allowed actions into request intents for
 * the API layer to execute.  While an intent is outstanding (`pending`)
 * every further action returns null, so at most one request is ever in
 * flight per session.  Responses are fed back through the on* handlers.
 *
 * The machine renders what the service decided; it never chooses which
 * sentence to show or hide.
 */

import type {
  CreateResponse,
  FeedbackResponse,
  ReviewResponse,
  SentencePayload,
  StopResponse,
} from "./api.js";

export type Phase = "idle" | "reading" | "readingDone" | "review" | "closed";

export type RequestIntent =
  | { kind: "create"; article: string; policy: string }
  | { kind: "feedback"; sessionId: string; index: number; accept: boolean }
  | { kind: "stop"; sessionId: string }
  | { kind: "review"; sessionId: string; interesting: number[]; coherence: number; ease: number };

export interface ReviewOutcome {
  coverage: number | null;
  acceptedShown: number;
  markedUnseen: number;
}

export interface SessionViewState {
  phase: Phase;
  pending: boolean;
  sessionId: string | null;
  article: string | null;
  sentence: SentencePayload | null;
  servedCount: number;
  docLength: number;
  unseen: SentencePayload[];
  interesting: ReadonlySet<number>;
  coherence: number | null;
  ease: number | null;
  outcome: ReviewOutcome | null;
  error: string | null;
}

const RATING_MIN = 1;
const RATING_MAX = 5;

export class SessionFlow {
  private phase: Phase = "idle";
  private pending = false;
  private sessionId: string | null = null;
  private article: string | null = null;
  private sentence: SentencePayload | null = null;
  private servedCount = 0;
  private docLength = 0;
  private unseen: SentencePayload[] = [];
  private interesting = new Set<number>();
  private coherence: number | null = null;
  private ease: number | null = null;
  private outcome: ReviewOutcome | null = null;
  private error: string | null = null;

  view(): SessionViewState {
    return {
      phase: this.phase,
      pending: this.pending,
      sessionId: this.sessionId,
      article: this.article,
      sentence: this.sentence,
      servedCount: this.servedCount,
      docLength: this.docLength,
      unseen: [...this.unseen],
      interesting: new Set(this.interesting),
      coherence: this.coherence,
      ease: this.ease,
      outcome: this.outcome,
      error: this.error,
    };
  }

  // --- user actions: return an intent or null when not allowed ------------

  start(article: string, policy: string, docLength: number): RequestIntent | null {
    if (this.pending || this.phase !== "idle") return null;
    this.pending = true;
    this.article = article;
    this.docLength = docLength;
    return { kind: "create", article, policy };
  }

  swipe(accept: boolean): RequestIntent | null {
    if (this.pending || this.phase !== "reading") return null;
    if (this.sentence === null || this.sessionId === null) return null;
    this.pending = true;
    return {
      kind: "feedback",
      sessionId: this.sessionId,
      index: this.sentence.index,
      accept,
    };
  }

  stopReading(): RequestIntent | null {
    if (this.pending || this.sessionId === null) return null;
    if (this.phase !== "reading" && this.phase !== "readingDone") return null;
    this.pending = true;
    return { kind: "stop", sessionId: this.sessionId };
  }

  toggleInteresting(index: number): boolean {
    if (this.phase !== "review" || this.pending) return false;
    if (!this.unseen.some((s) => s.index === index)) return false;
    if (this.interesting.has(index)) {
      this.interesting.delete(index);
    } else {
      this.interesting.add(index);
    }
    return true;
  }

  rate(kind: "coherence" | "ease", value: number): boolean {
    if (this.phase !== "review" || this.pending) return false;
    if (!Number.isInteger(value) || value < RATING_MIN || value > RATING_MAX) return false;
    if (kind === "coherence") {
      this.coherence = value;
    } else {
      this.ease = value;
    }
    return true;
  }

  /** Submit is available only once both ratings are chosen. */
  canSubmitReview(): boolean {
    return (
      this.phase === "review" &&
      !this.pending &&
      this.coherence !== null &&
      this.ease !== null
    );
  }

  submitReview(): RequestIntent | null {
    if (!this.canSubmitReview() || this.sessionId === null) return null;
    this.pending = true;
    return {
      kind: "review",
      sessionId: this.sessionId,
      interesting: [...this.interesting].sort((a, b) => a - b),
      coherence: this.coherence as number,
      ease: this.ease as number,
    };
  }

  // --- response handlers ----------------------------------------------------

  onCreated(response: CreateResponse): void {
    this.pending = false;
    this.sessionId = response.session_id;
    this.sentence = response.sentence;
    this.servedCount = response.sentence === null ? 0 : 1;
    this.phase = response.done ? "readingDone" : "reading";
    this.error = null;
  }

  onFeedback(response: FeedbackResponse): void {
    this.pending = false;
    this.sentence = response.sentence;
    if (response.sentence !== null) {
      this.servedCount += 1;
    }
    if (response.done) {
      this.phase = "readingDone";
    }
    this.error = null;
  }

  onStopped(response: StopResponse): void {
    this.pending = false;
    this.phase = "review";
    this.sentence = null;
    this.unseen = response.unseen;
    this.error = null;
  }

  onReviewed(response: ReviewResponse): void {
    this.pending = false;
    this.phase = "closed";
    this.outcome = {
      coverage: response.coverage,
      acceptedShown: response.accepted_shown,
      markedUnseen: response.interesting_unseen.length,
    };
    this.error = null;
  }

  onError(message: string): void {
    // the outstanding request failed; release the lock and surface it
    this.pending = false;
    this.error = message;
  }
}
