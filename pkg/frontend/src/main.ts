/**
 * Bootstrap: glue the API client, state machine, and DOM together.
 *
 * Every intent the state machine emits is executed exactly once; the
 * response (or error) is routed back into the machine and the view is
 * re-rendered.
 */

import { ApiError, ReaderApi } from "./api.js";
import { RequestIntent, SessionFlow } from "./state.js";
import { ReaderUi } from "./ui.js";

const POLICIES = [
  "control",
  "show_modulo:k=2",
  "hide_next:n=2",
  "hide_all_similar:threshold=0.5",
  "hide_next_similar:threshold=0.5",
  "gen_fixed:summarizer=sumbasic,frac=0.75",
  "gen_dynamic:summarizer=sumbasic,eps=0.5",
  "lr:schedule=dec,beta=1",
  "coverage_opt:beta=4,c=5",
];

const apiBase = (window as unknown as { HARE_API?: string }).HARE_API ?? "http://127.0.0.1:8000";
const api = new ReaderApi(apiBase);
const flow = new SessionFlow();

async function execute(intent: RequestIntent): Promise<void> {
  try {
    switch (intent.kind) {
      case "create":
        flow.onCreated(await api.createSession(intent.article, intent.policy));
        break;
      case "feedback":
        flow.onFeedback(
          await api.submitFeedback(intent.sessionId, intent.index, intent.accept),
        );
        break;
      case "stop":
        flow.onStopped(await api.stopSession(intent.sessionId));
        break;
      case "review":
        flow.onReviewed(
          await api.submitReview(
            intent.sessionId,
            intent.interesting,
            intent.coherence,
            intent.ease,
          ),
        );
        break;
    }
  } catch (error) {
    flow.onError(error instanceof ApiError ? error.message : String(error));
  }
  ui.render(flow);
}

function dispatch(intent: RequestIntent | null): void {
  if (intent !== null) {
    ui.render(flow); // show the disabled/pending state immediately
    void execute(intent);
  }
}

const root = document.getElementById("app");
if (root === null) throw new Error("missing #app container");

const ui = new ReaderUi(root, {
  onStart: (article, policy) => dispatch(flow.start(article, policy, docLengths.get(article) ?? 0)),
  onSwipe: (accept) => dispatch(flow.swipe(accept)),
  onStop: () => dispatch(flow.stopReading()),
  onToggleInteresting: (index) => {
    if (flow.toggleInteresting(index)) ui.render(flow);
  },
  onRate: (kind, value) => {
    if (flow.rate(kind, value)) ui.render(flow);
  },
  onSubmitReview: () => dispatch(flow.submitReview()),
});

const docLengths = new Map<string, number>();

api
  .listArticles()
  .then((articles) => {
    for (const article of articles) docLengths.set(article.id, article.sentences);
    ui.renderPicker(articles, POLICIES);
  })
  .catch((error) => {
    root.textContent = `Cannot reach the reading service at ${apiBase}: ${error}`;
  });
