/**
 * DOM wiring for the reader: renders the session state and forwards user
 * gestures (buttons, arrow keys) to the state machine.  Rendering only;
 * every transition comes from service responses via main.ts.
 */

import type { ArticleSummary } from "./api.js";
import type { SessionFlow } from "./state.js";

export interface UiHandlers {
  onStart: (article: string, policy: string) => void;
  onSwipe: (accept: boolean) => void;
  onStop: () => void;
  onToggleInteresting: (index: number) => void;
  onRate: (kind: "coherence" | "ease", value: number) => void;
  onSubmitReview: () => void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class ReaderUi {
  private root: HTMLElement;

  constructor(root: HTMLElement, private handlers: UiHandlers) {
    this.root = root;
    document.addEventListener("keydown", (event) => {
      if (event.key === "ArrowRight") this.handlers.onSwipe(true);
      if (event.key === "ArrowLeft") this.handlers.onSwipe(false);
    });
  }

  renderPicker(articles: ArticleSummary[], policies: string[]): void {
    this.root.replaceChildren();
    const panel = el("div", "panel");
    panel.appendChild(el("h2", undefined, "Pick an article and a policy"));

    const articleSelect = el("select", "article-select");
    for (const article of articles) {
      const option = el("option", undefined, `${article.id} (${article.sentences} sentences)`);
      option.value = article.id;
      articleSelect.appendChild(option);
    }
    const policySelect = el("select", "policy-select");
    for (const policy of policies) {
      const option = el("option", undefined, policy);
      option.value = policy;
      policySelect.appendChild(option);
    }
    const startButton = el("button", "start", "Start reading");
    startButton.addEventListener("click", () => {
      this.handlers.onStart(articleSelect.value, policySelect.value);
    });
    panel.append(articleSelect, policySelect, startButton);
    this.root.appendChild(panel);
  }

  render(flow: SessionFlow): void {
    const view = flow.view();
    this.root.replaceChildren();
    const panel = el("div", "panel");

    if (view.error) {
      panel.appendChild(el("div", "error", view.error));
    }

    if (view.phase === "reading" && view.sentence) {
      const progress =
        view.docLength > 0
          ? `sentence ${view.sentence.index + 1} of ${view.docLength}, ${view.servedCount} shown`
          : `${view.servedCount} shown`;
      panel.appendChild(el("div", "progress", progress));
      panel.appendChild(el("p", "sentence", view.sentence.text));

      const reject = el("button", "reject", "← Not interested");
      const accept = el("button", "accept", "Interested →");
      reject.disabled = accept.disabled = view.pending;
      reject.addEventListener("click", () => this.handlers.onSwipe(false));
      accept.addEventListener("click", () => this.handlers.onSwipe(true));
      panel.append(reject, accept);
    }

    if (view.phase === "reading" || view.phase === "readingDone") {
      if (view.phase === "readingDone") {
        panel.appendChild(el("p", "sentence", "You reached the end of the summary."));
      }
      const stop = el("button", "stop", "Stop reading");
      stop.disabled = view.pending;
      stop.addEventListener("click", () => this.handlers.onStop());
      panel.appendChild(stop);
    }

    if (view.phase === "review") {
      panel.appendChild(el("h2", undefined, "Anything interesting in what was skipped?"));
      if (view.unseen.length === 0) {
        panel.appendChild(el("p", undefined, "Nothing was hidden from you."));
      }
      const list = el("ul", "unseen");
      for (const sentence of view.unseen) {
        const item = el("li");
        const checkbox = el("input") as HTMLInputElement;
        checkbox.type = "checkbox";
        checkbox.checked = view.interesting.has(sentence.index);
        checkbox.addEventListener("change", () =>
          this.handlers.onToggleInteresting(sentence.index),
        );
        item.append(checkbox, el("span", undefined, ` ${sentence.text}`));
        list.appendChild(item);
      }
      panel.appendChild(list);

      for (const kind of ["coherence", "ease"] as const) {
        const label = kind === "coherence"
          ? "How well did consecutive sentences connect? (1-5)"
          : "How easy were the accept/reject decisions? (1-5)";
        const row = el("div", `rating ${kind}`);
        row.appendChild(el("span", undefined, label));
        for (let value = 1; value <= 5; value++) {
          const button = el("button", "rating-value", String(value));
          const chosen = kind === "coherence" ? view.coherence : view.ease;
          if (chosen === value) button.classList.add("chosen");
          button.addEventListener("click", () => this.handlers.onRate(kind, value));
          row.appendChild(button);
        }
        panel.appendChild(row);
      }

      const submit = el("button", "submit-review", "Finish");
      submit.disabled = !flow.canSubmitReview();
      submit.addEventListener("click", () => this.handlers.onSubmitReview());
      panel.appendChild(submit);
    }

    if (view.phase === "closed" && view.outcome) {
      panel.appendChild(el("h2", undefined, "Thanks for reading"));
      const coverage =
        view.outcome.coverage === null
          ? "coverage: n/a (nothing marked interesting)"
          : `coverage: ${(view.outcome.coverage * 100).toFixed(0)}%`;
      panel.appendChild(el("p", undefined, coverage));
      panel.appendChild(
        el(
          "p",
          undefined,
          `${view.outcome.acceptedShown} accepted while reading, ` +
            `${view.outcome.markedUnseen} marked in review`,
        ),
      );
    }

    this.root.appendChild(panel);
  }
}
