import type { FlowView } from "./flow";
import type { CreateSessionParams, PatternPayload, RankedPattern } from "./types";

export interface Handlers {
  onStart(params: CreateSessionParams): void;
  onAnswer(id: number): void;
  onStop(): void;
  onRetry(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) {
    if (k === "class") node.className = v;
    else if (k === "text") node.textContent = v;
    else node.setAttribute(k, v);
  }
  for (const c of children) node.append(c);
  return node;
}

function itemsetText(items: number[]): string {
  return items.length === 0 ? "{}" : `{${items.join(", ")}}`;
}

export function ruleText(p: PatternPayload): string {
  return `${itemsetText(p.body)} → ${itemsetText(p.head)}`;
}

function fmt(x: number): string {
  if (!Number.isFinite(x)) return String(x);
  const a = Math.abs(x);
  if (a !== 0 && (a >= 10_000 || a < 0.001)) return x.toExponential(3);
  return x.toFixed(4);
}

/** Horizontal bar chart of the current weights, one div-track per measure.
 * Each bar carries the exact server value in data-value; the label shows it
 * rounded. No canvas: plain elements render (and test) anywhere.
 */
function weightChart(names: string[], weights: number[]): HTMLElement {
  const chart = el("div", { id: "weight-chart", class: "weight-chart" });
  names.forEach((name, i) => {
    const w = weights[i] ?? 0;
    const row = el("div", {
      class: "weight-bar",
      "data-measure": name,
      "data-value": String(w),
    });
    row.append(
      el("span", { class: "weight-label", text: name }),
      el("div", { class: "weight-track" }, [
        el("div", {
          class: "weight-fill",
          style: `width: ${(Math.max(0, Math.min(1, w)) * 100).toFixed(2)}%`,
        }),
      ]),
      el("span", { class: "weight-value", text: w.toFixed(4) }),
    );
    chart.append(row);
  });
  return chart;
}

/** One selectable card per pattern: the rule, then every measure with its
 * raw value (the normalized value appears in the tooltip). */
function ruleCard(p: PatternPayload, disabled: boolean, handlers: Handlers): HTMLElement {
  const card = el("button", {
    class: "rule-card",
    "data-pattern-id": String(p.id),
    type: "button",
  });
  if (disabled) card.disabled = true;
  card.append(el("div", { class: "rule-text", text: ruleText(p) }));
  const table = el("table", { class: "measure-table" });
  for (const [name, value] of Object.entries(p.measures)) {
    const scaled = p.scaled[name];
    table.append(
      el("tr", {}, [
        el("td", { class: "measure-name", text: name }),
        el("td", {
          class: "measure-value",
          title: `normalized: ${scaled === undefined ? "?" : fmt(scaled)}`,
          text: fmt(value),
        }),
      ]),
    );
  }
  card.append(table);
  card.addEventListener("click", () => handlers.onAnswer(p.id));
  return card;
}

function rankingList(id: string, items: RankedPattern[]): HTMLElement {
  const list = el("ol", { id, class: "ranking-list" });
  for (const item of items) {
    list.append(
      el("li", { class: "ranking-item", "data-pattern-id": String(item.id) }, [
        el("span", { class: "ranking-rule", text: ruleText(item) }),
        el("span", { class: "ranking-score", text: ` score ${fmt(item.score)}` }),
      ]),
    );
  }
  return list;
}

function errorBanner(view: FlowView, handlers: Handlers): HTMLElement | null {
  if (view.error === null) return null;
  const banner = el("div", { id: "error-banner", class: "error-banner", role: "alert" });
  banner.append(el("span", { class: "error-text", text: view.error }));
  const retry = el("button", { id: "retry-btn", type: "button", text: "Retry" });
  retry.addEventListener("click", () => handlers.onRetry());
  banner.append(retry);
  return banner;
}

function setupScreen(view: FlowView, handlers: Handlers): HTMLElement {
  const screen = el("section", { id: "setup", class: "screen" });
  screen.append(el("h1", { text: "Rank patterns your way" }));
  screen.append(
    el("p", {
      class: "hint",
      text:
        "Answer a short series of pairwise questions — pick the rule you find " +
        "more interesting — and the server learns how much each measure matters to you.",
    }),
  );

  const form = el("div", { id: "setup-form", class: "setup-form" });

  const datasetSelect = el("select", { id: "dataset-select" });
  if (view.datasets !== null) {
    for (const d of view.datasets.datasets) {
      const opt = el("option", { value: d.name, text: `${d.name} (${d.patterns} patterns)` });
      if (d.name === view.datasets.default) opt.selected = true;
      datasetSelect.append(opt);
    }
  } else {
    datasetSelect.append(el("option", { value: "", text: "server default" }));
  }

  const tInput = el("input", { id: "t-input", type: "number", min: "1", value: "5" });
  const thetaInput = el("input", { id: "theta-input", type: "number", min: "2", value: "100" });
  const seedInput = el("input", {
    id: "seed-input",
    type: "number",
    placeholder: "random",
  });

  form.append(
    el("label", { text: "Dataset " }, [datasetSelect]),
    el("label", { text: "Questions " }, [tInput]),
    el("label", { text: "Gap scale " }, [thetaInput]),
    el("label", { text: "Seed " }, [seedInput]),
  );

  const startBtn = el("button", { id: "start-btn", type: "button", text: "Start session" });
  if (view.busy) startBtn.disabled = true;
  startBtn.addEventListener("click", () => {
    const params: CreateSessionParams = {
      T: parseIntOr(tInput.value, 5),
      theta: parseIntOr(thetaInput.value, 100),
    };
    if (datasetSelect.value !== "") params.dataset = datasetSelect.value;
    const seed = parseIntOr(seedInput.value, NaN);
    if (!Number.isNaN(seed)) params.seed = seed;
    handlers.onStart(params);
  });
  form.append(startBtn);
  screen.append(form);
  return screen;
}

function parseIntOr(text: string, fallback: number): number {
  const n = parseInt(text, 10);
  return Number.isNaN(n) ? fallback : n;
}

function questionScreen(view: FlowView, handlers: Handlers): HTMLElement {
  const screen = el("section", { id: "question", class: "screen" });
  const q = view.query;
  if (q !== null) {
    screen.append(
      el("p", { id: "progress", class: "progress", text: `Question ${q.t} of ${q.T}` }),
    );
    screen.append(el("p", { class: "hint", text: "Which rule is more interesting to you?" }));
    const pair = el("div", { class: "pair" });
    for (const p of q.pair) pair.append(ruleCard(p, view.busy, handlers));
    screen.append(pair);
  } else {
    screen.append(
      el("p", {
        id: "progress",
        class: "progress",
        text: `${view.answered} of ${view.total} answered`,
      }),
    );
  }

  screen.append(el("h2", { text: "Learned measure weights" }));
  screen.append(weightChart(view.measureNames, view.weights));

  if (view.top.length > 0) {
    screen.append(el("h2", { text: "Current top patterns" }));
    screen.append(rankingList("topk", view.top));
  }

  const stopBtn = el("button", { id: "stop-btn", type: "button", text: "Stop early" });
  if (view.busy) stopBtn.disabled = true;
  stopBtn.addEventListener("click", () => handlers.onStop());
  screen.append(stopBtn);
  return screen;
}

function completionScreen(view: FlowView): HTMLElement {
  const screen = el("section", { id: "completion", class: "screen" });
  screen.append(el("h1", { text: "Session complete" }));
  screen.append(
    el("p", {
      class: "progress",
      text: `${view.answered} of ${view.total} questions answered`,
    }),
  );

  screen.append(el("h2", { text: "Your measure weights" }));
  screen.append(weightChart(view.measureNames, view.weights));

  const sum = view.weights.reduce((a, b) => a + b, 0);
  screen.append(el("p", { id: "sum-line", class: "sum-line", text: `Σw = ${sum.toFixed(4)}` }));
  if (view.lambdaMax !== null) {
    screen.append(
      el("p", {
        id: "lambda-line",
        class: "hint",
        text: `comparison-matrix principal eigenvalue λ_max = ${view.lambdaMax.toFixed(6)}`,
      }),
    );
  }

  if (view.ranking !== null) {
    screen.append(el("h2", { text: "Top patterns under your weights" }));
    screen.append(rankingList("final-ranking", view.ranking));
  }
  return screen;
}

/** Rebuild the whole UI from the view. State lives in the flow, not the DOM,
 * so a full re-render per change is simple and always consistent. */
export function renderApp(root: HTMLElement, view: FlowView, handlers: Handlers): void {
  root.textContent = "";
  const banner = errorBanner(view, handlers);
  if (banner !== null) root.append(banner);

  switch (view.phase) {
    case "setup":
      root.append(setupScreen(view, handlers));
      break;
    case "starting":
      root.append(
        el("section", { id: "starting", class: "screen" }, [
          el("p", { text: "Starting session…" }),
        ]),
      );
      break;
    case "question":
    case "submitting":
      root.append(questionScreen(view, handlers));
      break;
    case "finished":
      root.append(completionScreen(view));
      break;
    case "error":
      if (view.session === null && banner === null) {
        root.append(setupScreen(view, handlers));
      }
      break;
  }
}
