import { ApiClient } from "./api";
import { SessionFlow } from "./flow";
import { renderApp, type Handlers } from "./render";

export { ApiClient, ApiError } from "./api";
export { SessionFlow } from "./flow";
export type { FlowView, Phase } from "./flow";
export { renderApp, ruleText } from "./render";
export type { Handlers } from "./render";

/** Wire a flow to a root element and kick off the dataset listing.
 * Returns the flow so callers (tests, console) can inspect or drive it. */
export function bootstrap(root: HTMLElement, api: ApiClient = new ApiClient()): SessionFlow {
  const flow = new SessionFlow(api);
  const handlers: Handlers = {
    onStart: (params) => void flow.start(params),
    onAnswer: (id) => void flow.answer(id),
    onStop: () => void flow.stop(),
    onRetry: () => void flow.retry(),
  };
  flow.onChange((view) => renderApp(root, view, handlers));
  renderApp(root, flow.getView(), handlers);
  void flow.loadDatasets();
  return flow;
}

// Auto-boot when loaded as the page script; tests opt out via data-manual-boot.
const rootEl = typeof document !== "undefined" ? document.getElementById("app") : null;
if (rootEl !== null && rootEl.dataset.manualBoot === undefined) {
  bootstrap(rootEl);
}
