// Form wiring: read the scenario form, call the API, render the result.
// At most one render per form; stale responses are dropped by sequence
// number so a slow earlier request can never overwrite a newer result.

import { ApiClient, RequestFailed } from "./api.js";
import type { SelectionReport } from "./api.js";
import {
  clearBanner,
  renderBreakdown,
  renderBreakevenChart,
  renderComparison,
  renderErrorBanner,
  renderMpw,
  renderRanking,
} from "./render.js";
import {
  ADDON_KINDS,
  ScenarioForm,
  defaultForm,
  toBreakevenRequest,
  toMpwRequest,
  toProductionRequest,
  toSelectRequest,
  validateForm,
} from "./state.js";

export type ScenarioKind = "production" | "mpw" | "breakeven" | "select";

export interface AppElements {
  form: HTMLElement;
  results: HTMLElement;
  banner: HTMLElement;
  comparison?: HTMLElement;
}

function inputValue(root: HTMLElement, id: string): string {
  const node = root.querySelector<HTMLInputElement | HTMLSelectElement>(`#${id}`);
  return node ? node.value : "";
}

function checked(root: HTMLElement, id: string): boolean {
  const node = root.querySelector<HTMLInputElement>(`#${id}`);
  return node ? node.checked : false;
}

export function readForm(root: HTMLElement): ScenarioForm {
  const base = defaultForm();
  const number = (id: string, fallback: number) => {
    const raw = inputValue(root, id);
    return raw === "" ? fallback : Number(raw);
  };
  const addons = Object.fromEntries(
    ADDON_KINDS.map((kind) => [kind, checked(root, `addon-${kind}`)]),
  ) as ScenarioForm["addons"];
  return {
    ...base,
    technologyId: inputValue(root, "technology") || base.technologyId,
    dieAreaMm2: number("die-area", base.dieAreaMm2),
    volume: number("volume", base.volume),
    requiredFHz: number("required-f", base.requiredFHz),
    requiredVoltageV: number("required-v", base.requiredVoltageV),
    requiredCapDensity: number("required-cap", base.requiredCapDensity),
    addons,
    businessCategory: (inputValue(root, "category") || base.businessCategory) as ScenarioForm["businessCategory"],
    marketOrientation: (inputValue(root, "orientation") || base.marketOrientation) as ScenarioForm["marketOrientation"],
    dictatedTechnologyId: inputValue(root, "dictated-tech"),
    useManualWeights: checked(root, "manual-weights"),
    weights: [
      number("w-cost", 0.2),
      number("w-complexity", 0.2),
      number("w-passives", 0.2),
      number("w-fmax", 0.2),
      number("w-ttm", 0.2),
    ],
    yieldModel: (inputValue(root, "yield-model") || base.yieldModel) as ScenarioForm["yieldModel"],
    d0PerMm2: number("d0", base.d0PerMm2),
    edgeExclusionMm: number("edge", base.edgeExclusionMm),
    scribeMm: number("scribe", base.scribeMm),
    scanLimit: number("scan-limit", base.scanLimit),
    scoreCurrency: inputValue(root, "score-currency") || base.scoreCurrency,
  };
}

export class App {
  private readonly client: ApiClient;
  private readonly elements: AppElements;
  private sequence = 0;
  private lastSelection: SelectionReport | null = null;

  constructor(client: ApiClient, elements: AppElements) {
    this.client = client;
    this.elements = elements;
  }

  /** Run one scenario; resolves when the result (or an error) rendered. */
  async submitScenario(kind: ScenarioKind, form?: ScenarioForm): Promise<void> {
    const state = form ?? readForm(this.elements.form);
    const problems = validateForm(state, kind);
    if (problems.length) {
      renderErrorBanner(this.elements.banner, problems.join("; "), false);
      return;
    }
    clearBanner(this.elements.banner);
    const ticket = ++this.sequence;
    try {
      if (kind === "production") {
        const payload = await this.client.estimateProduction(toProductionRequest(state));
        if (ticket !== this.sequence) return;
        renderBreakdown(this.elements.results, payload);
      } else if (kind === "mpw") {
        const payload = await this.client.estimateMpw(toMpwRequest(state));
        if (ticket !== this.sequence) return;
        renderMpw(this.elements.results, payload);
      } else if (kind === "breakeven") {
        const payload = await this.client.breakeven(toBreakevenRequest(state));
        if (ticket !== this.sequence) return;
        this.elements.results.replaceChildren();
        const chartHolder = document.createElement("div");
        this.elements.results.appendChild(chartHolder);
        renderBreakevenChart(chartHolder, payload);
        const note = document.createElement("p");
        note.className = "notice";
        note.textContent =
          payload.breakeven_volume === null
            ? `no break-even within ${payload.scan_limit}`
            : `break-even volume ${payload.breakeven_volume}`;
        if (payload.breakeven_volume !== null) {
          note.dataset.n = String(payload.breakeven_volume);
        }
        this.elements.results.appendChild(note);
      } else {
        const payload = await this.client.select(toSelectRequest(state));
        if (ticket !== this.sequence) return;
        this.lastSelection = payload;
        renderRanking(this.elements.results, payload);
      }
    } catch (error) {
      if (ticket !== this.sequence) return;
      if (error instanceof RequestFailed) {
        // Server rejections surface verbatim.
        renderErrorBanner(this.elements.banner, `${error.detail.error}: ${error.detail.message}`, false);
      } else {
        renderErrorBanner(this.elements.banner, "service unreachable — check the connection", true);
      }
    }
  }

  /** Re-run the select scenario under another weighting and show both. */
  async compareWeights(weightSets: number[][]): Promise<void> {
    const state = readForm(this.elements.form);
    const reports: SelectionReport[] = [];
    for (const weights of weightSets) {
      const body = { ...toSelectRequest(state), weights };
      reports.push(await this.client.select(body));
    }
    if (this.elements.comparison) {
      renderComparison(this.elements.comparison, reports);
    }
  }

  selection(): SelectionReport | null {
    return this.lastSelection;
  }
}

export function wireApp(root: Document, client: ApiClient): App {
  const elements: AppElements = {
    form: root.getElementById("scenario-form") as HTMLElement,
    results: root.getElementById("results") as HTMLElement,
    banner: root.getElementById("banner") as HTMLElement,
    comparison: (root.getElementById("comparison") as HTMLElement) ?? undefined,
  };
  const app = new App(client, elements);
  for (const kind of ["production", "mpw", "breakeven", "select"] as ScenarioKind[]) {
    const button = root.getElementById(`run-${kind}`);
    if (button) {
      button.addEventListener("click", (event) => {
        event.preventDefault();
        void app.submitScenario(kind);
      });
    }
  }
  elements.banner.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.classList.contains("retry")) {
      void app.submitScenario("production");
    }
  });
  return app;
}
