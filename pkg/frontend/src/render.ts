// DOM rendering of server payloads. Formatting only: money strings come
// from integer digit manipulation of server-sent minor/micro units, and
// every numeric cell carries its raw server value in a data-n attribute
// so tests can check that nothing on screen was computed client-side.

import type {
  BreakevenReport,
  CandidateCriteria,
  CostBreakdown,
  MpwEstimate,
  SelectionReport,
} from "./api.js";
import type { Money } from "./api.js";

const CURRENCY_SYMBOLS: Record<string, string> = { USD: "$", EUR: "€", EGP: "E£" };

function splitUnits(total: number, perMajor: number): string {
  const sign = total < 0 ? "-" : "";
  const magnitude = Math.abs(total);
  const major = Math.floor(magnitude / perMajor);
  const minor = magnitude % perMajor;
  const width = String(perMajor).length - 1;
  return `${sign}${major}.${String(minor).padStart(width, "0")}`;
}

export function formatMoney(money: Money): string {
  return `${splitUnits(money.amount_minor, 100)} ${money.currency}`;
}

export function formatMicro(micro: number, currency: string): string {
  const text = splitUnits(micro, 1_000_000);
  const symbol = CURRENCY_SYMBOLS[currency];
  return symbol ? `${symbol}${text}` : `${text} ${currency}`;
}

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function numericCell(tag: string, text: string, raw: number | string): HTMLElement {
  const node = el(tag, "num", text);
  node.dataset.n = String(raw);
  return node;
}

function row(label: string, value: string, raw: number | string, id?: string): HTMLElement {
  const tr = el("tr");
  tr.appendChild(el("th", undefined, label));
  const cell = numericCell("td", value, raw);
  if (id) cell.id = id;
  tr.appendChild(cell);
  return tr;
}

export function renderBreakdown(container: HTMLElement, payload: CostBreakdown): void {
  container.replaceChildren();
  container.appendChild(el("h3", undefined, `Production on ${payload.technology_id}`));
  const table = el("table", "kv");
  table.appendChild(row("gross dies / wafer", String(payload.gross_dies_per_wafer), payload.gross_dies_per_wafer));
  table.appendChild(row("yield", payload.yield_fraction.toFixed(6), payload.yield_fraction));
  table.appendChild(row("good dies / wafer", payload.good_dies_per_wafer.toFixed(4), payload.good_dies_per_wafer));
  table.appendChild(row("wafers used", String(payload.wafers_used), payload.wafers_used));
  table.appendChild(row("NRE", formatMoney(payload.nre), payload.nre.amount_minor));
  table.appendChild(row("wafer total", formatMoney(payload.wafer_total), payload.wafer_total.amount_minor));
  table.appendChild(row("total", formatMoney(payload.total), payload.total.amount_minor));
  table.appendChild(
    row("unit cost", formatMicro(payload.unit_cost_micro, payload.currency), payload.unit_cost_micro, "unit-cost"),
  );
  container.appendChild(table);
}

export function renderMpw(container: HTMLElement, payload: MpwEstimate): void {
  container.replaceChildren();
  container.appendChild(el("h3", undefined, `MPW seat on ${payload.technology_id}`));
  const table = el("table", "kv");
  table.appendChild(row("billed area (mm²)", String(payload.billed_area_mm2), payload.billed_area_mm2));
  table.appendChild(row("seat cost", formatMoney(payload.seat_cost), payload.seat_cost.amount_minor, "seat-cost"));
  table.appendChild(row("sample dies included", String(payload.samples_per_seat), payload.samples_per_seat));
  if (payload.addons.length) {
    const tr = el("tr");
    tr.appendChild(el("th", undefined, "add-ons"));
    tr.appendChild(el("td", undefined, payload.addons.join(", ")));
    table.appendChild(tr);
  }
  container.appendChild(table);
}

const CRITERIA_LABELS: Record<string, string> = {
  unit_cost: "unit cost",
  complexity: "complexity",
  passives: "passives",
  f_max: "f max",
  time_to_market: "time to market",
};

function criteriaText(criteria: CandidateCriteria): string[] {
  return [
    formatMicro(criteria.unit_cost_micro, criteria.currency),
    criteria.complexity_index.toFixed(4),
    `${criteria.cap_density_ff_um2} fF/µm²`,
    `${criteria.f_max_hz.toExponential(2)} Hz`,
    `${criteria.wait_days.toFixed(2)} d`,
  ];
}

function criteriaRaw(criteria: CandidateCriteria): number[] {
  return [
    criteria.unit_cost_micro,
    criteria.complexity_index,
    criteria.cap_density_ff_um2,
    criteria.f_max_hz,
    criteria.wait_days,
  ];
}

export function renderRanking(container: HTMLElement, report: SelectionReport): void {
  container.replaceChildren();
  if (report.mode === "empty") {
    container.appendChild(el("p", "notice", "No feasible technology for this spec."));
    return;
  }
  if (report.mode === "dictated" && report.dictated) {
    container.appendChild(el("p", "notice", "Node dictated externally; cost breakdown:"));
    const holder = el("div");
    container.appendChild(holder);
    renderBreakdown(holder, report.dictated);
    return;
  }
  const table = el("table", "ranking");
  const head = el("tr");
  for (const label of ["rank", "technology", "score", ...report.criteria_order.map((c) => CRITERIA_LABELS[c] ?? c)]) {
    head.appendChild(el("th", undefined, label));
  }
  table.appendChild(head);
  for (const candidate of report.candidates) {
    const tr = el("tr");
    tr.dataset.tech = candidate.technology_id;
    tr.appendChild(numericCell("td", String(candidate.rank), candidate.rank));
    tr.appendChild(el("td", "tech", candidate.technology_id));
    tr.appendChild(numericCell("td", candidate.score.toFixed(4), candidate.score));
    const texts = criteriaText(candidate.criteria);
    const raws = criteriaRaw(candidate.criteria);
    candidate.normalized.forEach((norm, i) => {
      const cell = numericCell("td", texts[i], raws[i]);
      const bar = el("div", "bar");
      const fill = el("div", "fill");
      fill.style.width = `${Math.round(norm * 100)}%`;
      fill.dataset.n = String(norm);
      bar.appendChild(fill);
      cell.appendChild(bar);
      tr.appendChild(cell);
    });
    table.appendChild(tr);
  }
  container.appendChild(table);
}

export function renderComparison(container: HTMLElement, reports: SelectionReport[]): void {
  container.replaceChildren();
  if (!reports.length) {
    container.appendChild(el("p", "notice", "No feasible technology for this spec."));
    return;
  }
  const board = el("div", "comparison");
  reports.forEach((report, index) => {
    const panel = el("div", "panel");
    const title = report.weights
      ? `weights ${report.weights.map((w) => w.toFixed(2)).join(" / ")}`
      : `scenario ${index + 1}`;
    panel.appendChild(el("h4", undefined, title));
    const holder = el("div");
    panel.appendChild(holder);
    renderRanking(holder, report);
    board.appendChild(panel);
  });
  container.appendChild(board);
}

export function renderErrorBanner(container: HTMLElement, message: string, offline: boolean): void {
  container.replaceChildren();
  const banner = el("div", offline ? "banner offline" : "banner error");
  banner.appendChild(el("span", undefined, message));
  if (offline) {
    banner.appendChild(el("button", "retry", "retry"));
  }
  container.appendChild(banner);
}

export function clearBanner(container: HTMLElement): void {
  container.replaceChildren();
}

export { renderBreakevenChart } from "./chart.js";
export type { BreakevenReport };
