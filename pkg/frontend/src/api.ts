// Typed client for the /v1 JSON API. The server is the single source of
// numeric truth: this module moves payloads, it never computes costs.

export interface Money {
  amount_minor: number;
  currency: string;
}

export interface TechnologyNode {
  id: string;
  foundry: string;
  node_nm: number;
  core_voltage_v: number;
  io_voltage_v: number;
  mim_cap_density_ff_um2: number;
  min_area_mm2: number;
  mpw_price_per_mm2: Money;
  mask_cost: Money;
  wafer_cost: Money;
  wafer_diameter_mm: number;
  shuttles_per_year: number;
  f_max_hz: number;
  samples_per_seat: number;
  illustrative: boolean;
  addons: { kind: string; surcharge_per_mm2: Money }[];
}

export interface CatalogPayload {
  version: string;
  currency_note: string;
  nodes: TechnologyNode[];
}

export interface MpwEstimate {
  technology_id: string;
  die_area_mm2: number;
  billed_area_mm2: number;
  addons: string[];
  seat_cost: Money;
  samples_per_seat: number;
}

export interface CostBreakdown {
  technology_id: string;
  currency: string;
  nre: Money;
  wafers_used: number;
  wafer_total: Money;
  gross_dies_per_wafer: number;
  yield_fraction: number;
  good_dies_per_wafer: number;
  unit_cost_micro: number;
  total: Money;
}

export interface CurvePoint {
  volume: number;
  dedicated_total: Money;
  mpw_total: Money;
}

export interface BreakevenReport {
  technology_id: string;
  breakeven_volume: number | null;
  mpw_total_at_breakeven: Money | null;
  dedicated_total_at_breakeven: Money | null;
  scan_limit: number;
  seat_cost: Money;
  samples_per_seat: number;
  curve: CurvePoint[];
}

export interface CandidateCriteria {
  unit_cost_micro: number;
  complexity_index: number;
  cap_density_ff_um2: number;
  f_max_hz: number;
  wait_days: number;
  currency: string;
}

export interface ScoredCandidate {
  technology_id: string;
  rank: number;
  score: number;
  criteria: CandidateCriteria;
  normalized: number[];
}

export interface SelectionReport {
  mode: "ranked" | "empty" | "dictated";
  reason: string | null;
  weights: number[] | null;
  criteria_order: string[];
  candidates: ScoredCandidate[];
  dictated: CostBreakdown | null;
}

export interface ApiError {
  status: number;
  error: string;
  message: string;
}

export class RequestFailed extends Error {
  readonly detail: ApiError;
  constructor(detail: ApiError) {
    super(detail.message);
    this.detail = detail;
  }
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: typeof fetch;

  constructor(base = "", fetchFn: typeof fetch = (...args) => fetch(...args)) {
    this.base = base.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(method: "GET" | "POST", path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(this.base + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new RequestFailed({
        status: response.status,
        error: payload.error ?? "unknown",
        message: payload.message ?? response.statusText,
      });
    }
    return payload as T;
  }

  technologies(): Promise<CatalogPayload> {
    return this.request("GET", "/v1/technologies");
  }

  estimateMpw(body: unknown): Promise<MpwEstimate> {
    return this.request("POST", "/v1/estimate/mpw", body);
  }

  estimateProduction(body: unknown): Promise<CostBreakdown> {
    return this.request("POST", "/v1/estimate/production", body);
  }

  breakeven(body: unknown): Promise<BreakevenReport> {
    return this.request("POST", "/v1/breakeven", body);
  }

  select(body: unknown): Promise<SelectionReport> {
    return this.request("POST", "/v1/select", body);
  }
}
