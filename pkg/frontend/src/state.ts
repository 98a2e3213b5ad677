// Scenario form state and its (de)serialization to API request bodies.
// Client-side validation mirrors the server rules so obviously invalid
// scenarios never leave the browser; the server remains authoritative.

export const ADDON_KINDS = ["HV", "NVM", "OPTO", "SOI"] as const;
export type AddonKind = (typeof ADDON_KINDS)[number];

export type BusinessCategory = "cat1" | "cat2" | "cat3" | "cat4";
export type MarketOrientation = "cost_oriented" | "performance_oriented";
export type YieldModel = "poisson" | "murphy";

export interface ScenarioForm {
  technologyId: string;
  dieAreaMm2: number;
  volume: number;
  requiredFHz: number;
  requiredVoltageV: number;
  requiredCapDensity: number;
  addons: Record<AddonKind, boolean>;
  businessCategory: BusinessCategory;
  marketOrientation: MarketOrientation;
  dictatedTechnologyId: string;
  useManualWeights: boolean;
  weights: [number, number, number, number, number];
  yieldModel: YieldModel;
  d0PerMm2: number;
  edgeExclusionMm: number;
  scribeMm: number;
  scanLimit: number;
  scoreCurrency: string;
}

export function defaultForm(): ScenarioForm {
  return {
    technologyId: "tsmc65",
    dieAreaMm2: 10,
    volume: 10000,
    requiredFHz: 1e3,
    requiredVoltageV: 3.7,
    requiredCapDensity: 0,
    addons: { HV: false, NVM: false, OPTO: false, SOI: false },
    businessCategory: "cat1",
    marketOrientation: "cost_oriented",
    dictatedTechnologyId: "",
    useManualWeights: false,
    weights: [0.2, 0.2, 0.2, 0.2, 0.2],
    yieldModel: "poisson",
    d0PerMm2: 0.001,
    edgeExclusionMm: 3,
    scribeMm: 0.1,
    scanLimit: 1_000_000,
    scoreCurrency: "EGP",
  };
}

/** Scale weight sliders so they sum to exactly 1 (uniform if all zero). */
export function renormalizeWeights(
  weights: readonly number[],
): [number, number, number, number, number] {
  const clipped = weights.map((w) => (Number.isFinite(w) && w > 0 ? w : 0));
  const total = clipped.reduce((a, b) => a + b, 0);
  if (total === 0) {
    return [0.2, 0.2, 0.2, 0.2, 0.2];
  }
  const scaled = clipped.map((w) => w / total);
  // Pin the last component so float error cannot break the sum invariant.
  scaled[4] = 1 - (scaled[0] + scaled[1] + scaled[2] + scaled[3]);
  return scaled as [number, number, number, number, number];
}

export function validateForm(form: ScenarioForm, kind: "production" | "mpw" | "breakeven" | "select"): string[] {
  const errors: string[] = [];
  if (!(form.dieAreaMm2 > 0)) errors.push("die area must be positive");
  if (kind === "production" && !(Number.isInteger(form.volume) && form.volume >= 1)) {
    errors.push("volume must be an integer >= 1");
  }
  if (kind !== "select" && !form.technologyId) errors.push("pick a technology");
  if (kind === "select") {
    if (!(form.requiredFHz > 0)) errors.push("required frequency must be positive");
    if (!(form.requiredVoltageV > 0)) errors.push("required voltage must be positive");
    if (!(form.requiredCapDensity >= 0)) errors.push("capacitor density must be >= 0");
    if (!(Number.isInteger(form.volume) && form.volume >= 1)) {
      errors.push("volume forecast must be an integer >= 1");
    }
    if ((form.businessCategory === "cat3" || form.businessCategory === "cat4") && !form.dictatedTechnologyId) {
      errors.push("cat3/cat4 designs must name the dictated technology");
    }
  }
  if (!(form.d0PerMm2 >= 0)) errors.push("defect density must be >= 0");
  if (!(form.edgeExclusionMm >= 0)) errors.push("edge exclusion must be >= 0");
  if (!(form.scribeMm >= 0)) errors.push("scribe must be >= 0");
  return errors;
}

function waferAndYield(form: ScenarioForm) {
  return {
    wafer: { edge_exclusion_mm: form.edgeExclusionMm, scribe_mm: form.scribeMm },
    yield: { model: form.yieldModel, d0_per_mm2: form.d0PerMm2 },
  };
}

export function toMpwRequest(form: ScenarioForm) {
  return {
    technology_id: form.technologyId,
    die_area_mm2: form.dieAreaMm2,
    addons: ADDON_KINDS.filter((kind) => form.addons[kind]),
  };
}

export function toProductionRequest(form: ScenarioForm) {
  return {
    technology_id: form.technologyId,
    die_area_mm2: form.dieAreaMm2,
    volume: form.volume,
    ...waferAndYield(form),
  };
}

export function toBreakevenRequest(form: ScenarioForm) {
  return {
    technology_id: form.technologyId,
    die_area_mm2: form.dieAreaMm2,
    scan_limit: form.scanLimit,
    ...waferAndYield(form),
  };
}

export function toSelectRequest(form: ScenarioForm) {
  const spec: Record<string, unknown> = {
    required_f_hz: form.requiredFHz,
    required_voltage_v: form.requiredVoltageV,
    required_cap_density_ff_um2: form.requiredCapDensity,
    required_addons: ADDON_KINDS.filter((kind) => form.addons[kind]),
    die_area_mm2: form.dieAreaMm2,
    volume_forecast: form.volume,
    business_category: form.businessCategory,
    market_orientation: form.marketOrientation,
  };
  if (form.dictatedTechnologyId) {
    spec.dictated_technology_id = form.dictatedTechnologyId;
  }
  return {
    spec,
    weights: form.useManualWeights ? renormalizeWeights(form.weights) : null,
    score_currency: form.scoreCurrency,
    ...waferAndYield(form),
  };
}

/** Rebuild form state from an emitted select request (round-trip). */
export function fromSelectRequest(body: ReturnType<typeof toSelectRequest>): ScenarioForm {
  const spec = body.spec as Record<string, unknown>;
  const requested = new Set(spec.required_addons as string[]);
  const addons = Object.fromEntries(
    ADDON_KINDS.map((kind) => [kind, requested.has(kind)]),
  ) as Record<AddonKind, boolean>;
  const form = defaultForm();
  return {
    ...form,
    requiredFHz: spec.required_f_hz as number,
    requiredVoltageV: spec.required_voltage_v as number,
    requiredCapDensity: spec.required_cap_density_ff_um2 as number,
    addons,
    dieAreaMm2: spec.die_area_mm2 as number,
    volume: spec.volume_forecast as number,
    businessCategory: spec.business_category as BusinessCategory,
    marketOrientation: spec.market_orientation as MarketOrientation,
    dictatedTechnologyId: (spec.dictated_technology_id as string) ?? "",
    useManualWeights: body.weights !== null,
    weights: body.weights !== null ? (body.weights as ScenarioForm["weights"]) : form.weights,
    yieldModel: body.yield.model as YieldModel,
    d0PerMm2: body.yield.d0_per_mm2,
    edgeExclusionMm: body.wafer.edge_exclusion_mm,
    scribeMm: body.wafer.scribe_mm,
    scoreCurrency: body.score_currency,
  };
}
