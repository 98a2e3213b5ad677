"""Technology selection: hard-requirement filtering, then weighted
multi-criteria ranking.

Five criteria drive the score: unit production cost, voltage-driven design
complexity, special-passive (MIM capacitor) density, maximum switching
frequency, and expected shuttle wait.  Frequency feasibility is a hard
filter, not a score, so an inadequate node never ranks at all; it then
also contributes headroom to the score for nodes that pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, ROUND_HALF_UP

from .catalog import ADDON_KINDS, Catalog, TechnologyNode
from .costs import CostBreakdown, expected_shuttle_wait, production_cost
from .money import RateTable
from .silicon import WaferSpec, YieldParams

BUSINESS_CATEGORIES = ("cat1", "cat2", "cat3", "cat4")
MARKET_ORIENTATIONS = ("cost_oriented", "performance_oriented")

# Criterion order everywhere: unit cost, complexity, passives, f_max,
# time to market.  True marks a benefit criterion (higher raw is better).
CRITERION_NAMES = ("unit_cost", "complexity", "passives", "f_max", "time_to_market")
_IS_BENEFIT = (False, False, True, True, False)


class SelectionError(ValueError):
    """Base class for selection problems."""


class DictatedNodeError(SelectionError):
    """cat3/cat4 designs have no weights: the node is dictated externally."""


class EmptyCandidatesError(SelectionError):
    """Scoring requested over an empty candidate list."""


class MixedCurrencyError(SelectionError):
    """Candidates priced in different currencies with no way to compare."""


@dataclass(frozen=True)
class DesignSpec:
    """The designer's hard requirements and business context."""

    required_f_hz: float
    required_voltage_v: float
    required_cap_density_ff_um2: float
    die_area_mm2: float
    volume_forecast: int
    business_category: str
    market_orientation: str
    required_addons: frozenset[str] = frozenset()
    dictated_technology_id: str | None = None

    def __post_init__(self) -> None:
        if self.required_f_hz <= 0:
            raise SelectionError(f"required frequency must be positive, got {self.required_f_hz}")
        if self.required_voltage_v <= 0:
            raise SelectionError(f"required voltage must be positive, got {self.required_voltage_v}")
        if self.required_cap_density_ff_um2 < 0:
            raise SelectionError("required capacitor density must be non-negative")
        if self.die_area_mm2 <= 0:
            raise SelectionError(f"die area must be positive, got {self.die_area_mm2}")
        if not isinstance(self.volume_forecast, int) or self.volume_forecast < 1:
            raise SelectionError(f"volume forecast must be >= 1, got {self.volume_forecast!r}")
        if self.business_category not in BUSINESS_CATEGORIES:
            raise SelectionError(f"business category must be one of {BUSINESS_CATEGORIES}")
        if self.market_orientation not in MARKET_ORIENTATIONS:
            raise SelectionError(f"market orientation must be one of {MARKET_ORIENTATIONS}")
        object.__setattr__(self, "required_addons", frozenset(self.required_addons))
        for kind in self.required_addons:
            if kind not in ADDON_KINDS:
                raise SelectionError(f"unknown add-on kind {kind!r}")
        if self.business_category in ("cat3", "cat4") and not self.dictated_technology_id:
            raise SelectionError(
                f"{self.business_category} designs must name the externally dictated technology"
            )


@dataclass(frozen=True)
class Weights:
    """Criterion weights; must sum to 1."""

    unit_cost_w: float
    complexity_w: float
    passives_w: float
    f_max_w: float
    time_to_market_w: float

    def __post_init__(self) -> None:
        values = self.as_tuple()
        if any(w < 0 for w in values):
            raise SelectionError(f"weights must be non-negative, got {values}")
        if abs(sum(values) - 1.0) > 1e-9:
            raise SelectionError(f"weights must sum to 1, got {sum(values)!r}")

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (
            self.unit_cost_w,
            self.complexity_w,
            self.passives_w,
            self.f_max_w,
            self.time_to_market_w,
        )


# Presets encode the cost-versus-performance market emphasis per business
# category; they are defaults, not constraints, and any explicit Weights
# overrides them.
_PRESETS = {
    ("cat1", "cost_oriented"): Weights(0.50, 0.15, 0.10, 0.10, 0.15),
    ("cat1", "performance_oriented"): Weights(0.15, 0.15, 0.15, 0.40, 0.15),
    ("cat2", "cost_oriented"): Weights(0.40, 0.20, 0.10, 0.15, 0.15),
    ("cat2", "performance_oriented"): Weights(0.20, 0.20, 0.15, 0.30, 0.15),
}


def preset_weights(category: str, orientation: str) -> Weights:
    if category in ("cat3", "cat4"):
        raise DictatedNodeError(
            f"{category} designs take the externally dictated node; no weights apply"
        )
    try:
        return _PRESETS[(category, orientation)]
    except KeyError:
        raise SelectionError(
            f"no preset for category {category!r} / orientation {orientation!r}"
        ) from None


@dataclass(frozen=True)
class CriterionValues:
    """Raw criterion values for one candidate (unit cost in the scoring
    currency's micro-units)."""

    unit_cost_micro: int
    complexity_index: float
    cap_density_ff_um2: float
    f_max_hz: float
    wait_days: float
    currency: str

    def as_row(self) -> tuple[float, float, float, float, float]:
        return (
            float(self.unit_cost_micro),
            self.complexity_index,
            self.cap_density_ff_um2,
            self.f_max_hz,
            self.wait_days,
        )


@dataclass(frozen=True)
class ScoredCandidate:
    technology_id: str
    criteria: CriterionValues
    normalized: tuple[float, float, float, float, float]
    score: float
    rank: int


@dataclass(frozen=True)
class CostInputs:
    """Shared wafer/yield assumptions plus optional currency normalization
    for comparing candidates priced in different currencies."""

    edge_exclusion_mm: float = 3.0
    scribe_mm: float = 0.1
    yield_model: str = "poisson"
    d0_per_mm2: float = 0.001
    rate_table: RateTable | None = field(default=None, compare=False)
    score_currency: str | None = None

    def wafer_for(self, tech: TechnologyNode) -> WaferSpec:
        return WaferSpec(tech.wafer_diameter_mm, self.edge_exclusion_mm, self.scribe_mm)

    def yield_params(self) -> YieldParams:
        return YieldParams(self.yield_model, self.d0_per_mm2)


@dataclass(frozen=True)
class SelectionReport:
    """Outcome of a selection run.

    mode is one of ``ranked`` (scored candidates), ``empty`` (no node meets
    the hard requirements) or ``dictated`` (cat3/cat4: node chosen
    externally, cost breakdown only).
    """

    mode: str
    candidates: tuple[ScoredCandidate, ...] = ()
    reason: str | None = None
    dictated: CostBreakdown | None = None


def filter_candidates(catalog: Catalog, spec: DesignSpec) -> list[TechnologyNode]:
    """Hard-requirement gate: frequency, add-ons, capacitor density."""
    out = []
    for node in catalog.nodes:
        if node.f_max_hz < spec.required_f_hz:
            continue
        if not spec.required_addons <= node.addon_kinds():
            continue
        if node.mim_cap_density_ff_um2 < spec.required_cap_density_ff_um2:
            continue
        out.append(node)
    return out


def complexity_index(tech: TechnologyNode, spec: DesignSpec) -> float:
    """Voltage headroom deficit driving stacking / gate-driver complexity:
    max(0, required - core) / core.  Zero when the core rating covers the
    requirement."""
    if tech.core_voltage_v <= 0:
        raise SelectionError(f"core voltage of {tech.id!r} must be positive")
    deficit = spec.required_voltage_v - tech.core_voltage_v
    return max(0.0, deficit) / tech.core_voltage_v


def normalize_criteria(
    rows: list[tuple[float, float, float, float, float]],
) -> list[tuple[float, float, float, float, float]]:
    """Min-max normalize each criterion column to [0, 1].

    Benefit columns map ascending, cost columns descending; a column with
    min == max is neutral at 0.5 for every candidate.
    """
    if not rows:
        raise EmptyCandidatesError("no candidates to normalize")
    out = [[0.0] * 5 for _ in rows]
    for c in range(5):
        column = [row[c] for row in rows]
        lo, hi = min(column), max(column)
        span = hi - lo
        for r, value in enumerate(column):
            if span == 0:
                norm = 0.5
            elif _IS_BENEFIT[c]:
                norm = (value - lo) / span
            else:
                norm = (hi - value) / span
            out[r][c] = norm
    return [tuple(row) for row in out]


def rank_by_score(ids: list[str], scores: list[float]) -> list[int]:
    """Dense 1-based ranks by descending score, ties broken by ascending id."""
    order = sorted(range(len(ids)), key=lambda i: (-scores[i], ids[i]))
    ranks = [0] * len(ids)
    for position, index in enumerate(order, start=1):
        ranks[index] = position
    return ranks


def _scoring_unit_cost(breakdown: CostBreakdown, inputs: CostInputs) -> tuple[int, str]:
    """Unit cost in the scoring currency's micro-units."""
    if inputs.score_currency is None or inputs.score_currency == breakdown.currency:
        return breakdown.unit_cost_micro, breakdown.currency
    if inputs.rate_table is None:
        raise MixedCurrencyError(
            f"cannot express {breakdown.currency} unit cost in "
            f"{inputs.score_currency} without a rate table"
        )
    rate = inputs.rate_table.get(breakdown.currency, inputs.score_currency)
    converted = (Decimal(breakdown.unit_cost_micro) * rate.rate).quantize(
        Decimal(1), rounding=ROUND_HALF_UP
    )
    return int(converted), inputs.score_currency


def score_candidates(
    candidates: list[TechnologyNode],
    spec: DesignSpec,
    weights: Weights,
    cost_inputs: CostInputs | None = None,
) -> list[ScoredCandidate]:
    """Compute raw criteria, normalize across candidates, rank by weighted
    score.  Returned list is ordered by rank."""
    if not candidates:
        raise EmptyCandidatesError("no candidates to score")
    inputs = cost_inputs if cost_inputs is not None else CostInputs()

    criteria: list[CriterionValues] = []
    currencies = set()
    for tech in candidates:
        breakdown = production_cost(
            tech,
            spec.die_area_mm2,
            spec.volume_forecast,
            wafer=inputs.wafer_for(tech),
            yield_params=inputs.yield_params(),
        )
        unit_micro, currency = _scoring_unit_cost(breakdown, inputs)
        currencies.add(currency)
        criteria.append(
            CriterionValues(
                unit_cost_micro=unit_micro,
                complexity_index=complexity_index(tech, spec),
                cap_density_ff_um2=tech.mim_cap_density_ff_um2,
                f_max_hz=tech.f_max_hz,
                wait_days=expected_shuttle_wait(tech.shuttles_per_year),
                currency=currency,
            )
        )
    if len(currencies) > 1:
        raise MixedCurrencyError(
            f"candidates priced in {sorted(currencies)}; set a scoring currency "
            "and provide a rate table to compare them"
        )

    normalized = normalize_criteria([c.as_row() for c in criteria])
    w = weights.as_tuple()
    scores = [sum(wi * ni for wi, ni in zip(w, norm)) for norm in normalized]
    ids = [t.id for t in candidates]
    ranks = rank_by_score(ids, scores)
    scored = [
        ScoredCandidate(ids[i], criteria[i], normalized[i], scores[i], ranks[i])
        for i in range(len(candidates))
    ]
    scored.sort(key=lambda s: s.rank)
    return scored


def select(
    catalog: Catalog,
    spec: DesignSpec,
    weights: Weights | None = None,
    cost_inputs: CostInputs | None = None,
) -> SelectionReport:
    """Full pipeline: dictated-node short circuit, else filter then rank."""
    inputs = cost_inputs if cost_inputs is not None else CostInputs()
    if spec.business_category in ("cat3", "cat4"):
        tech = catalog.get(spec.dictated_technology_id)
        breakdown = production_cost(
            tech,
            spec.die_area_mm2,
            spec.volume_forecast,
            wafer=inputs.wafer_for(tech),
            yield_params=inputs.yield_params(),
        )
        return SelectionReport(mode="dictated", dictated=breakdown)

    candidates = filter_candidates(catalog, spec)
    if not candidates:
        return SelectionReport(mode="empty", reason="no_feasible_technology")
    if weights is None:
        weights = preset_weights(spec.business_category, spec.market_orientation)
    scored = score_candidates(candidates, spec, weights, inputs)
    return SelectionReport(mode="ranked", candidates=tuple(scored))
