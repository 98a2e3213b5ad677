"""Request handling shared by the CLI and the HTTP service.

Both front ends validate requests and build response payloads through the
functions here, so a scenario produces bit-identical numbers whichever way
it is submitted.  Payloads are plain JSON-ready dicts; money everywhere is
``{"amount_minor": int, "currency": str}``.
"""

from __future__ import annotations

from typing import Any

from . import costs, selection
from .catalog import Catalog, TechnologyNode, UnknownTechnologyError, node_to_dict
from .money import CurrencyMismatchError, Money, MoneyError, RateError, RateTable, convert
from .silicon import GeometryError, WaferSpec, YieldParams
from .costs import (
    CostBreakdown,
    InfeasibleYieldError,
    InvalidVolumeError,
    UnsupportedAddOnError,
    ZeroShuttlesError,
)
from .selection import (
    CostInputs,
    DesignSpec,
    MixedCurrencyError,
    SelectionError,
    SelectionReport,
    Weights,
)


class RequestError(ValueError):
    """Malformed or invalid request body / arguments."""


def error_code_and_status(exc: Exception) -> tuple[int, str]:
    """Map a domain exception to an HTTP status and machine-readable code."""
    if isinstance(exc, UnknownTechnologyError):
        return 404, "unknown_technology"
    if isinstance(exc, InfeasibleYieldError):
        return 422, "infeasible_yield"
    if isinstance(exc, MixedCurrencyError):
        return 422, "mixed_currency"
    if isinstance(exc, CurrencyMismatchError):
        return 422, "currency_mismatch"
    if isinstance(exc, RateError):
        return 422, "missing_rate"
    if isinstance(exc, UnsupportedAddOnError):
        return 400, "unsupported_addon"
    if isinstance(exc, (InvalidVolumeError, ZeroShuttlesError)):
        return 400, "invalid_request"
    if isinstance(exc, (RequestError, GeometryError, SelectionError, MoneyError, ValueError)):
        return 400, "invalid_request"
    return 500, "internal_error"


# --- body helpers ---------------------------------------------------------


def _require(body: dict, key: str) -> Any:
    if key not in body:
        raise RequestError(f"missing field {key!r}")
    return body[key]


def _number(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise RequestError(f"field {key!r} must be a number")
    return float(value)


def _integer(value: Any, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise RequestError(f"field {key!r} must be an integer")
    return value


def parse_wafer(tech: TechnologyNode, body: dict) -> WaferSpec:
    overrides = body.get("wafer", {})
    if not isinstance(overrides, dict):
        raise RequestError("field 'wafer' must be an object")
    unknown = set(overrides) - {"edge_exclusion_mm", "scribe_mm", "diameter_mm"}
    if unknown:
        raise RequestError(f"unknown wafer fields {sorted(unknown)}")
    try:
        return WaferSpec(
            diameter_mm=_number(overrides.get("diameter_mm", tech.wafer_diameter_mm), "diameter_mm"),
            edge_exclusion_mm=_number(overrides.get("edge_exclusion_mm", 3.0), "edge_exclusion_mm"),
            scribe_mm=_number(overrides.get("scribe_mm", 0.1), "scribe_mm"),
        )
    except GeometryError as exc:
        raise RequestError(str(exc)) from exc


def parse_yield(body: dict) -> YieldParams:
    overrides = body.get("yield", {})
    if not isinstance(overrides, dict):
        raise RequestError("field 'yield' must be an object")
    unknown = set(overrides) - {"model", "d0_per_mm2"}
    if unknown:
        raise RequestError(f"unknown yield fields {sorted(unknown)}")
    try:
        return YieldParams(
            model=overrides.get("model", "poisson"),
            d0_per_mm2=_number(overrides.get("d0_per_mm2", 0.001), "d0_per_mm2"),
        )
    except ValueError as exc:
        raise RequestError(str(exc)) from exc


# --- payload builders ------------------------------------------------------


def money_payload(amount: Money) -> dict:
    return {"amount_minor": amount.amount_minor, "currency": amount.currency}


def technologies_payload(catalog: Catalog) -> dict:
    return {
        "version": catalog.version,
        "currency_note": catalog.currency_note,
        "nodes": [node_to_dict(n) for n in catalog.nodes],
    }


def technology_payload(catalog: Catalog, technology_id: str) -> dict:
    return node_to_dict(catalog.get(technology_id))


def breakdown_payload(breakdown: CostBreakdown) -> dict:
    return {
        "technology_id": breakdown.technology_id,
        "currency": breakdown.currency,
        "nre": money_payload(breakdown.nre),
        "wafers_used": breakdown.wafers_used,
        "wafer_total": money_payload(breakdown.wafer_total),
        "gross_dies_per_wafer": breakdown.gross_dies_per_wafer,
        "yield_fraction": breakdown.yield_fraction,
        "good_dies_per_wafer": breakdown.good_dies_per_wafer,
        "unit_cost_micro": breakdown.unit_cost_micro,
        "total": money_payload(breakdown.total),
    }


def mpw_estimate(catalog: Catalog, body: dict) -> dict:
    tech = catalog.get(str(_require(body, "technology_id")))
    die_area = _number(_require(body, "die_area_mm2"), "die_area_mm2")
    if die_area <= 0:
        raise RequestError(f"die_area_mm2 must be positive, got {die_area}")
    addons = body.get("addons", [])
    if not isinstance(addons, list) or not all(isinstance(a, str) for a in addons):
        raise RequestError("field 'addons' must be a list of add-on kinds")
    seat = costs.mpw_seat_cost(tech, die_area, addons)
    return {
        "technology_id": tech.id,
        "die_area_mm2": die_area,
        "billed_area_mm2": costs.mpw_billed_area(die_area, tech.min_area_mm2),
        "addons": sorted(set(addons)),
        "seat_cost": money_payload(seat),
        "samples_per_seat": tech.samples_per_seat,
    }


def production_estimate(catalog: Catalog, body: dict) -> dict:
    tech = catalog.get(str(_require(body, "technology_id")))
    die_area = _number(_require(body, "die_area_mm2"), "die_area_mm2")
    if die_area <= 0:
        raise RequestError(f"die_area_mm2 must be positive, got {die_area}")
    volume = _integer(_require(body, "volume"), "volume")
    breakdown = costs.production_cost(
        tech,
        die_area,
        volume,
        wafer=parse_wafer(tech, body),
        yield_params=parse_yield(body),
    )
    return breakdown_payload(breakdown)


_BRACKET_FRACTIONS = (0.25, 0.5, 0.75, 0.9, 1.0, 1.1, 1.25, 1.5, 2.0)


def _curve_volumes(found: int | None, scan_limit: int) -> list[int]:
    if found is not None:
        volumes = {max(1, round(found * f)) for f in _BRACKET_FRACTIONS}
        volumes.add(found)
    else:
        volumes = {max(1, round(scan_limit ** (i / 7))) for i in range(8)}
    return sorted(volumes)


def breakeven_report(catalog: Catalog, body: dict) -> dict:
    tech = catalog.get(str(_require(body, "technology_id")))
    die_area = _number(_require(body, "die_area_mm2"), "die_area_mm2")
    if die_area <= 0:
        raise RequestError(f"die_area_mm2 must be positive, got {die_area}")
    scan_limit = _integer(body.get("scan_limit", costs.DEFAULT_SCAN_LIMIT), "scan_limit")
    wafer = parse_wafer(tech, body)
    yield_params = parse_yield(body)
    report = costs.breakeven_volume(tech, die_area, wafer, yield_params, scan_limit)

    seat = costs.mpw_seat_cost(tech, die_area)
    _, _, good = costs.wafer_output(tech, die_area, wafer, yield_params)
    samples = [
        {
            "volume": v,
            "dedicated_total": money_payload(costs.dedicated_total(tech, v, good)),
            "mpw_total": money_payload(costs.mpw_total(tech, v, seat)),
        }
        for v in _curve_volumes(report.breakeven_volume, scan_limit)
    ]
    return {
        "technology_id": tech.id,
        "breakeven_volume": report.breakeven_volume,
        "mpw_total_at_breakeven": (
            money_payload(report.mpw_total_at_breakeven)
            if report.mpw_total_at_breakeven is not None
            else None
        ),
        "dedicated_total_at_breakeven": (
            money_payload(report.dedicated_total_at_breakeven)
            if report.dedicated_total_at_breakeven is not None
            else None
        ),
        "scan_limit": report.scan_limit,
        "seat_cost": money_payload(seat),
        "samples_per_seat": tech.samples_per_seat,
        "curve": samples,
    }


def parse_design_spec(obj: Any) -> DesignSpec:
    if not isinstance(obj, dict):
        raise RequestError("'spec' must be an object")
    allowed = {
        "required_f_hz", "required_voltage_v", "required_cap_density_ff_um2",
        "required_addons", "die_area_mm2", "volume_forecast",
        "business_category", "market_orientation", "dictated_technology_id",
    }
    unknown = set(obj) - allowed
    if unknown:
        raise RequestError(f"unknown spec fields {sorted(unknown)}")
    addons = obj.get("required_addons", [])
    if not isinstance(addons, list) or not all(isinstance(a, str) for a in addons):
        raise RequestError("'required_addons' must be a list of add-on kinds")
    try:
        return DesignSpec(
            required_f_hz=_number(_require(obj, "required_f_hz"), "required_f_hz"),
            required_voltage_v=_number(_require(obj, "required_voltage_v"), "required_voltage_v"),
            required_cap_density_ff_um2=_number(
                obj.get("required_cap_density_ff_um2", 0.0), "required_cap_density_ff_um2"
            ),
            die_area_mm2=_number(_require(obj, "die_area_mm2"), "die_area_mm2"),
            volume_forecast=_integer(_require(obj, "volume_forecast"), "volume_forecast"),
            business_category=str(_require(obj, "business_category")),
            market_orientation=str(_require(obj, "market_orientation")),
            required_addons=frozenset(addons),
            dictated_technology_id=obj.get("dictated_technology_id"),
        )
    except SelectionError as exc:
        raise RequestError(str(exc)) from exc


def _criteria_payload(values: selection.CriterionValues) -> dict:
    return {
        "unit_cost_micro": values.unit_cost_micro,
        "complexity_index": values.complexity_index,
        "cap_density_ff_um2": values.cap_density_ff_um2,
        "f_max_hz": values.f_max_hz,
        "wait_days": values.wait_days,
        "currency": values.currency,
    }


def selection_payload(report: SelectionReport, weights: Weights | None) -> dict:
    return {
        "mode": report.mode,
        "reason": report.reason,
        "weights": list(weights.as_tuple()) if weights is not None else None,
        "criteria_order": list(selection.CRITERION_NAMES),
        "candidates": [
            {
                "technology_id": c.technology_id,
                "rank": c.rank,
                "score": c.score,
                "criteria": _criteria_payload(c.criteria),
                "normalized": list(c.normalized),
            }
            for c in report.candidates
        ],
        "dictated": breakdown_payload(report.dictated) if report.dictated is not None else None,
    }


def run_select(catalog: Catalog, rates: RateTable | None, body: dict) -> dict:
    spec = parse_design_spec(_require(body, "spec"))
    weights = None
    if body.get("weights") is not None:
        values = body["weights"]
        if not isinstance(values, list) or len(values) != 5:
            raise RequestError("'weights' must be a list of 5 numbers")
        try:
            weights = Weights(*(_number(v, "weights") for v in values))
        except SelectionError as exc:
            raise RequestError(str(exc)) from exc
    wafer_overrides = body.get("wafer", {})
    yield_params = parse_yield(body)
    if not isinstance(wafer_overrides, dict):
        raise RequestError("field 'wafer' must be an object")
    inputs = CostInputs(
        edge_exclusion_mm=_number(wafer_overrides.get("edge_exclusion_mm", 3.0), "edge_exclusion_mm"),
        scribe_mm=_number(wafer_overrides.get("scribe_mm", 0.1), "scribe_mm"),
        yield_model=yield_params.model,
        d0_per_mm2=yield_params.d0_per_mm2,
        rate_table=rates,
        score_currency=body.get("score_currency", "EGP"),
    )
    report = selection.select(catalog, spec, weights, inputs)
    if weights is None and report.mode == "ranked":
        weights = selection.preset_weights(spec.business_category, spec.market_orientation)
    return selection_payload(report, weights if report.mode == "ranked" else None)


def rates_payload(table: RateTable, source: str = "snapshot", warning: str | None = None) -> dict:
    return {
        "as_of": table.as_of,
        "rates": [
            {"from": r.from_currency, "to": r.to_currency, "rate": str(r.rate)}
            for r in sorted(table, key=lambda r: (r.from_currency, r.to_currency))
        ],
        "source": source,
        "warning": warning,
    }


def convert_amount(table: RateTable, body: dict) -> dict:
    amount_text = str(_require(body, "amount"))
    from_currency = str(_require(body, "currency"))
    to_currency = str(_require(body, "to"))
    try:
        amount = Money.from_major(amount_text, from_currency)
    except MoneyError as exc:
        raise RequestError(str(exc)) from exc
    rate = table.get(from_currency, to_currency)
    result = convert(amount, rate)
    return {
        "amount": money_payload(amount),
        "rate": str(rate.rate),
        "as_of": rate.as_of,
        "converted": money_payload(result),
    }


def shuttle_wait(body: dict) -> dict:
    shuttles = _integer(_require(body, "shuttles_per_year"), "shuttles_per_year")
    return {
        "shuttles_per_year": shuttles,
        "expected_wait_days": costs.expected_shuttle_wait(shuttles),
    }
