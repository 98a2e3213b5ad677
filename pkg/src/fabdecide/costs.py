"""Fabrication pricing: MPW seats, mask sharing, prototype and volume runs,
break-even volume between an MPW seat strategy and a dedicated mask set,
and expected shuttle wait.

All money stays in integer minor units; the only rounding points are the
per-mm² seat price multiplication and the mask share division, both
round-half-up.  Unit cost is reported in integer millionths of the major
currency unit so fractions of a cent survive exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP
from typing import Callable, Iterable

from .catalog import TechnologyNode
from .money import CurrencyMismatchError, Money, minor_unit_exponent
from .silicon import WaferSpec, YieldParams, fab_yield, good_dies_per_wafer, gross_dies_per_wafer

DEFAULT_SCAN_LIMIT = 10_000_000


class CostError(ValueError):
    """Base class for costing problems."""


class UnsupportedAddOnError(CostError):
    """A requested add-on is not offered by the technology."""


class InvalidVolumeError(CostError):
    """Volume (or design/wafer count) outside its valid range."""


class InfeasibleYieldError(CostError):
    """Fewer than one expected good die per wafer; production undefined."""


class ZeroShuttlesError(CostError):
    """No shuttle runs per year: time to market is undefined."""


@dataclass(frozen=True)
class CostBreakdown:
    """Itemized result of a volume production estimate."""

    technology_id: str
    currency: str
    nre: Money
    wafers_used: int
    wafer_total: Money
    gross_dies_per_wafer: int
    yield_fraction: float
    good_dies_per_wafer: float
    unit_cost_micro: int
    total: Money


@dataclass(frozen=True)
class BreakEvenReport:
    """Smallest volume at which a dedicated mask set beats buying MPW seats."""

    breakeven_volume: int | None
    mpw_total_at_breakeven: Money | None
    dedicated_total_at_breakeven: Money | None
    scan_limit: int


def mpw_billed_area(die_area_mm2: float, min_area_mm2: float) -> float:
    """Billable seat area: the die area, floored at the foundry minimum."""
    if die_area_mm2 <= 0 or min_area_mm2 <= 0:
        raise CostError("die area and minimum area must be positive")
    return max(die_area_mm2, min_area_mm2)


def _round_half_up(value: Decimal) -> int:
    return int(value.quantize(Decimal(1), rounding=ROUND_HALF_UP))


def mpw_seat_cost(
    tech: TechnologyNode,
    die_area_mm2: float,
    addons: Iterable[str] = (),
) -> Money:
    """Price of one MPW seat: billed area times per-mm² price plus add-on
    surcharges, rounded half-up to minor units."""
    requested = sorted(set(addons))
    offered = tech.addon_kinds()
    for kind in requested:
        if kind not in offered:
            raise UnsupportedAddOnError(
                f"technology {tech.id!r} does not offer add-on {kind!r}"
            )
    per_mm2_minor = tech.mpw_price_per_mm2.amount_minor
    for kind in requested:
        surcharge = tech.addon(kind).surcharge_per_mm2
        if surcharge.currency != tech.mpw_price_per_mm2.currency:
            raise CurrencyMismatchError(
                f"add-on {kind} priced in {surcharge.currency}, "
                f"seat priced in {tech.mpw_price_per_mm2.currency}"
            )
        per_mm2_minor += surcharge.amount_minor
    billed = Decimal(str(mpw_billed_area(die_area_mm2, tech.min_area_mm2)))
    return Money(_round_half_up(billed * per_mm2_minor), tech.mpw_price_per_mm2.currency)


def shared_mask_share(mask_cost: Money, n_designs: int) -> Money:
    """One design's share of a mask set split across unique designs."""
    if not isinstance(n_designs, int) or n_designs < 1:
        raise InvalidVolumeError(f"number of designs must be >= 1, got {n_designs!r}")
    share = Decimal(mask_cost.amount_minor) / n_designs
    return Money(_round_half_up(share), mask_cost.currency)


def prototype_run_cost(tech: TechnologyNode, n_wafers: int = 1) -> Money:
    """Dedicated prototype run: full mask set plus the processed wafers."""
    if not isinstance(n_wafers, int) or n_wafers < 1:
        raise InvalidVolumeError(f"wafer count must be >= 1, got {n_wafers!r}")
    if tech.mask_cost.currency != tech.wafer_cost.currency:
        raise CurrencyMismatchError(
            f"mask cost in {tech.mask_cost.currency} but wafer cost in {tech.wafer_cost.currency}"
        )
    return tech.mask_cost + n_wafers * tech.wafer_cost


def _wafers_for_volume(volume: int, good_per_wafer: float) -> int:
    """Smallest wafer count whose expected good dies cover the volume."""
    wafers = math.ceil(volume / good_per_wafer)
    # Guard the float division against off-by-one at exact multiples.
    while wafers > 1 and (wafers - 1) * good_per_wafer >= volume:
        wafers -= 1
    while wafers * good_per_wafer < volume:
        wafers += 1
    return wafers


def wafer_output(tech: TechnologyNode, die_area_mm2: float,
                 wafer: WaferSpec | None = None,
                 yield_params: YieldParams | None = None) -> tuple[int, float, float]:
    """(gross dies, yield fraction, expected good dies) for one wafer."""
    wafer = wafer if wafer is not None else WaferSpec(tech.wafer_diameter_mm)
    yield_params = yield_params if yield_params is not None else YieldParams()
    gross = gross_dies_per_wafer(wafer, die_area_mm2)
    fraction = fab_yield(die_area_mm2, yield_params)
    good = good_dies_per_wafer(gross, fraction)
    if good < 1.0:
        raise InfeasibleYieldError(
            f"expected good dies per wafer is {good:.4f} (< 1) for area "
            f"{die_area_mm2} mm² on {tech.id}"
        )
    return gross, fraction, good


def production_cost(
    tech: TechnologyNode,
    die_area_mm2: float,
    volume: int,
    wafer: WaferSpec | None = None,
    yield_params: YieldParams | None = None,
    packaging_per_unit: Money | None = None,
    eda_nre: Money | None = None,
) -> CostBreakdown:
    """Cost of producing ``volume`` good dies with a dedicated mask set.

    Expected good dies per wafer stay fractional; the only ceiling is the
    wafer count.  Packaging/test per unit and EDA NRE are flat optional
    adders, zero when omitted.
    """
    if not isinstance(volume, int) or volume < 1:
        raise InvalidVolumeError(f"volume must be >= 1, got {volume!r}")
    if tech.mask_cost.currency != tech.wafer_cost.currency:
        raise CurrencyMismatchError(
            f"mask cost in {tech.mask_cost.currency} but wafer cost in {tech.wafer_cost.currency}"
        )
    currency = tech.mask_cost.currency
    gross, fraction, good = wafer_output(tech, die_area_mm2, wafer, yield_params)
    wafers = _wafers_for_volume(volume, good)
    wafer_total = wafers * tech.wafer_cost

    nre = tech.mask_cost
    if eda_nre is not None:
        if eda_nre.currency != currency:
            raise CurrencyMismatchError(f"EDA NRE in {eda_nre.currency}, run in {currency}")
        nre = nre + eda_nre
    total = nre + wafer_total
    if packaging_per_unit is not None:
        if packaging_per_unit.currency != currency:
            raise CurrencyMismatchError(
                f"packaging cost in {packaging_per_unit.currency}, run in {currency}"
            )
        total = total + volume * packaging_per_unit

    micro_scale = 10 ** (6 - minor_unit_exponent(currency))
    unit_cost_micro = (total.amount_minor * micro_scale) // volume
    return CostBreakdown(
        technology_id=tech.id,
        currency=currency,
        nre=nre,
        wafers_used=wafers,
        wafer_total=wafer_total,
        gross_dies_per_wafer=gross,
        yield_fraction=fraction,
        good_dies_per_wafer=good,
        unit_cost_micro=unit_cost_micro,
        total=total,
    )


def breakeven_scan(
    mask_cost_minor: int,
    wafer_cost_minor: int,
    seat_cost_minor: int,
    samples_per_seat: int,
    good_per_wafer: float,
    scan_limit: int,
) -> tuple[int | None, int | None, int | None]:
    """Smallest volume V in [1, scan_limit] with
    ``mask + ceil(V/good)*wafer <= ceil(V/samples)*seat``.

    Equivalent to scanning every volume: between consecutive points where
    either step function jumps, both sides are constant, and the dedicated
    side only ever steps upward, so the first satisfying volume must be 1
    or a volume where the MPW side just stepped (k*samples + 1).
    """
    if not isinstance(scan_limit, int) or scan_limit < 1:
        raise InvalidVolumeError(f"scan limit must be >= 1, got {scan_limit!r}")
    if samples_per_seat < 1:
        raise InvalidVolumeError("samples per seat must be >= 1")
    if good_per_wafer < 1.0:
        raise InfeasibleYieldError("expected good dies per wafer below 1")

    def totals(volume: int) -> tuple[int, int]:
        dedicated = mask_cost_minor + _wafers_for_volume(volume, good_per_wafer) * wafer_cost_minor
        seats = -(-volume // samples_per_seat)
        return dedicated, seats * seat_cost_minor

    volume = 1
    while volume <= scan_limit:
        dedicated, mpw = totals(volume)
        if dedicated <= mpw:
            return volume, mpw, dedicated
        # next volume where the MPW side steps up: one past the next
        # whole-seat boundary
        volume = ((volume - 1) // samples_per_seat + 1) * samples_per_seat + 1
    return None, None, None


def breakeven_volume(
    tech: TechnologyNode,
    die_area_mm2: float,
    wafer: WaferSpec | None = None,
    yield_params: YieldParams | None = None,
    scan_limit: int = DEFAULT_SCAN_LIMIT,
) -> BreakEvenReport:
    """Scan volumes for the point where a dedicated mask set undercuts
    buying MPW seats (each seat delivering ``samples_per_seat`` dies)."""
    if tech.mask_cost.currency != tech.wafer_cost.currency:
        raise CurrencyMismatchError(
            f"mask cost in {tech.mask_cost.currency} but wafer cost in {tech.wafer_cost.currency}"
        )
    seat = mpw_seat_cost(tech, die_area_mm2)
    if seat.currency != tech.mask_cost.currency:
        raise CurrencyMismatchError(
            f"seat priced in {seat.currency} but masks in {tech.mask_cost.currency}"
        )
    _, _, good = wafer_output(tech, die_area_mm2, wafer, yield_params)
    volume, mpw_minor, dedicated_minor = breakeven_scan(
        tech.mask_cost.amount_minor,
        tech.wafer_cost.amount_minor,
        seat.amount_minor,
        tech.samples_per_seat,
        good,
        scan_limit,
    )
    currency = tech.mask_cost.currency
    return BreakEvenReport(
        breakeven_volume=volume,
        mpw_total_at_breakeven=Money(mpw_minor, currency) if mpw_minor is not None else None,
        dedicated_total_at_breakeven=(
            Money(dedicated_minor, currency) if dedicated_minor is not None else None
        ),
        scan_limit=scan_limit,
    )


def dedicated_total(tech: TechnologyNode, volume: int, good_per_wafer: float) -> Money:
    """Mask set plus enough wafers for ``volume`` good dies."""
    if volume < 1:
        raise InvalidVolumeError(f"volume must be >= 1, got {volume!r}")
    wafers = _wafers_for_volume(volume, good_per_wafer)
    return tech.mask_cost + wafers * tech.wafer_cost


def mpw_total(tech: TechnologyNode, volume: int, seat_cost: Money) -> Money:
    """Enough MPW seats (at samples_per_seat dies each) for ``volume``."""
    if volume < 1:
        raise InvalidVolumeError(f"volume must be >= 1, got {volume!r}")
    seats = -(-volume // tech.samples_per_seat)
    return seats * seat_cost


def expected_shuttle_wait(shuttles_per_year: int) -> float:
    """Mean days from design-ready to the next shuttle, assuming readiness
    lands uniformly between evenly spaced runs: 365 / (2 * runs)."""
    if not isinstance(shuttles_per_year, int) or shuttles_per_year < 1:
        raise ZeroShuttlesError(
            f"shuttles per year must be >= 1 to bound time to market, got {shuttles_per_year!r}"
        )
    return 365.0 / (2.0 * shuttles_per_year)
