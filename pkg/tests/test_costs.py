import math
import random

import pytest

from fabdecide.catalog import AddOn, TechnologyNode
from fabdecide.costs import (
    InfeasibleYieldError,
    InvalidVolumeError,
    UnsupportedAddOnError,
    ZeroShuttlesError,
    breakeven_scan,
    breakeven_volume,
    expected_shuttle_wait,
    mpw_billed_area,
    mpw_seat_cost,
    production_cost,
    prototype_run_cost,
    shared_mask_share,
    wafer_output,
)
from fabdecide.money import CurrencyMismatchError, Money
from fabdecide.silicon import WaferSpec, YieldParams


def make_tech(
    tech_id="custom",
    mask_minor=50_000_000,
    wafer_minor=200_000,
    mpw_minor=110_000,
    min_area=1.0,
    samples=100,
    diameter=300.0,
    currency="USD",
    addons=(),
):
    return TechnologyNode(
        id=tech_id,
        foundry="test",
        node_nm=65,
        core_voltage_v=1.2,
        io_voltage_v=2.5,
        mim_cap_density_ff_um2=2.0,
        min_area_mm2=min_area,
        mpw_price_per_mm2=Money(mpw_minor, currency),
        mask_cost=Money(mask_minor, currency),
        wafer_cost=Money(wafer_minor, currency),
        wafer_diameter_mm=diameter,
        shuttles_per_year=12,
        f_max_hz=5e9,
        samples_per_seat=samples,
        addons=tuple(addons),
    )


BARE = WaferSpec(300, 0.0, 0.0)
POISSON_0025 = YieldParams("poisson", 0.0025)


class TestMpwBilledArea:
    def test_below_minimum(self):
        assert mpw_billed_area(0.5, 1.0) == 1.0

    def test_above_minimum(self):
        assert mpw_billed_area(2.5, 1.0) == 2.5

    def test_boundary(self):
        assert mpw_billed_area(1.0, 1.0) == 1.0


class TestMpwSeatCost:
    def test_reference_prices(self, catalog):
        assert mpw_seat_cost(catalog.get("tsmc180gp"), 1.0) == Money(110000, "USD")
        assert mpw_seat_cost(catalog.get("gf12"), 1.0) == Money(3120000, "EUR")

    def test_minimum_area_billing(self, catalog):
        assert mpw_seat_cost(catalog.get("tsmc180gp"), 0.25) == Money(110000, "USD")

    def test_addon_surcharges(self, catalog):
        seat = mpw_seat_cost(catalog.get("tsmc180gp"), 2.5, {"HV"})
        # (1100 + 150) per mm2 over 2.5 mm2
        assert seat == Money(312500, "USD")
        both = mpw_seat_cost(catalog.get("tsmc180gp"), 1.0, {"HV", "NVM"})
        assert both == Money(150000, "USD")

    def test_unsupported_addon(self, catalog):
        with pytest.raises(UnsupportedAddOnError) as err:
            mpw_seat_cost(catalog.get("tsmc65"), 1.0, {"OPTO"})
        assert "OPTO" in str(err.value)

    def test_fractional_area_rounds_half_up(self):
        tech = make_tech(mpw_minor=333)
        # 1.5 mm2 * 3.33 = 4.995 -> 5.00
        assert mpw_seat_cost(tech, 1.5) == Money(500, "USD")


class TestSharedMaskShare:
    @pytest.mark.parametrize("n,expected", [(1, 50_000_000), (2, 25_000_000), (5, 10_000_000), (10, 5_000_000)])
    def test_exact_divisions(self, n, expected):
        assert shared_mask_share(Money(50_000_000, "USD"), n) == Money(expected, "USD")

    def test_zero_designs(self):
        with pytest.raises(InvalidVolumeError):
            shared_mask_share(Money(50_000_000, "USD"), 0)

    def test_share_times_n_recovers_total_within_half_unit_each(self):
        rng = random.Random(5)
        for _ in range(200):
            total = Money(rng.randrange(1, 10**9), "USD")
            n = rng.randrange(1, 40)
            share = shared_mask_share(total, n)
            assert abs(share.amount_minor * n - total.amount_minor) <= n / 2


class TestPrototypeRunCost:
    def test_reference_single_wafer(self, catalog):
        assert prototype_run_cost(catalog.get("tsmc65"), 1) == Money(50_200_000, "USD")

    def test_three_wafers(self, catalog):
        assert prototype_run_cost(catalog.get("tsmc65"), 3) == Money(50_600_000, "USD")

    def test_mature_node(self, catalog):
        assert prototype_run_cost(catalog.get("gen350"), 1) == Money(3_050_000, "USD")

    def test_wafer_count_validation(self, catalog):
        with pytest.raises(InvalidVolumeError):
            prototype_run_cost(catalog.get("tsmc65"), 0)

    def test_currency_mismatch(self):
        tech = make_tech()
        broken = TechnologyNode(
            **{
                **{f: getattr(tech, f) for f in tech.__dataclass_fields__},
                "wafer_cost": Money(1000, "EUR"),
            }
        )
        with pytest.raises(CurrencyMismatchError):
            prototype_run_cost(broken, 1)


class TestProductionCost:
    def test_reference_scenario(self):
        tech = make_tech()
        result = production_cost(tech, 100.0, 1_000_000, BARE, POISSON_0025)
        assert result.gross_dies_per_wafer == 640
        assert result.yield_fraction == pytest.approx(0.778801, abs=1e-6)
        assert result.good_dies_per_wafer == pytest.approx(498.4326, abs=1e-3)
        assert result.wafers_used == 2007
        assert result.total == Money(451_400_000, "USD")
        assert result.unit_cost_micro == 4_514_000

    def test_single_wafer_volume_matches_prototype(self):
        tech = make_tech()
        result = production_cost(tech, 100.0, 498, BARE, POISSON_0025)
        assert result.wafers_used == 1
        assert result.total == Money(50_200_000, "USD")
        assert result.total == prototype_run_cost(tech, 1)

    def test_zero_volume(self):
        with pytest.raises(InvalidVolumeError):
            production_cost(make_tech(), 100.0, 0, BARE, POISSON_0025)

    def test_infeasible_yield(self):
        with pytest.raises(InfeasibleYieldError):
            production_cost(make_tech(), 40000.0, 100, BARE, POISSON_0025)

    def test_total_reconstructs_exactly(self):
        rng = random.Random(17)
        tech = make_tech()
        for _ in range(50):
            volume = rng.randrange(1, 3_000_000)
            result = production_cost(tech, 100.0, volume, BARE, POISSON_0025)
            assert result.total == result.nre + result.wafer_total
            assert result.wafer_total == result.wafers_used * tech.wafer_cost
            reconstructed = result.unit_cost_micro * volume
            total_micro = result.total.amount_minor * 10_000
            assert 0 <= total_micro - reconstructed < volume

    def test_unit_cost_non_increasing_at_wafer_multiples(self):
        tech = make_tech()
        perfect = YieldParams("poisson", 0.0)
        gross = wafer_output(tech, 100.0, BARE, perfect)[0]
        previous = None
        for k in range(1, 60):
            result = production_cost(tech, 100.0, k * gross, BARE, perfect)
            assert result.wafers_used == k
            if previous is not None:
                assert result.unit_cost_micro <= previous
            previous = result.unit_cost_micro

    def test_mask_amortization_strictly_decreasing(self):
        tech = make_tech()
        volumes = [10, 100, 1000, 10_000, 100_000]
        shares = [
            production_cost(tech, 100.0, v, BARE, POISSON_0025).nre.amount_minor / v
            for v in volumes
        ]
        assert shares == sorted(shares, reverse=True)
        assert len(set(shares)) == len(shares)

    def test_optional_flat_costs(self):
        tech = make_tech()
        base = production_cost(tech, 100.0, 1000, BARE, POISSON_0025)
        loaded = production_cost(
            tech, 100.0, 1000, BARE, POISSON_0025,
            packaging_per_unit=Money(50, "USD"),
            eda_nre=Money(1_000_000, "USD"),
        )
        assert loaded.nre == base.nre + Money(1_000_000, "USD")
        assert loaded.total == base.total + Money(1_000_000, "USD") + Money(50_000, "USD")

    def test_deterministic(self):
        tech = make_tech()
        a = production_cost(tech, 73.5, 123_456, WaferSpec(300, 3, 0.1), YieldParams("murphy", 0.003))
        b = production_cost(tech, 73.5, 123_456, WaferSpec(300, 3, 0.1), YieldParams("murphy", 0.003))
        assert a == b


def wafers_needed(volume, good):
    """Smallest wafer count whose expected good dies cover the volume."""
    w = max(1, int(volume // good))
    while w * good < volume:
        w += 1
    return w


def naive_breakeven(mask, wafer, seat, samples, good, limit):
    for volume in range(1, limit + 1):
        dedicated = mask + wafer * wafers_needed(volume, good)
        mpw = seat * math.ceil(volume / samples)
        if dedicated <= mpw:
            return volume, mpw, dedicated
    return None, None, None


class TestBreakEven:
    def test_documented_scenario(self):
        found, mpw, dedicated = breakeven_scan(
            50_000_000, 200_000, 1_100_000, 100, 498.4326, 1_000_000
        )
        assert found == 4701
        assert mpw == 52_800_000
        assert dedicated == 52_000_000

    def test_matches_naive_scan(self):
        rng = random.Random(23)
        for _ in range(50):
            mask = rng.randrange(0, 5_000_000)
            wafer = rng.randrange(10_000, 500_000)
            seat = rng.randrange(10_000, 2_000_000)
            samples = rng.randrange(1, 400)
            good = rng.uniform(1.0, 4000.0)
            limit = rng.randrange(1, 20_000)
            assert breakeven_scan(mask, wafer, seat, samples, good, limit) == naive_breakeven(
                mask, wafer, seat, samples, good, limit
            )

    def test_zero_mask_cost_breaks_even_immediately(self):
        found, mpw, dedicated = breakeven_scan(0, 100_000, 110_000, 100, 500.0, 1000)
        assert found == 1
        assert dedicated == 100_000 <= mpw

    def test_scan_limit_bounds_search(self):
        found, mpw, dedicated = breakeven_scan(
            50_000_000, 200_000, 1_100_000, 100, 498.4326, 4700
        )
        assert (found, mpw, dedicated) == (None, None, None)

    def test_public_operation(self, catalog):
        report = breakeven_volume(catalog.get("tsmc65"), 10.0, scan_limit=100_000)
        assert report.breakeven_volume == 1601
        assert report.scan_limit == 100_000
        dedicated = report.dedicated_total_at_breakeven
        mpw = report.mpw_total_at_breakeven
        assert dedicated is not None and mpw is not None and dedicated <= mpw

    def test_report_self_consistency_randomized(self):
        rng = random.Random(31)
        checked = 0
        for _ in range(50):
            tech = make_tech(
                mask_minor=rng.randrange(0, 20_000_000),
                wafer_minor=rng.randrange(50_000, 500_000),
                mpw_minor=rng.randrange(20_000, 2_000_000),
                samples=rng.randrange(1, 300),
            )
            area = rng.uniform(1.0, 25.0)
            limit = rng.randrange(100, 30_000)
            wafer = WaferSpec(300, 3, 0.1)
            params = YieldParams("poisson", rng.uniform(0, 0.01))
            report = breakeven_volume(tech, area, wafer, params, limit)
            if report.breakeven_volume is None:
                continue
            checked += 1
            volume = report.breakeven_volume
            seat = mpw_seat_cost(tech, area)
            good = wafer_output(tech, area, wafer, params)[2]

            def totals(v):
                dedicated = tech.mask_cost.amount_minor + tech.wafer_cost.amount_minor * wafers_needed(v, good)
                return dedicated, seat.amount_minor * math.ceil(v / tech.samples_per_seat)

            dedicated, mpw = totals(volume)
            assert dedicated == report.dedicated_total_at_breakeven.amount_minor
            assert mpw == report.mpw_total_at_breakeven.amount_minor
            assert dedicated <= mpw
            if volume > 1:
                prev_dedicated, prev_mpw = totals(volume - 1)
                assert prev_dedicated > prev_mpw
        assert checked >= 10

    def test_infeasible_yield(self):
        with pytest.raises(InfeasibleYieldError):
            breakeven_volume(make_tech(), 40000.0, BARE, POISSON_0025, 1000)

    def test_deterministic(self, catalog):
        a = breakeven_volume(catalog.get("tsmc65"), 10.0, scan_limit=50_000)
        b = breakeven_volume(catalog.get("tsmc65"), 10.0, scan_limit=50_000)
        assert a == b


class TestShuttleWait:
    def test_monthly_shuttles(self):
        assert expected_shuttle_wait(12) == pytest.approx(15.2083, abs=1e-4)

    def test_annual_shuttle(self):
        assert expected_shuttle_wait(1) == 182.5

    def test_zero_shuttles(self):
        with pytest.raises(ZeroShuttlesError):
            expected_shuttle_wait(0)
