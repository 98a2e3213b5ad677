"""Ranking technology nodes for two very different designs.

A kHz biomedical front-end is frequency-feasible on every node, so cost
wins under a cost-oriented weighting.  A 5 GHz transmitter filters the
mature nodes out before scoring even starts.
"""

from fabdecide import DesignSpec, select, seed_catalog
from fabdecide.catalog import seed_rates_bytes
from fabdecide.money import load_rates
from fabdecide.selection import CostInputs

catalog = seed_catalog()
inputs = CostInputs(rate_table=load_rates(seed_rates_bytes()), score_currency="EGP")


def show(title, spec):
    print(title)
    report = select(catalog, spec, cost_inputs=inputs)
    if report.mode == "empty":
        print("  no feasible technology")
        return
    for c in report.candidates:
        unit = c.criteria.unit_cost_micro / 1e6
        print(f"  #{c.rank} {c.technology_id:<10} score {c.score:.3f}  "
              f"unit {unit:,.2f} {c.criteria.currency}  "
              f"wait {c.criteria.wait_days:.1f} d")
    print()


biomedical = DesignSpec(
    required_f_hz=1e3,
    required_voltage_v=3.7,          # single Li-ion cell
    required_cap_density_ff_um2=1.0,
    die_area_mm2=2.0,
    volume_forecast=10_000,
    business_category="cat1",
    market_orientation="cost_oriented",
)
show("EKG front-end, cost-oriented market:", biomedical)

show(
    "Same design, performance-oriented market:",
    DesignSpec(**{**biomedical.__dict__, "market_orientation": "performance_oriented"}),
)

ghz = DesignSpec(
    required_f_hz=5e9,
    required_voltage_v=1.2,
    required_cap_density_ff_um2=0.0,
    die_area_mm2=30.0,
    volume_forecast=500_000,
    business_category="cat2",
    market_orientation="cost_oriented",
)
show("5 GHz transmitter (180 nm disappears from the table):", ghz)
