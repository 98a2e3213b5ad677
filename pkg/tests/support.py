"""Shared test helpers: randomized but seeded catalog/spec generation."""

import random
import string

from fabdecide.catalog import AddOn, Catalog, TechnologyNode
from fabdecide.money import Money
from fabdecide.selection import DesignSpec


def random_node(rng: random.Random, index: int, currency: str = "USD") -> TechnologyNode:
    core = rng.uniform(0.5, 5.0)
    addons = []
    for kind in ("HV", "NVM", "OPTO", "SOI"):
        if rng.random() < 0.3:
            addons.append(AddOn(kind, Money(rng.randrange(0, 50_000), currency)))
    suffix = "".join(rng.choices(string.ascii_lowercase, k=4))
    return TechnologyNode(
        id=f"t{index:02d}{suffix}",
        foundry=rng.choice(["alpha", "beta", "gamma"]),
        node_nm=rng.choice([350, 180, 130, 90, 65, 40, 28, 14, 12]),
        core_voltage_v=core,
        io_voltage_v=core + rng.uniform(0.0, 3.0),
        mim_cap_density_ff_um2=rng.uniform(0.0, 3.0),
        min_area_mm2=rng.uniform(0.5, 5.0),
        mpw_price_per_mm2=Money(rng.randrange(10_000, 5_000_000), currency),
        mask_cost=Money(rng.randrange(1_000_000, 200_000_000), currency),
        wafer_cost=Money(rng.randrange(20_000, 1_000_000), currency),
        wafer_diameter_mm=rng.choice([150.0, 200.0, 300.0]),
        shuttles_per_year=rng.randrange(1, 13),
        f_max_hz=10 ** rng.uniform(8.0, 11.0),
        samples_per_seat=rng.randrange(50, 200),
        addons=tuple(addons),
    )


def random_catalog(rng: random.Random, size: int | None = None) -> Catalog:
    n = size if size is not None else rng.randrange(2, 7)
    return Catalog(nodes=tuple(random_node(rng, i) for i in range(n)), version="random")


def random_spec(rng: random.Random, catalog: Catalog) -> DesignSpec:
    # Keep the frequency requirement low enough that at least one node passes.
    f_floor = min(node.f_max_hz for node in catalog.nodes)
    return DesignSpec(
        required_f_hz=rng.uniform(1e3, f_floor),
        required_voltage_v=rng.uniform(0.5, 5.0),
        required_cap_density_ff_um2=0.0,
        die_area_mm2=rng.uniform(1.0, 20.0),
        volume_forecast=rng.randrange(100, 500_000),
        business_category=rng.choice(["cat1", "cat2"]),
        market_orientation=rng.choice(["cost_oriented", "performance_oriented"]),
    )
