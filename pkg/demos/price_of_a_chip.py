"""How the price of one chip falls as volume grows.

A dedicated 65 nm run costs the full mask set plus wafers.  At one wafer
that is $502,000 for a few hundred dies; at a million units the mask set
amortizes away and each die costs a few dollars.
"""

from fabdecide import production_cost, prototype_run_cost, seed_catalog
from fabdecide.silicon import WaferSpec, YieldParams

catalog = seed_catalog()
tsmc65 = catalog.get("tsmc65")

print("Prototype run (mask set + 1 wafer):", prototype_run_cost(tsmc65, 1))
print()

wafer = WaferSpec(300, edge_exclusion_mm=0.0, scribe_mm=0.0)
defects = YieldParams("poisson", 0.0025)

print(f"{'volume':>10}  {'wafers':>7}  {'total':>16}  {'unit cost':>12}")
for volume in (498, 5_000, 50_000, 500_000, 1_000_000, 5_000_000):
    result = production_cost(tsmc65, 100.0, volume, wafer, defects)
    unit = result.unit_cost_micro / 1e6
    print(f"{volume:>10,}  {result.wafers_used:>7,}  {str(result.total):>16}  ${unit:>10.4f}")

print()
result = production_cost(tsmc65, 100.0, 1_000_000, wafer, defects)
print(f"At 1M units: {result.gross_dies_per_wafer} gross dies/wafer, "
      f"yield {result.yield_fraction:.4f}, "
      f"{result.good_dies_per_wafer:.1f} good dies/wafer")
