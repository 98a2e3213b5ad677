"""Where buying MPW seats stops making sense.

An MPW seat shares the mask set with other projects, so small volumes are
cheap; a dedicated mask set is a big fixed cost that wins once volume
amortizes it.  The crossover is the break-even volume.
"""

from fabdecide import (
    breakeven_volume,
    dedicated_total,
    mpw_seat_cost,
    mpw_total,
    seed_catalog,
    shared_mask_share,
    wafer_output,
)
from fabdecide.money import Money

catalog = seed_catalog()
tech = catalog.get("tsmc65")
area = 10.0

seat = mpw_seat_cost(tech, area)
print(f"One {area} mm2 seat on {tech.id}: {seat} "
      f"({tech.samples_per_seat} sample dies included)")

print("\nMask-set sharing on a multi-project run:")
for designs in (1, 2, 5, 10):
    share = shared_mask_share(tech.mask_cost, designs)
    print(f"  {designs:>2} designs -> {share} each")

report = breakeven_volume(tech, area, scan_limit=1_000_000)
print(f"\nBreak-even volume: {report.breakeven_volume}")
print(f"  MPW total there:       {report.mpw_total_at_breakeven}")
print(f"  dedicated total there: {report.dedicated_total_at_breakeven}")

good = wafer_output(tech, area)[2]
print(f"\n{'volume':>8}  {'MPW seats':>16}  {'dedicated':>16}")
for volume in (100, 500, 1000, 1601, 2500, 5000):
    print(f"{volume:>8}  {str(mpw_total(tech, volume, seat)):>16}  "
          f"{str(dedicated_total(tech, volume, good)):>16}")
