"""Dies per wafer: closed-form estimate against the exact grid count,
and what random defects do to the sellable fraction.
"""

from fabdecide import fab_yield, grid_placement_count, gross_dies_per_wafer
from fabdecide.silicon import WaferSpec, YieldParams

print("300 mm wafer, 3 mm edge ring, 0.1 mm scribe:")
wafer = WaferSpec(300)
print(f"{'die mm2':>8}  {'estimate':>9}  {'exact grid':>10}  {'rel err':>8}")
for area in (5, 10, 25, 50, 100, 200):
    estimate = gross_dies_per_wafer(wafer, area)
    exact = grid_placement_count(wafer, area)
    rel = abs(estimate - exact) / exact if exact else 0.0
    print(f"{area:>8}  {estimate:>9}  {exact:>10}  {rel:>7.2%}")

print("\nYield at D0 = 0.002 defects/mm2:")
print(f"{'die mm2':>8}  {'poisson':>8}  {'murphy':>8}")
for area in (10, 50, 100, 250, 500):
    poisson = fab_yield(area, YieldParams("poisson", 0.002))
    murphy = fab_yield(area, YieldParams("murphy", 0.002))
    print(f"{area:>8}  {poisson:>8.4f}  {murphy:>8.4f}")

print("\nBigger dies waste the wafer twice: fewer sites, and each one")
print("is more likely to catch a defect.")
