"""Die-per-wafer geometry and fabrication yield models.

Two independent routes to the same quantity deliberately coexist here:

* :func:`gross_dies_per_wafer` — the closed-form estimate
  ``floor(pi*(d'/2)^2 / A' - pi*d' / sqrt(2*A'))`` with usable diameter
  ``d' = diameter - 2*edge_exclusion`` and effective die area
  ``A' = (sqrt(A) + scribe)^2``.
* :func:`grid_placement_count` — an exact enumeration of a fixed square
  grid, used to validate the estimate.  It never calls the estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

YIELD_MODELS = ("poisson", "murphy")


class GeometryError(ValueError):
    """Geometrically impossible wafer parameters (usable diameter <= 0)."""


@dataclass(frozen=True)
class WaferSpec:
    """Wafer geometry: diameter, unusable edge ring, inter-die scribe lane."""

    diameter_mm: float
    edge_exclusion_mm: float = 3.0
    scribe_mm: float = 0.1

    def __post_init__(self) -> None:
        if self.diameter_mm <= 0:
            raise GeometryError(f"diameter must be positive, got {self.diameter_mm}")
        if self.edge_exclusion_mm < 0:
            raise GeometryError("edge exclusion must be non-negative")
        if self.scribe_mm < 0:
            raise GeometryError("scribe width must be non-negative")

    @property
    def usable_diameter_mm(self) -> float:
        return self.diameter_mm - 2.0 * self.edge_exclusion_mm


@dataclass(frozen=True)
class YieldParams:
    """Random-defect yield model selection: defect density in defects/mm²."""

    model: str = "poisson"
    d0_per_mm2: float = 0.001

    def __post_init__(self) -> None:
        if self.model not in YIELD_MODELS:
            raise ValueError(f"yield model must be one of {YIELD_MODELS}, got {self.model!r}")
        if self.d0_per_mm2 < 0:
            raise ValueError(f"defect density must be non-negative, got {self.d0_per_mm2}")


def _usable_diameter(wafer: WaferSpec) -> float:
    usable = wafer.usable_diameter_mm
    if usable <= 0:
        raise GeometryError(
            f"usable diameter is {usable} mm (diameter {wafer.diameter_mm}, "
            f"edge exclusion {wafer.edge_exclusion_mm}); check the wafer parameters"
        )
    return usable


def gross_dies_per_wafer(wafer: WaferSpec, die_area_mm2: float) -> int:
    """Whole dies fitting the usable disc, by area minus circumference loss.

    Dies are modeled as squares of side sqrt(area); the scribe lane widens
    each die's footprint to side sqrt(area) + scribe.
    """
    if die_area_mm2 <= 0:
        raise ValueError(f"die area must be positive, got {die_area_mm2}")
    usable = _usable_diameter(wafer)
    pitch_area = (math.sqrt(die_area_mm2) + wafer.scribe_mm) ** 2
    estimate = (
        math.pi * (usable / 2.0) ** 2 / pitch_area
        - math.pi * usable / math.sqrt(2.0 * pitch_area)
    )
    return max(0, math.floor(estimate))


def grid_placement_count(wafer: WaferSpec, die_area_mm2: float) -> int:
    """Exact count of grid-placed dies fully inside the usable disc.

    Square footprints of side sqrt(area) + scribe tile an axis-aligned grid
    with one footprint corner on the wafer center; a die counts when all
    four corners fall strictly inside the usable radius.  The containment
    test runs in exact rational arithmetic, so boundary cases cannot flip
    with the platform's floating point.
    """
    if die_area_mm2 <= 0:
        raise ValueError(f"die area must be positive, got {die_area_mm2}")
    _usable_diameter(wafer)

    # All inputs become exact rationals via their decimal representation.
    diameter = Fraction(str(wafer.diameter_mm))
    edge = Fraction(str(wafer.edge_exclusion_mm))
    scribe = Fraction(str(wafer.scribe_mm))
    area = Fraction(str(die_area_mm2))
    radius_sq = ((diameter - 2 * edge) / 2) ** 2

    # Far corner of quadrant cell (i, j), i, j >= 0, sits at
    # ((i+1)*p, (j+1)*p) with pitch p = sqrt(area) + scribe, so its squared
    # distance is m*p^2 = m*(area + scribe^2) + 2*m*scribe*sqrt(area) with
    # m = (i+1)^2 + (j+1)^2.  Strict containment m*p^2 < r^2 is decided by
    # comparing the rational part against the sqrt term, squared.
    def corner_inside(m: int) -> bool:
        x = radius_sq - m * (area + scribe * scribe)
        if x <= 0:
            return False
        return x * x > 4 * m * m * scribe * scribe * area

    count = 0
    a = 1
    while corner_inside(a * a + 1):
        b = 1
        while corner_inside(a * a + b * b):
            count += 1
            b += 1
        a += 1
    # One cell corner lies on the wafer center, so the four quadrants hold
    # congruent sub-grids.
    return 4 * count


def fab_yield(area_mm2: float, params: YieldParams) -> float:
    """Fraction of functional dies under the chosen random-defect model.

    poisson: exp(-A*D0); murphy: ((1 - exp(-A*D0)) / (A*D0))^2.
    Both approach 1 as A*D0 -> 0, and that limit is returned exactly.
    """
    if area_mm2 < 0:
        raise ValueError(f"area must be non-negative, got {area_mm2}")
    x = area_mm2 * params.d0_per_mm2
    if x == 0.0:
        return 1.0
    if params.model == "poisson":
        return math.exp(-x)
    # -expm1(-x) keeps (1 - exp(-x)) accurate for tiny x.
    return (-math.expm1(-x) / x) ** 2


def good_dies_per_wafer(gross: int, yield_fraction: float) -> float:
    """Expected sellable dies per wafer (not floored)."""
    if gross < 0:
        raise ValueError(f"gross dies must be non-negative, got {gross}")
    if not 0.0 < yield_fraction <= 1.0:
        raise ValueError(f"yield must be in (0, 1], got {yield_fraction}")
    return gross * yield_fraction
