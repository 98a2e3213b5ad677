"""fabdecide: IC fabrication cost modeling and technology-node selection.

The library answers the questions a design team faces before tape-out:
what one MPW seat costs, what a dedicated prototype run costs, how unit
cost scales with volume, where MPW seats stop being the cheaper path, and
which CMOS node best fits a design's requirements under an explicit
weighting of cost, complexity, passives, speed, and time to market.
"""

from .catalog import (
    AddOn,
    Catalog,
    CatalogError,
    CatalogParseError,
    CatalogValidationError,
    DuplicateIdError,
    TechnologyNode,
    UnknownFieldError,
    UnknownTechnologyError,
    Violation,
    find_technologies,
    load_catalog,
    node_to_dict,
    seed_catalog,
    serialize_catalog,
    validate_node,
)
from .costs import (
    BreakEvenReport,
    CostBreakdown,
    CostError,
    InfeasibleYieldError,
    InvalidVolumeError,
    UnsupportedAddOnError,
    ZeroShuttlesError,
    breakeven_scan,
    breakeven_volume,
    dedicated_total,
    expected_shuttle_wait,
    mpw_billed_area,
    mpw_seat_cost,
    mpw_total,
    production_cost,
    prototype_run_cost,
    shared_mask_share,
    wafer_output,
)
from .money import (
    CurrencyMismatchError,
    ExchangeRate,
    Money,
    MoneyError,
    RateError,
    RateParseError,
    RateTable,
    convert,
    load_rates,
)
from .selection import (
    CostInputs,
    CriterionValues,
    DesignSpec,
    DictatedNodeError,
    EmptyCandidatesError,
    MixedCurrencyError,
    ScoredCandidate,
    SelectionError,
    SelectionReport,
    Weights,
    complexity_index,
    filter_candidates,
    preset_weights,
    score_candidates,
    select,
)
from .silicon import (
    GeometryError,
    WaferSpec,
    YieldParams,
    fab_yield,
    good_dies_per_wafer,
    grid_placement_count,
    gross_dies_per_wafer,
)

__version__ = "0.1.0"
