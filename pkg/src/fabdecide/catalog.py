"""Technology catalog: the data every costing and ranking operation reads.

A catalog is a JSON document of foundry process offerings.  Loading is
strict: unknown fields are rejected rather than ignored, because these are
financial inputs and a silently dropped field is a silently wrong quote.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any, BinaryIO

from .money import Money, MoneyError

ADDON_KINDS = ("HV", "NVM", "OPTO", "SOI")

_FILTER_OPS = ("==", ">=", "<=")


class CatalogError(ValueError):
    """Base class for catalog problems."""


class CatalogParseError(CatalogError):
    """Document is not well-formed or does not match the schema."""


class DuplicateIdError(CatalogError):
    """Two nodes in one document share an id."""


class CatalogValidationError(CatalogError):
    """A node violates an invariant; carries the offending node and fields."""

    def __init__(self, node_id: str, violations: list["Violation"]):
        self.node_id = node_id
        self.violations = violations
        detail = "; ".join(f"{v.field}: {v.message}" for v in violations)
        super().__init__(f"node {node_id!r}: {detail}")


class UnknownTechnologyError(CatalogError):
    """Lookup of a technology id not present in the catalog."""


class UnknownFieldError(CatalogError):
    """A filter referenced a field that cannot be filtered on."""


@dataclass(frozen=True)
class Violation:
    field: str
    message: str


@dataclass(frozen=True)
class AddOn:
    """A priced process option (high voltage, NVM, ...), billed per mm²."""

    kind: str
    surcharge_per_mm2: Money


@dataclass(frozen=True)
class TechnologyNode:
    """One foundry process offering and its commercial parameters."""

    id: str
    foundry: str
    node_nm: int
    core_voltage_v: float
    io_voltage_v: float
    mim_cap_density_ff_um2: float
    min_area_mm2: float
    mpw_price_per_mm2: Money
    mask_cost: Money
    wafer_cost: Money
    wafer_diameter_mm: float
    shuttles_per_year: int
    f_max_hz: float
    samples_per_seat: int
    addons: tuple[AddOn, ...] = ()
    illustrative: bool = False

    def addon_kinds(self) -> frozenset[str]:
        return frozenset(a.kind for a in self.addons)

    def addon(self, kind: str) -> AddOn:
        for a in self.addons:
            if a.kind == kind:
                return a
        raise KeyError(kind)


@dataclass(frozen=True)
class Catalog:
    """Ordered, immutable collection of technology nodes."""

    nodes: tuple[TechnologyNode, ...]
    version: str = ""
    currency_note: str = ""

    def __post_init__(self) -> None:
        seen = set()
        for node in self.nodes:
            if node.id in seen:
                raise DuplicateIdError(f"duplicate technology id {node.id!r}")
            seen.add(node.id)

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def ids(self) -> list[str]:
        return [n.id for n in self.nodes]

    def get(self, technology_id: str) -> TechnologyNode:
        for node in self.nodes:
            if node.id == technology_id:
                return node
        raise UnknownTechnologyError(f"unknown technology id {technology_id!r}")


def validate_node(node: TechnologyNode) -> list[Violation]:
    """Check every node invariant; an empty report means the node is valid."""
    out: list[Violation] = []

    def bad(field: str, message: str) -> None:
        out.append(Violation(field, message))

    if not node.id or not isinstance(node.id, str):
        bad("id", "must be a non-empty string")
    if not isinstance(node.node_nm, int) or node.node_nm <= 0:
        bad("node_nm", f"must be a positive integer, got {node.node_nm!r}")
    if node.core_voltage_v <= 0:
        bad("core_voltage_v", f"must be positive, got {node.core_voltage_v}")
    if node.io_voltage_v < node.core_voltage_v:
        bad("io_voltage_v", f"must be >= core voltage {node.core_voltage_v}, got {node.io_voltage_v}")
    if node.mim_cap_density_ff_um2 < 0:
        bad("mim_cap_density_ff_um2", "must be non-negative")
    if node.min_area_mm2 <= 0:
        bad("min_area_mm2", f"must be positive, got {node.min_area_mm2}")
    for field in ("mpw_price_per_mm2", "mask_cost", "wafer_cost"):
        amount: Money = getattr(node, field)
        if amount.amount_minor < 0:
            bad(field, f"must be non-negative, got {amount}")
    if node.wafer_diameter_mm <= 0:
        bad("wafer_diameter_mm", f"must be positive, got {node.wafer_diameter_mm}")
    if not isinstance(node.shuttles_per_year, int) or node.shuttles_per_year < 0:
        bad("shuttles_per_year", f"must be a non-negative integer, got {node.shuttles_per_year!r}")
    if node.f_max_hz <= 0:
        bad("f_max_hz", f"must be positive, got {node.f_max_hz}")
    if not isinstance(node.samples_per_seat, int) or node.samples_per_seat < 1:
        bad("samples_per_seat", f"must be an integer >= 1, got {node.samples_per_seat!r}")
    seen_kinds = set()
    for addon in node.addons:
        if addon.kind not in ADDON_KINDS:
            bad("addons", f"unknown add-on kind {addon.kind!r}")
        elif addon.kind in seen_kinds:
            bad("addons", f"duplicate add-on kind {addon.kind!r}")
        seen_kinds.add(addon.kind)
        if addon.surcharge_per_mm2.amount_minor < 0:
            bad("addons", f"{addon.kind} surcharge must be non-negative")
    return out


# --- document parsing ---------------------------------------------------

_MONEY_KEYS = {"amount_minor", "currency"}
_NODE_REQUIRED = {
    "id": str,
    "foundry": str,
    "node_nm": int,
    "core_voltage_v": (int, float),
    "io_voltage_v": (int, float),
    "mim_cap_density_ff_um2": (int, float),
    "min_area_mm2": (int, float),
    "mpw_price_per_mm2": dict,
    "mask_cost": dict,
    "wafer_cost": dict,
    "wafer_diameter_mm": (int, float),
    "shuttles_per_year": int,
    "f_max_hz": (int, float),
    "samples_per_seat": int,
}
_NODE_OPTIONAL = {"addons": list, "illustrative": bool}


def _parse_money(obj: Any, where: str) -> Money:
    if not isinstance(obj, dict) or set(obj) != _MONEY_KEYS:
        raise CatalogParseError(f"{where}: money must be {{amount_minor, currency}}")
    if not isinstance(obj["amount_minor"], int) or isinstance(obj["amount_minor"], bool):
        raise CatalogParseError(f"{where}: amount_minor must be an integer")
    try:
        return Money(obj["amount_minor"], obj["currency"])
    except MoneyError as exc:
        raise CatalogParseError(f"{where}: {exc}") from exc


def _parse_node(obj: Any, index: int) -> TechnologyNode:
    where = f"nodes[{index}]"
    if not isinstance(obj, dict):
        raise CatalogParseError(f"{where}: must be an object")
    node_id = obj.get("id", f"#{index}")
    unknown = set(obj) - set(_NODE_REQUIRED) - set(_NODE_OPTIONAL)
    if unknown:
        raise CatalogParseError(f"{where} ({node_id}): unknown fields {sorted(unknown)}")
    missing = set(_NODE_REQUIRED) - set(obj)
    if missing:
        raise CatalogParseError(f"{where} ({node_id}): missing fields {sorted(missing)}")
    for key, types in _NODE_REQUIRED.items():
        value = obj[key]
        if isinstance(value, bool) or not isinstance(value, types):
            raise CatalogParseError(f"{where} ({node_id}): field {key} has wrong type")
    addons = []
    for j, entry in enumerate(obj.get("addons", [])):
        if not isinstance(entry, dict) or set(entry) != {"kind", "surcharge_per_mm2"}:
            raise CatalogParseError(f"{where} ({node_id}): addons[{j}] must be {{kind, surcharge_per_mm2}}")
        addons.append(
            AddOn(entry["kind"], _parse_money(entry["surcharge_per_mm2"], f"{where}.addons[{j}]"))
        )
    return TechnologyNode(
        id=obj["id"],
        foundry=obj["foundry"],
        node_nm=obj["node_nm"],
        core_voltage_v=float(obj["core_voltage_v"]),
        io_voltage_v=float(obj["io_voltage_v"]),
        mim_cap_density_ff_um2=float(obj["mim_cap_density_ff_um2"]),
        min_area_mm2=float(obj["min_area_mm2"]),
        mpw_price_per_mm2=_parse_money(obj["mpw_price_per_mm2"], f"{where}.mpw_price_per_mm2"),
        mask_cost=_parse_money(obj["mask_cost"], f"{where}.mask_cost"),
        wafer_cost=_parse_money(obj["wafer_cost"], f"{where}.wafer_cost"),
        wafer_diameter_mm=float(obj["wafer_diameter_mm"]),
        shuttles_per_year=obj["shuttles_per_year"],
        f_max_hz=float(obj["f_max_hz"]),
        samples_per_seat=obj["samples_per_seat"],
        addons=tuple(addons),
        illustrative=obj.get("illustrative", False),
    )


def load_catalog(source: bytes | str | BinaryIO) -> Catalog:
    """Load and validate a catalog document, preserving node order."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise CatalogParseError(f"catalog is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CatalogParseError("catalog document must be a JSON object")
    unknown = set(doc) - {"version", "currency_note", "nodes"}
    if unknown:
        raise CatalogParseError(f"unknown top-level fields {sorted(unknown)}")
    if not isinstance(doc.get("nodes"), list):
        raise CatalogParseError("catalog must carry a 'nodes' list")

    nodes = [_parse_node(obj, i) for i, obj in enumerate(doc["nodes"])]
    seen: set[str] = set()
    for node in nodes:
        if node.id in seen:
            raise DuplicateIdError(f"duplicate technology id {node.id!r}")
        seen.add(node.id)
        violations = validate_node(node)
        if violations:
            raise CatalogValidationError(node.id, violations)
    return Catalog(
        nodes=tuple(nodes),
        version=str(doc.get("version", "")),
        currency_note=str(doc.get("currency_note", "")),
    )


def _money_obj(amount: Money) -> dict:
    return {"amount_minor": amount.amount_minor, "currency": amount.currency}


def node_to_dict(node: TechnologyNode) -> dict:
    """Node as a plain dict in the document's field order."""
    return {
        "id": node.id,
        "foundry": node.foundry,
        "node_nm": node.node_nm,
        "core_voltage_v": node.core_voltage_v,
        "io_voltage_v": node.io_voltage_v,
        "mim_cap_density_ff_um2": node.mim_cap_density_ff_um2,
        "min_area_mm2": node.min_area_mm2,
        "mpw_price_per_mm2": _money_obj(node.mpw_price_per_mm2),
        "mask_cost": _money_obj(node.mask_cost),
        "wafer_cost": _money_obj(node.wafer_cost),
        "wafer_diameter_mm": node.wafer_diameter_mm,
        "shuttles_per_year": node.shuttles_per_year,
        "f_max_hz": node.f_max_hz,
        "samples_per_seat": node.samples_per_seat,
        "illustrative": node.illustrative,
        "addons": [
            {"kind": a.kind, "surcharge_per_mm2": _money_obj(a.surcharge_per_mm2)}
            for a in node.addons
        ],
    }


def serialize_catalog(catalog: Catalog) -> bytes:
    """Serialize to the document format; load_catalog(serialize(c)) == c."""
    doc = {
        "version": catalog.version,
        "currency_note": catalog.currency_note,
        "nodes": [node_to_dict(n) for n in catalog.nodes],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False).encode("utf-8")


def find_technologies(catalog: Catalog, filters: dict[str, Any] | None = None) -> list[TechnologyNode]:
    """Return nodes satisfying every filter clause, in catalog order.

    A clause is either ``{"field": value}`` (equality) or
    ``{"field": (op, value)}`` with op one of ``==``, ``>=``, ``<=``.
    """
    filters = filters or {}
    filterable = {
        "id", "foundry", "node_nm", "core_voltage_v", "io_voltage_v",
        "mim_cap_density_ff_um2", "min_area_mm2", "wafer_diameter_mm",
        "shuttles_per_year", "f_max_hz", "samples_per_seat", "illustrative",
    }
    clauses = []
    for field, condition in filters.items():
        if field not in filterable:
            raise UnknownFieldError(f"cannot filter on field {field!r}")
        if isinstance(condition, tuple):
            op, value = condition
            if op not in _FILTER_OPS:
                raise UnknownFieldError(f"unsupported operator {op!r} for field {field!r}")
        else:
            op, value = "==", condition
        clauses.append((field, op, value))

    def keep(node: TechnologyNode) -> bool:
        for field, op, value in clauses:
            actual = getattr(node, field)
            if op == "==" and not actual == value:
                return False
            if op == ">=" and not actual >= value:
                return False
            if op == "<=" and not actual <= value:
                return False
        return True

    return [node for node in catalog.nodes if keep(node)]


def seed_catalog() -> Catalog:
    """The catalog shipped with the package."""
    data = resources.files("fabdecide.data").joinpath("seed_catalog.json").read_bytes()
    return load_catalog(data)


def seed_rates_bytes() -> bytes:
    return resources.files("fabdecide.data").joinpath("seed_rates.json").read_bytes()
