import json

import pytest

from fabdecide.catalog import (
    AddOn,
    Catalog,
    CatalogParseError,
    CatalogValidationError,
    DuplicateIdError,
    TechnologyNode,
    UnknownFieldError,
    UnknownTechnologyError,
    find_technologies,
    load_catalog,
    node_to_dict,
    seed_catalog,
    serialize_catalog,
    validate_node,
)
from fabdecide.money import Money


def _node_doc(**overrides):
    doc = {
        "id": "tsmc180gp",
        "foundry": "TSMC",
        "node_nm": 180,
        "core_voltage_v": 1.8,
        "io_voltage_v": 3.3,
        "mim_cap_density_ff_um2": 1.0,
        "min_area_mm2": 1.0,
        "mpw_price_per_mm2": {"amount_minor": 110000, "currency": "USD"},
        "mask_cost": {"amount_minor": 10000000, "currency": "USD"},
        "wafer_cost": {"amount_minor": 150000, "currency": "USD"},
        "wafer_diameter_mm": 200,
        "shuttles_per_year": 12,
        "f_max_hz": 5e8,
        "samples_per_seat": 100,
        "illustrative": True,
        "addons": [],
    }
    doc.update(overrides)
    return doc


def _catalog_doc(nodes):
    return json.dumps({"version": "test", "currency_note": "", "nodes": nodes})


class TestLoadCatalog:
    def test_two_node_document(self):
        gf12 = _node_doc(
            id="gf12",
            foundry="GlobalFoundries",
            node_nm=12,
            core_voltage_v=0.8,
            io_voltage_v=1.8,
            mpw_price_per_mm2={"amount_minor": 3120000, "currency": "EUR"},
            mask_cost={"amount_minor": 150000000, "currency": "EUR"},
            wafer_cost={"amount_minor": 400000, "currency": "EUR"},
            wafer_diameter_mm=300,
            shuttles_per_year=8,
            f_max_hz=5e10,
        )
        cat = load_catalog(_catalog_doc([_node_doc(), gf12]))
        assert len(cat) == 2
        assert cat.ids() == ["tsmc180gp", "gf12"]
        assert cat.get("tsmc180gp").mpw_price_per_mm2 == Money(110000, "USD")
        assert cat.get("gf12").mpw_price_per_mm2 == Money(3120000, "EUR")

    def test_empty_node_list(self):
        assert len(load_catalog(_catalog_doc([]))) == 0

    def test_duplicate_id(self):
        with pytest.raises(DuplicateIdError):
            load_catalog(_catalog_doc([_node_doc(), _node_doc()]))

    def test_malformed_document(self):
        with pytest.raises(CatalogParseError):
            load_catalog(b"{not json")
        with pytest.raises(CatalogParseError):
            load_catalog(b"[1, 2]")

    def test_unknown_field_rejected(self):
        with pytest.raises(CatalogParseError) as err:
            load_catalog(_catalog_doc([_node_doc(discount=0.5)]))
        assert "discount" in str(err.value)
        assert "tsmc180gp" in str(err.value)

    def test_missing_field_rejected(self):
        doc = _node_doc()
        del doc["wafer_cost"]
        with pytest.raises(CatalogParseError) as err:
            load_catalog(_catalog_doc([doc]))
        assert "wafer_cost" in str(err.value)

    def test_validation_error_names_node_and_field(self):
        with pytest.raises(CatalogValidationError) as err:
            load_catalog(_catalog_doc([_node_doc(min_area_mm2=0)]))
        assert err.value.node_id == "tsmc180gp"
        assert any(v.field == "min_area_mm2" for v in err.value.violations)

    def test_accepts_bytes_and_stream(self, tmp_path):
        raw = _catalog_doc([_node_doc()]).encode()
        assert len(load_catalog(raw)) == 1
        path = tmp_path / "cat.json"
        path.write_bytes(raw)
        with open(path, "rb") as handle:
            assert len(load_catalog(handle)) == 1


class TestRoundTrip:
    def test_serialize_then_load_is_identity(self, catalog):
        again = load_catalog(serialize_catalog(catalog))
        assert again == catalog
        assert [node_to_dict(n) for n in again.nodes] == [node_to_dict(n) for n in catalog.nodes]

    def test_seed_catalog_contents(self, catalog):
        assert catalog.ids() == ["gen350", "tsmc180gp", "tsmc65", "gf12", "gen14"]
        tsmc65 = catalog.get("tsmc65")
        assert tsmc65.mask_cost == Money(50000000, "USD")
        assert tsmc65.wafer_cost == Money(200000, "USD")
        assert tsmc65.wafer_diameter_mm == 300
        assert catalog.get("gen14").wafer_diameter_mm == 400

    def test_unknown_technology(self, catalog):
        with pytest.raises(UnknownTechnologyError):
            catalog.get("nosuch")


class TestValidateNode:
    def test_seed_nodes_are_valid(self, catalog):
        for node in catalog:
            assert validate_node(node) == []

    def test_zero_min_area(self, catalog):
        node = TechnologyNode(**{**_as_kwargs(catalog.get("tsmc180gp")), "min_area_mm2": 0.0})
        report = validate_node(node)
        assert [v.field for v in report] == ["min_area_mm2"]

    def test_io_below_core(self, catalog):
        node = TechnologyNode(**{**_as_kwargs(catalog.get("tsmc180gp")), "io_voltage_v": 1.0})
        report = validate_node(node)
        assert [v.field for v in report] == ["io_voltage_v"]

    def test_pure_same_node_same_report(self, catalog):
        node = TechnologyNode(**{**_as_kwargs(catalog.get("tsmc180gp")), "min_area_mm2": 0.0})
        assert validate_node(node) == validate_node(node)

    def test_bad_addon_kind(self, catalog):
        node = TechnologyNode(
            **{
                **_as_kwargs(catalog.get("tsmc65")),
                "addons": (AddOn("RFX", Money(0, "USD")),),
            }
        )
        assert any(v.field == "addons" for v in validate_node(node))


def _as_kwargs(node):
    return {
        "id": node.id,
        "foundry": node.foundry,
        "node_nm": node.node_nm,
        "core_voltage_v": node.core_voltage_v,
        "io_voltage_v": node.io_voltage_v,
        "mim_cap_density_ff_um2": node.mim_cap_density_ff_um2,
        "min_area_mm2": node.min_area_mm2,
        "mpw_price_per_mm2": node.mpw_price_per_mm2,
        "mask_cost": node.mask_cost,
        "wafer_cost": node.wafer_cost,
        "wafer_diameter_mm": node.wafer_diameter_mm,
        "shuttles_per_year": node.shuttles_per_year,
        "f_max_hz": node.f_max_hz,
        "samples_per_seat": node.samples_per_seat,
        "addons": node.addons,
        "illustrative": node.illustrative,
    }


class TestFindTechnologies:
    def test_equality_filter(self, catalog):
        found = find_technologies(catalog, {"node_nm": 180})
        assert [n.id for n in found] == ["tsmc180gp"]

    def test_empty_filter_is_identity(self, catalog):
        assert find_technologies(catalog, {}) == list(catalog.nodes)
        assert find_technologies(catalog) == list(catalog.nodes)

    def test_comparison_filter(self, catalog):
        found = find_technologies(catalog, {"shuttles_per_year": (">=", 12)})
        assert [n.id for n in found] == ["tsmc180gp", "tsmc65"]

    def test_conjunction_equals_intersection(self, catalog):
        filters = {"shuttles_per_year": (">=", 8), "f_max_hz": (">=", 1e9)}
        joint = find_technologies(catalog, filters)
        separate = [
            find_technologies(catalog, {key: value}) for key, value in filters.items()
        ]
        expected = [n for n in catalog.nodes if all(n in part for part in separate)]
        assert joint == expected

    def test_unknown_field(self, catalog):
        with pytest.raises(UnknownFieldError):
            find_technologies(catalog, {"price": 1})
        with pytest.raises(UnknownFieldError):
            find_technologies(catalog, {"node_nm": ("!=", 12)})

    def test_catalog_rejects_duplicates_on_construction(self, catalog):
        node = catalog.get("tsmc65")
        with pytest.raises(DuplicateIdError):
            Catalog(nodes=(node, node))
