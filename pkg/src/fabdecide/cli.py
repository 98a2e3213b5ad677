"""Command-line interface.

Every subcommand funnels through the same scenario layer as the HTTP
service, so `--json` output matches the corresponding endpoint body
number-for-number.  Exit codes: 0 success, 2 usage or validation problems,
1 internal errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import scenarios, service
from .catalog import Catalog, CatalogError, load_catalog, seed_catalog, seed_rates_bytes
from .money import Money, RateTable, load_rates, minor_unit_exponent

_SYMBOLS = {"USD": "$", "EUR": "€", "EGP": "E£"}


def _money_str(payload: dict) -> str:
    return str(Money(payload["amount_minor"], payload["currency"]))


def _micro_str(micro: int, currency: str) -> str:
    sign = "-" if micro < 0 else ""
    major, frac = divmod(abs(micro), 1_000_000)
    text = f"{sign}{major}.{frac:06d}"
    symbol = _SYMBOLS.get(currency)
    return f"{symbol}{text}" if symbol else f"{text} {currency}"


def _load_catalog_arg(args: argparse.Namespace) -> Catalog:
    path = args.catalog or os.environ.get(service.CATALOG_ENV)
    if path:
        return load_catalog(Path(path).read_bytes())
    return seed_catalog()


def _load_rates_arg(args: argparse.Namespace) -> RateTable:
    path = args.rates or os.environ.get(service.RATES_ENV)
    if path:
        return load_rates(Path(path).read_bytes())
    return load_rates(seed_rates_bytes())


def _emit(args: argparse.Namespace, payload: dict, render) -> int:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        render(payload)
    return 0


def _wafer_yield_body(args: argparse.Namespace) -> dict:
    body: dict = {}
    wafer = {}
    if args.edge is not None:
        wafer["edge_exclusion_mm"] = args.edge
    if args.scribe is not None:
        wafer["scribe_mm"] = args.scribe
    if getattr(args, "diameter", None) is not None:
        wafer["diameter_mm"] = args.diameter
    if wafer:
        body["wafer"] = wafer
    params = {}
    if args.d0 is not None:
        params["d0_per_mm2"] = args.d0
    if args.model is not None:
        params["model"] = args.model
    if params:
        body["yield"] = params
    return body


def _add_wafer_yield_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--edge", type=float, help="edge exclusion in mm (default 3)")
    parser.add_argument("--scribe", type=float, help="scribe lane in mm (default 0.1)")
    parser.add_argument("--diameter", type=float, help="override wafer diameter in mm")
    parser.add_argument("--d0", type=float, help="defect density per mm2 (default 0.001)")
    parser.add_argument("--model", choices=("poisson", "murphy"), help="yield model")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fabdecide",
        description="IC fabrication cost estimates and technology-node selection",
    )
    parser.add_argument("--catalog", help="catalog JSON path (default: bundled seed)")
    parser.add_argument("--rates", help="rate snapshot JSON path (default: bundled snapshot)")
    parser.add_argument("--json", action="store_true", help="emit the API JSON payload")
    sub = parser.add_subparsers(dest="command", required=True)

    p_catalog = sub.add_parser("catalog", help="inspect the technology catalog")
    catalog_sub = p_catalog.add_subparsers(dest="catalog_command", required=True)
    catalog_sub.add_parser("list", help="list technologies")
    p_show = catalog_sub.add_parser("show", help="show one technology")
    p_show.add_argument("technology_id")

    p_estimate = sub.add_parser("estimate", help="cost estimates")
    estimate_sub = p_estimate.add_subparsers(dest="estimate_command", required=True)
    p_mpw = estimate_sub.add_parser("mpw", help="price one MPW seat")
    p_mpw.add_argument("--tech", required=True)
    p_mpw.add_argument("--area", type=float, required=True, help="die area in mm2")
    p_mpw.add_argument("--addons", default="", help="comma-separated add-on kinds")
    p_prod = estimate_sub.add_parser("production", help="dedicated-mask volume production")
    p_prod.add_argument("--tech", required=True)
    p_prod.add_argument("--area", type=float, required=True)
    p_prod.add_argument("--volume", type=int, required=True)
    _add_wafer_yield_flags(p_prod)

    p_break = sub.add_parser("breakeven", help="MPW seats vs dedicated mask set")
    p_break.add_argument("--tech", required=True)
    p_break.add_argument("--area", type=float, required=True)
    p_break.add_argument("--scan-limit", type=int, default=None)
    _add_wafer_yield_flags(p_break)

    p_select = sub.add_parser("select", help="rank technologies for a design spec")
    p_select.add_argument("--spec", required=True, help="design spec JSON file")
    p_select.add_argument("--weights", help="five comma-separated weights summing to 1")
    p_select.add_argument("--score-currency", default="EGP",
                          help="currency used to compare unit costs (default EGP)")
    _add_wafer_yield_flags(p_select)

    p_wait = sub.add_parser("wait", help="expected shuttle wait")
    p_wait.add_argument("--shuttles", type=int, required=True, help="shuttle runs per year")

    p_convert = sub.add_parser("convert", help="convert an amount between currencies")
    p_convert.add_argument("--amount", required=True, help="major-unit amount, e.g. 1100.00")
    p_convert.add_argument("--currency", required=True, dest="from_currency")
    p_convert.add_argument("--to", required=True, dest="to_currency")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8080)
    p_serve.add_argument("--ui", help="directory with the built web UI")

    return parser


# --- human rendering --------------------------------------------------------


def _render_catalog_list(payload: dict) -> None:
    rows = [
        (
            n["id"],
            n["foundry"],
            f'{n["node_nm"]} nm',
            _money_str(n["mpw_price_per_mm2"]) + "/mm2",
            str(n["shuttles_per_year"]),
            f'{n["f_max_hz"]:.3g} Hz',
        )
        for n in payload["nodes"]
    ]
    headers = ("id", "foundry", "node", "mpw price", "shuttles/yr", "f_max")
    widths = [max(len(headers[i]), *(len(r[i]) for r in rows)) if rows else len(headers[i])
              for i in range(len(headers))]
    print("  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)))
    for row in rows:
        print("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))


def _render_node(node: dict) -> None:
    print(f'{node["id"]} ({node["foundry"]}, {node["node_nm"]} nm)')
    print(f'  core/io voltage   {node["core_voltage_v"]} V / {node["io_voltage_v"]} V')
    print(f'  MIM cap density   {node["mim_cap_density_ff_um2"]} fF/um2')
    print(f'  min area          {node["min_area_mm2"]} mm2')
    print(f'  MPW price         {_money_str(node["mpw_price_per_mm2"])}/mm2')
    print(f'  mask cost         {_money_str(node["mask_cost"])}')
    print(f'  wafer cost        {_money_str(node["wafer_cost"])} ({node["wafer_diameter_mm"]} mm)')
    print(f'  shuttles/yr       {node["shuttles_per_year"]}')
    print(f'  f_max             {node["f_max_hz"]:.4g} Hz')
    print(f'  samples per seat  {node["samples_per_seat"]}')
    if node["addons"]:
        addons = ", ".join(
            f'{a["kind"]} +{_money_str(a["surcharge_per_mm2"])}/mm2' for a in node["addons"]
        )
        print(f"  add-ons           {addons}")
    if node.get("illustrative"):
        print("  note              contains illustrative (non-quoted) values")


def _render_production(payload: dict) -> None:
    print(f'technology        {payload["technology_id"]}')
    print(f'gross dies/wafer  {payload["gross_dies_per_wafer"]}')
    print(f'yield             {payload["yield_fraction"]:.6f}')
    print(f'good dies/wafer   {payload["good_dies_per_wafer"]:.6f}')
    print(f'wafers used       {payload["wafers_used"]}')
    print(f'NRE               {_money_str(payload["nre"])}')
    print(f'wafer total       {_money_str(payload["wafer_total"])}')
    print(f'total             {_money_str(payload["total"])}')
    print(f'unit cost         {_micro_str(payload["unit_cost_micro"], payload["currency"])}')


def _render_breakeven(payload: dict) -> None:
    print(f'technology        {payload["technology_id"]}')
    print(f'seat cost         {_money_str(payload["seat_cost"])} '
          f'({payload["samples_per_seat"]} samples/seat)')
    if payload["breakeven_volume"] is None:
        print(f'break-even        none within scan limit {payload["scan_limit"]}')
    else:
        print(f'break-even volume {payload["breakeven_volume"]}')
        print(f'  MPW total       {_money_str(payload["mpw_total_at_breakeven"])}')
        print(f'  dedicated total {_money_str(payload["dedicated_total_at_breakeven"])}')
    print("volume      dedicated            MPW")
    for point in payload["curve"]:
        print(f'{point["volume"]:<10}  {_money_str(point["dedicated_total"]):<20} '
              f'{_money_str(point["mpw_total"])}')


def _render_selection(payload: dict) -> None:
    if payload["mode"] == "empty":
        print("no feasible technology for this spec")
        return
    if payload["mode"] == "dictated":
        print("node dictated externally; production estimate:")
        _render_production(payload["dictated"])
        return
    print("rank  technology  score    unit cost          complexity  cap fF/um2  f_max Hz   wait d")
    for c in payload["candidates"]:
        crit = c["criteria"]
        print(
            f'{c["rank"]:<5} {c["technology_id"]:<11} {c["score"]:.4f}   '
            f'{_micro_str(crit["unit_cost_micro"], crit["currency"]):<18} '
            f'{crit["complexity_index"]:<11.4f} {crit["cap_density_ff_um2"]:<11} '
            f'{crit["f_max_hz"]:<10.3g} {crit["wait_days"]:.2f}'
        )


def run_cli(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help.
        return int(exc.code or 0)

    try:
        if args.command == "serve":
            catalog = _load_catalog_arg(args)
            rates_path = args.rates or os.environ.get(service.RATES_ENV)
            config = service.RateSourceConfig(snapshot_path=rates_path)
            service.serve(args.host, args.port, catalog, config, args.ui)
            return 0

        if args.command == "catalog":
            catalog = _load_catalog_arg(args)
            if args.catalog_command == "list":
                return _emit(args, scenarios.technologies_payload(catalog), _render_catalog_list)
            payload = scenarios.technology_payload(catalog, args.technology_id)
            return _emit(args, payload, _render_node)

        if args.command == "estimate":
            catalog = _load_catalog_arg(args)
            if args.estimate_command == "mpw":
                addons = [a for a in args.addons.split(",") if a]
                body = {"technology_id": args.tech, "die_area_mm2": args.area, "addons": addons}
                payload = scenarios.mpw_estimate(catalog, body)
                return _emit(args, payload, lambda p: print(_money_str(p["seat_cost"])))
            body = {"technology_id": args.tech, "die_area_mm2": args.area, "volume": args.volume}
            body.update(_wafer_yield_body(args))
            payload = scenarios.production_estimate(catalog, body)
            return _emit(args, payload, _render_production)

        if args.command == "breakeven":
            catalog = _load_catalog_arg(args)
            body = {"technology_id": args.tech, "die_area_mm2": args.area}
            if args.scan_limit is not None:
                body["scan_limit"] = args.scan_limit
            body.update(_wafer_yield_body(args))
            payload = scenarios.breakeven_report(catalog, body)
            return _emit(args, payload, _render_breakeven)

        if args.command == "select":
            catalog = _load_catalog_arg(args)
            rates = _load_rates_arg(args)
            try:
                spec_doc = json.loads(Path(args.spec).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise scenarios.RequestError(f"cannot read spec file: {exc}") from exc
            body = {"spec": spec_doc, "score_currency": args.score_currency}
            if args.weights:
                try:
                    body["weights"] = [float(w) for w in args.weights.split(",")]
                except ValueError as exc:
                    raise scenarios.RequestError(f"bad weights: {exc}") from exc
            body.update(_wafer_yield_body(args))
            payload = scenarios.run_select(catalog, rates, body)
            return _emit(args, payload, _render_selection)

        if args.command == "wait":
            payload = scenarios.shuttle_wait({"shuttles_per_year": args.shuttles})
            return _emit(args, payload, lambda p: print(f'{p["expected_wait_days"]:.4f} days'))

        if args.command == "convert":
            rates = _load_rates_arg(args)
            body = {"amount": args.amount, "currency": args.from_currency, "to": args.to_currency}
            payload = scenarios.convert_amount(rates, body)
            return _emit(args, payload, lambda p: print(_money_str(p["converted"])))

        raise AssertionError(f"unhandled command {args.command!r}")

    except (scenarios.RequestError, CatalogError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
