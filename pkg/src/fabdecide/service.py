"""HTTP service: one JSON endpoint per core operation, stateless per
request.  Shared state is the immutable catalog and a rate table that live
mode replaces atomically; request handlers never mutate either.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import scenarios
from .catalog import Catalog, UnknownTechnologyError, load_catalog, seed_catalog, seed_rates_bytes
from .money import RateTable, load_rates

log = logging.getLogger("fabdecide")

CATALOG_ENV = "FABDECIDE_CATALOG"
RATES_ENV = "FABDECIDE_RATES"
UI_ENV = "FABDECIDE_UI"


class RateConfigError(RuntimeError):
    """The configured snapshot cannot be read: fatal, not recoverable."""


@dataclass(frozen=True)
class RateSourceConfig:
    """Where exchange rates come from.

    snapshot mode only ever reads the file; live mode performs one GET per
    cache window and falls back to the snapshot on any failure.
    """

    mode: str = "snapshot"
    snapshot_path: str | None = None
    live_url: str | None = None
    timeout_ms: int = 2000
    cache_ttl_s: int = 300

    def __post_init__(self) -> None:
        if self.mode not in ("snapshot", "live"):
            raise RateConfigError(f"rate source mode must be snapshot or live, got {self.mode!r}")
        if self.mode == "live" and not self.live_url:
            raise RateConfigError("live mode requires live_url")


@dataclass(frozen=True)
class FetchedRates:
    table: RateTable
    source: str  # "snapshot" or "live"
    warning: str | None = None


def _snapshot_table(config: RateSourceConfig) -> RateTable:
    if config.snapshot_path is None:
        return load_rates(seed_rates_bytes())
    try:
        data = Path(config.snapshot_path).read_bytes()
    except OSError as exc:
        raise RateConfigError(f"cannot read rate snapshot {config.snapshot_path}: {exc}") from exc
    return load_rates(data)


def fetch_rates(config: RateSourceConfig) -> FetchedRates:
    """Resolve the rate table for this configuration.

    Live fetches that fail for any reason (network, HTTP, parse) degrade to
    the snapshot with a warning; an unreadable snapshot is fatal.
    """
    snapshot = _snapshot_table(config)
    if config.mode == "snapshot":
        return FetchedRates(snapshot, "snapshot")
    try:
        with urllib.request.urlopen(config.live_url, timeout=config.timeout_ms / 1000.0) as response:
            body = response.read()
        return FetchedRates(load_rates(body), "live")
    except (urllib.error.URLError, OSError, ValueError) as exc:
        warning = f"live rate fetch failed ({exc}); using snapshot"
        log.warning(warning)
        return FetchedRates(snapshot, "snapshot", warning)


class RateSource:
    """TTL-cached rate provider; the table reference swaps atomically."""

    def __init__(self, config: RateSourceConfig):
        self.config = config
        self._lock = threading.Lock()
        self._fetched: FetchedRates | None = None
        self._fetched_at = 0.0

    def current(self) -> FetchedRates:
        now = time.monotonic()
        with self._lock:
            fresh = self._fetched is not None and (
                self.config.mode == "snapshot" or now - self._fetched_at < self.config.cache_ttl_s
            )
            if not fresh:
                self._fetched = fetch_rates(self.config)
                self._fetched_at = now
            return self._fetched


def _error_response(exc: Exception) -> JSONResponse:
    status, code = scenarios.error_code_and_status(exc)
    if status == 500:
        log.exception("internal error")
    return JSONResponse({"error": code, "message": str(exc)}, status_code=status)


async def _json_body(request: Request) -> dict:
    raw = await request.body()
    try:
        body = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise scenarios.RequestError(f"body is not valid JSON: {exc}") from exc
    if not isinstance(body, dict):
        raise scenarios.RequestError("body must be a JSON object")
    return body


def create_app(
    catalog: Catalog | None = None,
    rate_config: RateSourceConfig | None = None,
    ui_dir: str | None = None,
) -> FastAPI:
    if catalog is None:
        catalog_path = os.environ.get(CATALOG_ENV)
        catalog = load_catalog(Path(catalog_path).read_bytes()) if catalog_path else seed_catalog()
    if rate_config is None:
        rate_config = RateSourceConfig(snapshot_path=os.environ.get(RATES_ENV))
    rate_source = RateSource(rate_config)

    app = FastAPI(title="fabdecide", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.catalog = catalog
    app.state.rate_source = rate_source

    @app.get("/v1/health")
    async def health():
        return JSONResponse({"status": "ok", "technologies": len(catalog)})

    @app.get("/v1/technologies")
    async def technologies():
        return JSONResponse(scenarios.technologies_payload(catalog))

    @app.get("/v1/technologies/{technology_id}")
    async def technology(technology_id: str):
        try:
            return JSONResponse(scenarios.technology_payload(catalog, technology_id))
        except UnknownTechnologyError as exc:
            return _error_response(exc)

    @app.get("/v1/rates")
    async def rates():
        fetched = rate_source.current()
        return JSONResponse(scenarios.rates_payload(fetched.table, fetched.source, fetched.warning))

    @app.post("/v1/estimate/mpw")
    async def estimate_mpw(request: Request):
        try:
            body = await _json_body(request)
            return JSONResponse(scenarios.mpw_estimate(catalog, body))
        except Exception as exc:
            return _error_response(exc)

    @app.post("/v1/estimate/production")
    async def estimate_production(request: Request):
        try:
            body = await _json_body(request)
            return JSONResponse(scenarios.production_estimate(catalog, body))
        except Exception as exc:
            return _error_response(exc)

    @app.post("/v1/breakeven")
    async def breakeven(request: Request):
        try:
            body = await _json_body(request)
            return JSONResponse(scenarios.breakeven_report(catalog, body))
        except Exception as exc:
            return _error_response(exc)

    @app.post("/v1/select")
    async def run_select(request: Request):
        try:
            body = await _json_body(request)
            fetched = rate_source.current()
            return JSONResponse(scenarios.run_select(catalog, fetched.table, body))
        except Exception as exc:
            return _error_response(exc)

    ui_path = ui_dir or os.environ.get(UI_ENV) or _default_ui_dir()
    if ui_path and Path(ui_path).is_dir():
        app.mount("/ui", StaticFiles(directory=ui_path, html=True), name="ui")

    return app


def _default_ui_dir() -> str | None:
    # Source checkout layout: frontend/dist next to the package root.
    candidate = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
    return str(candidate) if candidate.is_dir() else None


def serve(host: str = "127.0.0.1", port: int = 8080,
          catalog: Catalog | None = None,
          rate_config: RateSourceConfig | None = None,
          ui_dir: str | None = None) -> None:
    import uvicorn

    uvicorn.run(create_app(catalog, rate_config, ui_dir), host=host, port=port, log_level="info")
