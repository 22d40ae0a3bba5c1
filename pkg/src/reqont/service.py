"""Read-only HTTP service over one repository.

The service holds one immutable snapshot view at a time. Reloading
builds a complete new view first and swaps it atomically; a failed
reload keeps the old view and degrades /health. Every data response
carries the version of the view that produced it, and a request keeps
its view for its whole lifetime, so answers are never half-old.
"""

from __future__ import annotations

import datetime as dt
import signal
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import Depends, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import conventions as conv
from . import payloads
from .errors import UnknownCharacteristic, UnknownFactor
from .queries import FactorFilter
from .repository import load_repository
from .snapshot import OntologySnapshot
from .validation import ValidationReport, validate_corpus

API_PREFIX = "/api/v1"
VERSION_HEADER = "X-Snapshot-Version"

CODE_UNKNOWN_FACTOR = "unknown_factor"
CODE_UNKNOWN_CHARACTERISTIC = "unknown_characteristic"
CODE_BAD_REQUEST = "bad_request"


class ApiError(Exception):
    """Error with a stable machine-readable code and HTTP status."""

    def __init__(self, status_code: int, code: str, message: str) -> None:
        self.status_code = status_code
        self.code = code
        self.message = message
        super().__init__(message)


@dataclass(frozen=True)
class SnapshotView:
    """One immutable, versioned state of the repository."""

    snapshot: OntologySnapshot
    validation: ValidationReport
    version: int
    loaded_at: str


class SnapshotHolder:
    """Thread-safe owner of the current snapshot view."""

    def __init__(self, root: Path | str) -> None:
        self.root = Path(root)
        self._lock = threading.Lock()
        self._view = self._load(version=1)
        self._last_error: str | None = None

    def _load(self, version: int) -> SnapshotView:
        loaded = load_repository(self.root)
        return SnapshotView(
            snapshot=loaded.snapshot,
            validation=validate_corpus(loaded.snapshot),
            version=version,
            loaded_at=dt.datetime.now(dt.timezone.utc).isoformat(),
        )

    @property
    def current(self) -> SnapshotView:
        with self._lock:
            return self._view

    @property
    def last_error(self) -> str | None:
        with self._lock:
            return self._last_error

    def reload(self) -> bool:
        """Load a fresh view and swap it in; on failure keep the old one."""
        with self._lock:
            next_version = self._view.version + 1
        try:
            view = self._load(next_version)
        except Exception as exc:  # degraded, never half-swapped
            with self._lock:
                self._last_error = f"{type(exc).__name__}: {exc}"
            return False
        with self._lock:
            self._view = view
            self._last_error = None
        return True


def get_view(request: Request) -> SnapshotView:
    """Dependency: pin one view for the lifetime of the request."""
    return request.app.state.holder.current


def _versioned(payload: object, view: SnapshotView, status_code: int = 200) -> JSONResponse:
    return JSONResponse(
        payload, status_code=status_code, headers={VERSION_HEADER: str(view.version)}
    )


def create_app(holder: SnapshotHolder) -> FastAPI:
    """Build the API application around one snapshot holder."""
    app = FastAPI(title="reqont", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.holder = holder

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            {"code": exc.code, "message": exc.message}, status_code=exc.status_code
        )

    @app.exception_handler(UnknownFactor)
    async def handle_unknown_factor(request: Request, exc: UnknownFactor) -> JSONResponse:
        return JSONResponse(
            {"code": CODE_UNKNOWN_FACTOR, "message": str(exc)}, status_code=404
        )

    @app.exception_handler(UnknownCharacteristic)
    async def handle_unknown_characteristic(
        request: Request, exc: UnknownCharacteristic
    ) -> JSONResponse:
        return JSONResponse(
            {"code": CODE_UNKNOWN_CHARACTERISTIC, "message": str(exc)}, status_code=400
        )

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(
        request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        return JSONResponse(
            {"code": CODE_BAD_REQUEST, "message": str(exc.errors())}, status_code=400
        )

    @app.get(f"{API_PREFIX}/schema")
    def get_schema(view: SnapshotView = Depends(get_view)) -> JSONResponse:
        return _versioned(payloads.schema_payload(view.snapshot), view)

    @app.get(f"{API_PREFIX}/factors")
    def get_factors(
        view: SnapshotView = Depends(get_view),
        scope: str | None = None,
        aspect: str | None = None,
        impact: str | None = None,
        text_query: str | None = None,
        has_approach: bool | None = None,
        has_dataset: bool | None = None,
        accessibility: str | None = None,
        evidence: bool | None = None,
        practitioners: bool | None = None,
        limit: int = Query(default=100, ge=0, le=1000),
        offset: int = Query(default=0, ge=0),
    ) -> JSONResponse:
        if (aspect is None) != (impact is None):
            raise ApiError(
                400, CODE_BAD_REQUEST, "aspect and impact must be provided together"
            )
        flt = FactorFilter(
            scope=scope,
            aspect=(aspect, impact) if aspect is not None and impact is not None else None,
            text_query=text_query,
            has_approach=has_approach,
            has_dataset=has_dataset,
            accessibility=accessibility,
            evidence=evidence,
            practitioners=practitioners,
        )
        return _versioned(
            payloads.factors_payload(view.snapshot, flt, limit=limit, offset=offset), view
        )

    @app.get(f"{API_PREFIX}/factors/{{key}}")
    def get_factor(key: str, view: SnapshotView = Depends(get_view)) -> JSONResponse:
        from .queries import resources_for_factor

        resources = resources_for_factor(view.snapshot, key)
        return _versioned(payloads.factor_detail_payload(view.snapshot, resources), view)

    @app.get(f"{API_PREFIX}/factors/{{key}}/resources")
    def get_factor_resources(key: str, view: SnapshotView = Depends(get_view)) -> JSONResponse:
        return _versioned(payloads.resources_payload(view.snapshot, key), view)

    def collection_route(taxonomy: str):
        def handler(
            view: SnapshotView = Depends(get_view),
            accessibility: str | None = None,
            limit: int = Query(default=100, ge=0, le=1000),
            offset: int = Query(default=0, ge=0),
        ) -> JSONResponse:
            if accessibility is not None:
                _check_accessibility(view.snapshot, accessibility)
            return _versioned(
                payloads.collection_payload(
                    view.snapshot,
                    taxonomy,
                    accessibility=accessibility,
                    limit=limit,
                    offset=offset,
                ),
                view,
            )

        return handler

    app.get(f"{API_PREFIX}/descriptions")(collection_route(conv.DESCRIPTION))
    app.get(f"{API_PREFIX}/datasets")(collection_route(conv.DATASET))
    app.get(f"{API_PREFIX}/approaches")(collection_route(conv.APPROACH))

    @app.get(f"{API_PREFIX}/stats")
    def get_stats(view: SnapshotView = Depends(get_view)) -> JSONResponse:
        return _versioned(payloads.stats_payload(view.snapshot), view)

    @app.get(f"{API_PREFIX}/gaps")
    def get_gaps(view: SnapshotView = Depends(get_view)) -> JSONResponse:
        return _versioned(payloads.gaps_payload(view.snapshot), view)

    @app.get(f"{API_PREFIX}/authors")
    def get_authors(view: SnapshotView = Depends(get_view)) -> JSONResponse:
        return _versioned(payloads.authors_payload(view.snapshot), view)

    @app.get(f"{API_PREFIX}/validation")
    def get_validation(view: SnapshotView = Depends(get_view)) -> JSONResponse:
        return _versioned(payloads.validation_payload(view.validation), view)

    @app.get(f"{API_PREFIX}/health")
    def get_health(request: Request, view: SnapshotView = Depends(get_view)) -> JSONResponse:
        last_error = request.app.state.holder.last_error
        degraded = last_error is not None
        payload = {
            "status": "degraded" if degraded else "ok",
            "snapshot_version": view.version,
            "loaded_at": view.loaded_at,
            "last_error": last_error,
        }
        return _versioned(payload, view, status_code=503 if degraded else 200)

    return app


def _check_accessibility(snapshot: OntologySnapshot, value: str) -> None:
    from .queries import _accessibility_vocabulary

    if value not in _accessibility_vocabulary(snapshot):
        raise UnknownCharacteristic(
            f"{value!r} is not a declared {conv.ACCESSIBILITY_DIMENSION} characteristic"
        )


@dataclass(frozen=True)
class ServiceConfig:
    """Options for running the service."""

    repo_root: Path
    bind: str = "127.0.0.1"
    port: int = 8000
    reload_mode: str = "on-signal"


def serve(config: ServiceConfig) -> None:
    """Run the service until interrupted.

    Raises whatever loading the repository raises, so a broken repo
    refuses to start; domain violations only warn.
    """
    import sys

    import uvicorn

    holder = SnapshotHolder(config.repo_root)
    report = holder.current.validation
    if report.has_errors():
        counts = report.counts()
        print(
            f"warning: repository has {counts['error']} validation errors; "
            "serving anyway (see /api/v1/validation)",
            file=sys.stderr,
        )

    if config.reload_mode == "on-signal" and hasattr(signal, "SIGHUP"):
        signal.signal(signal.SIGHUP, lambda signum, frame: holder.reload())

    app = create_app(holder)
    uvicorn.run(app, host=config.bind, port=config.port, log_level="warning")
