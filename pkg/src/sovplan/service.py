"""HTTP JSON service exposing the solver, weights, and scenario store.

All endpoints speak JSON through one canonical encoder (compact, floats
at 12 significant digits) so responses are deterministic and match the
CLI byte-for-byte. Solves run synchronously under a request timeout; the
scenario store is the only mutable state and serializes writes per id
with compare-and-set on the document version.
"""

from __future__ import annotations

import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FuturesTimeout
from typing import Any, Optional

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import __version__
from .core import EconomyModel
from .handlers import (
    run_ahp,
    run_dashboard,
    run_gate,
    run_openness,
    run_sensitivity,
    run_solve,
)
from .scenario import (
    DashboardSolverFailure,
    ScenarioValidationError,
    builtin_scenarios,
    document_to_scenario,
    scenario_to_document,
)
from .schemas import (
    AhpRequest,
    DashboardRequest,
    GateRequest,
    HealthOut,
    ModelBlock,
    OpennessBlock,
    PlannerSolutionOut,
    ScenarioSummaryOut,
    SensitivityRequest,
    SolveOptionsBlock,
    SolveRequest,
    render_json_bytes,
)
from .solver import SolveOptions, SolverFailure
from .store import ScenarioNotFound, ScenarioStore, VersionConflict

DEFAULT_SOLVE_TIMEOUT_S = 30.0

_access_logger = logging.getLogger("sovplan.access")


class SolveTimedOut(RuntimeError):
    pass


class CanonicalJSONResponse(JSONResponse):
    def render(self, content: Any) -> bytes:
        return render_json_bytes(content)


def _configure_access_log() -> None:
    if not _access_logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(message)s"))
        _access_logger.addHandler(handler)
        _access_logger.setLevel(logging.INFO)
        _access_logger.propagate = False


def _error_response(status: int, code: str, message: str, details=None) -> CanonicalJSONResponse:
    return CanonicalJSONResponse(
        status_code=status,
        content={"code": code, "message": message, "details": details or []},
    )


def _run_bounded(timeout_s: float, fn, *args, **kwargs):
    """Run a solve-bound call with a hard request timeout.

    The worker thread cannot be killed; on timeout it is abandoned and
    will finish on its own (all solver loops are iteration-bounded).
    """
    pool = ThreadPoolExecutor(max_workers=1)
    try:
        return pool.submit(fn, *args, **kwargs).result(timeout=timeout_s)
    except FuturesTimeout:
        raise SolveTimedOut(f"computation exceeded the {timeout_s:g}s request timeout") from None
    finally:
        pool.shutdown(wait=False)


def create_app(
    store_path: str,
    solver_defaults: Optional[SolveOptions] = None,
    seed_builtins: bool = False,
    solve_timeout_s: float = DEFAULT_SOLVE_TIMEOUT_S,
    ui_path: Optional[str] = None,
) -> FastAPI:
    """Build the service around a scenario store directory."""
    _configure_access_log()
    store = ScenarioStore(store_path)
    if seed_builtins:
        store.seed(builtin_scenarios())
    defaults = solver_defaults or SolveOptions()

    app = FastAPI(title="sovplan", version=__version__, default_response_class=CanonicalJSONResponse)
    app.state.store = store
    if ui_path is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_path, html=True), name="ui")

    def options_from(block: Optional[SolveOptionsBlock]) -> SolveOptions:
        return defaults if block is None else block.to_options()

    def resolve_model(scenario_id: Optional[str], model_doc: Optional[ModelBlock]) -> EconomyModel:
        if (scenario_id is None) == (model_doc is None):
            raise ScenarioValidationError(
                [("model", "provide exactly one of scenarioId or an inline model")]
            )
        if scenario_id is not None:
            return store.get(scenario_id).model
        return model_doc.to_model()

    # --- error mapping ---------------------------------------------------

    @app.exception_handler(RequestValidationError)
    async def on_request_validation(request: Request, exc: RequestValidationError):
        errors = exc.errors()
        if any(e.get("type") == "json_invalid" for e in errors):
            return _error_response(400, "validation", "request body is not valid JSON")
        details = [
            {"path": ".".join(str(part) for part in e.get("loc", ())), "reason": e.get("msg", "")}
            for e in errors
        ]
        return _error_response(422, "validation", "request validation failed", details)

    @app.exception_handler(ScenarioValidationError)
    async def on_scenario_validation(request: Request, exc: ScenarioValidationError):
        details = [{"path": path, "reason": reason} for path, reason in exc.errors]
        return _error_response(422, "validation", "scenario document is invalid", details)

    @app.exception_handler(ValueError)
    async def on_value_error(request: Request, exc: ValueError):
        return _error_response(422, "validation", str(exc))

    @app.exception_handler(ScenarioNotFound)
    async def on_not_found(request: Request, exc: ScenarioNotFound):
        return _error_response(404, "not_found", str(exc))

    @app.exception_handler(VersionConflict)
    async def on_conflict(request: Request, exc: VersionConflict):
        return _error_response(409, "conflict", str(exc))

    @app.exception_handler(SolverFailure)
    async def on_solver_failure(request: Request, exc: SolverFailure):
        return _error_response(500, "solver_failure", str(exc))

    @app.exception_handler(DashboardSolverFailure)
    async def on_dashboard_failure(request: Request, exc: DashboardSolverFailure):
        return _error_response(
            500, "solver_failure", f"dashboard solve failed: {exc} (checklist and guardrails were evaluated)"
        )

    @app.exception_handler(SolveTimedOut)
    async def on_timeout(request: Request, exc: SolveTimedOut):
        return _error_response(500, "solver_failure", str(exc))

    @app.exception_handler(Exception)
    async def on_internal(request: Request, exc: Exception):
        return _error_response(500, "internal", f"{type(exc).__name__}: {exc}")

    # --- access log -------------------------------------------------------

    @app.middleware("http")
    async def access_log(request: Request, call_next):
        start = time.perf_counter()
        status = 500
        try:
            response = await call_next(request)
            status = response.status_code
            return response
        finally:
            _access_logger.info(
                json.dumps(
                    {
                        "method": request.method,
                        "path": request.url.path,
                        "status": status,
                        "durationMs": round((time.perf_counter() - start) * 1000.0, 3),
                    },
                    separators=(",", ":"),
                )
            )

    # --- endpoints ---------------------------------------------------------

    @app.get("/healthz", response_model=HealthOut)
    def healthz():
        return HealthOut(status="ok", version=__version__)

    @app.get("/scenarios", response_model=list[ScenarioSummaryOut])
    def list_scenarios():
        return [
            ScenarioSummaryOut(id=s.id, name=s.name, version=s.version) for s in store.list()
        ]

    @app.get("/scenarios/{scenario_id}")
    def get_scenario(scenario_id: str):
        return scenario_to_document(store.get(scenario_id))

    @app.put("/scenarios/{scenario_id}")
    def put_scenario(scenario_id: str, document: dict = Body(...)):
        doc = dict(document)
        doc.setdefault("id", scenario_id)
        if doc["id"] != scenario_id:
            raise ScenarioValidationError([("id", "document id must match the path id")])
        stored = store.put(document_to_scenario(doc))
        return scenario_to_document(stored)

    @app.delete("/scenarios/{scenario_id}")
    def delete_scenario(scenario_id: str):
        store.delete(scenario_id)
        return {"deleted": scenario_id}

    @app.post("/solve", response_model=PlannerSolutionOut)
    def solve(req: SolveRequest):
        model = resolve_model(req.scenario_id, req.model_doc)
        return _run_bounded(solve_timeout_s, run_solve, model, options_from(req.options))

    @app.post("/openness")
    def openness(req: OpennessBlock):
        return run_openness(req.to_params())

    @app.post("/gate")
    def gate(req: GateRequest):
        model = resolve_model(req.scenario_id, req.model_doc)
        return _run_bounded(solve_timeout_s, run_gate, model, req.mu, options_from(req.options))

    @app.post("/weights/ahp")
    def weights_ahp(req: AhpRequest):
        return run_ahp(req.matrix)

    @app.post("/scenarios/{scenario_id}/dashboard")
    def dashboard(scenario_id: str, req: DashboardRequest):
        scenario = store.get(scenario_id)
        observations = [o.to_observation() for o in req.observations]
        return _run_bounded(
            solve_timeout_s, run_dashboard, scenario, observations, req.period, options_from(req.options)
        )

    @app.post("/sensitivity")
    def sensitivity_endpoint(req: SensitivityRequest):
        scenario = store.get(req.scenario_id)
        return _run_bounded(
            solve_timeout_s, run_sensitivity, scenario, req.parameter, req.values, options_from(req.options)
        )

    return app
