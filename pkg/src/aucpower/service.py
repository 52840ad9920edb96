"""HTTP JSON API over the three calculators.

Endpoints live under /api/v1 and return the same result documents the CLI
prints with --json; a request with an explicit seed is reproducible on the
command line and vice versa. Seeds are generated server-side when omitted
and always echoed. The service keeps no state apart from an optional
in-memory job store for long-running sweeps, so restarting it never
changes a computed result.

There is no authentication; run it behind whatever access control the
deployment needs.
"""

from __future__ import annotations

import io
import os
import secrets
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Sequence

import click
import numpy as np
import uvicorn
from fastapi import FastAPI, File, Form, Request, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict, Field, model_validator

from . import runs
from ._version import __version__
from .binormal import BinormalSpec
from .errors import AucPowerError
from .ingest import PilotFileSpec, parse_pilot, summarize_pilot
from .mc import THREADS_ENV_VAR, McConfig
from .pilot import PilotDataset


@dataclass(frozen=True)
class ServiceSettings:
    """Operational limits; every field can come from the environment."""

    max_iterations: int = 20_000
    max_grid_points: int = 25
    max_eval_n: int = 200_000
    max_upload_bytes: int = 5 * 2**20
    max_inline_rows: int = 100_000
    # iterations x grid points above which a sweep returns 202 + job id;
    # None keeps everything synchronous
    async_threshold: int | None = None
    cors_origins: tuple[str, ...] = ("*",)
    static_dir: Path | None = None

    @classmethod
    def from_env(cls) -> "ServiceSettings":
        def geti(name: str, default: int) -> int:
            return int(os.environ.get(name, default))

        raw_async = os.environ.get("AUCPOWER_ASYNC_THRESHOLD")
        raw_static = os.environ.get("AUCPOWER_STATIC_DIR")
        return cls(
            max_iterations=geti("AUCPOWER_MAX_ITERATIONS", cls.max_iterations),
            max_grid_points=geti("AUCPOWER_MAX_GRID_POINTS", cls.max_grid_points),
            max_eval_n=geti("AUCPOWER_MAX_EVAL_N", cls.max_eval_n),
            max_upload_bytes=geti("AUCPOWER_MAX_UPLOAD_BYTES", cls.max_upload_bytes),
            max_inline_rows=geti("AUCPOWER_MAX_INLINE_ROWS", cls.max_inline_rows),
            async_threshold=int(raw_async) if raw_async else None,
            cors_origins=tuple(
                s.strip()
                for s in os.environ.get("AUCPOWER_CORS_ORIGINS", "*").split(",")
                if s.strip()
            ),
            static_dir=Path(raw_static) if raw_static else None,
        )


class McBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int | None = Field(default=None, ge=0, lt=2**64)
    alpha: float = Field(default=0.05, gt=0.0, lt=1.0)
    iterations: int = Field(default=2000, ge=1)


class _EvalFields(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int | None = Field(default=None, ge=2)
    n_grid: list[int] | None = Field(default=None, min_length=1)
    target_power: float | None = Field(default=None, ge=0.0, lt=1.0)
    n_min: int = Field(default=runs.DEFAULT_N_MIN, ge=2)
    n_max: int = Field(default=runs.DEFAULT_N_MAX, ge=2)
    mc: McBody = Field(default_factory=McBody)

    @model_validator(mode="after")
    def _one_mode(self):
        given = sum(v is not None for v in (self.n, self.n_grid, self.target_power))
        if given != 1:
            raise ValueError("exactly one of n, n_grid and target_power is required")
        return self


class SingleBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    auroc: float = Field(gt=0.0, lt=1.0)
    prevalence: float = Field(gt=0.0, lt=1.0)
    ci_width: float = Field(gt=0.0, lt=1.0)


class PilotInlineBody(_EvalFields):
    labels: list[int]
    scores_a: list[float]
    scores_b: list[float]
    prevalence: float | None = Field(default=None, gt=0.0, lt=1.0)


class BinormalParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mu_case_a: float = Field(gt=0.0, lt=1.0)
    mu_case_b: float = Field(gt=0.0, lt=1.0)
    mu_ctrl_a: float = Field(gt=0.0, lt=1.0)
    mu_ctrl_b: float = Field(gt=0.0, lt=1.0)
    v_case_a: float = Field(default=0.9, gt=0.0, lt=1.0)
    v_case_b: float = Field(default=0.9, gt=0.0, lt=1.0)
    v_ctrl_a: float = Field(default=0.9, gt=0.0, lt=1.0)
    v_ctrl_b: float = Field(default=0.9, gt=0.0, lt=1.0)
    r_case: float = Field(default=0.9, gt=0.0, lt=1.0)
    r_ctrl: float = Field(default=0.9, gt=0.0, lt=1.0)
    prevalence: float = Field(gt=0.0, lt=1.0)

    def to_spec(self) -> BinormalSpec:
        return BinormalSpec(
            mu_case_a=self.mu_case_a,
            mu_case_b=self.mu_case_b,
            mu_ctrl_a=self.mu_ctrl_a,
            mu_ctrl_b=self.mu_ctrl_b,
            phi=self.prevalence,
            v_case_a=self.v_case_a,
            v_case_b=self.v_case_b,
            v_ctrl_a=self.v_ctrl_a,
            v_ctrl_b=self.v_ctrl_b,
            r_case=self.r_case,
            r_ctrl=self.r_ctrl,
        )


class BinormalBody(_EvalFields):
    params: BinormalParams


class PreviewBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    params: BinormalParams
    grid_resolution: int = Field(default=64, ge=16, le=256)


@dataclass
class _Job:
    status: Literal["running", "done", "failed"] = "running"
    result: dict | None = None
    detail: str | None = None


@dataclass
class _JobStore:
    jobs: dict[str, _Job] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def submit(self, work) -> str:
        job_id = uuid.uuid4().hex
        with self.lock:
            self.jobs[job_id] = _Job()

        def run():
            try:
                doc = work()
            except AucPowerError as exc:
                self._finish(job_id, _Job(status="failed", detail=str(exc)))
            except Exception as exc:  # pragma: no cover - defensive
                self._finish(job_id, _Job(status="failed", detail=repr(exc)))
            else:
                self._finish(job_id, _Job(status="done", result=doc))

        threading.Thread(target=run, daemon=True).start()
        return job_id

    def _finish(self, job_id: str, job: _Job) -> None:
        with self.lock:
            self.jobs[job_id] = job

    def get(self, job_id: str) -> _Job | None:
        with self.lock:
            return self.jobs.get(job_id)


def _http_error(status: int, detail) -> JSONResponse:
    return JSONResponse(status_code=status, content={"detail": detail})


def _resolve_mc(mc: McBody, settings: ServiceSettings) -> McConfig | JSONResponse:
    if mc.iterations > settings.max_iterations:
        return _http_error(
            422, f"iterations {mc.iterations} above the configured cap {settings.max_iterations}"
        )
    seed = mc.seed if mc.seed is not None else secrets.randbits(64)
    return McConfig(seed=seed, alpha=mc.alpha, iterations=mc.iterations)


def _check_eval_caps(body: _EvalFields, settings: ServiceSettings) -> JSONResponse | None:
    ns: Sequence[int]
    if body.n is not None:
        ns = [body.n]
    elif body.n_grid is not None:
        if len(body.n_grid) > settings.max_grid_points:
            return _http_error(
                422,
                f"n_grid has {len(body.n_grid)} points, above the configured "
                f"cap {settings.max_grid_points}",
            )
        ns = body.n_grid
    else:
        ns = [body.n_max]
    too_big = [n for n in ns if n > settings.max_eval_n]
    if too_big:
        return _http_error(
            422, f"sample size {max(too_big)} above the configured cap {settings.max_eval_n}"
        )
    return None


def _work_units(body: _EvalFields, cfg: McConfig) -> int:
    if body.n_grid is not None:
        points = len(body.n_grid)
    elif body.target_power is not None:
        # doubling plus refinement probes a couple dozen sizes at most
        points = 16
    else:
        points = 1
    return cfg.iterations * points


def create_app(settings: ServiceSettings | None = None) -> FastAPI:
    settings = settings or ServiceSettings.from_env()
    app = FastAPI(title="aucpower", version=__version__, docs_url="/api/docs")
    jobs = _JobStore()

    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(settings.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def _on_validation_error(request: Request, exc: RequestValidationError):
        errors = [
            {"loc": list(e.get("loc", ())), "msg": e.get("msg"), "type": e.get("type")}
            for e in exc.errors()
        ]
        if any(e["type"] == "json_invalid" for e in errors):
            return _http_error(400, "malformed JSON body")
        return _http_error(422, errors)

    @app.exception_handler(AucPowerError)
    async def _on_domain_error(request: Request, exc: AucPowerError):
        return _http_error(422, str(exc))

    @app.get("/health")
    async def health():
        return {"status": "ok", "version": __version__}

    @app.post("/api/v1/sample-size/single")
    async def sample_size_single(body: SingleBody):
        return runs.run_single(body.auroc, body.prevalence, body.ci_width)

    def _maybe_async(body: _EvalFields, cfg: McConfig, work):
        if (
            settings.async_threshold is not None
            and _work_units(body, cfg) > settings.async_threshold
        ):
            job_id = jobs.submit(work)
            return JSONResponse(
                status_code=202,
                content={"job_id": job_id, "status_url": f"/api/v1/jobs/{job_id}"},
            )
        return work()

    def _run_pilot(pilot: PilotDataset, summary, body: _EvalFields, prevalence, cfg):
        return runs.run_pilot(
            pilot,
            summary,
            cfg,
            n=body.n,
            n_grid=body.n_grid,
            target_power=body.target_power,
            n_min=body.n_min,
            n_max=body.n_max,
            prevalence=prevalence,
        )

    @app.post("/api/v1/power/pilot")
    async def power_pilot_inline(body: PilotInlineBody):
        if len(body.labels) > settings.max_inline_rows:
            return _http_error(
                413,
                f"{len(body.labels)} rows exceed the configured cap {settings.max_inline_rows}",
            )
        capped = _check_eval_caps(body, settings)
        if capped is not None:
            return capped
        cfg = _resolve_mc(body.mc, settings)
        if isinstance(cfg, JSONResponse):
            return cfg
        pilot = PilotDataset(
            labels=np.asarray(body.labels),
            scores_a=np.asarray(body.scores_a, dtype=float),
            scores_b=np.asarray(body.scores_b, dtype=float),
        )
        summary = summarize_pilot(pilot)
        return _maybe_async(
            body, cfg, lambda: _run_pilot(pilot, summary, body, body.prevalence, cfg)
        )

    @app.post("/api/v1/power/pilot/upload")
    async def power_pilot_upload(
        file: UploadFile = File(...),
        n: int | None = Form(default=None, ge=2),
        n_grid: str | None = Form(default=None),
        target_power: float | None = Form(default=None, ge=0.0, lt=1.0),
        n_min: int = Form(default=runs.DEFAULT_N_MIN, ge=2),
        n_max: int = Form(default=runs.DEFAULT_N_MAX, ge=2),
        seed: int | None = Form(default=None, ge=0, lt=2**64),
        alpha: float = Form(default=0.05, gt=0.0, lt=1.0),
        iterations: int = Form(default=2000, ge=1),
        prevalence: float | None = Form(default=None, gt=0.0, lt=1.0),
        label_column: str = Form(default="label"),
        score_a_column: str = Form(default="pred_a"),
        score_b_column: str = Form(default="pred_b"),
        delimiter: str = Form(default=","),
        lenient: bool = Form(default=False),
    ):
        contents = await file.read()
        if len(contents) > settings.max_upload_bytes:
            return _http_error(
                413,
                f"upload of {len(contents)} bytes exceeds the configured "
                f"cap {settings.max_upload_bytes}",
            )
        grid = None
        if n_grid is not None and n_grid.strip():
            try:
                grid = [int(part) for part in n_grid.split(",")]
            except ValueError:
                return _http_error(422, "n_grid must be comma-separated integers")
        try:
            body = _EvalFields(
                n=n,
                n_grid=grid,
                target_power=target_power,
                n_min=n_min,
                n_max=n_max,
                mc=McBody(seed=seed, alpha=alpha, iterations=iterations),
            )
        except ValueError as exc:
            return _http_error(422, str(exc))
        capped = _check_eval_caps(body, settings)
        if capped is not None:
            return capped
        cfg = _resolve_mc(body.mc, settings)
        if isinstance(cfg, JSONResponse):
            return cfg
        fspec = PilotFileSpec(
            source=io.BytesIO(contents),
            label_column=label_column,
            score_a_column=score_a_column,
            score_b_column=score_b_column,
            delimiter=delimiter,
            lenient=lenient,
        )
        pilot, summary = parse_pilot(fspec)
        return _maybe_async(
            body, cfg, lambda: _run_pilot(pilot, summary, body, prevalence, cfg)
        )

    @app.post("/api/v1/power/binormal")
    async def power_binormal_endpoint(body: BinormalBody):
        capped = _check_eval_caps(body, settings)
        if capped is not None:
            return capped
        cfg = _resolve_mc(body.mc, settings)
        if isinstance(cfg, JSONResponse):
            return cfg
        spec = body.params.to_spec()

        def work():
            return runs.run_binormal(
                spec,
                cfg,
                n=body.n,
                n_grid=body.n_grid,
                target_power=body.target_power,
                n_min=body.n_min,
                n_max=body.n_max,
            )

        return _maybe_async(body, cfg, work)

    @app.post("/api/v1/binormal/preview")
    async def binormal_preview(body: PreviewBody):
        return runs.run_preview(body.params.to_spec(), body.grid_resolution)

    @app.get("/api/v1/jobs/{job_id}")
    async def job_status(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            return _http_error(404, f"no such job {job_id!r}")
        if job.status == "running":
            return {"status": "running"}
        if job.status == "failed":
            return {"status": "failed", "detail": job.detail}
        return {"status": "done", "result": job.result}

    static_dir = settings.static_dir
    if static_dir is None:
        bundled = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        static_dir = bundled if bundled.is_dir() else None
    if static_dir is not None and static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


app = create_app()


@click.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8417, show_default=True)
@click.option("--threads", type=int, default=None, help="Worker threads per simulation.")
def main(host: str, port: int, threads: int | None):
    """Serve the power-calculation API (and the web UI when built)."""
    if threads is not None:
        os.environ[THREADS_ENV_VAR] = str(threads)
    uvicorn.run("aucpower.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
