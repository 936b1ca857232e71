"""FastAPI service wrapping the core package.

Endpoints mirror the CLI subcommands one-to-one; every computation is a pure
function of the request body, so identical requests produce identical
responses.  Physics-domain failures (supercritical coupling, at-pole
evaluation, unbound energies) map to HTTP 409 with a structured error body;
malformed requests are FastAPI's usual 422.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import runs
from ..errors import AtPoleError, ConfigError, DiracHulthenError, PhysicsDomainError
from ..potential import PotentialParams
from .schemas import (
    SCHEMA_VERSION,
    ApproxErrorRequest,
    CoulombLimitRequest,
    Envelope,
    GreensRequest,
    SpectrumRequest,
)


def _error_code(exc: DiracHulthenError) -> str:
    return type(exc).__name__.removesuffix("Error").lower()


def _log_spaced(lo: float, hi: float, n: int) -> list[float]:
    import math

    if n == 1:
        return [lo]
    ratio = (math.log(hi) - math.log(lo)) / (n - 1)
    return [math.exp(math.log(lo) + i * ratio) for i in range(n)]


def create_app() -> FastAPI:
    app = FastAPI(title="dirac-hulthen", version="0.1.0")

    @app.exception_handler(PhysicsDomainError)
    async def physics_error(request: Request, exc: PhysicsDomainError):
        body = {"code": _error_code(exc), "message": str(exc)}
        if isinstance(exc, AtPoleError) and exc.nearest_pole is not None:
            body["nearest_pole"] = exc.nearest_pole
        return JSONResponse(status_code=409, content={"error": body})

    @app.exception_handler(ConfigError)
    async def config_error(request: Request, exc: ConfigError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "config", "message": str(exc)}},
        )

    @app.get("/v1/health")
    def health() -> dict:
        return {"status": "ok", "schema_version": SCHEMA_VERSION}

    @app.post("/v1/spectrum", response_model=Envelope)
    def spectrum(req: SpectrumRequest) -> Envelope:
        p = PotentialParams(**req.params.model_dump())
        channels = [(c.kappa, c.beta_tilde, c.sign_gamma) for c in req.channels]
        rows = runs.spectrum_rows(p, channels, req.n_r_max, req.certify, req.certify_tol)
        return Envelope(
            command="spectrum",
            params=req.model_dump(),
            rows=rows,
        )

    @app.post("/v1/greens", response_model=Envelope)
    def greens(req: GreensRequest) -> Envelope:
        radii = req.radii()
        if req.coulomb:
            rows = runs.coulomb_greens_rows(
                req.mu, req.ze2, req.channel.kappa, req.channel.sign_gamma,
                req.energy, radii,
            )
        else:
            p = PotentialParams(**req.params.model_dump())
            rows = runs.greens_rows(
                p, req.channel.kappa, req.channel.beta_tilde,
                req.channel.sign_gamma, req.energy, radii,
            )
        return Envelope(command="greens", params=req.model_dump(), rows=rows)

    @app.post("/v1/approx-error", response_model=Envelope)
    def approx_error(req: ApproxErrorRequest) -> Envelope:
        p = PotentialParams(**req.params.model_dump())
        if req.levels:
            rows = runs.approx_level_rows(
                p, req.channel.kappa, req.channel.beta_tilde,
                req.channel.sign_gamma, req.n_r_max,
            )
        else:
            xs = _log_spaced(req.r_over_a_min, req.r_over_a_max, req.n_points)
            rows = runs.approx_error_rows(p, xs)
        return Envelope(command="approx-error", params=req.model_dump(), rows=rows)

    @app.post("/v1/coulomb-limit", response_model=Envelope)
    def coulomb_limit(req: CoulombLimitRequest) -> Envelope:
        rows = runs.coulomb_limit_rows(
            req.mu, req.ze2, req.kappa, req.beta_tilde, req.a_values, req.n_r_max
        )
        return Envelope(command="coulomb-limit", params=req.model_dump(), rows=rows)

    @app.post("/v1/selftest", response_model=Envelope)
    def selftest() -> Envelope:
        return Envelope(command="selftest", params={}, rows=runs.selftest_rows())

    return app


app = create_app()
