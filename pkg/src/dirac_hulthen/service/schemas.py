"""Pydantic request/response models for the compute service.

Every response carries {schema_version, command, params, rows}; the params
block echoes the validated request so clients can render self-describing
tables.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator

SCHEMA_VERSION = 1


class PotentialParamsModel(BaseModel):
    mu: float = Field(gt=0, description="particle mass (natural units)")
    v0: float = Field(gt=0, description="well depth")
    a: float = Field(gt=0, description="potential range")
    q: float = Field(default=1.0, ge=1.0, description="deformation parameter")


class ChannelModel(BaseModel):
    kappa: int
    beta_tilde: Literal[-1, 1] = 1
    sign_gamma: Literal[-1, 1] | None = None

    @model_validator(mode="after")
    def _nonzero_kappa(self):
        if self.kappa == 0:
            raise ValueError("kappa must be a nonzero integer")
        return self


class RadialGridModel(BaseModel):
    start: float = Field(gt=0)
    stop: float = Field(gt=0)
    num: int = Field(default=8, ge=2, le=64)

    @model_validator(mode="after")
    def _ordered(self):
        if not (self.stop > self.start):
            raise ValueError("grid needs stop > start")
        return self

    def values(self) -> list[float]:
        step = (self.stop - self.start) / (self.num - 1)
        return [self.start + i * step for i in range(self.num)]


class SpectrumRequest(BaseModel):
    params: PotentialParamsModel
    channels: list[ChannelModel] = Field(min_length=1)
    n_r_max: int = Field(default=10, ge=0, le=200)
    certify: bool = False
    certify_tol: float = Field(default=1e-6, gt=0, description="tolerance in units of mu")


class SpectrumRow(BaseModel):
    kappa: int
    beta_tilde: int
    sign_gamma: int
    n_r: int
    energy: float
    epsilon_tilde: float
    omega_sq: float
    residual: float
    oracle_energy: float | None = None
    oracle_abs_diff: float | None = None
    match_defect: float | None = None


class GreensRequest(BaseModel):
    params: PotentialParamsModel | None = None
    channel: ChannelModel
    energy: float
    r_grid: RadialGridModel | None = None
    r_values: list[float] | None = None
    coulomb: bool = False
    ze2: float | None = Field(default=None, gt=0)
    mu: float | None = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _mode_consistency(self):
        if self.r_grid is None and not self.r_values:
            raise ValueError("provide r_grid or r_values")
        if self.coulomb:
            if self.ze2 is None or self.mu is None:
                raise ValueError("coulomb mode needs ze2 and mu")
            if self.channel.sign_gamma is None:
                raise ValueError("coulomb mode needs an explicit sign_gamma")
        elif self.params is None:
            raise ValueError("deformed mode needs params")
        return self

    def radii(self) -> list[float]:
        if self.r_values:
            return list(self.r_values)
        return self.r_grid.values()


class GreensRow(BaseModel):
    r_pp: float
    r_p: float
    energy: float
    value: float


class ApproxErrorRequest(BaseModel):
    params: PotentialParamsModel
    r_over_a_min: float = Field(default=1e-3, gt=0)
    r_over_a_max: float = Field(default=1.0, gt=0)
    n_points: int = Field(default=25, ge=2, le=500)
    levels: bool = False
    channel: ChannelModel | None = None
    n_r_max: int = Field(default=10, ge=0, le=200)

    @model_validator(mode="after")
    def _levels_needs_channel(self):
        if self.levels and self.channel is None:
            raise ValueError("levels mode needs a channel")
        if not (self.r_over_a_max > self.r_over_a_min):
            raise ValueError("need r_over_a_max > r_over_a_min")
        return self


class ApproxPointRow(BaseModel):
    r_over_a: float
    approximant: float
    inverse_r2: float
    abs_diff: float
    rel_error: float


class ApproxLevelRow(BaseModel):
    kappa: int
    beta_tilde: int
    n_r: int
    energy_closed: float
    energy_exact_centrifugal: float | None = None
    delta_e: float | None = None


class CoulombLimitRequest(BaseModel):
    mu: float = Field(gt=0)
    ze2: float = Field(gt=0)
    kappa: int
    beta_tilde: Literal[-1, 1] = 1
    a_values: list[float] = Field(min_length=1)
    n_r_max: int = Field(default=3, ge=0, le=50)

    @model_validator(mode="after")
    def _valid(self):
        if self.kappa == 0:
            raise ValueError("kappa must be a nonzero integer")
        if any(a <= 0 for a in self.a_values):
            raise ValueError("all a values must be positive")
        return self


class CoulombLimitRow(BaseModel):
    a: float
    kappa: int
    n_r: int
    energy: float
    energy_coulomb: float
    rel_deviation: float


class SelftestRow(BaseModel):
    check: str
    passed: bool
    detail: str


class Envelope(BaseModel):
    schema_version: int = SCHEMA_VERSION
    command: str
    params: dict
    rows: list[dict]


class ErrorBody(BaseModel):
    code: str
    message: str
    nearest_pole: float | None = None
