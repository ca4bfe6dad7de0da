"""Request and response models for the computation service and the CLI."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field, field_validator, model_validator


class FieldSpec(BaseModel):
    """Named test-field constructor with parameters."""

    name: str = "gaussian"
    params: dict = Field(default_factory=dict)

    def as_spec(self) -> dict:
        return {"name": self.name, **self.params}


class AxisSpec(BaseModel):
    lo: Optional[float] = None
    hi: Optional[float] = None
    n: int = 64
    kind: Optional[str] = None

    @field_validator("n")
    @classmethod
    def _n_min(cls, v):
        if v < 8:
            raise ValueError("resolutions must be >= 8")
        return v

    @model_validator(mode="after")
    def _ordered(self):
        if self.lo is not None and self.hi is not None and not self.hi > self.lo:
            raise ValueError("truncation bounds must be ordered (lo < hi)")
        return self

    def as_spec(self) -> dict:
        out = {"n": self.n}
        if self.lo is not None:
            out["lo"] = self.lo
        if self.hi is not None:
            out["hi"] = self.hi
        if self.kind is not None:
            out["kind"] = self.kind
        return out


class GridSpec(BaseModel):
    a: Optional[list[AxisSpec]] = None
    h: Optional[list[AxisSpec]] = None


class BaseConfig(BaseModel):
    """Common configuration: system selection plus determinism knobs."""

    system: str
    params: dict = Field(default_factory=dict)
    seed: int = 7

    def build_system(self):
        from ..builtin import build_example

        return build_example(self.system, **self.params)


class ValidateConfig(BaseConfig):
    sample_budget: int = 200
    tolerance: float = 1e-8
    mc_tolerance: float = 1e-5


class ClassifyConfig(BaseConfig):
    probe_budget: int = 2000


class CoareaConfig(BaseConfig):
    f: FieldSpec = Field(default_factory=lambda: FieldSpec(name="gaussian"))
    y_resolution: int = 512
    angular_resolution: int = 256
    tolerance: float = 1e-6

    @field_validator("y_resolution", "angular_resolution")
    @classmethod
    def _res(cls, v):
        if v < 8:
            raise ValueError("resolutions must be >= 8")
        return v


class TransformConfig(BaseConfig):
    f: Optional[FieldSpec] = None
    eta: Optional[FieldSpec] = None
    grid: Optional[GridSpec] = None
    out: Optional[str] = None


class EnergyConfig(BaseConfig):
    f: Optional[FieldSpec] = None
    eta: Optional[FieldSpec] = None
    grid: Optional[GridSpec] = None
    with_density_route: bool = True


class ReproduceConfig(BaseConfig):
    f: Optional[FieldSpec] = None
    eta: Optional[FieldSpec] = None
    grid: Optional[GridSpec] = None
    ratio_band: tuple[float, float] = (0.98, 1.02)
    l2_bound: float = 0.05
    windows: tuple[float, ...] = (1.0, 2.0, 4.0, 8.0)

    @model_validator(mode="after")
    def _band(self):
        lo, hi = self.ratio_band
        if not hi > lo:
            raise ValueError("ratio band must be ordered")
        return self


class AdmissibleConfig(BaseConfig):
    eta: FieldSpec = Field(default_factory=lambda: FieldSpec(name="reference"))


class CommandReport(BaseModel):
    """Service response: the report plus the CLI-compatible exit code."""

    report: dict
    exit_code: int
    status: str
