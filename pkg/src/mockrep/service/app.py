"""FastAPI service exposing the computation commands.

Each command of the CLI has a POST endpoint taking the same configuration
document and returning ``{report, exit_code, status}``.  Library errors map
to HTTP 422 (bad configuration/parameters) or 500.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..builtin import SYSTEM_IDS
from ..errors import MockrepError, ParameterError, PreconditionError
from ..reporting import package_version
from .handlers import HANDLERS
from .models import (
    AdmissibleConfig,
    ClassifyConfig,
    CoareaConfig,
    CommandReport,
    EnergyConfig,
    ReproduceConfig,
    TransformConfig,
    ValidateConfig,
)

app = FastAPI(
    title="mockrep",
    description="Voice transforms, fiber disintegrations and admissibility "
                "checks for semidirect-product systems.",
    version=package_version(),
)


def _run(command: str, cfg) -> CommandReport:
    try:
        return HANDLERS[command][1](cfg)
    except (ParameterError, PreconditionError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except MockrepError as exc:
        raise HTTPException(status_code=500, detail=str(exc))


@app.get("/health")
def health():
    return {"status": "ok", "version": package_version()}


@app.get("/systems")
def systems():
    return {"systems": list(SYSTEM_IDS)}


@app.post("/validate", response_model=CommandReport)
def validate(cfg: ValidateConfig):
    return _run("validate", cfg)


@app.post("/classify", response_model=CommandReport)
def classify(cfg: ClassifyConfig):
    return _run("classify", cfg)


@app.post("/coarea", response_model=CommandReport)
def coarea(cfg: CoareaConfig):
    return _run("coarea", cfg)


@app.post("/transform", response_model=CommandReport)
def transform(cfg: TransformConfig):
    return _run("transform", cfg)


@app.post("/energy", response_model=CommandReport)
def energy(cfg: EnergyConfig):
    return _run("energy", cfg)


@app.post("/reproduce", response_model=CommandReport)
def reproduce(cfg: ReproduceConfig):
    return _run("reproduce", cfg)


@app.post("/admissible", response_model=CommandReport)
def admissible(cfg: AdmissibleConfig):
    return _run("admissible", cfg)
