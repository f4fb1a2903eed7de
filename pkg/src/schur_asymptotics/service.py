"""HTTP service exposing the verification campaigns.

Each campaign is a POST endpoint taking the campaign config plus run
options and returning the structured report together with its rendered
CSV/JSON artifact. Campaign assertion failures are reported in the body
(passed=false), not as HTTP errors; config problems map to 400.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .campaigns import CAMPAIGN_NAMES, run_campaign
from .config import ConfigError, parse_config

DEFAULT_FORMATS = {
    "verify-t17": "csv",
    "verify-identities": "json",
    "compare-p28": "csv",
    "verify-pp1": "csv",
    "moments": "csv",
}


class SpectrumModel(BaseModel):
    values: list[str]
    densities: list[str]


class MomentParamsModel(BaseModel):
    kappa: str
    y_weights: dict[str, str] = Field(default_factory=dict)
    I2: list[int] | None = None
    p_max: int = 4


class CampaignConfigModel(BaseModel):
    spectrum: SpectrumModel | None = None
    m: int = 1
    alpha1: str | None = None
    k: int | None = None
    perturbations: list[str | list[str]] = Field(default_factory=list)
    N_list: list[int] = Field(default_factory=list)
    moments: MomentParamsModel | None = None
    seed: int = 0
    out: str | None = None
    format: str | None = None

    def to_plain(self) -> dict:
        data = self.model_dump(exclude_none=True)
        if self.moments is not None and self.moments.I2 is None:
            data["moments"].pop("I2", None)
        return data


class CampaignRequest(BaseModel):
    config: CampaignConfigModel
    format: str | None = None
    jobs: int = 1


class CampaignResponse(BaseModel):
    campaign: str
    passed: bool
    format: str
    output: str
    report: dict


app = FastAPI(
    title="schur-asymptotics",
    version=__version__,
    description="Exact Schur polynomial computations with asymptotic verification campaigns",
)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


def _run(name: str, request: CampaignRequest) -> CampaignResponse:
    try:
        config = parse_config(request.config.to_plain())
        report = run_campaign(name, config, jobs=request.jobs)
    except ConfigError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    fmt = request.format or config.format or DEFAULT_FORMATS[name]
    try:
        output = report.render(fmt)
    except ConfigError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return CampaignResponse(
        campaign=report.campaign,
        passed=report.passed,
        format=fmt,
        output=output,
        report={
            "config": report.config,
            "columns": report.columns,
            "rows": report.rows,
            "summary": report.summary,
        },
    )


def _register(name: str) -> None:
    @app.post(f"/campaigns/{name}", response_model=CampaignResponse, name=name)
    def endpoint(request: CampaignRequest) -> CampaignResponse:
        return _run(name, request)


for _name in CAMPAIGN_NAMES:
    _register(_name)
