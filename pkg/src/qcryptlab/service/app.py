"""HTTP face of the experiment harness.

Thin by design: a request is an experiment config, a response is the
report's aggregate view.  The service owns no state beyond the registry
built at import, so any number of workers give the same answers.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from ..experiments import (
    HarnessError,
    REGISTRY,
    Report,
    config_from_dict,
    experiment_names,
    run_experiment,
)


class ExperimentRequest(BaseModel):
    experiment: str
    n: Optional[int] = None
    trials: Optional[int] = None
    q: Optional[int] = None
    seed: int = 0
    tolerances: Dict[str, float] = Field(default_factory=dict)


class CheckView(BaseModel):
    name: str
    value: float
    threshold: float
    direction: str
    passed: bool


class ReportView(BaseModel):
    experiment: str
    inputs: Dict[str, Any]
    metrics: Dict[str, float]
    checks: List[CheckView]
    verdict: str


class ExperimentInfo(BaseModel):
    name: str
    summary: str
    defaults: Dict[str, int]
    ceiling_seconds: float


def _report_view(report: Report) -> ReportView:
    obj = report.to_json_obj()
    return ReportView(
        experiment=obj["experiment"],
        inputs=obj["inputs"],
        metrics=obj["metrics"],
        checks=[CheckView(**c) for c in obj["checks"]],
        verdict=obj["verdict"],
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="qcryptlab",
        description="named quantum-cryptography experiments behind HTTP",
    )

    @app.get("/health")
    def health() -> Dict[str, str]:
        return {"status": "ok"}

    @app.get("/experiments", response_model=List[ExperimentInfo])
    def list_experiments() -> List[ExperimentInfo]:
        return [
            ExperimentInfo(
                name=name,
                summary=REGISTRY[name].summary,
                defaults=dict(REGISTRY[name].defaults),
                ceiling_seconds=REGISTRY[name].ceiling_seconds,
            )
            for name in experiment_names()
        ]

    @app.post("/experiments/run", response_model=ReportView)
    def run(request: ExperimentRequest) -> ReportView:
        try:
            cfg = config_from_dict(request.model_dump())
            report = run_experiment(cfg)
        except HarnessError as err:
            raise HTTPException(status_code=400, detail=str(err))
        return _report_view(report)

    return app


app = create_app()
