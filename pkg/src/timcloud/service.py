"""HTTP service wrapping the core library.

Intended for the centralized-controller deployment: a long-running process
that answers topology analysis and scheme verification requests from many
clients. Every endpoint is stateless and deterministic given its inputs.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .analysis import analyze
from .bounds import DEFAULT_EXHAUSTIVE_LIMIT, upper_bound
from .scheduler import EXACT_SEARCH_LIMIT, achievable_dof
from .topology import Topology, TopologyError, cyclic_wyner, fully_connected, mixed_coherence_example, wyner
from .verifier import LinearScheme, SchemeError, monte_carlo_dof

app = FastAPI(title="timcloud", version=__version__)


class RationalModel(BaseModel):
    num: int
    den: int


class TopologyModel(BaseModel):
    k: int
    links: list[tuple[int, int]]
    coherence: list[tuple[int, int, Union[int, Literal["constant"]]]] = Field(default_factory=list)

    @staticmethod
    def from_topology(t: Topology) -> "TopologyModel":
        doc = t.to_json_dict()
        return TopologyModel(k=doc["k"], links=doc["links"], coherence=doc.get("coherence", []))

    def to_topology(self) -> Topology:
        try:
            return Topology.from_json_dict(self.model_dump())
        except TopologyError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc


class CertificateModel(BaseModel):
    kind: str
    value: RationalModel
    evidence: Optional[dict] = None


class GenerateRequest(BaseModel):
    generator: Literal["wyner", "cyclic", "full", "figure4", "mixed-coherence"]
    k: Optional[int] = None


class AnalyzeRequest(BaseModel):
    topology: TopologyModel
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT
    exact_limit: int = EXACT_SEARCH_LIMIT
    seed: int = 0


class AnalyzeResponse(BaseModel):
    topology: dict
    lower: CertificateModel
    upper: CertificateModel
    tight: bool
    per_user: RationalModel
    version: str
    seed: int


class BoundRequest(BaseModel):
    topology: TopologyModel
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT


class AchieveRequest(BaseModel):
    topology: TopologyModel
    exact_limit: int = EXACT_SEARCH_LIMIT


class PrecoderModel(BaseModel):
    tx: int
    msg: int
    matrix: list[list[Union[float, tuple[float, float]]]]


class SchemeModel(BaseModel):
    n: int
    m: list[int]
    transmit_sets: list[list[int]]
    precoders: list[PrecoderModel]

    def to_scheme(self) -> LinearScheme:
        try:
            return LinearScheme.from_json_dict(self.model_dump())
        except SchemeError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc


class VerifyRequest(BaseModel):
    topology: TopologyModel
    scheme: SchemeModel
    trials: int = 50
    seed: int = 0


class VerdictModel(BaseModel):
    trials: int
    seed: int
    decodable: list[bool]
    dof: RationalModel
    generic: bool
    dissenting_seeds: list[int]
    all_active_decodable: bool


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/topologies/generate", response_model=TopologyModel)
def generate(req: GenerateRequest) -> TopologyModel:
    try:
        if req.generator in ("figure4", "mixed-coherence"):
            t = mixed_coherence_example()
        else:
            if req.k is None:
                raise HTTPException(status_code=400, detail=f"generator {req.generator!r} requires k")
            t = {"wyner": wyner, "cyclic": cyclic_wyner, "full": fully_connected}[req.generator](req.k)
    except TopologyError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return TopologyModel.from_topology(t)


@app.post("/analyze", response_model=AnalyzeResponse)
def analyze_endpoint(req: AnalyzeRequest) -> AnalyzeResponse:
    t = req.topology.to_topology()
    report = analyze(t, exhaustive_limit=req.exhaustive_limit, exact_limit=req.exact_limit, seed=req.seed)
    return AnalyzeResponse(**report.to_json_dict())


@app.post("/bounds/upper", response_model=CertificateModel)
def upper_bound_endpoint(req: BoundRequest) -> CertificateModel:
    cert = upper_bound(req.topology.to_topology(), req.exhaustive_limit)
    return CertificateModel(**cert.to_json_dict())


@app.post("/bounds/achievable", response_model=CertificateModel)
def achievable_endpoint(req: AchieveRequest) -> CertificateModel:
    _, cert = achievable_dof(req.topology.to_topology(), exact_limit=req.exact_limit)
    return CertificateModel(**cert.to_json_dict())


@app.post("/schemes/verify", response_model=VerdictModel)
def verify_endpoint(req: VerifyRequest) -> VerdictModel:
    t = req.topology.to_topology()
    s = req.scheme.to_scheme()
    if req.trials < 1:
        raise HTTPException(status_code=400, detail="trials must be positive")
    try:
        verdict = monte_carlo_dof(t, s, trials=req.trials, seed=req.seed)
    except SchemeError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return VerdictModel(
        **verdict.to_json_dict(),
        all_active_decodable=verdict.all_active_decodable(s),
    )
