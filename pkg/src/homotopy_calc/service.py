"""HTTP service exposing the calculator.

Stateless wrapper over the same request-handling layer the CLI uses: every
endpoint accepts the JSON input-document schema and returns the output
document the CLI would print with --json.  All computations are pure, so
the service is safe under concurrent requests.

Run with:  uvicorn homotopy_calc.service:app
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import api

IntLike = int | str
Matrix = list[list[IntLike]]


class RootDatumSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    rank: int
    roots: Matrix = Field(default_factory=list)
    coroots: Matrix = Field(default_factory=list)


class PresentationSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    generators: int
    relations: Matrix = Field(default_factory=list)


class GroupSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    catalog: str | None = None
    n: int | None = None
    factors: list["GroupSpec"] | None = None
    root_datum: RootDatumSpec | None = None
    multiplicative: PresentationSpec | None = None


class CatalogEmbeddingSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    kind: str
    group: GroupSpec | None = None
    n: int | None = None
    m: int | None = None
    matrix: Matrix | None = None


class EmbeddingSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    cochar_matrix: Matrix | None = None
    char_map: Matrix | None = None
    catalog_embedding: CatalogEmbeddingSpec | None = None


class FlagsSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    h_connected: bool | None = None
    h_ker_char_connected: bool | None = None


class SpaceRequest(BaseModel):
    """A homogeneous space plus computation options."""

    model_config = ConfigDict(extra="forbid")
    g: GroupSpec | None = None
    h: GroupSpec | None = None
    embedding: EmbeddingSpec
    flags: FlagsSpec | None = None
    method: Literal["auto", "thm-main", "thm-pi2", "both"] = "auto"
    oracle: bool = False


class GroupRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    g: GroupSpec


class ComplexRequest(BaseModel):
    """A bare two-term complex for the ext0 endpoint."""

    model_config = ConfigDict(extra="forbid")
    a0: PresentationSpec
    a1: PresentationSpec
    alpha: Matrix = Field(default_factory=list)
    oracle: bool = False


class GroupPayload(BaseModel):
    rank: int
    torsion: list[IntLike]
    pretty: str


class ErrorPayload(BaseModel):
    code: str
    message: str
    path: str | None = None


class OutputDocument(BaseModel):
    """Mirror of the CLI --json output document."""

    model_config = ConfigDict(extra="allow")
    command: str
    result: GroupPayload | None = None
    method: str | None = None
    gates: dict[str, str] | None = None
    results: dict[str, dict] | None = None
    failures: dict[str, str] | None = None
    error: ErrorPayload | None = None


_HTTP_STATUS = {"ok": 200, "gate": 409, "invalid": 422, "crosscheck": 500}

app = FastAPI(
    title="homotopy-calc",
    description="Exact homotopy invariants of complex homogeneous spaces",
    version="0.1.0",
)


def _respond(command: str, doc, method: str = "auto", oracle: bool = False) -> JSONResponse:
    out, status = api.run_command(command, doc, method=method, oracle=oracle)
    return JSONResponse(status_code=_HTTP_STATUS[status], content=api._stringify_big_ints(out))


def _space_doc(req: SpaceRequest) -> dict:
    doc = req.model_dump(exclude_none=True, exclude={"method", "oracle"})
    return doc


@app.post("/pi1", response_model=OutputDocument)
def post_pi1(req: SpaceRequest):
    return _respond("pi1", _space_doc(req), method=req.method, oracle=req.oracle)


@app.post("/pi2", response_model=OutputDocument)
def post_pi2(req: SpaceRequest):
    return _respond("pi2", _space_doc(req))


@app.post("/all", response_model=OutputDocument)
def post_all(req: SpaceRequest):
    return _respond("all", _space_doc(req), method=req.method, oracle=req.oracle)


@app.post("/pic", response_model=OutputDocument)
def post_pic(req: GroupRequest):
    return _respond("pic", req.model_dump(exclude_none=True))


@app.post("/pi1alg", response_model=OutputDocument)
def post_pi1alg(req: GroupRequest):
    return _respond("pi1alg", req.model_dump(exclude_none=True))


@app.post("/ext0", response_model=OutputDocument)
def post_ext0(req: ComplexRequest):
    doc = req.model_dump(exclude={"oracle"})
    return _respond("ext0", doc, oracle=req.oracle)


@app.get("/catalog", response_model=OutputDocument)
def get_catalog():
    return _respond("catalog-list", None)


@app.get("/health")
def get_health():
    return {"status": "ok"}
