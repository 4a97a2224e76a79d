"""Request and response models for the HTTP API."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from ..analysis import MAX_SYLLOGISM_DEPTH


class SatRequest(BaseModel):
    expressions: list[str] = Field(..., min_length=1, description="conjoined expressions in And/Or/Not notation")


class SatResponse(BaseModel):
    satisfiable: bool
    contradiction: bool
    model: Optional[dict[str, bool]] = None


class AnalyzeOptions(BaseModel):
    syllogism_depth: int = Field(1, ge=0, le=MAX_SYLLOGISM_DEPTH)
    domain_axioms: bool = False
    lenient: bool = False


class AnalyzeRequest(BaseModel):
    dictionary: str = Field(..., description="data dictionary CSV text")
    requirements: str = Field(..., description="requirements document text")
    name: str = "requirements.req"
    options: AnalyzeOptions = AnalyzeOptions()
    timestamp: Optional[str] = None


class DiagnosticModel(BaseModel):
    severity: str
    requirement: str
    message: str
    code: str = ""


class ErrorResponse(BaseModel):
    detail: str
    diagnostics: list[DiagnosticModel] = []
    line: Optional[int] = None
    column: Optional[int] = None


class RequirementRef(BaseModel):
    id: str
    text: str
    logic: str


class InferenceModel(BaseModel):
    kind: Literal["direct", "syllogism"]
    chain: Optional[list[str]] = None


class ResultModel(BaseModel):
    req1: RequirementRef
    req2: RequirementRef
    result: Literal["OK", "CONTRADICTION"]
    inference: InferenceModel
    model: Optional[dict[str, bool]] = None


class SummaryModel(BaseModel):
    comparisons: int
    contradictions: int


class SymbolModel(BaseModel):
    data: str
    value: str


class ReportModel(BaseModel):
    generated_at: str
    corpus: list[str]
    summary: SummaryModel
    results: list[ResultModel]
    symbols: dict[str, SymbolModel]
    diagnostics: list[DiagnosticModel]


class HealthResponse(BaseModel):
    status: str
    version: str
