"""FastAPI application: ``POST /sat``, ``POST /analyze``, ``GET /health``.

The service keeps no state between requests.
"""

from __future__ import annotations

from datetime import datetime, timezone

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import __version__
from ..analysis import AnalysisOptions
from ..errors import (
    DictionaryError,
    ExpressionSyntaxError,
    RequirementSyntaxError,
    ValidationFailed,
)
from ..logic import conj, is_satisfiable, parse_expression, size
from ..pipeline import analyze_documents
from ..report import report_to_dict
from .schemas import (
    AnalyzeRequest,
    ErrorResponse,
    HealthResponse,
    ReportModel,
    SatRequest,
    SatResponse,
)

MAX_ATOMS = 10_000


def _error(status: int, detail: str, **extra) -> JSONResponse:
    body = ErrorResponse(detail=detail, **extra).model_dump(exclude_none=True)
    return JSONResponse(status_code=status, content=body)


def create_app() -> FastAPI:
    app = FastAPI(title="reqconflict", version=__version__)

    @app.exception_handler(RequestValidationError)
    async def bad_request(request: Request, exc: RequestValidationError):
        msgs = "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors())
        return _error(400, f"malformed request body: {msgs}")

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.post(
        "/sat",
        response_model=SatResponse,
        responses={400: {"model": ErrorResponse}, 413: {"model": ErrorResponse}},
    )
    def sat(body: SatRequest):
        exprs = []
        for i, text in enumerate(body.expressions):
            try:
                exprs.append(parse_expression(text))
            except ExpressionSyntaxError as exc:
                return _error(400, f"expression {i}: {exc}")
        expr = conj(*exprs)
        if size(expr) > MAX_ATOMS:
            return _error(413, f"expression has more than {MAX_ATOMS} atoms")
        result = is_satisfiable(expr)
        return SatResponse(
            satisfiable=result.satisfiable,
            contradiction=not result.satisfiable,
            model=result.model,
        )

    @app.post(
        "/analyze",
        response_model=ReportModel,
        responses={400: {"model": ErrorResponse}, 422: {"model": ErrorResponse}},
    )
    def analyze(body: AnalyzeRequest):
        opts = body.options
        options = AnalysisOptions(opts.syllogism_depth, opts.domain_axioms, opts.lenient)
        stamp = body.timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds")
        try:
            report = analyze_documents(body.dictionary, [(body.name, body.requirements)], options, stamp)
        except RequirementSyntaxError as exc:
            return _error(400, str(exc), line=exc.line, column=exc.column)
        except DictionaryError as exc:
            return _error(400, f"dictionary: {exc}", line=exc.line)
        except ValidationFailed as exc:
            diags = [
                {"severity": d.severity, "requirement": d.requirement, "message": d.message, "code": d.code}
                for d in exc.diagnostics
            ]
            return _error(422, str(exc), diagnostics=diags)
        return report_to_dict(report)

    return app


app = create_app()
