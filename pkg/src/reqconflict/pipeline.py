"""End-to-end analysis of in-memory documents, shared by the CLI and the service."""

from __future__ import annotations

from typing import Iterable

from .analysis import AnalysisOptions, analyze_corpus
from .dictionary import parse_dictionary
from .encoder import encode_corpus
from .errors import DuplicateIdError, RequirementSyntaxError
from .parser import RequirementAst, parse_requirements
from .report import AnalysisReport, build_report


def load_corpus(documents: Iterable[tuple[str, str]]) -> list[RequirementAst]:
    """Parse ``(name, text)`` documents into one corpus with globally unique IDs."""
    corpus: list[RequirementAst] = []
    origin: dict[str, str] = {}
    for name, text in documents:
        try:
            reqs = parse_requirements(text)
        except RequirementSyntaxError as exc:
            exc.source = name
            raise
        for req in reqs:
            if req.id in origin:
                exc = DuplicateIdError(f"requirement ID {req.id!r} already defined in {origin[req.id]}", req.line, 1, req.id)
                exc.source = name
                raise exc
            origin[req.id] = name
        corpus.extend(reqs)
    return corpus


def analyze_documents(
    dictionary_text: str,
    documents: Iterable[tuple[str, str]],
    options: AnalysisOptions = AnalysisOptions(),
    generated_at: str = "",
) -> AnalysisReport:
    """Parse, validate, encode, analyse and assemble the report.

    Raises the loader, parser and validation errors unchanged.
    """
    documents = list(documents)
    dictionary = parse_dictionary(dictionary_text)
    asts = load_corpus(documents)
    encoded, symbols, diagnostics = encode_corpus(asts, dictionary, lenient=options.lenient)
    _, comparisons = analyze_corpus(encoded, options, dictionary)
    return build_report(
        comparisons,
        symbols,
        diagnostics=diagnostics,
        corpus=[name for name, _ in documents],
        generated_at=generated_at,
    )
