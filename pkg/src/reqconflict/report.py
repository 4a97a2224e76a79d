"""HTML and JSON renderings of an analysis run."""

from __future__ import annotations

import html
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .analysis import CONTRADICTION, Comparison, Inference
from .encoder import Diagnostic, EncodedRequirement, SymbolTable
from .logic import Atom


@dataclass(frozen=True)
class RequirementCell:
    id: str
    text: str
    logic: str


@dataclass(frozen=True)
class ResultRow:
    req1: RequirementCell
    req2: RequirementCell
    result: str
    inference: Inference
    model: dict[str, bool] | None = field(default=None, hash=False)


@dataclass(frozen=True)
class AnalysisReport:
    generated_at: str
    corpus: tuple[str, ...]
    results: tuple[ResultRow, ...]
    symbols: dict[str, Atom] = field(default_factory=dict, hash=False)
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def comparisons(self) -> int:
        return len(self.results)

    @property
    def contradictions(self) -> int:
        return sum(r.result == CONTRADICTION for r in self.results)

    def summary_line(self) -> str:
        return f"{self.comparisons} comparisons, {self.contradictions} contradictions"


def _cell(req: EncodedRequirement, symbols: SymbolTable) -> RequirementCell:
    return RequirementCell(req.id, req.text, req.notation(symbols))


def build_report(
    comparisons: Sequence[Comparison],
    symbols: SymbolTable,
    diagnostics: Iterable[Diagnostic] = (),
    corpus: Iterable[str] = (),
    generated_at: str = "",
) -> AnalysisReport:
    rows = []
    for c in comparisons:
        model = None
        if c.verdict.model is not None:
            model = {str(atom): value for atom, value in c.verdict.model.items()}
        rows.append(
            ResultRow(
                _cell(c.pair.left, symbols),
                _cell(c.pair.right, symbols),
                c.verdict.result,
                c.verdict.inference,
                model,
            )
        )
    return AnalysisReport(
        generated_at=generated_at,
        corpus=tuple(corpus),
        results=tuple(rows),
        symbols=dict(sorted(symbols.by_letter().items())),
        diagnostics=tuple(diagnostics),
    )


# -- JSON --------------------------------------------------------------------


def _inference_dict(inf: Inference) -> dict:
    if inf.kind == "direct":
        return {"kind": "direct"}
    return {"kind": inf.kind, "chain": list(inf.chain)}


def report_to_dict(report: AnalysisReport) -> dict:
    return {
        "generated_at": report.generated_at,
        "corpus": list(report.corpus),
        "summary": {"comparisons": report.comparisons, "contradictions": report.contradictions},
        "results": [
            {
                "req1": {"id": r.req1.id, "text": r.req1.text, "logic": r.req1.logic},
                "req2": {"id": r.req2.id, "text": r.req2.text, "logic": r.req2.logic},
                "result": r.result,
                "inference": _inference_dict(r.inference),
                "model": r.model,
            }
            for r in report.results
        ],
        "symbols": {k: {"data": a.data, "value": a.value} for k, a in report.symbols.items()},
        "diagnostics": [
            {"severity": d.severity, "requirement": d.requirement, "message": d.message, "code": d.code}
            for d in report.diagnostics
        ],
    }


def report_from_dict(data: dict) -> AnalysisReport:
    results = []
    for r in data["results"]:
        inf = r["inference"]
        results.append(
            ResultRow(
                RequirementCell(**r["req1"]),
                RequirementCell(**r["req2"]),
                r["result"],
                Inference(inf["kind"], tuple(inf.get("chain", ()))),
                r["model"],
            )
        )
    return AnalysisReport(
        generated_at=data["generated_at"],
        corpus=tuple(data["corpus"]),
        results=tuple(results),
        symbols={k: Atom(v["data"], v["value"]) for k, v in data["symbols"].items()},
        diagnostics=tuple(
            Diagnostic(d["severity"], d["requirement"], d["message"], d.get("code", "")) for d in data["diagnostics"]
        ),
    )


def render_json(report: AnalysisReport) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_json(text: str) -> AnalysisReport:
    return report_from_dict(json.loads(text))


# -- HTML --------------------------------------------------------------------

_STYLE = """
body { font-family: sans-serif; margin: 2em; color: #222; }
table { border-collapse: collapse; width: 100%; margin-bottom: 2em; }
th, td { border: 1px solid #999; padding: 6px 8px; vertical-align: top; text-align: left; }
th { background: #e8e8e8; }
td.req { font-family: monospace; white-space: pre-wrap; }
.logic { font-family: monospace; color: #555; font-size: 90%; }
.ok { color: #1a7f37; font-weight: bold; }
.contradiction { color: #b42318; font-weight: bold; }
"""


def _inference_text(inf: Inference) -> str:
    if inf.kind == "direct":
        return "no inference"
    return "via " + " → ".join(inf.chain)


def _req_cell(cell: RequirementCell) -> str:
    return (
        f'<td class="req">{html.escape(cell.text)}'
        f'<div class="logic">{html.escape(cell.logic)}</div></td>'
    )


def render_html(report: AnalysisReport) -> str:
    """Self-contained HTML page: one table row per comparison."""
    e = html.escape
    rows = []
    for r in report.results:
        css = "contradiction" if r.result == CONTRADICTION else "ok"
        rows.append(
            "<tr>"
            + _req_cell(r.req1)
            + _req_cell(r.req2)
            + f'<td class="{css}">{e(r.result)}</td>'
            + f"<td>{e(_inference_text(r.inference))}</td>"
            + "</tr>"
        )
    symbol_rows = [
        f"<tr><td>{e(letter)}</td><td>{e(atom.data)}</td><td>{e(atom.value)}</td></tr>"
        for letter, atom in report.symbols.items()
    ]
    diag_items = [
        f"<li>{e(d.severity)}: {e(d.requirement)}: {e(d.message)}</li>" for d in report.diagnostics
    ]
    parts = [
        "<!DOCTYPE html>",
        '<html lang="en">',
        "<head>",
        '<meta charset="utf-8">',
        "<title>Contradiction Analysis Report</title>",
        f"<style>{_STYLE}</style>",
        "</head>",
        "<body>",
        "<h1>Contradiction Analysis Report</h1>",
        f"<p>Generated {e(report.generated_at)} from {e(', '.join(report.corpus) or '(no files)')}</p>",
        f'<p class="summary">{e(report.summary_line())}</p>',
        "<table>",
        "<thead><tr><th>Requirement1</th><th>Requirement2</th><th>Result</th><th>Inference</th></tr></thead>",
        "<tbody>",
        *rows,
        "</tbody>",
        "</table>",
        "<h2>Symbols</h2>",
        "<table>",
        "<thead><tr><th>Symbol</th><th>Data</th><th>Value</th></tr></thead>",
        "<tbody>",
        *symbol_rows,
        "</tbody>",
        "</table>",
    ]
    if diag_items:
        parts += ["<h2>Diagnostics</h2>", "<ul>", *diag_items, "</ul>"]
    parts += ["</body>", "</html>"]
    return "\n".join(parts) + "\n"

