"""Command-line entry point: analyse requirement files and write reports.

Exit codes: 0 no contradictions (or failing disabled), 1 contradictions
found, 2 input, validation or configuration error.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .analysis import MAX_SYLLOGISM_DEPTH, AnalysisOptions
from .errors import ConfigError, ReqConflictError, ValidationFailed
from .pipeline import analyze_documents
from .report import render_html, render_json

EXIT_OK = 0
EXIT_CONTRADICTION = 1
EXIT_ERROR = 2

FORMATS = {"html": ("html",), "json": ("json",), "both": ("html", "json")}


@dataclass
class RunConfig:
    dict_path: Path
    req_paths: list[Path]
    output_dir: Path = Path(".")
    formats: tuple[str, ...] = ("html", "json")
    syllogism_depth: int = 1
    domain_axioms: bool = False
    lenient: bool = False
    fail_on_contradiction: bool = True
    timestamp: str | None = None
    stdout: object = field(default=None, repr=False)
    stderr: object = field(default=None, repr=False)

    def validate(self) -> None:
        if not self.req_paths:
            raise ConfigError("at least one requirements file is required")
        if not 0 <= self.syllogism_depth <= MAX_SYLLOGISM_DEPTH:
            raise ConfigError(f"--syllogism-depth must be between 0 and {MAX_SYLLOGISM_DEPTH}")
        unknown = set(self.formats) - {"html", "json"}
        if unknown or not self.formats:
            raise ConfigError(f"unsupported format(s): {', '.join(sorted(unknown)) or 'none'}")
        if self.timestamp is not None:
            try:
                datetime.fromisoformat(self.timestamp.replace("Z", "+00:00"))
            except ValueError:
                raise ConfigError(f"--timestamp is not ISO 8601: {self.timestamp!r}") from None


def _write_atomically(files: dict[Path, str]) -> None:
    """Write every file or none: stage all to temp files, then rename."""
    staged: list[tuple[str, Path]] = []
    try:
        for path, content in files.items():
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
            staged.append((tmp, path))
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(content)
    except BaseException:
        for tmp, _ in staged:
            Path(tmp).unlink(missing_ok=True)
        raise
    for tmp, path in staged:
        os.replace(tmp, path)


def run(config: RunConfig) -> int:
    out = config.stdout or sys.stdout
    err = config.stderr or sys.stderr
    try:
        config.validate()
        dict_text = config.dict_path.read_text(encoding="utf-8")
        documents = [(str(p), p.read_text(encoding="utf-8")) for p in config.req_paths]
        options = AnalysisOptions(config.syllogism_depth, config.domain_axioms, config.lenient)
        stamp = config.timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds")
        report = analyze_documents(dict_text, documents, options, generated_at=stamp)
        rendered: dict[Path, str] = {}
        if "html" in config.formats:
            rendered[config.output_dir / "report.html"] = render_html(report)
        if "json" in config.formats:
            rendered[config.output_dir / "report.json"] = render_json(report)
        config.output_dir.mkdir(parents=True, exist_ok=True)
        _write_atomically(rendered)
    except ValidationFailed as exc:
        print(f"error: {exc}", file=err)
        for d in exc.diagnostics:
            print(f"  {d.requirement}: {d.code}: {d.message}", file=err)
        return EXIT_ERROR
    except (ReqConflictError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ERROR
    for d in report.diagnostics:
        print(f"{d.severity}: {d.requirement}: {d.message}", file=err)
    print(report.summary_line(), file=out)
    if report.contradictions and config.fail_on_contradiction:
        return EXIT_CONTRADICTION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="reqconflict",
        description="Detect contradictions between Gherkin-style requirements.",
    )
    p.add_argument("--dict", required=True, type=Path, metavar="PATH", help="data dictionary CSV")
    p.add_argument("--reqs", required=True, nargs="+", type=Path, metavar="PATH", help="requirement files (.req)")
    p.add_argument("--out", default=Path("."), type=Path, metavar="DIR", help="output directory (default: .)")
    p.add_argument("--format", default="both", choices=sorted(FORMATS), help="report format(s) to write")
    p.add_argument("--syllogism-depth", type=int, default=1, metavar="N", help="chaining steps, 0 disables (default: 1)")
    p.add_argument("--domain-axioms", action="store_true", help="assert each enumerated data item takes one value")
    p.add_argument("--lenient", action="store_true", help="downgrade dictionary violations to warnings")
    p.add_argument(
        "--no-fail-on-contradiction",
        dest="fail_on_contradiction",
        action="store_false",
        help="exit 0 even when contradictions are found",
    )
    p.add_argument("--timestamp", metavar="ISO8601", help="pin the report timestamp")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    config = RunConfig(
        dict_path=args.dict,
        req_paths=args.reqs,
        output_dir=args.out,
        formats=FORMATS[args.format],
        syllogism_depth=args.syllogism_depth,
        domain_axioms=args.domain_axioms,
        lenient=args.lenient,
        fail_on_contradiction=args.fail_on_contradiction,
        timestamp=args.timestamp,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
