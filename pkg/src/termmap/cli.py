"""Command-line pipeline: build, check, report, query.

Exit codes are CI-friendly: 0 means no Error diagnostics (Warnings allowed
unless --strict), 1 means lint findings, 2 means a fatal I/O or
configuration failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .analysis import classify_gap, compute_coverage, compute_stats
from .index import MappingIndex, Space, build_index, query
from .model import Diagnostic, MalformedSectionId, Severity, TermMapping, severity_counts
from .sitegen import SiteBuildError, SiteConfig, write_site
from .terms import DEFAULT_STALENESS_DAYS, FrontmatterSyntaxError, load_corpus, parse_yaml_mapping
from .toc import DEFAULT_SCOPE, Toc, load_toc

EXIT_OK = 0
EXIT_LINT = 1
EXIT_FATAL = 2

DEFAULT_TITLE = "SE to RSE terminology mapping"

_CONFIG_KEYS = {"staleness_days", "scope", "base_url", "title"}


class FatalError(Exception):
    """Unrecoverable problem; maps to exit code 2."""


@dataclass
class RunConfig:
    command: str
    toc_path: Path
    terms_dir: Path
    out_dir: Path | None = None
    space: str | None = None
    key: str | None = None
    config_path: Path | None = None
    strict: bool = False
    format: str = "text"
    staleness_days: int | None = None
    scope: frozenset[int] | None = None


def _parse_scope_csv(text: str) -> frozenset[int]:
    try:
        values = frozenset(int(part.strip()) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"scope must be a comma-separated list of integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("scope must name at least one knowledge area")
    return values


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("value must be positive")
    return value


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="termmap",
        description="Compile, lint, and publish a terminology-mapping knowledge base.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--toc", required=True, type=Path, help="SWEBOK table-of-contents TSV file")
    common.add_argument("--terms", required=True, type=Path, help="directory of term mapping .md files")
    common.add_argument("--config", type=Path, help="optional YAML config file")
    common.add_argument("--strict", action="store_true", help="treat warnings as errors")
    common.add_argument(
        "--staleness-days",
        type=_positive_int,
        help=f"review staleness threshold in days (default {DEFAULT_STALENESS_DAYS})",
    )
    common.add_argument(
        "--scope",
        type=_parse_scope_csv,
        help="comma-separated knowledge-area numbers in scope (default 1-10)",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", parents=[common], help="run the full pipeline and write the static site")
    build.add_argument("--out", required=True, type=Path, help="output directory for the site")
    build.add_argument("--format", choices=("text", "json"), default="text")

    check = sub.add_parser("check", parents=[common], help="validate only; writes no files")
    check.add_argument("--format", choices=("text", "json"), default="text")

    report = sub.add_parser("report", parents=[common], help="print coverage, gap classes, and statistics")
    report.add_argument("--format", choices=("text", "json"), default="text")

    q = sub.add_parser("query", parents=[common], help="look up terms; prints JSON")
    q.add_argument("space", choices=("se", "rse", "section"), help="key space to search")
    q.add_argument("key", help="SE term, RSE concept, or section id")

    return parser


def _load_config_file(path: Path) -> dict:
    try:
        raw = path.read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise FatalError(f"cannot read config file {path}: {exc}") from exc
    try:
        data = parse_yaml_mapping(raw, what="config file")
    except FrontmatterSyntaxError as exc:
        raise FatalError(str(exc)) from exc

    unknown = sorted(set(map(str, data)) - _CONFIG_KEYS)
    if unknown:
        raise FatalError(f"unknown config keys: {', '.join(unknown)}")

    settings: dict = {}
    if "staleness_days" in data:
        value = data["staleness_days"]
        if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
            raise FatalError(f"config staleness_days must be a positive integer, got {value!r}")
        settings["staleness_days"] = value
    if "scope" in data:
        value = data["scope"]
        if not isinstance(value, list) or not value or not all(
            isinstance(item, int) and not isinstance(item, bool) for item in value
        ):
            raise FatalError(f"config scope must be a non-empty list of integers, got {value!r}")
        settings["scope"] = frozenset(value)
    for key in ("base_url", "title"):
        if key in data:
            value = data[key]
            if not isinstance(value, str):
                raise FatalError(f"config {key} must be text, got {value!r}")
            settings[key] = value
    return settings


def _exit_code(diagnostics: list[Diagnostic], strict: bool) -> int:
    errors, warnings = severity_counts(diagnostics)
    if errors or (strict and warnings):
        return EXIT_LINT
    return EXIT_OK


def _print_diagnostics(diagnostics: list[Diagnostic], stream) -> None:
    for diagnostic in diagnostics:
        print(diagnostic.render(), file=stream)


def _summary_line(diagnostics: list[Diagnostic]) -> str:
    errors, warnings = severity_counts(diagnostics)
    return f"{errors} error(s), {warnings} warning(s)"


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))


def _report_payload(toc: Toc, index: MappingIndex, terms: list[TermMapping]) -> dict:
    coverage = compute_coverage(toc, index)
    stats = compute_stats(terms)
    gaps = {term.id: classify_gap(term).to_dict() for term in terms}
    return {"coverage": coverage.to_dict(), "gaps": gaps, "stats": stats.to_dict()}


def _print_report_text(toc: Toc, index: MappingIndex, terms: list[TermMapping]) -> None:
    coverage = compute_coverage(toc, index)
    counts = coverage.to_dict()["counts"]
    print(
        f"Coverage: {counts['covered']} covered, "
        f"{counts['expected_uncovered']} awaiting a mapping, "
        f"{counts['not_applicable']} not applicable"
    )
    uncovered = [
        entry
        for entry in toc.entries
        if coverage.statuses[entry.section].value == "expected_uncovered"
    ]
    if uncovered:
        print("Sections awaiting a mapping:")
        for entry in uncovered:
            print(f"  {entry.section.text()}  {entry.heading}")
    stats = compute_stats(terms).to_dict()
    print("Gap classes:")
    for name, count in sorted(stats["gap_classes"].items()):
        print(f"  {name}: {count}")
    print("Terms:")
    for term in sorted(terms, key=lambda t: t.id):
        gap = classify_gap(term)
        marker = " (research opportunity)" if gap.research_opportunity else ""
        print(f"  {term.id}: {gap.category.value}{marker}")
    for scale in ("awareness", "usage", "potential"):
        histogram = stats[scale]
        rendered = ", ".join(f"{key}={histogram[key]}" for key in ("0", "1", "2", "3", "unknown"))
        print(f"{scale.capitalize()} distribution: {rendered}")
    print(f"Summary: {stats['term_count']} term(s)")


def run(cfg: RunConfig) -> int:
    try:
        return _run(cfg)
    except FatalError as exc:
        print(f"fatal: {exc}", file=sys.stderr)
        return EXIT_FATAL


def _run(cfg: RunConfig) -> int:
    file_settings = _load_config_file(cfg.config_path) if cfg.config_path else {}
    staleness = cfg.staleness_days or file_settings.get("staleness_days") or DEFAULT_STALENESS_DAYS
    scope = cfg.scope or file_settings.get("scope") or DEFAULT_SCOPE
    base_url = file_settings.get("base_url", "")
    title = file_settings.get("title", DEFAULT_TITLE)

    try:
        toc, diagnostics = load_toc(cfg.toc_path, scope=scope)
    except OSError as exc:
        raise FatalError(f"cannot read TOC file {cfg.toc_path}: {exc}") from exc
    if not cfg.terms_dir.is_dir():
        raise FatalError(f"terms directory {cfg.terms_dir} does not exist")
    try:
        terms, term_diags = load_corpus(cfg.terms_dir, toc, staleness_days=staleness)
    except OSError as exc:
        raise FatalError(f"cannot read terms directory {cfg.terms_dir}: {exc}") from exc
    diagnostics = diagnostics + term_diags

    index, index_diags = build_index(terms)
    diagnostics += index_diags
    code = _exit_code(diagnostics, cfg.strict)

    if cfg.command == "query":
        try:
            space = Space(cfg.space)
            results = query(index, space, cfg.key or "")
        except MalformedSectionId as exc:
            raise FatalError(str(exc)) from exc
        _print_diagnostics(diagnostics, sys.stderr)
        print(json.dumps([term.to_dict() for term in results], indent=2, sort_keys=True, ensure_ascii=False))
        return code

    if cfg.command == "check":
        if cfg.format == "json":
            errors, warnings = severity_counts(diagnostics)
            _emit_json(
                {
                    "command": "check",
                    "diagnostics": [d.to_dict() for d in diagnostics],
                    "summary": {"errors": errors, "warnings": warnings},
                }
            )
        else:
            _print_diagnostics(diagnostics, sys.stdout)
            print(_summary_line(diagnostics))
        return code

    if cfg.command == "report":
        if cfg.format == "json":
            errors, warnings = severity_counts(diagnostics)
            payload = _report_payload(toc, index, terms)
            payload.update(
                {
                    "command": "report",
                    "diagnostics": [d.to_dict() for d in diagnostics],
                    "summary": {"errors": errors, "warnings": warnings},
                }
            )
            _emit_json(payload)
        else:
            _print_diagnostics(diagnostics, sys.stdout)
            _print_report_text(toc, index, terms)
        return code

    # build
    assert cfg.out_dir is not None
    site_cfg = SiteConfig(
        output_dir=cfg.out_dir,
        base_url=base_url,
        title=title,
        staleness_days=staleness,
        scope=frozenset(scope),
    )
    coverage = compute_coverage(toc, index)
    stats = compute_stats(terms)
    try:
        written = write_site(toc, index, coverage, stats, site_cfg)
    except OSError as exc:
        raise FatalError(f"cannot write site to {cfg.out_dir}: {exc}") from exc
    except SiteBuildError as exc:
        raise FatalError(str(exc)) from exc

    if cfg.format == "json":
        errors, warnings = severity_counts(diagnostics)
        _emit_json(
            {
                "command": "build",
                "diagnostics": [d.to_dict() for d in diagnostics],
                "summary": {"errors": errors, "warnings": warnings},
                "output_dir": str(cfg.out_dir),
                "files_written": len(written),
            }
        )
    else:
        _print_diagnostics(diagnostics, sys.stdout)
        print(_summary_line(diagnostics))
        print(f"site written to {cfg.out_dir} ({len(written)} files)")
    return code


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        toc_path=args.toc,
        terms_dir=args.terms,
        out_dir=getattr(args, "out", None),
        space=getattr(args, "space", None),
        key=getattr(args, "key", None),
        config_path=args.config,
        strict=args.strict,
        format=getattr(args, "format", "text"),
        staleness_days=args.staleness_days,
        scope=args.scope,
    )
    return run(cfg)


if __name__ == "__main__":
    raise SystemExit(main())
