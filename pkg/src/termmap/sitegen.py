"""Static-site rendering and the machine-readable JSON export.

Output is fully self-contained and deterministic: identical inputs produce
byte-identical HTML and JSON. The site layout is

    index.html          table of contents with mapping links
    terms/<slug>.html   one page per term
    index.json          machine-readable export (schema_version "1")
    assets/site.css     styling, including the red not-applicable rows
"""

from __future__ import annotations

import html
import json
import os
import urllib.parse
from dataclasses import dataclass
from datetime import datetime, timezone
from html.parser import HTMLParser
from pathlib import Path

import markdown

from .analysis import CorpusStats, CoverageReport, CoverageStatus, GapClass, classify_gap
from .index import MappingIndex
from .model import Applicability, TermMapping
from .terms import EmptySlug, slugify  # re-exported: slug rules live with term ids
from .toc import DEFAULT_SCOPE, Toc

__all__ = [
    "EmptySlug",
    "SCHEMA_VERSION",
    "SiteBuildError",
    "SiteConfig",
    "export_json_index",
    "extract_links",
    "find_dangling_links",
    "import_json_index",
    "render_term_page",
    "render_toc_page",
    "slugify",
    "write_site",
]

SCHEMA_VERSION = "1"

SITE_CSS = """\
body { font-family: Georgia, 'Times New Roman', serif; margin: 2rem auto; max-width: 60rem;
       padding: 0 1rem; color: #1c1c1c; line-height: 1.5; }
h1, h2 { font-family: Helvetica, Arial, sans-serif; }
table.toc { border-collapse: collapse; width: 100%; }
table.toc th, table.toc td { border: 1px solid #ccc; padding: 0.3rem 0.6rem; text-align: left; }
table.toc th { background: #f0f0f0; }
tr.not-applicable td { color: #b22222; }
tr.out-of-scope td { opacity: 0.65; }
dl { display: grid; grid-template-columns: max-content 1fr; gap: 0.2rem 1rem; }
dt { font-weight: bold; }
dd { margin: 0; }
p.gap-class { font-style: italic; }
ul.term-list { columns: 2; }
"""


class SiteBuildError(RuntimeError):
    """The build cannot proceed or produced an inconsistent output tree."""


@dataclass(frozen=True)
class SiteConfig:
    output_dir: Path
    base_url: str = ""
    title: str = "SE to RSE terminology mapping"
    staleness_days: int = 365
    scope: frozenset[int] = DEFAULT_SCOPE

    def __post_init__(self) -> None:
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        if self.staleness_days <= 0:
            raise ValueError("staleness_days must be positive")


def _esc(text: str) -> str:
    return html.escape(text, quote=True)


def _generated_at() -> str:
    """Build timestamp for the JSON export.

    Deterministic by default so repeated builds are byte-identical; set
    SOURCE_DATE_EPOCH (the reproducible-builds convention) to stamp a real
    time.
    """
    raw = os.environ.get("SOURCE_DATE_EPOCH")
    if raw is None or not raw.strip():
        epoch = 0
    else:
        try:
            epoch = int(raw)
        except ValueError:
            raise SiteBuildError(f"SOURCE_DATE_EPOCH must be an integer, got {raw!r}") from None
    stamp = datetime.fromtimestamp(epoch, tz=timezone.utc)
    return stamp.strftime("%Y-%m-%dT%H:%M:%SZ")


def _document(title: str, css_href: str, body_html: str, cfg: SiteConfig, page_path: str) -> str:
    head = [
        "<!DOCTYPE html>",
        '<html lang="en">',
        "<head>",
        '<meta charset="utf-8">',
        '<meta name="viewport" content="width=device-width, initial-scale=1">',
        f"<title>{_esc(title)}</title>",
        f'<link rel="stylesheet" href="{css_href}">',
    ]
    if cfg.base_url:
        canonical = cfg.base_url.rstrip("/") + "/" + page_path
        head.append(f'<link rel="canonical" href="{_esc(canonical)}">')
    head.append("</head>")
    head.append("<body>")
    tail = [
        "<!-- comment-backend-placeholder: a deployment may inject a discussion widget here -->",
        "</body>",
        "</html>",
        "",
    ]
    return "\n".join(head + [body_html] + tail)


def _term_label(term: TermMapping) -> str:
    return term.se_fundamental[0] if term.se_fundamental else term.id


_STATUS_CLASS = {
    CoverageStatus.COVERED: "covered",
    CoverageStatus.EXPECTED_UNCOVERED: "uncovered",
    CoverageStatus.NOT_APPLICABLE: "not-applicable",
}


def render_toc_page(
    toc: Toc,
    coverage: CoverageReport,
    index: MappingIndex,
    cfg: SiteConfig,
) -> str:
    """The main page: the full TOC with one row per entry, in source order.

    Not-applicable rows get the "not-applicable" class and a literal "n/a"
    cell; covered rows link to every matching term page; mappable sections
    without a term keep the cell blank.
    """
    parts = [f"<h1>{_esc(cfg.title)}</h1>"]
    counts = coverage.counts
    parts.append(
        '<p class="summary">'
        f"{len(toc.entries)} sections: {counts[CoverageStatus.COVERED]} mapped, "
        f"{counts[CoverageStatus.EXPECTED_UNCOVERED]} awaiting a mapping, "
        f"{counts[CoverageStatus.NOT_APPLICABLE]} not applicable."
        "</p>"
    )
    parts.append('<table class="toc">')
    parts.append("<thead><tr><th>Section</th><th>Heading</th><th>Page</th><th>Mapping</th></tr></thead>")
    parts.append("<tbody>")
    for entry in toc.entries:
        status = coverage.statuses[entry.section]
        classes = [_STATUS_CLASS[status]]
        if not toc.in_scope(entry.section):
            classes.append("out-of-scope")
        if status is CoverageStatus.NOT_APPLICABLE:
            cell = "n/a"
        elif status is CoverageStatus.COVERED:
            links = [
                f'<a href="terms/{term_id}.html">{_esc(_term_label(index.terms[term_id]))}</a>'
                for term_id in index.by_section[entry.section]
            ]
            cell = ", ".join(links)
        else:
            cell = ""
        section_text = entry.section.text()
        parts.append(
            f'<tr class="{" ".join(classes)}" id="section-{section_text}">'
            f"<td>{section_text}</td><td>{_esc(entry.heading)}</td>"
            f"<td>{_esc(entry.page)}</td><td>{cell}</td></tr>"
        )
    parts.append("</tbody>")
    parts.append("</table>")

    parts.append("<h2>All terms</h2>")
    parts.append('<ul class="term-list">')
    for term_id in sorted(index.terms):
        parts.append(
            f'<li><a href="terms/{term_id}.html">{_esc(_term_label(index.terms[term_id]))}</a></li>'
        )
    parts.append("</ul>")
    return _document(cfg.title, "assets/site.css", "\n".join(parts), cfg, "index.html")


def _is_url(text: str) -> bool:
    parsed = urllib.parse.urlparse(text.strip())
    return parsed.scheme in ("http", "https") and bool(parsed.netloc)


def _scale_cell(value, source) -> str:
    if value is None:
        return "not assessed"
    rendered = f"{value.value} / 3"
    if source and source.strip():
        rendered += f" (source: {_esc(source.strip())})"
    return rendered


def render_term_page(term: TermMapping, gap: GapClass, cfg: SiteConfig) -> str:
    """One page per term: every populated schema field in labeled groups,
    the computed gap class, and the rendered notes body."""
    parts = [f"<h1>{_esc(_term_label(term))}</h1>"]
    gap_text = gap.category.value.replace("_", " ")
    if gap.research_opportunity:
        gap_text += ", flagged as a research opportunity"
    parts.append(f'<p class="gap-class">Classification: {_esc(gap_text)}</p>')

    parts.append('<section class="se-side">')
    parts.append("<h2>Software engineering side</h2>")
    parts.append("<dl>")
    parts.append(f"<dt>SE fundamental</dt><dd>{_esc('; '.join(term.se_fundamental))}</dd>")
    if term.fundamental_description.strip():
        parts.append(f"<dt>Description</dt><dd>{_esc(term.fundamental_description)}</dd>")
    section_links = ", ".join(
        f'<a href="../index.html#section-{section.text()}">{section.text()}</a>'
        for section in term.swebok_section
    )
    parts.append(f"<dt>SWEBOK sections</dt><dd>{section_links}</dd>")
    parts.append("</dl>")
    parts.append("</section>")

    parts.append('<section class="rse-side">')
    parts.append("<h2>Research software side</h2>")
    parts.append("<dl>")
    parts.append(f"<dt>RSE concept</dt><dd>{_esc('; '.join(term.rse_concept))}</dd>")
    if term.rse_practice.strip():
        parts.append(f"<dt>Typical practice</dt><dd>{_esc(term.rse_practice)}</dd>")
    parts.append("</dl>")
    parts.append("</section>")

    parts.append('<section class="assessment">')
    parts.append("<h2>Awareness and usage</h2>")
    parts.append("<dl>")
    parts.append(f"<dt>RSE awareness</dt><dd>{_scale_cell(term.rse_awareness, term.rse_awareness_source)}</dd>")
    parts.append(f"<dt>RSE usage</dt><dd>{_scale_cell(term.rse_usage, term.rse_usage_source)}</dd>")
    parts.append("</dl>")
    parts.append("</section>")

    parts.append('<section class="potential">')
    parts.append("<h2>Potential for SE research</h2>")
    parts.append("<dl>")
    parts.append(f"<dt>Potential</dt><dd>{_scale_cell(term.ser_potential, term.ser_potential_source)}</dd>")
    if term.ser_opportunities and term.ser_opportunities.strip():
        parts.append(f"<dt>Opportunities</dt><dd>{_esc(term.ser_opportunities)}</dd>")
    parts.append("</dl>")
    parts.append("</section>")

    if term.references:
        parts.append('<section class="references">')
        parts.append("<h2>References</h2>")
        parts.append("<ul>")
        for reference in term.references:
            if _is_url(reference):
                target = _esc(reference.strip())
                parts.append(f'<li><a href="{target}">{target}</a></li>')
            else:
                parts.append(f"<li>{_esc(reference)}</li>")
        parts.append("</ul>")
        parts.append("</section>")

    if term.last_reviewed is not None:
        parts.append(f'<p class="last-reviewed">Last reviewed: {term.last_reviewed.isoformat()}</p>')

    if term.body.strip():
        parts.append('<section class="notes">')
        parts.append("<h2>Notes</h2>")
        parts.append(markdown.markdown(term.body))
        parts.append("</section>")

    parts.append('<p class="back"><a href="../index.html">Back to the table of contents</a></p>')
    return _document(
        f"{_term_label(term)} - {cfg.title}",
        "../assets/site.css",
        "\n".join(parts),
        cfg,
        f"terms/{term.id}.html",
    )


def export_json_index(
    toc: Toc,
    index: MappingIndex,
    coverage: CoverageReport,
    stats: CorpusStats,
    cfg: SiteConfig,
) -> str:
    """Single JSON document with the whole compiled knowledge base.

    Keys are sorted, so identical inputs give byte-identical output. TOC
    entries keep source order inside their array.
    """
    document = {
        "schema_version": SCHEMA_VERSION,
        "generated_at": _generated_at(),
        "toc": {
            "knowledge_area_scope": sorted(toc.knowledge_area_scope),
            "entries": [
                {
                    "section": entry.section.text(),
                    "heading": entry.heading,
                    "page": entry.page,
                    "applicability": entry.applicability.value,
                }
                for entry in toc.entries
            ],
        },
        "terms": [index.terms[term_id].to_dict() for term_id in sorted(index.terms)],
        "coverage": coverage.to_dict(),
        "stats": stats.to_dict(),
    }
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def import_json_index(text: str) -> MappingIndex:
    """Rebuild a MappingIndex from an exported index.json document."""
    from .index import build_index

    document = json.loads(text)
    records = [TermMapping.from_dict(raw) for raw in document.get("terms", [])]
    rebuilt, _ = build_index(records)
    return rebuilt


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def write_site(
    toc: Toc,
    index: MappingIndex,
    coverage: CoverageReport,
    stats: CorpusStats,
    cfg: SiteConfig,
) -> list[Path]:
    """Emit the whole site under cfg.output_dir; returns the files written.

    Idempotent: stale term pages from a previous build are removed, and each
    file is written atomically. Raises SiteBuildError if the finished tree
    has a dangling internal link (an internal invariant; should not happen).
    """
    out = cfg.output_dir
    (out / "terms").mkdir(parents=True, exist_ok=True)
    (out / "assets").mkdir(parents=True, exist_ok=True)

    written: list[Path] = []

    css_path = out / "assets" / "site.css"
    _write_atomic(css_path, SITE_CSS)
    written.append(css_path)

    index_path = out / "index.html"
    _write_atomic(index_path, render_toc_page(toc, coverage, index, cfg))
    written.append(index_path)

    for term_id in sorted(index.terms):
        term = index.terms[term_id]
        page_path = out / "terms" / f"{term_id}.html"
        _write_atomic(page_path, render_term_page(term, classify_gap(term), cfg))
        written.append(page_path)

    for stale in (out / "terms").glob("*.html"):
        if stale.stem not in index.terms:
            stale.unlink()

    json_path = out / "index.json"
    _write_atomic(json_path, export_json_index(toc, index, coverage, stats, cfg))
    written.append(json_path)

    dangling = find_dangling_links(out)
    if dangling:
        raise SiteBuildError(f"dangling internal links: {', '.join(dangling)}")
    return written


class _LinkCollector(HTMLParser):
    def __init__(self) -> None:
        super().__init__()
        self.links: list[str] = []

    def handle_starttag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        attributes = dict(attrs)
        for name in ("href", "src"):
            value = attributes.get(name)
            if value:
                self.links.append(value)


def extract_links(html_text: str) -> list[str]:
    """All href/src values in a document, in order."""
    collector = _LinkCollector()
    collector.feed(html_text)
    return collector.links


def find_dangling_links(out_dir: Path) -> list[str]:
    """Internal links in emitted HTML whose target file does not exist."""
    out = Path(out_dir)
    missing: set[str] = set()
    for page in sorted(out.rglob("*.html")):
        for link in extract_links(page.read_text(encoding="utf-8")):
            if link.startswith(("http://", "https://", "mailto:", "#", "data:")):
                continue
            target = link.split("#", 1)[0]
            if not target:
                continue
            resolved = (page.parent / target).resolve()
            if not resolved.is_file():
                missing.add(f"{page.relative_to(out)} -> {link}")
    return sorted(missing)
