"""Parsing and serialization of the SWEBOK table-of-contents TSV.

The on-disk format is strict: UTF-8 text, one record per line, exactly four
fields separated by single TAB characters (section id, heading, page label,
applicability). The fourth field is blank for mappable sections or "n/a" for
sections with nothing to map. Blank lines and lines starting with "#" are
skipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .model import (
    Applicability,
    Diagnostic,
    MalformedSectionId,
    SectionId,
    TocEntry,
)

DEFAULT_SCOPE = frozenset(range(1, 11))


def parse_section_id(text: str) -> SectionId:
    """Parse a dotted two-digit section id such as "01", "01.03" or "04.02.11".

    Raises MalformedSectionId for anything that is not already in canonical
    form: wrong digit counts, wrong separators, more than three levels.
    """
    return SectionId.from_text(text)


def format_section_id(section: SectionId) -> str:
    """Canonical dotted form; `parse_section_id(format_section_id(x)) == x`."""
    return section.text()


@dataclass(frozen=True)
class Toc:
    """A validated table of contents plus the knowledge-area scope in effect.

    Entries keep source-file order. Sections outside the scope are retained
    (the site renders the whole TOC) and can be flagged via `in_scope`.
    """

    entries: tuple[TocEntry, ...]
    knowledge_area_scope: frozenset[int] = DEFAULT_SCOPE

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "knowledge_area_scope", frozenset(self.knowledge_area_scope))
        by_section: dict[SectionId, TocEntry] = {}
        for entry in entries:
            if entry.section in by_section:
                raise ValueError(f"duplicate section id {entry.section}")
            by_section[entry.section] = entry
        object.__setattr__(self, "_by_section", by_section)

    def get(self, section: SectionId) -> TocEntry | None:
        return self._by_section.get(section)  # type: ignore[attr-defined]

    def sections(self) -> frozenset[SectionId]:
        return frozenset(self._by_section)  # type: ignore[attr-defined]

    def in_scope(self, section: SectionId) -> bool:
        return section.knowledge_area in self.knowledge_area_scope


def parse_toc(
    content: str,
    scope: frozenset[int] = DEFAULT_SCOPE,
    source: str = "<toc>",
) -> tuple[Toc, list[Diagnostic]]:
    """Parse TSV text into a Toc, collecting per-line diagnostics.

    Lines with recoverable problems (wrong field count, malformed or
    duplicate section id, bad fourth field, blank heading or page) produce an
    Error diagnostic and are skipped; everything else is kept in order.
    """
    entries: list[TocEntry] = []
    diagnostics: list[Diagnostic] = []
    seen: set[SectionId] = set()

    for lineno, raw in enumerate(content.split("\n"), start=1):
        line = raw.rstrip("\r")
        locus = f"line {lineno}"
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            diagnostics.append(
                Diagnostic.error(
                    "E201", source, locus, f"expected 4 tab-separated fields, got {len(fields)}"
                )
            )
            continue
        section_text, heading, page, applic_text = (field.strip() for field in fields)
        try:
            section = parse_section_id(section_text)
        except MalformedSectionId as exc:
            diagnostics.append(Diagnostic.error("E202", source, locus, str(exc)))
            continue
        if section in seen:
            diagnostics.append(
                Diagnostic.error("E203", source, locus, f"duplicate section id {section}")
            )
            continue
        if not heading:
            diagnostics.append(Diagnostic.error("E205", source, locus, "heading is empty"))
            continue
        if not page:
            diagnostics.append(Diagnostic.error("E206", source, locus, "page label is empty"))
            continue
        if applic_text == "":
            applicability = Applicability.MAPPABLE
        elif applic_text.casefold() == "n/a":
            if applic_text != "n/a":
                diagnostics.append(
                    Diagnostic.warning(
                        "W201", source, locus, f"{applic_text!r} accepted as 'n/a'; use lowercase"
                    )
                )
            applicability = Applicability.NOT_APPLICABLE
        else:
            diagnostics.append(
                Diagnostic.error(
                    "E204",
                    source,
                    locus,
                    f"fourth field must be blank or 'n/a', got {applic_text!r}",
                )
            )
            continue
        seen.add(section)
        entries.append(TocEntry(section, heading, page, applicability))

    return Toc(tuple(entries), frozenset(scope)), diagnostics


def toc_to_tsv(toc: Toc) -> str:
    """Serialize back to the TSV format; `parse_toc(toc_to_tsv(t))` equals `t`."""
    lines = []
    for entry in toc.entries:
        fourth = "n/a" if entry.applicability is Applicability.NOT_APPLICABLE else ""
        lines.append(f"{entry.section.text()}\t{entry.heading}\t{entry.page}\t{fourth}")
    return "\n".join(lines) + ("\n" if lines else "")


def load_toc(
    path: str | Path,
    scope: frozenset[int] = DEFAULT_SCOPE,
) -> tuple[Toc, list[Diagnostic]]:
    """Read and parse a TOC file. Raises OSError if the file is unreadable."""
    text = Path(path).read_text(encoding="utf-8-sig")
    return parse_toc(text, scope, source=str(path))
