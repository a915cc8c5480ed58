"""Domain types shared across the pipeline.

Everything here is an immutable value object. Construction enforces the
invariants that can be checked locally (section-id grammar, scale range);
cross-record rules live in the lint passes (`terms.validate_term`,
`index.build_index`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import date, datetime
from enum import Enum
from typing import Any, Iterable, Mapping

_SECTION_RE = re.compile(r"[0-9]{2}(?:\.[0-9]{2}){0,2}\Z")


class MalformedSectionId(ValueError):
    """Text does not follow the dotted two-digit section-id grammar."""


@dataclass(frozen=True, order=True)
class SectionId:
    """SWEBOK section identifier: one to three levels, each in 0-99.

    The canonical text form zero-fills every level to exactly two digits and
    joins them with ".", e.g. "01", "01.03", "04.02.11".
    """

    levels: tuple[int, ...]

    def __post_init__(self) -> None:
        levels = tuple(self.levels)
        object.__setattr__(self, "levels", levels)
        if not 1 <= len(levels) <= 3:
            raise ValueError(f"section id needs 1-3 levels, got {len(levels)}")
        for level in levels:
            if isinstance(level, bool) or not isinstance(level, int) or not 0 <= level <= 99:
                raise ValueError(f"section level out of range: {level!r}")

    @classmethod
    def from_text(cls, text: str) -> "SectionId":
        trimmed = text.strip()
        if not _SECTION_RE.fullmatch(trimmed):
            raise MalformedSectionId(
                f"{trimmed!r} is not a dotted two-digit section id (like '01' or '01.03')"
            )
        return cls(tuple(int(part) for part in trimmed.split(".")))

    def text(self) -> str:
        return ".".join(f"{level:02d}" for level in self.levels)

    @property
    def knowledge_area(self) -> int:
        """Top-level chapter number this section belongs to."""
        return self.levels[0]

    def __str__(self) -> str:
        return self.text()


class Applicability(Enum):
    """Whether a TOC section is expected to have mapped terms."""

    MAPPABLE = "mappable"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class TocEntry:
    """One table-of-contents row: section, heading, page label, applicability.

    `page` is opaque text, not a number; front matter and chapter-relative
    labels like "4-1" or "xvii" are all legal.
    """

    section: SectionId
    heading: str
    page: str
    applicability: Applicability = Applicability.MAPPABLE

    def __post_init__(self) -> None:
        if not self.heading.strip():
            raise ValueError("TOC heading must be non-empty")
        if not self.page.strip():
            raise ValueError("TOC page label must be non-empty")


@dataclass(frozen=True, order=True)
class Scale03:
    """Four-point assessment scale: 0 means effectively none, 3 widespread."""

    value: int

    def __post_init__(self) -> None:
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise ValueError(f"scale value must be an integer, got {self.value!r}")
        if not 0 <= self.value <= 3:
            raise ValueError(f"scale value must be in [0, 3], got {self.value}")

    def __int__(self) -> int:
        return self.value


# The three frontmatter keys that must list at least one entry.
REQUIRED_LIST_KEYS = ("se_fundamental", "swebok_section", "rse_concept")


@dataclass(frozen=True)
class TermMapping:
    """One term-mapping record: the full frontmatter schema plus free-form notes.

    A missing scale means "not assessed", which is distinct from an assessed
    value of 0; the lint layer warns about unassessed scales but never
    conflates them with zero.
    """

    id: str
    se_fundamental: tuple[str, ...]
    swebok_section: tuple[SectionId, ...]
    rse_concept: tuple[str, ...]
    fundamental_description: str = ""
    rse_practice: str = ""
    rse_awareness: Scale03 | None = None
    rse_awareness_source: str | None = None
    rse_usage: Scale03 | None = None
    rse_usage_source: str | None = None
    ser_potential: Scale03 | None = None
    ser_potential_source: str | None = None
    ser_opportunities: str | None = None
    references: tuple[str, ...] = ()
    last_reviewed: date | None = None
    body: str = ""

    def __post_init__(self) -> None:
        for name in ("se_fundamental", "swebok_section", "rse_concept", "references"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.id.strip():
            raise ValueError("term id must be non-empty")
        # Lists may be empty (the linter reports that as E003), but entries
        # that do exist must be real text.
        for name in ("se_fundamental", "rse_concept", "references"):
            for entry in getattr(self, name):
                if not isinstance(entry, str) or not entry.strip():
                    raise ValueError(f"{name} entries must be non-blank text, got {entry!r}")

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready form; inverse of `from_dict`."""

        def scale(value: Scale03 | None) -> int | None:
            return value.value if value is not None else None

        return {
            "id": self.id,
            "se_fundamental": list(self.se_fundamental),
            "fundamental_description": self.fundamental_description,
            "swebok_section": [section.text() for section in self.swebok_section],
            "rse_concept": list(self.rse_concept),
            "rse_practice": self.rse_practice,
            "rse_awareness": scale(self.rse_awareness),
            "rse_awareness_source": self.rse_awareness_source,
            "rse_usage": scale(self.rse_usage),
            "rse_usage_source": self.rse_usage_source,
            "ser_potential": scale(self.ser_potential),
            "ser_potential_source": self.ser_potential_source,
            "ser_opportunities": self.ser_opportunities,
            "references": list(self.references),
            "last_reviewed": self.last_reviewed.isoformat() if self.last_reviewed else None,
            "body": self.body,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "TermMapping":
        def scale(value: Any) -> Scale03 | None:
            return Scale03(value) if value is not None else None

        reviewed = data.get("last_reviewed")
        return cls(
            id=data["id"],
            se_fundamental=tuple(data.get("se_fundamental") or ()),
            swebok_section=tuple(
                SectionId.from_text(text) for text in data.get("swebok_section") or ()
            ),
            rse_concept=tuple(data.get("rse_concept") or ()),
            fundamental_description=data.get("fundamental_description") or "",
            rse_practice=data.get("rse_practice") or "",
            rse_awareness=scale(data.get("rse_awareness")),
            rse_awareness_source=data.get("rse_awareness_source"),
            rse_usage=scale(data.get("rse_usage")),
            rse_usage_source=data.get("rse_usage_source"),
            ser_potential=scale(data.get("ser_potential")),
            ser_potential_source=data.get("ser_potential_source"),
            ser_opportunities=data.get("ser_opportunities"),
            references=tuple(data.get("references") or ()),
            last_reviewed=date.fromisoformat(reviewed) if reviewed else None,
            body=data.get("body") or "",
        )


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    """One lint finding with a stable code and a source location.

    Codes are part of the tool's contract: the same input always produces
    the same code set, so CI can grep for them.
    """

    code: str
    severity: Severity
    file: str
    locus: str
    message: str

    @classmethod
    def error(cls, code: str, file: str, locus: str, message: str) -> "Diagnostic":
        return cls(code, Severity.ERROR, file, locus, message)

    @classmethod
    def warning(cls, code: str, file: str, locus: str, message: str) -> "Diagnostic":
        return cls(code, Severity.WARNING, file, locus, message)

    def render(self) -> str:
        return f"{self.severity.value}: {self.code} {self.file}:{self.locus}: {self.message}"

    def to_dict(self) -> dict[str, str]:
        return {
            "code": self.code,
            "severity": self.severity.value,
            "file": self.file,
            "locus": self.locus,
            "message": self.message,
        }


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)


def severity_counts(diagnostics: Iterable[Diagnostic]) -> tuple[int, int]:
    """(error count, warning count)."""
    errors = warnings = 0
    for diagnostic in diagnostics:
        if diagnostic.severity is Severity.ERROR:
            errors += 1
        else:
            warnings += 1
    return errors, warnings


def parse_iso_date(text: str) -> date:
    """Strict YYYY-MM-DD parse; raises ValueError on format or calendar errors."""
    if not re.fullmatch(r"[0-9]{4}-[0-9]{2}-[0-9]{2}", text):
        raise ValueError(f"date must be written exactly as YYYY-MM-DD, got {text!r}")
    return datetime.strptime(text, "%Y-%m-%d").date()
