"""Term-file discovery, frontmatter decoding, and schema validation.

A term file is UTF-8 Markdown whose first line is exactly "---", followed by
a YAML frontmatter block, a closing "---" line, and an optional free-form
notes body. The frontmatter carries the mapping schema; `decode_term` turns
it into a `TermMapping` and `validate_term` runs the lint rules against it.

Diagnostic codes emitted here:

  E001  scale value outside 0-3 (value ignored)
  E002  swebok_section entry not present in the TOC
  E003  required list key (se_fundamental, swebok_section, rse_concept) empty
  E004  last_reviewed is not a valid YYYY-MM-DD calendar date
  E005  field has the wrong type or a blank entry (value ignored)
  E006  frontmatter is not parseable YAML / not a key-value mapping
  E007  file does not start with a "---" line
  E008  frontmatter block never closed by a "---" line
  E009  filename produces an empty slug
  E010  two files slug to the same term id
  E011  file is not readable as UTF-8 text
  W001  scale is set but its *_source field is empty
  W002  cited section is marked "n/a" in the TOC
  W003  last_reviewed is older than the staleness threshold
  W004  ser_potential is 2 or 3 but ser_opportunities is empty
  W005  fundamental_description longer than 400 characters
  W006  unknown frontmatter key
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import date, datetime
from pathlib import Path
from typing import Any

import yaml

from .model import (
    REQUIRED_LIST_KEYS,
    Applicability,
    Diagnostic,
    MalformedSectionId,
    Scale03,
    SectionId,
    TermMapping,
    parse_iso_date,
)
from .toc import Toc

# Listing order of the frontmatter schema; also the canonical encode order.
SCHEMA_KEYS = (
    "se_fundamental",
    "fundamental_description",
    "swebok_section",
    "rse_concept",
    "rse_practice",
    "rse_awareness",
    "rse_awareness_source",
    "rse_usage",
    "rse_usage_source",
    "ser_potential",
    "ser_potential_source",
    "ser_opportunities",
    "references",
    "last_reviewed",
)

_SCALE_KEYS = (
    ("rse_awareness", "rse_awareness_source"),
    ("rse_usage", "rse_usage_source"),
    ("ser_potential", "ser_potential_source"),
)

DEFAULT_STALENESS_DAYS = 365


class MissingFrontmatter(ValueError):
    """File does not begin with a '---' delimiter line."""


class UnterminatedFrontmatter(ValueError):
    """No closing '---' delimiter line was found."""


class FrontmatterSyntaxError(ValueError):
    """Frontmatter is not parseable as a YAML key-value mapping."""


class EmptySlug(ValueError):
    """Slugification removed every character."""


class _FrontmatterLoader(yaml.SafeLoader):
    """SafeLoader without implicit timestamps.

    Date fields must stay text so they can be checked against the exact
    YYYY-MM-DD contract (a bad month would otherwise abort the whole parse).
    """


_FrontmatterLoader.yaml_implicit_resolvers = {
    key: [(tag, regexp) for tag, regexp in resolvers if tag != "tag:yaml.org,2002:timestamp"]
    for key, resolvers in yaml.SafeLoader.yaml_implicit_resolvers.items()
}


def parse_yaml_mapping(text: str, what: str = "frontmatter") -> dict[str, Any]:
    """Parse YAML that must be a mapping (or empty). Raises FrontmatterSyntaxError."""
    try:
        data = yaml.load(text, Loader=_FrontmatterLoader)
    except yaml.YAMLError as exc:
        raise FrontmatterSyntaxError(f"{what} is not valid YAML: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise FrontmatterSyntaxError(f"{what} must be a key-value mapping")
    return data


def slugify(stem: str) -> str:
    """Derive a stable id from a filename stem.

    Lowercases, maps spaces and underscores to "-", drops anything outside
    [a-z0-9-], collapses runs of "-", and trims leading/trailing "-".
    Raises EmptySlug if nothing is left.
    """
    text = stem.lower().replace(" ", "-").replace("_", "-")
    text = re.sub(r"[^a-z0-9-]+", "", text)
    text = re.sub(r"-{2,}", "-", text).strip("-")
    if not text:
        raise EmptySlug(f"no slug characters left in {stem!r}")
    return text


@dataclass(frozen=True)
class TermFile:
    """Raw split of one term file: the text between the delimiters and the rest."""

    path: str
    frontmatter_text: str
    body_text: str


def split_frontmatter(content: str, path: str = "<string>") -> TermFile:
    """Split file content into frontmatter and body.

    The frontmatter is strictly the text between the first line (which must
    be exactly "---") and the next "---" line; the body is everything after
    that, verbatim. Raises MissingFrontmatter / UnterminatedFrontmatter.
    """
    lines = content.split("\n")
    if not lines or lines[0].rstrip("\r") != "---":
        raise MissingFrontmatter(f"{path}: first line must be exactly '---'")
    for index in range(1, len(lines)):
        if lines[index].rstrip("\r") == "---":
            frontmatter = "\n".join(lines[1:index])
            body = "\n".join(lines[index + 1 :])
            return TermFile(path=path, frontmatter_text=frontmatter, body_text=body)
    raise UnterminatedFrontmatter(f"{path}: no closing '---' line")


def _raw_list(value: Any) -> list[Any]:
    # Scalar-to-list promotion: a bare scalar counts as a one-element list.
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


def _string_list(data: dict[str, Any], key: str, file: str, diags: list[Diagnostic]) -> tuple[str, ...]:
    out: list[str] = []
    for item in _raw_list(data.get(key)):
        if not isinstance(item, str):
            diags.append(
                Diagnostic.error("E005", file, key, f"expected text entries, got {item!r}; entry ignored")
            )
            continue
        if not item.strip():
            diags.append(Diagnostic.error("E005", file, key, "blank entry ignored"))
            continue
        out.append(item)
    return tuple(out)


def _section_list(data: dict[str, Any], key: str, file: str, diags: list[Diagnostic]) -> tuple[SectionId, ...]:
    out: list[SectionId] = []
    for item in _raw_list(data.get(key)):
        if not isinstance(item, str):
            diags.append(
                Diagnostic.error(
                    "E005",
                    file,
                    key,
                    f"section ids must be quoted strings like \"01.03\", got {item!r}; entry ignored",
                )
            )
            continue
        try:
            out.append(SectionId.from_text(item))
        except MalformedSectionId as exc:
            diags.append(Diagnostic.error("E005", file, key, f"{exc}; entry ignored"))
    return tuple(out)


def _scale_field(data: dict[str, Any], key: str, file: str, diags: list[Diagnostic]) -> Scale03 | None:
    raw = data.get(key)
    if raw is None:
        return None
    if isinstance(raw, bool) or not isinstance(raw, int):
        diags.append(
            Diagnostic.error("E005", file, key, f"expected an integer 0-3, got {raw!r}; left unassessed")
        )
        return None
    if not 0 <= raw <= 3:
        diags.append(
            Diagnostic.error("E001", file, key, f"scale value {raw} outside 0-3; left unassessed")
        )
        return None
    return Scale03(raw)


def _required_string(data: dict[str, Any], key: str, file: str, diags: list[Diagnostic]) -> str:
    raw = data.get(key)
    if raw is None:
        return ""
    if not isinstance(raw, str):
        diags.append(Diagnostic.error("E005", file, key, f"expected text, got {raw!r}; value ignored"))
        return ""
    return raw

def _optional_string(data: dict[str, Any], key: str, file: str, diags: list[Diagnostic]) -> str | None:
    raw = data.get(key)
    if raw is None:
        return None
    if not isinstance(raw, str):
        diags.append(Diagnostic.error("E005", file, key, f"expected text, got {raw!r}; value ignored"))
        return None
    return raw


def _date_field(data: dict[str, Any], key: str, file: str, diags: list[Diagnostic]) -> date | None:
    raw = data.get(key)
    if raw is None:
        return None
    if isinstance(raw, datetime):
        return raw.date()
    if isinstance(raw, date):
        return raw
    if not isinstance(raw, str):
        diags.append(
            Diagnostic.error("E004", file, key, f"expected a YYYY-MM-DD date, got {raw!r}; value ignored")
        )
        return None
    try:
        return parse_iso_date(raw.strip())
    except ValueError as exc:
        diags.append(Diagnostic.error("E004", file, key, f"{exc}; value ignored"))
        return None


def decode_term(
    frontmatter_text: str,
    body: str,
    filename: str,
) -> tuple[TermMapping | None, list[Diagnostic]]:
    """Decode frontmatter into a TermMapping.

    Returns (None, diagnostics) when the file cannot produce a record at all
    (unparseable YAML, empty slug); otherwise every recoverable problem is a
    diagnostic and the offending value is dropped.
    """
    diags: list[Diagnostic] = []
    try:
        term_id = slugify(Path(filename).stem)
    except EmptySlug as exc:
        diags.append(Diagnostic.error("E009", filename, "filename", str(exc)))
        return None, diags
    try:
        data = parse_yaml_mapping(frontmatter_text)
    except FrontmatterSyntaxError as exc:
        diags.append(Diagnostic.error("E006", filename, "frontmatter", str(exc)))
        return None, diags

    known = set(SCHEMA_KEYS)
    for key in sorted(str(key) for key in data if key not in known):
        diags.append(Diagnostic.warning("W006", filename, key, "unknown key; ignored"))

    mapping = TermMapping(
        id=term_id,
        se_fundamental=_string_list(data, "se_fundamental", filename, diags),
        swebok_section=_section_list(data, "swebok_section", filename, diags),
        rse_concept=_string_list(data, "rse_concept", filename, diags),
        fundamental_description=_required_string(data, "fundamental_description", filename, diags),
        rse_practice=_required_string(data, "rse_practice", filename, diags),
        rse_awareness=_scale_field(data, "rse_awareness", filename, diags),
        rse_awareness_source=_optional_string(data, "rse_awareness_source", filename, diags),
        rse_usage=_scale_field(data, "rse_usage", filename, diags),
        rse_usage_source=_optional_string(data, "rse_usage_source", filename, diags),
        ser_potential=_scale_field(data, "ser_potential", filename, diags),
        ser_potential_source=_optional_string(data, "ser_potential_source", filename, diags),
        ser_opportunities=_optional_string(data, "ser_opportunities", filename, diags),
        references=_string_list(data, "references", filename, diags),
        last_reviewed=_date_field(data, "last_reviewed", filename, diags),
        body=body,
    )
    return mapping, diags


def encode_term(term: TermMapping) -> str:
    """Render a record back into the on-disk term-file format.

    Inverse of split_frontmatter + decode_term for valid records; keys are
    emitted in schema order so output is stable byte for byte.
    """

    def scale(value: Scale03 | None) -> int | None:
        return value.value if value is not None else None

    frontmatter = {
        "se_fundamental": list(term.se_fundamental),
        "fundamental_description": term.fundamental_description,
        "swebok_section": [section.text() for section in term.swebok_section],
        "rse_concept": list(term.rse_concept),
        "rse_practice": term.rse_practice,
        "rse_awareness": scale(term.rse_awareness),
        "rse_awareness_source": term.rse_awareness_source,
        "rse_usage": scale(term.rse_usage),
        "rse_usage_source": term.rse_usage_source,
        "ser_potential": scale(term.ser_potential),
        "ser_potential_source": term.ser_potential_source,
        "ser_opportunities": term.ser_opportunities,
        "references": list(term.references),
        "last_reviewed": term.last_reviewed.isoformat() if term.last_reviewed else None,
    }
    dumped = yaml.dump(
        frontmatter,
        Dumper=yaml.SafeDumper,
        default_flow_style=False,
        sort_keys=False,
        allow_unicode=False,
        width=2**31,
    )
    return f"---\n{dumped}---\n{term.body}"


def validate_term(
    term: TermMapping,
    toc: Toc,
    *,
    staleness_days: int = DEFAULT_STALENESS_DAYS,
    reference_date: date | None = None,
    source: str | None = None,
) -> list[Diagnostic]:
    """Run the record-level lint rules; diagnostics are the return value.

    Pure given `reference_date`; when it is None the staleness check uses
    today's date.
    """
    file = source if source is not None else term.id
    diags: list[Diagnostic] = []

    for key in REQUIRED_LIST_KEYS:
        if not getattr(term, key):
            diags.append(Diagnostic.error("E003", file, key, f"{key} must list at least one entry"))

    for section in dict.fromkeys(term.swebok_section):
        entry = toc.get(section)
        if entry is None:
            diags.append(
                Diagnostic.error(
                    "E002", file, "swebok_section", f"section {section} is not in the table of contents"
                )
            )
        elif entry.applicability is Applicability.NOT_APPLICABLE:
            diags.append(
                Diagnostic.warning(
                    "W002", file, "swebok_section", f"section {section} is marked n/a in the table of contents"
                )
            )

    for scale_key, source_key in _SCALE_KEYS:
        if getattr(term, scale_key) is not None:
            source_value = getattr(term, source_key)
            if source_value is None or not source_value.strip():
                diags.append(
                    Diagnostic.warning(
                        "W001", file, source_key, f"{scale_key} is set but {source_key} is empty"
                    )
                )

    if term.last_reviewed is not None:
        today = reference_date if reference_date is not None else date.today()
        age = (today - term.last_reviewed).days
        if age > staleness_days:
            diags.append(
                Diagnostic.warning(
                    "W003",
                    file,
                    "last_reviewed",
                    f"last reviewed {age} days ago (threshold {staleness_days})",
                )
            )

    if term.ser_potential is not None and term.ser_potential.value >= 2:
        if not (term.ser_opportunities or "").strip():
            diags.append(
                Diagnostic.warning(
                    "W004",
                    file,
                    "ser_opportunities",
                    "ser_potential is 2 or higher but ser_opportunities is empty",
                )
            )

    if len(term.fundamental_description) > 400:
        diags.append(
            Diagnostic.warning(
                "W005",
                file,
                "fundamental_description",
                f"description is {len(term.fundamental_description)} characters; keep it to roughly one sentence",
            )
        )

    return diags


def load_corpus(
    directory: str | Path,
    toc: Toc,
    *,
    staleness_days: int = DEFAULT_STALENESS_DAYS,
    reference_date: date | None = None,
) -> tuple[list[TermMapping], list[Diagnostic]]:
    """Load every *.md file in `directory` (sorted by filename) into records.

    Per-file problems become diagnostics; the rest of the corpus still loads.
    Raises OSError when the directory itself is unreadable.
    """
    base = Path(directory)
    paths = sorted(base.glob("*.md"), key=lambda p: p.name)
    records: list[TermMapping] = []
    diagnostics: list[Diagnostic] = []
    seen_ids: dict[str, str] = {}

    for path in paths:
        name = str(path)
        try:
            content = path.read_text(encoding="utf-8-sig")
        except UnicodeDecodeError as exc:
            diagnostics.append(Diagnostic.error("E011", name, "file", f"not valid UTF-8: {exc}"))
            continue
        try:
            term_file = split_frontmatter(content, path=name)
        except MissingFrontmatter as exc:
            diagnostics.append(Diagnostic.error("E007", name, "line 1", str(exc)))
            continue
        except UnterminatedFrontmatter as exc:
            diagnostics.append(Diagnostic.error("E008", name, "frontmatter", str(exc)))
            continue
        mapping, decode_diags = decode_term(term_file.frontmatter_text, term_file.body_text, name)
        diagnostics.extend(decode_diags)
        if mapping is None:
            continue
        if mapping.id in seen_ids:
            diagnostics.append(
                Diagnostic.error(
                    "E010",
                    name,
                    "filename",
                    f"term id {mapping.id!r} already produced by {seen_ids[mapping.id]}",
                )
            )
            continue
        seen_ids[mapping.id] = name
        diagnostics.extend(
            validate_term(
                mapping,
                toc,
                staleness_days=staleness_days,
                reference_date=reference_date,
                source=name,
            )
        )
        records.append(mapping)

    return records, diagnostics
