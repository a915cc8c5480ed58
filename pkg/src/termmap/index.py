"""Immutable bidirectional index over the term corpus.

Three key spaces point into the same records: normalized SE fundamentals,
normalized RSE concepts, and SWEBOK section ids. Keys are case-folded with
whitespace collapsed; there is deliberately no stemming or fuzzy matching.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .model import Diagnostic, SectionId, TermMapping


class Space(Enum):
    SE = "se"
    RSE = "rse"
    SECTION = "section"


def normalize_key(text: str) -> str:
    """Case-fold and collapse runs of whitespace to single spaces."""
    return " ".join(text.split()).casefold()


@dataclass(frozen=True)
class MappingIndex:
    """Lookup maps in all three key spaces plus the records themselves.

    Built once, never mutated; id tuples are sorted so queries and
    serializations are deterministic.
    """

    by_se: Mapping[str, tuple[str, ...]]
    by_rse: Mapping[str, tuple[str, ...]]
    by_section: Mapping[SectionId, tuple[str, ...]]
    terms: Mapping[str, TermMapping]


def build_index(terms: Iterable[TermMapping]) -> tuple[MappingIndex, list[Diagnostic]]:
    """Build the index; input order does not matter.

    Emits W101 when two distinct terms share an identical normalized SE
    fundamental (a likely duplicate entry, left to editors to resolve).
    Raises ValueError on duplicate term ids, which a well-formed corpus
    cannot produce.
    """
    term_map: dict[str, TermMapping] = {}
    for term in terms:
        if term.id in term_map:
            raise ValueError(f"duplicate term id {term.id!r}")
        term_map[term.id] = term

    se_raw: dict[str, set[str]] = {}
    rse_raw: dict[str, set[str]] = {}
    section_raw: dict[SectionId, set[str]] = {}
    for term_id in sorted(term_map):
        term = term_map[term_id]
        for key in term.se_fundamental:
            se_raw.setdefault(normalize_key(key), set()).add(term_id)
        for key in term.rse_concept:
            rse_raw.setdefault(normalize_key(key), set()).add(term_id)
        for section in term.swebok_section:
            section_raw.setdefault(section, set()).add(term_id)

    diagnostics = [
        Diagnostic.warning(
            "W101",
            "<corpus>",
            key,
            f"terms {', '.join(sorted(ids))} share the SE fundamental {key!r}",
        )
        for key, ids in sorted(se_raw.items())
        if len(ids) > 1
    ]

    index = MappingIndex(
        by_se={key: tuple(sorted(ids)) for key, ids in sorted(se_raw.items())},
        by_rse={key: tuple(sorted(ids)) for key, ids in sorted(rse_raw.items())},
        by_section={section: tuple(sorted(ids)) for section, ids in sorted(section_raw.items())},
        terms={term_id: term_map[term_id] for term_id in sorted(term_map)},
    )
    return index, diagnostics


def query(index: MappingIndex, space: Space, key: str) -> list[TermMapping]:
    """Look up terms by key; results are sorted by id and duplicate-free.

    Raises MalformedSectionId when space is SECTION and the key does not
    parse as a section id.
    """
    if space is Space.SECTION:
        ids = index.by_section.get(SectionId.from_text(key), ())
    elif space is Space.SE:
        ids = index.by_se.get(normalize_key(key), ())
    else:
        ids = index.by_rse.get(normalize_key(key), ())
    return [index.terms[term_id] for term_id in ids]


@dataclass(frozen=True)
class Violation:
    """One reverse-mapping miss: which term/key failed in which direction."""

    term_id: str
    key: str
    direction: str  # "rse->se" or "se->rse"


def check_commutativity(
    index: MappingIndex,
    external_rse_concepts: Iterable[str] = (),
) -> list[Violation]:
    """Check that the mapping inverts cleanly.

    Internally: every term must be reachable back through each of its own SE
    and RSE keys, which always holds for an index built by `build_index`.
    Entries from an external reverse-mapping list (RSE concepts) are violations
    when they resolve to nothing; those carry an empty term_id.
    """
    violations: list[Violation] = []
    for term_id, term in index.terms.items():
        for key in term.rse_concept:
            if term_id not in index.by_rse.get(normalize_key(key), ()):
                violations.append(Violation(term_id, key, "rse->se"))
        for key in term.se_fundamental:
            if term_id not in index.by_se.get(normalize_key(key), ()):
                violations.append(Violation(term_id, key, "se->rse"))
    for concept in external_rse_concepts:
        if normalize_key(concept) not in index.by_rse:
            violations.append(Violation("", concept, "rse->se"))
    return violations
