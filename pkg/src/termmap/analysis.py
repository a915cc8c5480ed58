"""Coverage computation, gap classification, and corpus statistics."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .index import MappingIndex
from .model import Applicability, Scale03, SectionId, TermMapping
from .toc import Toc


class CoverageStatus(Enum):
    COVERED = "covered"
    EXPECTED_UNCOVERED = "expected_uncovered"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class CoverageReport:
    """Per-section status plus totals; statuses partition the TOC exactly."""

    statuses: Mapping[SectionId, CoverageStatus]
    counts: Mapping[CoverageStatus, int]

    def to_dict(self) -> dict[str, dict[str, object]]:
        return {
            "sections": {section.text(): status.value for section, status in self.statuses.items()},
            "counts": {status.value: self.counts[status] for status in CoverageStatus},
        }


def compute_coverage(toc: Toc, index: MappingIndex) -> CoverageReport:
    """Status per TOC section: n/a wins, else covered iff any term cites it."""
    statuses: dict[SectionId, CoverageStatus] = {}
    counts = {status: 0 for status in CoverageStatus}
    for entry in toc.entries:
        if entry.applicability is Applicability.NOT_APPLICABLE:
            status = CoverageStatus.NOT_APPLICABLE
        elif index.by_section.get(entry.section):
            status = CoverageStatus.COVERED
        else:
            status = CoverageStatus.EXPECTED_UNCOVERED
        statuses[entry.section] = status
        counts[status] += 1
    return CoverageReport(statuses, counts)


class GapCategory(Enum):
    ALIGNED = "aligned"
    AWARENESS_GAP = "awareness_gap"
    ADOPTION_GAP = "adoption_gap"
    UNASSESSED = "unassessed"


@dataclass(frozen=True)
class GapClass:
    category: GapCategory
    research_opportunity: bool

    def to_dict(self) -> dict[str, object]:
        return {"category": self.category.value, "research_opportunity": self.research_opportunity}


def classify_gap(term: TermMapping) -> GapClass:
    """Classify a term by its awareness/usage scales.

    Decision rule (0-1 reads as low, 2-3 as high; this split of the
    four-point scale is a tool policy and may be retuned by editors):

      * awareness or usage not assessed  -> UNASSESSED
      * awareness <= 1                   -> AWARENESS_GAP
      * awareness >= 2 and usage <= 1    -> ADOPTION_GAP
      * awareness >= 2 and usage >= 2    -> ALIGNED

    Independently, `research_opportunity` is set when ser_potential is
    assessed at 2 or higher. Classification depends only on the scale
    values, never on any text field.
    """
    opportunity = term.ser_potential is not None and term.ser_potential.value >= 2
    if term.rse_awareness is None or term.rse_usage is None:
        category = GapCategory.UNASSESSED
    elif term.rse_awareness.value <= 1:
        category = GapCategory.AWARENESS_GAP
    elif term.rse_usage.value <= 1:
        category = GapCategory.ADOPTION_GAP
    else:
        category = GapCategory.ALIGNED
    return GapClass(category, opportunity)


_SCALE_VALUES: tuple[int | None, ...] = (0, 1, 2, 3, None)


@dataclass(frozen=True)
class CorpusStats:
    """Distributions over the corpus; each histogram sums to term_count."""

    term_count: int
    awareness: Mapping[int | None, int]
    usage: Mapping[int | None, int]
    potential: Mapping[int | None, int]
    gap_categories: Mapping[GapCategory, int]
    research_opportunity_count: int
    terms_per_knowledge_area: Mapping[int, int]

    def to_dict(self) -> dict[str, object]:
        def histogram(values: Mapping[int | None, int]) -> dict[str, int]:
            return {
                ("unknown" if value is None else str(value)): values[value]
                for value in _SCALE_VALUES
            }

        return {
            "term_count": self.term_count,
            "awareness": histogram(self.awareness),
            "usage": histogram(self.usage),
            "potential": histogram(self.potential),
            "gap_classes": {category.value: self.gap_categories[category] for category in GapCategory},
            "research_opportunities": self.research_opportunity_count,
            "terms_per_knowledge_area": {
                f"{area:02d}": count for area, count in sorted(self.terms_per_knowledge_area.items())
            },
        }


def compute_stats(terms: Iterable[TermMapping]) -> CorpusStats:
    """Histogram the three scales, count gap classes, and count terms per area.

    A term citing sections in several knowledge areas counts once in each, so
    the per-area counts may sum to more than the corpus size; every other
    distribution sums exactly to it.
    """
    records = list(terms)

    def histogram(values: Iterable[Scale03 | None]) -> dict[int | None, int]:
        out: dict[int | None, int] = {value: 0 for value in _SCALE_VALUES}
        for value in values:
            out[value.value if value is not None else None] += 1
        return out

    gap_counts = {category: 0 for category in GapCategory}
    opportunities = 0
    per_area: dict[int, int] = {}
    for term in records:
        gap = classify_gap(term)
        gap_counts[gap.category] += 1
        opportunities += int(gap.research_opportunity)
        for area in sorted({section.knowledge_area for section in term.swebok_section}):
            per_area[area] = per_area.get(area, 0) + 1

    return CorpusStats(
        term_count=len(records),
        awareness=histogram(term.rse_awareness for term in records),
        usage=histogram(term.rse_usage for term in records),
        potential=histogram(term.ser_potential for term in records),
        gap_categories=gap_counts,
        research_opportunity_count=opportunities,
        terms_per_knowledge_area=per_area,
    )
