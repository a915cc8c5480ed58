"""Shared builders for the test suite: fixture corpora, seeded random corpora,
and hypothesis strategies for valid records."""

from __future__ import annotations

import random
import string
from datetime import date

import hypothesis.strategies as st

from termmap.model import Applicability, Scale03, SectionId, TermMapping, TocEntry
from termmap.toc import DEFAULT_SCOPE, Toc


def sid(text):
    return SectionId.from_text(text)


def make_term(term_id="sample-term", se=("sample fundamental",), sections=("01",),
              rse=("sample concept",), **kwargs):
    return TermMapping(
        id=term_id,
        se_fundamental=tuple(se),
        swebok_section=tuple(sid(s) if isinstance(s, str) else s for s in sections),
        rse_concept=tuple(rse),
        **kwargs,
    )


def make_toc(rows, scope=DEFAULT_SCOPE):
    """rows: iterable of (section_text, heading, page, applicability_text)."""
    entries = []
    for section, heading, page, applic in rows:
        applicability = (
            Applicability.NOT_APPLICABLE if applic == "n/a" else Applicability.MAPPABLE
        )
        entries.append(TocEntry(sid(section), heading, page, applicability))
    return Toc(tuple(entries), frozenset(scope))


def random_corpus(rng: random.Random, max_sections=100, max_terms=50):
    """Seeded random (toc, terms) pair for oracle and round-trip checks."""
    n_sections = rng.randint(1, max_sections)
    sections = set()
    while len(sections) < n_sections:
        depth = rng.randint(1, 3)
        sections.add(SectionId(tuple(rng.randint(0, 99) for _ in range(depth))))
    ordered = sorted(sections)
    rng.shuffle(ordered)
    entries = tuple(
        TocEntry(
            section,
            f"Heading {section.text()}",
            str(rng.randint(1, 400)),
            Applicability.NOT_APPLICABLE if rng.random() < 0.25 else Applicability.MAPPABLE,
        )
        for section in ordered
    )
    toc = Toc(entries, frozenset(range(1, 11)))

    n_terms = rng.randint(0, max_terms)
    terms = []
    for i in range(n_terms):
        cited = rng.sample(ordered, k=rng.randint(1, min(3, len(ordered))))
        scales = {}
        for key in ("rse_awareness", "rse_usage", "ser_potential"):
            if rng.random() < 0.7:
                scales[key] = Scale03(rng.randint(0, 3))
        terms.append(
            TermMapping(
                id=f"term-{i:03d}",
                se_fundamental=(f"se concept {i}", f"se synonym {i}"),
                swebok_section=tuple(cited),
                rse_concept=(f"rse concept {i}",),
                **scales,
            )
        )
    return toc, terms


_WORD_CHARS = string.ascii_letters + string.digits
_TEXT_CHARS = _WORD_CHARS + "  .,;:!?'\"()[]/-_#*" + "éüμ中"


def random_text(rng: random.Random, min_len=1, max_len=40):
    n = rng.randint(min_len, max_len)
    return "".join(rng.choice(_TEXT_CHARS) for _ in range(n))


def random_entry(rng: random.Random):
    """Non-blank list entry with no leading/trailing whitespace."""
    while True:
        text = random_text(rng).strip()
        if text:
            return text


def random_valid_term(rng: random.Random, term_id):
    def maybe_scale():
        return Scale03(rng.randint(0, 3)) if rng.random() < 0.6 else None

    def maybe_text():
        roll = rng.random()
        if roll < 0.3:
            return None
        if roll < 0.4:
            return ""
        return random_text(rng, 0, 60)

    body_lines = [random_text(rng, 0, 50) for _ in range(rng.randint(0, 5))]
    if rng.random() < 0.2:
        body_lines.append("---")  # delimiter-looking body lines must survive
    reviewed = None
    if rng.random() < 0.5:
        reviewed = date(rng.randint(1990, 2099), rng.randint(1, 12), rng.randint(1, 28))
    return TermMapping(
        id=term_id,
        se_fundamental=tuple(random_entry(rng) for _ in range(rng.randint(1, 3))),
        swebok_section=tuple(
            dict.fromkeys(
                SectionId(tuple(rng.randint(0, 99) for _ in range(rng.randint(1, 3))))
                for _ in range(rng.randint(1, 3))
            )
        ),
        rse_concept=tuple(random_entry(rng) for _ in range(rng.randint(1, 3))),
        fundamental_description=random_text(rng, 0, 80),
        rse_practice=random_text(rng, 0, 80),
        rse_awareness=maybe_scale(),
        rse_awareness_source=maybe_text(),
        rse_usage=maybe_scale(),
        rse_usage_source=maybe_text(),
        ser_potential=maybe_scale(),
        ser_potential_source=maybe_text(),
        ser_opportunities=maybe_text(),
        references=tuple(random_entry(rng) for _ in range(rng.randint(0, 3))),
        last_reviewed=reviewed,
        body="\n".join(body_lines),
    )


# --- hypothesis strategies ---------------------------------------------------

section_ids = st.builds(
    SectionId,
    st.lists(st.integers(0, 99), min_size=1, max_size=3).map(tuple),
)

slugs = st.from_regex(r"[a-z0-9]+(-[a-z0-9]+){0,3}", fullmatch=True)

entry_text = (
    st.text(min_size=1, max_size=30)
    .map(lambda s: s.strip())
    .filter(lambda s: s)
)

free_text = st.text(max_size=120)

optional_text = st.one_of(st.none(), free_text)

scales = st.one_of(st.none(), st.builds(Scale03, st.integers(0, 3)))

review_dates = st.one_of(
    st.none(),
    st.dates(min_value=date(1990, 1, 1), max_value=date(2099, 12, 31)),
)


@st.composite
def term_mappings(draw):
    return TermMapping(
        id=draw(slugs),
        se_fundamental=tuple(draw(st.lists(entry_text, min_size=1, max_size=4))),
        swebok_section=tuple(draw(st.lists(section_ids, min_size=1, max_size=4))),
        rse_concept=tuple(draw(st.lists(entry_text, min_size=1, max_size=4))),
        fundamental_description=draw(free_text),
        rse_practice=draw(free_text),
        rse_awareness=draw(scales),
        rse_awareness_source=draw(optional_text),
        rse_usage=draw(scales),
        rse_usage_source=draw(optional_text),
        ser_potential=draw(scales),
        ser_potential_source=draw(optional_text),
        ser_opportunities=draw(optional_text),
        references=tuple(draw(st.lists(entry_text, min_size=0, max_size=4))),
        last_reviewed=draw(review_dates),
        body=draw(st.text(max_size=300)),
    )
