#!/usr/bin/env python3
"""Generate a synthetic corpus (toc.tsv + terms/) for scale experiments.

Example:
    python scripts/generate_corpus.py --terms 200 --out /tmp/big-corpus --seed 7
    termmap build --toc /tmp/big-corpus/toc.tsv --terms /tmp/big-corpus/terms \
        --out /tmp/big-site --scope 1,2,3,4,5,6,7,8,9,10,11,12,13,14,15
"""

import argparse
import random
from datetime import date
from pathlib import Path

from termmap.model import Scale03, TermMapping
from termmap.terms import encode_term
from termmap.toc import parse_section_id


def build_sections(areas: int, subsections: int) -> list[str]:
    sections = []
    for area in range(1, areas + 1):
        sections.append(f"{area:02d}")
        sections.extend(f"{area:02d}.{sub:02d}" for sub in range(1, subsections + 1))
    return sections


def synth_term(rng: random.Random, term_id: str, sections: list[str]) -> TermMapping:
    cited = tuple(
        parse_section_id(text) for text in rng.sample(sections, k=rng.randint(1, 3))
    )

    def maybe_scale():
        return Scale03(rng.randint(0, 3)) if rng.random() < 0.8 else None

    return TermMapping(
        id=term_id,
        se_fundamental=(f"fundamental {term_id}", f"synonym {term_id}"),
        swebok_section=cited,
        rse_concept=(f"concept {term_id}",),
        fundamental_description=f"Synthetic description for {term_id}.",
        rse_practice="Synthetic practice description.",
        rse_awareness=maybe_scale(),
        rse_awareness_source="synthetic",
        rse_usage=maybe_scale(),
        rse_usage_source="synthetic",
        ser_potential=maybe_scale(),
        ser_potential_source="synthetic",
        ser_opportunities="Synthetic opportunity note.",
        references=(f"https://example.org/{term_id}",),
        last_reviewed=date(2026, rng.randint(1, 12), rng.randint(1, 28)),
        body=f"Synthetic notes for {term_id}.\n",
    )


def run() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, required=True, help="output corpus directory")
    parser.add_argument("--terms", type=int, default=200)
    parser.add_argument("--areas", type=int, default=15)
    parser.add_argument("--subsections", type=int, default=19, help="subsections per area")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    sections = build_sections(args.areas, args.subsections)

    args.out.mkdir(parents=True, exist_ok=True)
    toc_lines = []
    for text in sections:
        applic = "n/a" if rng.random() < 0.2 else ""
        toc_lines.append(f"{text}\tHeading {text}\tp{rng.randint(1, 400)}\t{applic}")
    (args.out / "toc.tsv").write_text("\n".join(toc_lines) + "\n", encoding="utf-8")

    terms_dir = args.out / "terms"
    terms_dir.mkdir(exist_ok=True)
    for i in range(args.terms):
        term = synth_term(rng, f"term-{i:04d}", sections)
        (terms_dir / f"{term.id}.md").write_text(encode_term(term), encoding="utf-8")

    print(f"{len(sections)} sections and {args.terms} terms under {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(run())
