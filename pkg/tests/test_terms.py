from datetime import date

import pytest
from hypothesis import example, given, settings

from termmap.model import Scale03, Severity
from termmap.terms import (
    EmptySlug,
    MissingFrontmatter,
    UnterminatedFrontmatter,
    decode_term,
    encode_term,
    load_corpus,
    slugify,
    split_frontmatter,
    validate_term,
)

from helpers import make_term, make_toc, sid, term_mappings


def codes(diagnostics):
    return [d.code for d in diagnostics]


SMALL_TOC = make_toc(
    [
        ("01", "Software Requirements", "1-1", ""),
        ("01.03", "Requirements Elicitation", "1-5", ""),
        ("01.04", "Requirements Analysis", "1-7", ""),
        ("13", "Computing Foundations", "13-1", "n/a"),
    ]
)


class TestSplitFrontmatter:
    def test_basic_split(self):
        tf = split_frontmatter("---\nk: v\n---\nNotes")
        assert tf.frontmatter_text == "k: v"
        assert tf.body_text == "Notes"

    def test_empty_body(self):
        tf = split_frontmatter("---\nk: v\n---\n")
        assert tf.frontmatter_text == "k: v"
        assert tf.body_text == ""

    def test_missing_frontmatter(self):
        with pytest.raises(MissingFrontmatter):
            split_frontmatter("No delimiters")

    def test_unterminated(self):
        with pytest.raises(UnterminatedFrontmatter):
            split_frontmatter("---\nk: v\n")

    def test_crlf_delimiters(self):
        tf = split_frontmatter("---\r\nk: v\r\n---\r\nNotes\r\n")
        assert tf.frontmatter_text == "k: v\r"
        assert tf.body_text == "Notes\r\n"

    def test_body_may_contain_delimiter_lines(self):
        tf = split_frontmatter("---\nk: v\n---\nabove\n---\nbelow")
        assert tf.body_text == "above\n---\nbelow"

    def test_empty_frontmatter_block(self):
        tf = split_frontmatter("---\n---\nbody")
        assert tf.frontmatter_text == ""
        assert tf.body_text == "body"


class TestSlugify:
    def test_spaces_become_dashes(self):
        assert slugify("Requirements Elicitation") == "requirements-elicitation"

    def test_underscores_become_dashes(self):
        assert slugify("code_smells") == "code-smells"

    def test_strips_other_characters_and_collapses(self):
        assert slugify("A  b!!c") == "a-bc"

    def test_empty_slug_raises(self):
        with pytest.raises(EmptySlug):
            slugify("!!!")


class TestDecodeTerm:
    def test_multi_valued_lists(self):
        fm = (
            'se_fundamental: ["Requirements elicitation", "Requirements analysis"]\n'
            'rse_concept: ["requirements gathering"]\n'
            'swebok_section: ["01.03", "01.04"]\n'
        )
        term, diags = decode_term(fm, "", "requirements.md")
        assert diags == []
        assert term.se_fundamental == ("Requirements elicitation", "Requirements analysis")
        assert term.rse_concept == ("requirements gathering",)
        assert term.swebok_section == (sid("01.03"), sid("01.04"))

    def test_scalar_promoted_to_list(self):
        term, diags = decode_term(
            'se_fundamental: version control\nrse_concept: [x]\nswebok_section: "06"\n',
            "",
            "vc.md",
        )
        assert diags == []
        assert term.se_fundamental == ("version control",)
        assert term.swebok_section == (sid("06"),)

    def test_scale_decoded(self):
        term, diags = decode_term("rse_awareness: 3\n", "", "t.md")
        assert diags == []
        assert term.rse_awareness == Scale03(3)

    def test_non_integer_scale_left_unknown(self):
        term, diags = decode_term("rse_awareness: high\n", "", "t.md")
        assert codes(diags) == ["E005"]
        assert term.rse_awareness is None

    def test_boolean_scale_rejected(self):
        term, diags = decode_term("rse_usage: true\n", "", "t.md")
        assert codes(diags) == ["E005"]
        assert term.rse_usage is None

    def test_out_of_range_scale_is_e001(self):
        term, diags = decode_term("rse_usage: 5\n", "", "t.md")
        assert codes(diags) == ["E001"]
        assert term.rse_usage is None

    def test_unknown_key_warns(self):
        _, diags = decode_term("mystery_key: 1\n", "", "t.md")
        assert codes(diags) == ["W006"]
        assert diags[0].severity is Severity.WARNING

    def test_unquoted_section_number_reported(self):
        # YAML reads bare 01.03 as a float; the decoder asks for quotes.
        _, diags = decode_term("swebok_section: [1.03]\n", "", "t.md")
        assert codes(diags) == ["E005"]

    def test_malformed_section_string_reported(self):
        term, diags = decode_term('swebok_section: ["1.3"]\n', "", "t.md")
        assert codes(diags) == ["E005"]
        assert term.swebok_section == ()

    def test_blank_list_entry_dropped(self):
        term, diags = decode_term('se_fundamental: ["ok", "  "]\n', "", "t.md")
        assert codes(diags) == ["E005"]
        assert term.se_fundamental == ("ok",)

    def test_invalid_date_is_e004_not_fatal(self):
        term, diags = decode_term("last_reviewed: 2024-13-01\n", "", "t.md")
        assert codes(diags) == ["E004"]
        assert term.last_reviewed is None

    def test_loose_date_format_rejected(self):
        _, diags = decode_term("last_reviewed: 2024-1-1\n", "", "t.md")
        assert codes(diags) == ["E004"]

    def test_valid_date(self):
        term, diags = decode_term("last_reviewed: 2024-06-30\n", "", "t.md")
        assert diags == []
        assert term.last_reviewed == date(2024, 6, 30)

    def test_unparseable_yaml_is_fatal_for_file(self):
        term, diags = decode_term("key: [unclosed\n", "", "t.md")
        assert term is None
        assert codes(diags) == ["E006"]

    def test_non_mapping_frontmatter_is_fatal(self):
        term, diags = decode_term("- just\n- a list\n", "", "t.md")
        assert term is None
        assert codes(diags) == ["E006"]

    def test_empty_slug_filename(self):
        term, diags = decode_term("se_fundamental: [x]\n", "", "!!!.md")
        assert term is None
        assert codes(diags) == ["E009"]

    def test_id_comes_from_filename_stem(self):
        term, _ = decode_term("", "", "Version Control.md")
        assert term.id == "version-control"

    def test_body_preserved_verbatim(self):
        term, _ = decode_term("", "wild\n---\nbody", "t.md")
        assert term.body == "wild\n---\nbody"


class TestValidateTerm:
    def test_clean_term_has_no_findings(self):
        term = make_term(
            sections=("01.03",),
            rse_awareness=Scale03(2),
            rse_awareness_source="expert judgment",
        )
        assert validate_term(term, SMALL_TOC) == []

    def test_e003_per_empty_required_list(self):
        term = make_term(se=(), sections=(), rse=())
        found = codes(validate_term(term, SMALL_TOC))
        assert found.count("E003") == 3

    def test_e002_unknown_section(self):
        term = make_term(sections=("99",))
        assert codes(validate_term(term, SMALL_TOC)) == ["E002"]

    def test_w002_not_applicable_section(self):
        term = make_term(sections=("13",))
        assert codes(validate_term(term, SMALL_TOC)) == ["W002"]

    def test_w001_scale_without_source(self):
        term = make_term(sections=("01",), rse_awareness=Scale03(2), rse_awareness_source="")
        assert codes(validate_term(term, SMALL_TOC)) == ["W001"]

    def test_w001_absent_source(self):
        term = make_term(sections=("01",), rse_usage=Scale03(1))
        assert codes(validate_term(term, SMALL_TOC)) == ["W001"]

    def test_w003_stale_review(self):
        term = make_term(sections=("01",), last_reviewed=date(2020, 1, 1))
        found = validate_term(term, SMALL_TOC, reference_date=date(2022, 1, 1))
        assert codes(found) == ["W003"]

    def test_w003_not_triggered_within_threshold(self):
        term = make_term(sections=("01",), last_reviewed=date(2021, 6, 1))
        found = validate_term(term, SMALL_TOC, reference_date=date(2022, 1, 1))
        assert found == []

    def test_w003_threshold_override(self):
        term = make_term(sections=("01",), last_reviewed=date(2021, 12, 1))
        found = validate_term(
            term, SMALL_TOC, staleness_days=10, reference_date=date(2022, 1, 1)
        )
        assert codes(found) == ["W003"]

    def test_w004_potential_without_opportunities(self):
        term = make_term(
            sections=("01",),
            ser_potential=Scale03(2),
            ser_potential_source="expert judgment",
        )
        assert codes(validate_term(term, SMALL_TOC)) == ["W004"]

    def test_no_w004_for_low_potential(self):
        term = make_term(
            sections=("01",),
            ser_potential=Scale03(1),
            ser_potential_source="expert judgment",
        )
        assert validate_term(term, SMALL_TOC) == []

    def test_w005_long_description(self):
        term = make_term(sections=("01",), fundamental_description="x" * 401)
        assert codes(validate_term(term, SMALL_TOC)) == ["W005"]

    def test_deterministic(self):
        term = make_term(se=(), sections=("99", "13"), rse_usage=Scale03(3))
        first = validate_term(term, SMALL_TOC)
        second = validate_term(term, SMALL_TOC)
        assert first == second


class TestEncodeDecodeRoundTrip:
    @settings(max_examples=200, deadline=None)
    @given(term_mappings())
    @example(make_term(body="notes\n---\nmore"))
    @example(make_term(fundamental_description="a\n---\nb"))
    @example(make_term(rse_awareness_source=""))
    def test_round_trip(self, term):
        content = encode_term(term)
        tf = split_frontmatter(content, path=f"{term.id}.md")
        decoded, diags = decode_term(tf.frontmatter_text, tf.body_text, f"{term.id}.md")
        assert diags == []
        assert decoded == term


class TestLoadCorpus:
    def test_empty_directory(self, tmp_path, fixture_toc):
        terms, diags = load_corpus(tmp_path, fixture_toc)
        assert terms == []
        assert diags == []

    def test_two_valid_files(self, tmp_path, fixture_toc):
        for name in ("a.md", "b.md"):
            (tmp_path / name).write_text(
                '---\nse_fundamental: [x]\nrse_concept: [y]\nswebok_section: ["01"]\n---\n',
                encoding="utf-8",
            )
        terms, diags = load_corpus(tmp_path, fixture_toc)
        assert [t.id for t in terms] == ["a", "b"]
        assert diags == []

    def test_mixed_valid_and_missing_frontmatter(self, tmp_path, fixture_toc):
        (tmp_path / "good.md").write_text(
            '---\nse_fundamental: [x]\nrse_concept: [y]\nswebok_section: ["01"]\n---\n',
            encoding="utf-8",
        )
        (tmp_path / "bad.md").write_text("no delimiters here\n", encoding="utf-8")
        terms, diags = load_corpus(tmp_path, fixture_toc)
        assert [t.id for t in terms] == ["good"]
        assert codes(diags) == ["E007"]

    def test_unterminated_frontmatter(self, tmp_path, fixture_toc):
        (tmp_path / "open.md").write_text("---\nk: v\n", encoding="utf-8")
        terms, diags = load_corpus(tmp_path, fixture_toc)
        assert terms == []
        assert codes(diags) == ["E008"]

    def test_sorted_by_filename(self, tmp_path, fixture_toc):
        for name in ("zeta.md", "alpha.md", "midl.md"):
            (tmp_path / name).write_text(
                '---\nse_fundamental: [x]\nrse_concept: [y]\nswebok_section: ["01"]\n---\n',
                encoding="utf-8",
            )
        terms, _ = load_corpus(tmp_path, fixture_toc)
        assert [t.id for t in terms] == ["alpha", "midl", "zeta"]

    def test_duplicate_slug_reported(self, tmp_path, fixture_toc):
        content = '---\nse_fundamental: [x]\nrse_concept: [y]\nswebok_section: ["01"]\n---\n'
        (tmp_path / "code smells.md").write_text(content, encoding="utf-8")
        (tmp_path / "code_smells.md").write_text(content, encoding="utf-8")
        terms, diags = load_corpus(tmp_path, fixture_toc)
        assert len(terms) == 1
        assert codes(diags) == ["E010"]

    def test_non_markdown_files_ignored(self, tmp_path, fixture_toc):
        (tmp_path / "notes.txt").write_text("irrelevant", encoding="utf-8")
        terms, diags = load_corpus(tmp_path, fixture_toc)
        assert terms == []
        assert diags == []

    def test_non_utf8_file_reported(self, tmp_path, fixture_toc):
        (tmp_path / "binary.md").write_bytes(b"---\n\xff\xfe\n---\n")
        terms, diags = load_corpus(tmp_path, fixture_toc)
        assert terms == []
        assert codes(diags) == ["E011"]

    def test_fixture_corpus_loads_clean(self, fixture_corpus):
        _, terms = fixture_corpus
        assert [t.id for t in terms] == [
            "code-smells",
            "requirements-elicitation",
            "software-quality-assurance",
            "technical-debt",
            "test-levels",
            "version-control",
        ]
