"""termmap: compiler, linter, and static-site generator for a crowd-sourced
knowledge base that maps software-engineering fundamentals (anchored to
SWEBOK sections) to research-software-engineering concepts."""

from .analysis import (
    CorpusStats,
    CoverageReport,
    CoverageStatus,
    GapCategory,
    GapClass,
    classify_gap,
    compute_coverage,
    compute_stats,
)
from .index import (
    MappingIndex,
    Space,
    Violation,
    build_index,
    check_commutativity,
    normalize_key,
    query,
)
from .model import (
    Applicability,
    Diagnostic,
    MalformedSectionId,
    Scale03,
    SectionId,
    Severity,
    TermMapping,
    TocEntry,
    has_errors,
    severity_counts,
)
from .sitegen import (
    SiteBuildError,
    SiteConfig,
    export_json_index,
    find_dangling_links,
    import_json_index,
    render_term_page,
    render_toc_page,
    write_site,
)
from .terms import (
    EmptySlug,
    FrontmatterSyntaxError,
    MissingFrontmatter,
    TermFile,
    UnterminatedFrontmatter,
    decode_term,
    encode_term,
    load_corpus,
    slugify,
    split_frontmatter,
    validate_term,
)
from .toc import (
    DEFAULT_SCOPE,
    Toc,
    format_section_id,
    load_toc,
    parse_section_id,
    parse_toc,
    toc_to_tsv,
)

__version__ = "0.1.0"

__all__ = [
    "Applicability",
    "CorpusStats",
    "CoverageReport",
    "CoverageStatus",
    "DEFAULT_SCOPE",
    "Diagnostic",
    "EmptySlug",
    "FrontmatterSyntaxError",
    "GapCategory",
    "GapClass",
    "MalformedSectionId",
    "MappingIndex",
    "MissingFrontmatter",
    "Scale03",
    "SectionId",
    "Severity",
    "SiteBuildError",
    "SiteConfig",
    "Space",
    "TermFile",
    "TermMapping",
    "Toc",
    "TocEntry",
    "UnterminatedFrontmatter",
    "Violation",
    "build_index",
    "check_commutativity",
    "classify_gap",
    "compute_coverage",
    "compute_stats",
    "decode_term",
    "encode_term",
    "export_json_index",
    "find_dangling_links",
    "format_section_id",
    "has_errors",
    "import_json_index",
    "load_corpus",
    "load_toc",
    "normalize_key",
    "parse_section_id",
    "parse_toc",
    "query",
    "render_term_page",
    "render_toc_page",
    "severity_counts",
    "slugify",
    "split_frontmatter",
    "toc_to_tsv",
    "validate_term",
    "write_site",
]
