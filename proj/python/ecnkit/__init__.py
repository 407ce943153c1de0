"""Evidence-comment network toolkit.

Thin Python layer over the C++ core: corpus loading, drug filtering,
network construction, sentiment/topic aggregation, grading and exports.
"""

from ._ecnkit import (  # noqa: F401
    AnnotationSet,
    Corpus,
    DrugLexicon,
    Ecn,
    EcnError,
    Taxonomy,
    build_ecn,
    build_query,
    certainty_level,
    degree_centrality,
    derive_assertion,
    descriptive_table,
    drug_scope,
    export_dot,
    export_graphml,
    filter_by_drug,
    grade_evidence,
    import_graphml,
    lead_months,
    load_annotations,
    load_corpus,
    render_summary,
    save_corpus,
    sentiment_distribution,
    sentiment_series,
    top_subgraph,
    topic_distribution,
    weakly_connected_components,
)

__all__ = [
    "AnnotationSet",
    "Corpus",
    "DrugLexicon",
    "Ecn",
    "EcnError",
    "Taxonomy",
    "build_ecn",
    "build_query",
    "certainty_level",
    "degree_centrality",
    "derive_assertion",
    "descriptive_table",
    "drug_scope",
    "export_dot",
    "export_graphml",
    "filter_by_drug",
    "grade_evidence",
    "import_graphml",
    "lead_months",
    "load_annotations",
    "load_corpus",
    "render_summary",
    "save_corpus",
    "sentiment_distribution",
    "sentiment_series",
    "top_subgraph",
    "topic_distribution",
    "weakly_connected_components",
]
