"""Smoke tests for the ecnkit Python module against the bundled fixture."""

import os
import sys

import pytest

# The build tree exposes the extension next to the package sources.
_module_dir = os.environ.get("ECNKIT_MODULE_DIR")
_source_dir = os.environ.get("ECNKIT_SOURCE_DIR")
if _module_dir:
    sys.path.insert(0, _module_dir)
    import _ecnkit as ecnkit  # noqa: E402
else:
    import ecnkit  # noqa: E402

DATA = os.environ.get(
    "ECN_TEST_DATA_DIR",
    os.path.join(_source_dir or ".", "tests", "data"),
)


@pytest.fixture(scope="module")
def fixture():
    corpus = ecnkit.load_corpus(os.path.join(DATA, "fixture", "corpus.jsonl"))
    lexicon = ecnkit.DrugLexicon.load(os.path.join(DATA, "fixture", "lexicon.json"))
    taxonomy = ecnkit.Taxonomy.load(os.path.join(DATA, "fixture", "taxonomy.json"))
    annotations = ecnkit.load_annotations(
        os.path.join(DATA, "fixture", "annotations.csv"), corpus, taxonomy
    )
    return corpus, lexicon, taxonomy, annotations


def test_build_query():
    clause = "Covid-19[MeSH] OR Covid-19[Title/Abstract]"
    assert (
        ecnkit.build_query(clause, "hascommentin")
        == "(Covid-19[MeSH] OR Covid-19[Title/Abstract]) and hascommentin"
    )
    with pytest.raises(ecnkit.EcnError):
        ecnkit.build_query("", "hascommentin")


def test_corpus_and_network(fixture):
    corpus, lexicon, _, _ = fixture
    assert corpus.record_count > 500
    hcq = ecnkit.filter_by_drug(corpus, lexicon, "HCQ")
    graph = ecnkit.build_ecn(hcq)
    components = ecnkit.weakly_connected_components(graph)
    assert len(components) == 61
    assert len(components[0]) == 45

    top = ecnkit.top_subgraph(graph, 1)
    assert top.node_count == 45
    centrality = ecnkit.degree_centrality(top)
    assert all(0.0 <= value <= 1.0 for value in centrality.values())


def test_sentiment_and_grades(fixture):
    corpus, lexicon, _, annotations = fixture
    scope = ecnkit.drug_scope(corpus, lexicon, "remdesivir")
    counts = ecnkit.sentiment_distribution(annotations, scope)
    assert counts["supportive"] == 19
    assert counts["critical"] == 30
    assert ecnkit.derive_assertion(counts["supportive"], counts["critical"],
                                   counts["neutral"]) == "Challenged"

    grade = ecnkit.grade_evidence(32275812, annotations, corpus)
    assert -10.0 <= grade["total"] <= 10.0
    assert ecnkit.certainty_level(0.0) == "Moderate"


def test_topics_and_timeline(fixture):
    corpus, lexicon, _, annotations = fixture
    dist = ecnkit.topic_distribution(annotations)
    assert abs(dist["methodology"]["percent"] - 54.42) <= 0.05

    series = ecnkit.sentiment_series(annotations, corpus, lexicon, "LPV/r")
    assert series["events"][0][0] <= series["events"][-1][0]
    assert ecnkit.lead_months("2020-08-15", "2020-12-17") == pytest.approx(4.07, abs=0.01)


def test_table_and_exports(fixture):
    corpus, lexicon, _, annotations = fixture
    rows = {row["drug"]: row for row in ecnkit.descriptive_table(corpus, lexicon)}
    assert rows["ivermectin"]["evidence_count"] == 4
    assert rows["ivermectin"]["pair_count"] == 13
    assert rows["HCQ"]["top_subgraph_nodes"] == 45

    graph = ecnkit.build_ecn(ecnkit.filter_by_drug(corpus, lexicon, "ivermectin"))
    doc = ecnkit.export_graphml(graph, annotations)
    back = ecnkit.import_graphml(doc)
    assert back.node_count == graph.node_count
    assert back.edge_count == graph.edge_count
    assert "digraph" in ecnkit.export_dot(graph)


def test_summary(fixture):
    corpus, lexicon, _, annotations = fixture
    summary = ecnkit.render_summary(
        "ivermectin", corpus, annotations,
        os.path.join(DATA, "fixture", "guidelines.json"), lexicon)
    assert "assertion: Challenged" in summary
    assert "half critical" in summary
