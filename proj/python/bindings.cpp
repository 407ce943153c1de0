#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ecn/appraise.hpp"
#include "ecn/corpus_io.hpp"
#include "ecn/errors.hpp"
#include "ecn/graph.hpp"
#include "ecn/pubmed.hpp"
#include "ecn/report.hpp"
#include "ecn/timeline.hpp"

namespace py = pybind11;
using namespace ecn;

namespace {

py::dict counts_to_dict(const SentimentCounts& counts) {
    py::dict out;
    out["supportive"] = counts.supportive;
    out["critical"] = counts.critical;
    out["neutral"] = counts.neutral;
    return out;
}

py::dict grade_to_dict(const GradingScore& score) {
    py::dict topics;
    for (const auto& [topic, value] : score.topic_scores) {
        topics[py::str(to_string(topic))] = value;
    }
    py::dict out;
    out["topic_scores"] = topics;
    out["total"] = score.total;
    out["level"] = to_string(score.level);
    out["ungraded_basis"] = score.ungraded_basis;
    return out;
}

py::dict row_to_dict(const DescriptiveRow& row) {
    py::dict out;
    out["drug"] = row.drug;
    if (row.evidence_timespan) {
        out["evidence_timespan"] = py::make_tuple(row.evidence_timespan->first.to_string(),
                                                  row.evidence_timespan->second.to_string());
    } else {
        out["evidence_timespan"] = py::none();
    }
    if (row.comment_timespan) {
        out["comment_timespan"] = py::make_tuple(row.comment_timespan->first.to_string(),
                                                 row.comment_timespan->second.to_string());
    } else {
        out["comment_timespan"] = py::none();
    }
    out["evidence_count"] = row.evidence_count;
    out["comment_count"] = row.comment_count;
    out["pair_count"] = row.pair_count;
    out["subgraph_count"] = row.subgraph_count;
    out["top_subgraph_nodes"] = row.top_subgraph_nodes;
    return out;
}

} // namespace

PYBIND11_MODULE(_ecnkit, m) {
    m.doc() = "Evidence-comment network toolkit";

    py::register_exception<Error>(m, "EcnError");

    py::class_<Corpus>(m, "Corpus")
        .def_property_readonly("record_count",
                               [](const Corpus& c) { return c.records.size(); })
        .def_property_readonly("link_count", [](const Corpus& c) { return c.links.size(); })
        .def_property_readonly("unresolved",
                               [](const Corpus& c) {
                                   return std::vector<Pmid>(c.unresolved.begin(),
                                                            c.unresolved.end());
                               })
        .def("pmids",
             [](const Corpus& c) {
                 std::vector<Pmid> out;
                 for (const auto& [pmid, record] : c.records) out.push_back(pmid);
                 return out;
             })
        .def("links", [](const Corpus& c) {
            std::vector<std::pair<Pmid, Pmid>> out;
            for (const auto& link : c.links) out.emplace_back(link.source, link.target);
            return out;
        });

    py::class_<DrugLexicon>(m, "DrugLexicon")
        .def_static("defaults", &DrugLexicon::defaults)
        .def_static("load", &DrugLexicon::load)
        .def("groups", [](const DrugLexicon& lex) {
            std::vector<std::string> out;
            for (const auto& [group, synonyms] : lex.groups) out.push_back(group);
            return out;
        });

    py::class_<Taxonomy>(m, "Taxonomy")
        .def_static("defaults", &Taxonomy::defaults)
        .def_static("load", &Taxonomy::load);

    py::class_<AnnotationSet>(m, "AnnotationSet")
        .def("__len__", &AnnotationSet::size);

    py::class_<Ecn>(m, "Ecn")
        .def_property_readonly("node_count", [](const Ecn& g) { return g.nodes.size(); })
        .def_property_readonly("edge_count", [](const Ecn& g) { return g.edges.size(); })
        .def("nodes",
             [](const Ecn& g) {
                 std::vector<Pmid> out;
                 for (const auto& [pmid, node] : g.nodes) out.push_back(pmid);
                 return out;
             })
        .def("node_kind",
             [](const Ecn& g, Pmid pmid) { return to_string(g.nodes.at(pmid).kind); })
        .def("edges", [](const Ecn& g) {
            std::vector<std::pair<Pmid, Pmid>> out;
            for (const auto& edge : g.edges) out.emplace_back(edge.source, edge.target);
            return out;
        });

    m.def("build_query", [](const std::string& clause, const std::string& direction) {
        if (direction == "hascommentin") return build_query(clause, LinkDirection::HasCommentIn);
        if (direction == "hascommenton") return build_query(clause, LinkDirection::HasCommentOn);
        throw InvalidArgumentError("direction must be hascommentin or hascommenton");
    });
    m.def("load_corpus", &load_corpus);
    m.def("save_corpus", &save_corpus);
    m.def("filter_by_drug", &filter_by_drug);
    m.def(
        "load_annotations",
        [](const std::string& path, const Corpus& corpus, const Taxonomy& taxonomy, bool strict) {
            AnnotationLoadOptions options;
            options.strict = strict;
            return load_annotations(path, corpus, taxonomy, options);
        },
        py::arg("path"), py::arg("corpus"), py::arg("taxonomy"), py::arg("strict") = true);

    m.def(
        "build_ecn",
        [](const Corpus& corpus, bool include_non_english) {
            return build_ecn(corpus, BuildEcnOptions{include_non_english});
        },
        py::arg("corpus"), py::arg("include_non_english") = false);
    m.def("weakly_connected_components", &weakly_connected_components);
    m.def("top_subgraph", &top_subgraph);
    m.def("degree_centrality", &degree_centrality);

    m.def("drug_scope", &scope_for_drug);
    m.def("sentiment_distribution",
          [](const AnnotationSet& annotations, const std::set<Pmid>& scope) {
              return counts_to_dict(sentiment_distribution(annotations, scope));
          });
    m.def("derive_assertion", [](std::size_t supportive, std::size_t critical, std::size_t neutral) {
        return to_string(derive_assertion(SentimentCounts{supportive, critical, neutral}));
    });
    m.def("topic_distribution", [](const AnnotationSet& annotations) {
        TopicDistribution dist = topic_distribution(annotations);
        py::dict out;
        for (const auto& level : dist.level1) {
            py::dict leaves;
            for (const auto& leaf : level.level2) leaves[py::str(leaf.tag)] = leaf.percent;
            py::dict entry;
            entry["percent"] = level.percent;
            entry["level2"] = leaves;
            out[py::str(to_string(level.level1))] = entry;
        }
        return out;
    });
    m.def(
        "grade_evidence",
        [](Pmid pmid, const AnnotationSet& annotations, const Corpus& corpus) {
            return grade_to_dict(grade_evidence(pmid, annotations, corpus));
        },
        py::arg("pmid"), py::arg("annotations"), py::arg("corpus"));
    m.def("certainty_level", [](double total) { return to_string(certainty_level(total)); });

    m.def("sentiment_series",
          [](const AnnotationSet& annotations, const Corpus& corpus, const DrugLexicon& lexicon,
             const std::string& drug) {
              SentimentSeries series = sentiment_series(annotations, corpus, lexicon, drug);
              std::vector<py::tuple> events;
              events.reserve(series.events.size());
              for (const auto& event : series.events) {
                  events.push_back(py::make_tuple(event.date.to_string(),
                                                  to_string(event.sentiment), event.comment_pmid));
              }
              py::dict out;
              out["events"] = events;
              out["undated_excluded"] = series.undated_excluded;
              return out;
          });
    m.def("lead_months", [](const std::string& event_date, const std::string& release_date) {
        return lead_months(Date::parse(event_date), Date::parse(release_date));
    });

    m.def("descriptive_table", [](const Corpus& corpus, const DrugLexicon& lexicon) {
        std::vector<py::dict> out;
        for (const auto& row : descriptive_table(corpus, lexicon)) out.push_back(row_to_dict(row));
        return out;
    });
    m.def(
        "export_graphml",
        [](const Ecn& graph, const AnnotationSet* annotations) {
            return export_graphml(graph, annotations);
        },
        py::arg("ecn"), py::arg("annotations") = nullptr);
    m.def("import_graphml", &import_graphml);
    m.def(
        "export_dot",
        [](const Ecn& graph, const AnnotationSet* annotations) {
            return export_dot(graph, annotations);
        },
        py::arg("ecn"), py::arg("annotations") = nullptr);
    m.def("render_summary",
          [](const std::string& drug, const Corpus& corpus, const AnnotationSet& annotations,
             const std::string& guidelines_path, const DrugLexicon& lexicon) {
              return render_summary(drug, corpus, annotations, load_guidelines(guidelines_path),
                                    lexicon);
          });
}
