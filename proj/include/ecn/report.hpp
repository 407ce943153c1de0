#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecn/annotate.hpp"
#include "ecn/appraise.hpp"
#include "ecn/graph.hpp"
#include "ecn/timeline.hpp"
#include "ecn/types.hpp"

namespace ecn {

struct DescriptiveRow {
    std::string drug;
    std::optional<std::pair<Date, Date>> evidence_timespan;
    std::optional<std::pair<Date, Date>> comment_timespan;
    std::size_t evidence_count = 0;     // research-kind records (commented articles)
    std::size_t comment_count = 0;      // comment-kind records
    std::size_t pair_count = 0;         // unique fully-resolved links
    std::size_t subgraph_count = 0;     // weak components of the drug's network
    std::size_t top_subgraph_nodes = 0; // size of the largest component
    // Raw endpoint tallies, kept alongside the kind-based counts.
    std::size_t commented_records = 0;  // distinct link targets
    std::size_t commenting_records = 0; // distinct link sources
};

// One row per lexicon group, ordered by group name.
std::vector<DescriptiveRow> descriptive_table(const Corpus& corpus, const DrugLexicon& lexicon,
                                              const AnnotationSet* annotations = nullptr);

std::string descriptive_csv(const std::vector<DescriptiveRow>& rows);

// Copies pair sentiments onto matching edges.
void apply_sentiments(Ecn& ecn, const AnnotationSet& annotations);

// Visual encoding of the network legend; defaults match the library's
// documented colors/shapes and can be swapped per export.
struct ExportStyle {
    std::string supportive_color = "#2ca02c";
    std::string critical_color = "#d62728";
    std::string neutral_color = "#7f7f7f"; // also used for unannotated edges
    std::string original_shape = "box";
    std::string comment_shape = "ellipse";
    std::string other_shape = "diamond";

    const std::string& color(const std::optional<Sentiment>& sentiment) const;
    const std::string& shape(NodeKind kind) const;
};

// GraphML with node kind/label/date and edge sentiment/color attributes.
std::string export_graphml(const Ecn& ecn, const AnnotationSet* annotations = nullptr,
                           const ExportStyle& style = {});
Ecn import_graphml(const std::string& document);

// Graphviz DOT; node shape encodes the kind, edge colour the sentiment.
std::string export_dot(const Ecn& ecn, const AnnotationSet* annotations = nullptr,
                       const ExportStyle& style = {});

std::string sentiment_csv(const std::string& drug, const SentimentCounts& counts);
std::string series_csv(const SentimentSeries& series);

// Markdown report: sentiment counts & assertion, largest components,
// grades for the evidence nodes of the top subgraph, timeline milestones.
std::string render_summary(const std::string& drug, const Corpus& corpus,
                           const AnnotationSet& annotations,
                           const std::vector<GuidelineRef>& guidelines,
                           const DrugLexicon& lexicon,
                           const GradeMap& grade_map = GradeMap::defaults());

const char* sentiment_color(const std::optional<Sentiment>& sentiment);

} // namespace ecn
