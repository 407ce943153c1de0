#include "ecn/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ecn/corpus_io.hpp"
#include "ecn/errors.hpp"
#include "ecn/xml.hpp"

namespace ecn {

namespace {

std::string span_text(const std::optional<std::pair<Date, Date>>& span) {
    if (!span) return "—";
    return span->first.to_string() + ".." + span->second.to_string();
}

void widen(std::optional<std::pair<Date, Date>>& span, const std::optional<Date>& date) {
    if (!date) return;
    if (!span) {
        span = {*date, *date};
        return;
    }
    span->first = std::min(span->first, *date);
    span->second = std::max(span->second, *date);
}

std::string format_number(double value) {
    std::ostringstream out;
    out.precision(2);
    out << std::fixed << value;
    return out.str();
}

std::string dot_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

const std::string& ExportStyle::color(const std::optional<Sentiment>& sentiment) const {
    if (!sentiment) return neutral_color;
    switch (*sentiment) {
    case Sentiment::Supportive: return supportive_color;
    case Sentiment::Critical: return critical_color;
    case Sentiment::Neutral: return neutral_color;
    }
    return neutral_color;
}

const std::string& ExportStyle::shape(NodeKind kind) const {
    switch (kind) {
    case NodeKind::OriginalResearch: return original_shape;
    case NodeKind::Comment: return comment_shape;
    case NodeKind::OtherResearch: return other_shape;
    }
    return other_shape;
}

const char* sentiment_color(const std::optional<Sentiment>& sentiment) {
    static const ExportStyle defaults;
    return defaults.color(sentiment).c_str();
}

std::vector<DescriptiveRow> descriptive_table(const Corpus& corpus, const DrugLexicon& lexicon,
                                              const AnnotationSet* /*annotations*/) {
    std::vector<DescriptiveRow> rows;
    for (const auto& [group, synonyms] : lexicon.groups) {
        if (synonyms.empty()) throw InvalidArgumentError("lexicon group '" + group + "' is empty");
        Corpus scoped = filter_by_drug(corpus, lexicon, group);

        DescriptiveRow row;
        row.drug = group;

        std::vector<CommentLink> links = dedupe_links(scoped.links);
        std::set<Pmid> sources;
        std::set<Pmid> targets;
        for (const auto& link : links) {
            if (!scoped.has_record(link.source) || !scoped.has_record(link.target)) continue;
            ++row.pair_count;
            sources.insert(link.source);
            targets.insert(link.target);
        }
        row.commented_records = targets.size();
        row.commenting_records = sources.size();

        for (const auto& [pmid, record] : scoped.records) {
            NodeKind kind = classify_node(record, sources.count(pmid) > 0);
            if (kind == NodeKind::Comment) {
                ++row.comment_count;
                widen(row.comment_timespan, record.best_date());
            } else {
                ++row.evidence_count;
                widen(row.evidence_timespan, record.best_date());
            }
        }

        Ecn ecn = build_ecn(scoped);
        ComponentSet components = weakly_connected_components(ecn);
        row.subgraph_count = components.size();
        row.top_subgraph_nodes = components.empty() ? 0 : components.front().size();

        rows.push_back(std::move(row));
    }
    return rows;
}

std::string descriptive_csv(const std::vector<DescriptiveRow>& rows) {
    std::ostringstream out;
    out << "drug,evidence_timespan,comment_timespan,evidence_count,comment_count,"
        << "pair_count,subgraph_count,top_subgraph_nodes\n";
    for (const auto& row : rows) {
        out << '"' << row.drug << '"' << ',' << span_text(row.evidence_timespan) << ','
            << span_text(row.comment_timespan) << ',' << row.evidence_count << ','
            << row.comment_count << ',' << row.pair_count << ',' << row.subgraph_count << ','
            << row.top_subgraph_nodes << '\n';
    }
    return out.str();
}

void apply_sentiments(Ecn& ecn, const AnnotationSet& annotations) {
    for (auto& edge : ecn.edges) {
        if (const Annotation* a = annotations.find(edge.source, edge.target)) {
            edge.sentiment = a->sentiment;
        }
    }
}

std::string export_graphml(const Ecn& ecn, const AnnotationSet* annotations,
                           const ExportStyle& style) {
    Ecn colored = ecn;
    if (annotations) apply_sentiments(colored, *annotations);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
        << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        << "  <key id=\"date\" for=\"node\" attr.name=\"date\" attr.type=\"string\"/>\n"
        << "  <key id=\"title\" for=\"node\" attr.name=\"title\" attr.type=\"string\"/>\n"
        << "  <key id=\"sentiment\" for=\"edge\" attr.name=\"sentiment\" attr.type=\"string\"/>\n"
        << "  <key id=\"color\" for=\"edge\" attr.name=\"color\" attr.type=\"string\"/>\n"
        << "  <graph id=\"ecn\" edgedefault=\"directed\">\n";
    for (const auto& [pmid, node] : colored.nodes) {
        out << "    <node id=\"" << pmid << "\">\n"
            << "      <data key=\"kind\">" << to_string(node.kind) << "</data>\n"
            << "      <data key=\"label\">" << pmid << "</data>\n";
        if (node.date) {
            out << "      <data key=\"date\">" << node.date->to_string() << "</data>\n";
        }
        if (!node.title.empty()) {
            out << "      <data key=\"title\">" << xml::escape(node.title) << "</data>\n";
        }
        out << "    </node>\n";
    }
    for (const auto& edge : colored.edges) {
        out << "    <edge source=\"" << edge.source << "\" target=\"" << edge.target << "\">\n";
        if (edge.sentiment) {
            out << "      <data key=\"sentiment\">" << to_string(*edge.sentiment) << "</data>\n";
        }
        out << "      <data key=\"color\">" << style.color(edge.sentiment) << "</data>\n"
            << "    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

Ecn import_graphml(const std::string& document) {
    xml::Document doc = xml::parse(document);
    if (doc.root->name != "graphml") throw ParseError("graphml: unexpected root element");
    const xml::Element* graph = doc.root->find("graph");
    if (!graph) throw ParseError("graphml: missing <graph>");

    auto data_value = [](const xml::Element& element, const std::string& key)
        -> std::optional<std::string> {
        for (const auto* data : element.find_all("data")) {
            if (data->attribute("key") == key) return data->text;
        }
        return std::nullopt;
    };

    Ecn ecn;
    for (const auto* node_el : graph->find_all("node")) {
        Pmid pmid = std::stoll(node_el->attribute("id"));
        EcnNode node;
        if (auto kind = data_value(*node_el, "kind")) {
            auto parsed = node_kind_from_string(*kind);
            if (!parsed) throw ParseError("graphml: unknown node kind '" + *kind + "'");
            node.kind = *parsed;
        }
        if (auto date = data_value(*node_el, "date")) node.date = Date::parse(*date);
        if (auto title = data_value(*node_el, "title")) node.title = *title;
        ecn.nodes[pmid] = std::move(node);
    }
    for (const auto* edge_el : graph->find_all("edge")) {
        EcnEdge edge;
        edge.source = std::stoll(edge_el->attribute("source"));
        edge.target = std::stoll(edge_el->attribute("target"));
        if (auto sentiment = data_value(*edge_el, "sentiment")) {
            edge.sentiment = sentiment_from_string(*sentiment);
        }
        if (!ecn.has_node(edge.source) || !ecn.has_node(edge.target)) {
            throw ParseError("graphml: edge endpoint without a node");
        }
        ecn.edges.push_back(edge);
    }
    std::sort(ecn.edges.begin(), ecn.edges.end(), [](const EcnEdge& a, const EcnEdge& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    return ecn;
}

std::string export_dot(const Ecn& ecn, const AnnotationSet* annotations,
                       const ExportStyle& style) {
    Ecn colored = ecn;
    if (annotations) apply_sentiments(colored, *annotations);

    std::ostringstream out;
    out << "digraph ecn {\n";
    for (const auto& [pmid, node] : colored.nodes) {
        out << "  \"" << pmid << "\" [shape=" << style.shape(node.kind) << ", label=\"" << pmid
            << "\"";
        if (node.date) out << ", tooltip=\"" << dot_escape(node.date->to_string()) << "\"";
        out << "];\n";
    }
    for (const auto& edge : colored.edges) {
        out << "  \"" << edge.source << "\" -> \"" << edge.target << "\" [color=\""
            << style.color(edge.sentiment) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string sentiment_csv(const std::string& drug, const SentimentCounts& counts) {
    std::ostringstream out;
    out << "drug,supportive,critical,neutral,assertion\n";
    out << '"' << drug << '"' << ',' << counts.supportive << ',' << counts.critical << ','
        << counts.neutral << ',' << to_string(derive_assertion(counts)) << '\n';
    return out.str();
}

std::string series_csv(const SentimentSeries& series) {
    std::ostringstream out;
    out << "date,sentiment,comment_pmid\n";
    for (const auto& event : series.events) {
        out << event.date.to_string() << ',' << to_string(event.sentiment) << ','
            << event.comment_pmid << '\n';
    }
    return out.str();
}

std::string render_summary(const std::string& drug, const Corpus& corpus,
                           const AnnotationSet& annotations,
                           const std::vector<GuidelineRef>& guidelines,
                           const DrugLexicon& lexicon, const GradeMap& grade_map) {
    Corpus scoped = filter_by_drug(corpus, lexicon, drug);
    std::set<Pmid> scope;
    for (const auto& [pmid, record] : scoped.records) scope.insert(pmid);

    std::ostringstream out;
    out << "# " << drug << "\n\n";

    CoverageReport coverage = coverage_report(annotations, scoped);
    out << "- records: " << scoped.records.size() << "\n";
    out << "- pairs: " << coverage.total_links << " (annotated: " << coverage.annotated_links
        << ", coverage " << format_number(100.0 * coverage.fraction()) << "%)\n";

    SentimentCounts counts = sentiment_distribution(annotations, scope);
    out << "- sentiment: supportive " << counts.supportive << ", critical " << counts.critical
        << ", neutral " << counts.neutral << "\n";
    if (coverage.annotated_links == 0) {
        out << "- assertion: (no annotations)\n";
    } else {
        out << "- assertion: " << to_string(derive_assertion(counts)) << "\n";
    }

    Ecn ecn = build_ecn(scoped);
    ComponentSet components = weakly_connected_components(ecn);
    out << "- subgraphs: " << components.size() << "\n\n";

    std::size_t listed = std::min<std::size_t>(components.size(), 2);
    for (std::size_t i = 0; i < listed; ++i) {
        out << "## subgraph " << (i + 1) << " (" << components[i].size() << " nodes)\n\n";
        Ecn sub = top_subgraph(ecn, i + 1);
        for (const auto& [pmid, node] : sub.nodes) {
            out << "- " << pmid << " [" << to_string(node.kind) << "]";
            if (node.date) out << " " << node.date->to_string();
            if (!node.title.empty()) out << " — " << node.title;
            out << "\n";
        }
        out << "\n";
        bool printed_header = false;
        for (const auto& [pmid, node] : sub.nodes) {
            if (node.kind == NodeKind::Comment) continue;
            GradingScore grade = grade_evidence(pmid, annotations, scoped, grade_map);
            if (!printed_header) {
                out << "### grades\n\n";
                printed_header = true;
            }
            out << "- " << pmid << ": total " << format_number(grade.total) << " ("
                << to_string(grade.level) << ")";
            if (grade.ungraded_basis) out << " [ungraded basis]";
            out << "\n";
        }
        if (printed_header) out << "\n";
    }

    SentimentSeries series = sentiment_series(annotations, scoped, scope);
    out << "## timeline\n\n";
    out << "- events: " << series.events.size();
    if (series.undated_excluded) out << " (undated excluded: " << series.undated_excluded << ")";
    out << "\n";
    auto first = first_critical(series);
    auto half = half_critical_date(series);
    out << "- first critical: " << (first ? first->to_string() : std::string("—")) << "\n";
    out << "- half critical: " << (half ? half->to_string() : std::string("—")) << "\n";
    if (auto guideline = guideline_for(guidelines, drug)) {
        out << "- guideline: v" << guideline->version << " " << guideline->release_date.to_string()
            << " (" << to_string(guideline->polarity) << ")\n";
        if (first) {
            out << "- first critical lead: " << format_number(lead_months(*first, *guideline))
                << " months\n";
        }
        if (half) {
            out << "- half critical lead: " << format_number(lead_months(*half, *guideline))
                << " months\n";
        }
    }
    return out.str();
}

} // namespace ecn
