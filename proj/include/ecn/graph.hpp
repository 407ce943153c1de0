#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecn/sentiment.hpp"
#include "ecn/types.hpp"

namespace ecn {

enum class NodeKind { OriginalResearch, OtherResearch, Comment };
enum class PairKind { EvidenceComment, CommentComment };

std::string to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(const std::string& text);

struct EcnNode {
    NodeKind kind = NodeKind::OtherResearch;
    std::optional<Date> date;
    std::string title;

    bool operator==(const EcnNode&) const = default;
};

struct EcnEdge {
    Pmid source = 0; // the comment
    Pmid target = 0; // the commented publication
    std::optional<Sentiment> sentiment;

    bool operator==(const EcnEdge&) const = default;
};

// Directed evidence-comment network. Edges are kept sorted by
// (source, target); duplicates and self-loops never enter.
struct Ecn {
    std::map<Pmid, EcnNode> nodes;
    std::vector<EcnEdge> edges;

    bool has_node(Pmid pmid) const { return nodes.count(pmid) > 0; }

    bool operator==(const Ecn&) const = default;
};

struct BuildEcnOptions {
    bool include_non_english = false;
};

// Comment when the record carries a comment publication type or is the
// source of a link; original research for primary-research types unless
// tagged Review; otherwise other research.
NodeKind classify_node(const PubRecord& record, const std::vector<CommentLink>& links);
NodeKind classify_node(const PubRecord& record, bool has_outgoing_link);

// CommentComment when the link's target is itself a comment node.
PairKind classify_pair(const CommentLink& link, const Ecn& ecn);

// One node per record, one edge per fully-resolved deduplicated link.
// Non-English records (and their links) are excluded unless requested;
// links touching unresolved endpoints never become edges. Deterministic:
// independent of record/link input order.
Ecn build_ecn(const Corpus& corpus, const BuildEcnOptions& options = {});

// Components sorted by size descending, ties by smallest member PMID;
// members sorted ascending.
using ComponentSet = std::vector<std::vector<Pmid>>;
ComponentSet weakly_connected_components(const Ecn& ecn);

// Induced subgraph of the k-th component, 1-based.
Ecn top_subgraph(const Ecn& ecn, std::size_t k);

// Undirected degree / (component size - 1); 0 for single-node components.
std::map<Pmid, double> degree_centrality(const Ecn& ecn);

} // namespace ecn
