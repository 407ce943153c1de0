#include "ecn/graph.hpp"

#include <algorithm>
#include <set>

#include "ecn/corpus_io.hpp"
#include "ecn/errors.hpp"

namespace ecn {

namespace {

const std::set<std::string>& comment_types() {
    static const std::set<std::string> types = {"Comment", "Letter", "Editorial"};
    return types;
}

const std::set<std::string>& primary_research_types() {
    static const std::set<std::string> types = {"Journal Article", "Clinical Trial",
                                                "Randomized Controlled Trial"};
    return types;
}

// Union-find with path compression over arbitrary PMIDs.
class DisjointSets {
public:
    Pmid find(Pmid x) {
        auto it = parent_.find(x);
        if (it == parent_.end()) {
            parent_[x] = x;
            return x;
        }
        Pmid root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            Pmid next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    void unite(Pmid a, Pmid b) { parent_[find(a)] = find(b); }

private:
    std::map<Pmid, Pmid> parent_;
};

} // namespace

std::string to_string(NodeKind kind) {
    switch (kind) {
    case NodeKind::OriginalResearch: return "original_research";
    case NodeKind::OtherResearch: return "other_research";
    case NodeKind::Comment: return "comment";
    }
    return "other_research";
}

std::optional<NodeKind> node_kind_from_string(const std::string& text) {
    if (text == "original_research") return NodeKind::OriginalResearch;
    if (text == "other_research") return NodeKind::OtherResearch;
    if (text == "comment") return NodeKind::Comment;
    return std::nullopt;
}

NodeKind classify_node(const PubRecord& record, bool has_outgoing_link) {
    for (const auto& type : record.pub_types) {
        if (comment_types().count(type)) return NodeKind::Comment;
    }
    if (has_outgoing_link) return NodeKind::Comment;
    bool primary = false;
    for (const auto& type : record.pub_types) {
        if (primary_research_types().count(type)) primary = true;
    }
    if (primary && !record.pub_types.count("Review")) return NodeKind::OriginalResearch;
    return NodeKind::OtherResearch;
}

NodeKind classify_node(const PubRecord& record, const std::vector<CommentLink>& links) {
    bool outgoing = std::any_of(links.begin(), links.end(), [&](const CommentLink& link) {
        return link.source == record.pmid;
    });
    return classify_node(record, outgoing);
}

PairKind classify_pair(const CommentLink& link, const Ecn& ecn) {
    auto target = ecn.nodes.find(link.target);
    if (!ecn.has_node(link.source) || target == ecn.nodes.end()) {
        throw InvalidArgumentError("link " + std::to_string(link.source) + "->" +
                                   std::to_string(link.target) + " has a dangling endpoint");
    }
    return target->second.kind == NodeKind::Comment ? PairKind::CommentComment
                                                    : PairKind::EvidenceComment;
}

Ecn build_ecn(const Corpus& corpus, const BuildEcnOptions& options) {
    auto included = [&](Pmid pmid) {
        auto it = corpus.records.find(pmid);
        if (it == corpus.records.end()) return false;
        return options.include_non_english || it->second.language == "en";
    };

    std::vector<CommentLink> links = dedupe_links(corpus.links);
    links.erase(std::remove_if(links.begin(), links.end(),
                               [&](const CommentLink& link) {
                                   return link.source == link.target ||
                                          !included(link.source) || !included(link.target);
                               }),
                links.end());
    std::sort(links.begin(), links.end());

    std::set<Pmid> sources;
    for (const auto& link : links) sources.insert(link.source);

    Ecn ecn;
    for (const auto& [pmid, record] : corpus.records) {
        if (!included(pmid)) continue;
        EcnNode node;
        node.kind = classify_node(record, sources.count(pmid) > 0);
        node.date = record.best_date();
        node.title = record.title;
        ecn.nodes[pmid] = std::move(node);
    }
    for (const auto& link : links) {
        ecn.edges.push_back(EcnEdge{link.source, link.target, std::nullopt});
    }
    return ecn;
}

ComponentSet weakly_connected_components(const Ecn& ecn) {
    DisjointSets sets;
    for (const auto& [pmid, node] : ecn.nodes) sets.find(pmid);
    for (const auto& edge : ecn.edges) sets.unite(edge.source, edge.target);

    std::map<Pmid, std::vector<Pmid>> by_root;
    for (const auto& [pmid, node] : ecn.nodes) by_root[sets.find(pmid)].push_back(pmid);

    ComponentSet components;
    components.reserve(by_root.size());
    for (auto& [root, members] : by_root) {
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
    }
    std::sort(components.begin(), components.end(),
              [](const std::vector<Pmid>& a, const std::vector<Pmid>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a.front() < b.front();
              });
    return components;
}

Ecn top_subgraph(const Ecn& ecn, std::size_t k) {
    ComponentSet components = weakly_connected_components(ecn);
    if (k < 1 || k > components.size()) {
        throw InvalidArgumentError("component index " + std::to_string(k) + " out of range (1.." +
                                   std::to_string(components.size()) + ")");
    }
    const std::vector<Pmid>& members = components[k - 1];
    std::set<Pmid> inside(members.begin(), members.end());

    Ecn sub;
    for (Pmid pmid : members) sub.nodes[pmid] = ecn.nodes.at(pmid);
    for (const auto& edge : ecn.edges) {
        if (inside.count(edge.source) && inside.count(edge.target)) sub.edges.push_back(edge);
    }
    return sub;
}

std::map<Pmid, double> degree_centrality(const Ecn& ecn) {
    if (ecn.nodes.empty()) throw InvalidArgumentError("degree_centrality on empty graph");

    std::map<Pmid, std::set<Pmid>> neighbors;
    for (const auto& [pmid, node] : ecn.nodes) neighbors[pmid];
    for (const auto& edge : ecn.edges) {
        neighbors[edge.source].insert(edge.target);
        neighbors[edge.target].insert(edge.source);
    }

    std::map<Pmid, double> centrality;
    for (const auto& component : weakly_connected_components(ecn)) {
        const double denom = static_cast<double>(component.size()) - 1.0;
        for (Pmid pmid : component) {
            centrality[pmid] =
                denom > 0 ? static_cast<double>(neighbors[pmid].size()) / denom : 0.0;
        }
    }
    return centrality;
}

} // namespace ecn
