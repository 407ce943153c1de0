#include <doctest.h>

#include <algorithm>
#include <random>

#include "ecn/corpus_io.hpp"
#include "ecn/errors.hpp"
#include "ecn/graph.hpp"
#include "support/test_support.hpp"

using namespace ecn;

namespace {

PubRecord record_with(Pmid pmid, std::set<std::string> types) {
    PubRecord record;
    record.pmid = pmid;
    record.title = "record " + std::to_string(pmid);
    record.pub_types = std::move(types);
    return record;
}

Corpus tiny_corpus() {
    Corpus corpus;
    corpus.records[1] = record_with(1, {"Journal Article", "Randomized Controlled Trial"});
    corpus.records[2] = record_with(2, {"Letter"});
    corpus.records[3] = record_with(3, {"Journal Article"});
    corpus.links = {{2, 1}};
    return corpus;
}

} // namespace

TEST_CASE("classify_node follows type and link evidence") {
    CHECK(classify_node(record_with(1, {"Letter"}), {}) == NodeKind::Comment);
    CHECK(classify_node(record_with(2, {"Journal Article", "Randomized Controlled Trial"}), {}) ==
          NodeKind::OriginalResearch);
    // A review that comments on something counts as a comment.
    CHECK(classify_node(record_with(3, {"Review"}), {{3, 7}}) == NodeKind::Comment);
    CHECK(classify_node(record_with(3, {"Review"}), {}) == NodeKind::OtherResearch);
    CHECK(classify_node(record_with(4, {"Journal Article", "Review"}), {}) ==
          NodeKind::OtherResearch);
    CHECK(classify_node(record_with(5, {}), {}) == NodeKind::OtherResearch);
}

TEST_CASE("classify_pair splits evidence-comment from comment-comment") {
    Corpus corpus = tiny_corpus();
    corpus.records[4] = record_with(4, {"Letter"});
    corpus.links.push_back({4, 2}); // reply to the letter
    Ecn ecn = build_ecn(corpus);

    CHECK(classify_pair({2, 1}, ecn) == PairKind::EvidenceComment);
    CHECK(classify_pair({4, 2}, ecn) == PairKind::CommentComment);
    CHECK_THROWS_AS(classify_pair({4, 999}, ecn), InvalidArgumentError);
}

TEST_CASE("fixture pair kinds match the published split") {
    Corpus corpus = load_corpus(test::data_path("fixture/corpus.jsonl"));
    Ecn ecn = build_ecn(corpus);
    std::size_t evidence_comment = 0;
    std::size_t comment_comment = 0;
    for (const auto& edge : ecn.edges) {
        if (classify_pair({edge.source, edge.target}, ecn) == PairKind::CommentComment) {
            ++comment_comment;
        } else {
            ++evidence_comment;
        }
    }
    CHECK(evidence_comment == 354);
    CHECK(comment_comment == 73);
    CHECK(ecn.edges.size() == 427);
}

TEST_CASE("build_ecn produces nodes, edges and isolated singletons") {
    Corpus corpus = tiny_corpus();
    Ecn ecn = build_ecn(corpus);
    CHECK(ecn.nodes.size() == 3);
    CHECK(ecn.edges.size() == 1);
    CHECK(ecn.nodes.at(1).kind == NodeKind::OriginalResearch);
    CHECK(ecn.nodes.at(2).kind == NodeKind::Comment);

    auto components = weakly_connected_components(ecn);
    REQUIRE(components.size() == 2);
    CHECK(components[0] == std::vector<Pmid>{1, 2});
    CHECK(components[1] == std::vector<Pmid>{3}); // isolated node, own component
}

TEST_CASE("build_ecn is order-insensitive and drops non-English records by default") {
    Corpus corpus = tiny_corpus();
    corpus.records[9] = record_with(9, {"Letter"});
    corpus.records[9].language = "es";
    corpus.links.push_back({9, 1});

    Ecn base = build_ecn(corpus);
    CHECK(base.nodes.count(9) == 0);
    CHECK(std::none_of(base.edges.begin(), base.edges.end(),
                       [](const EcnEdge& e) { return e.source == 9; }));

    Ecn with_es = build_ecn(corpus, BuildEcnOptions{true});
    CHECK(with_es.nodes.count(9) == 1);
    CHECK(with_es.edges.size() == base.edges.size() + 1);

    Corpus shuffled;
    shuffled.provenance = corpus.provenance;
    shuffled.records = corpus.records;
    shuffled.links = {corpus.links[1], corpus.links[0]};
    CHECK(build_ecn(shuffled) == base);
}

TEST_CASE("weakly_connected_components on hand graphs") {
    Ecn ecn;
    for (Pmid p : {1, 2, 3, 4, 5}) ecn.nodes[p] = EcnNode{};
    ecn.edges = {{1, 2, {}}, {3, 2, {}}, {4, 5, {}}};
    auto components = weakly_connected_components(ecn);
    REQUIRE(components.size() == 2);
    CHECK(components[0] == std::vector<Pmid>{1, 2, 3});
    CHECK(components[1] == std::vector<Pmid>{4, 5});

    CHECK(weakly_connected_components(Ecn{}).empty());
}

TEST_CASE("component ordering breaks size ties by smallest pmid") {
    Ecn ecn;
    for (Pmid p : {10, 11, 2, 3}) ecn.nodes[p] = EcnNode{};
    ecn.edges = {{10, 11, {}}, {2, 3, {}}};
    auto components = weakly_connected_components(ecn);
    REQUIRE(components.size() == 2);
    CHECK(components[0].front() == 2);
    CHECK(components[1].front() == 10);
}

TEST_CASE("components match the brute-force oracle on random graphs") {
    std::mt19937 rng(2024);
    for (int round = 0; round < 200; ++round) {
        Ecn ecn = test::random_ecn(rng, 60, 0.05 + 0.4 * (round % 10) / 10.0);
        auto got = weakly_connected_components(ecn);
        auto expected = test::oracle_components(ecn);

        std::set<std::set<Pmid>> got_sets;
        std::size_t covered = 0;
        for (const auto& component : got) {
            got_sets.insert(std::set<Pmid>(component.begin(), component.end()));
            covered += component.size();
        }
        CHECK(covered == ecn.nodes.size()); // partition covers every node
        CHECK(got_sets.size() == got.size());
        CHECK(got_sets == std::set<std::set<Pmid>>(expected.begin(), expected.end()));

        for (std::size_t i = 1; i < got.size(); ++i) { // ordering invariant
            CHECK(got[i - 1].size() >= got[i].size());
            if (got[i - 1].size() == got[i].size()) CHECK(got[i - 1][0] < got[i][0]);
        }
    }
}

TEST_CASE("top_subgraph induces the k-th component") {
    Ecn ecn;
    for (Pmid p : {1, 2, 3, 4, 5}) ecn.nodes[p] = EcnNode{};
    ecn.edges = {{1, 2, {}}, {3, 2, {}}, {4, 5, {}}};

    Ecn first = top_subgraph(ecn, 1);
    CHECK(first.nodes.size() == 3);
    CHECK(first.edges.size() == 2);
    Ecn second = top_subgraph(ecn, 2);
    CHECK(second.nodes.size() == 2);
    CHECK_THROWS_AS(top_subgraph(ecn, 3), InvalidArgumentError);
    CHECK_THROWS_AS(top_subgraph(ecn, 0), InvalidArgumentError);
}

TEST_CASE("top_subgraph keeps every in-component edge on random graphs") {
    std::mt19937 rng(99);
    for (int round = 0; round < 40; ++round) {
        Ecn ecn = test::random_ecn(rng, 40, 0.2);
        auto components = weakly_connected_components(ecn);
        if (components.empty()) continue;
        std::size_t k = 1 + rng() % components.size();
        Ecn sub = top_subgraph(ecn, k);

        std::set<Pmid> expected(components[k - 1].begin(), components[k - 1].end());
        std::set<Pmid> got;
        for (const auto& [pmid, node] : sub.nodes) got.insert(pmid);
        CHECK(got == expected);

        std::size_t inside = 0;
        for (const auto& edge : ecn.edges) {
            if (expected.count(edge.source) && expected.count(edge.target)) ++inside;
        }
        CHECK(sub.edges.size() == inside);
    }
}

TEST_CASE("degree_centrality normalizes within components") {
    Ecn star;
    for (Pmid p : {1, 2, 3}) star.nodes[p] = EcnNode{};
    star.edges = {{1, 2, {}}, {3, 2, {}}}; // B <- A, B <- C
    auto c = degree_centrality(star);
    CHECK(c.at(2) == doctest::Approx(1.0));
    CHECK(c.at(1) == doctest::Approx(0.5));
    CHECK(c.at(3) == doctest::Approx(0.5));

    Ecn path;
    for (Pmid p : {1, 2, 3}) path.nodes[p] = EcnNode{};
    path.edges = {{1, 2, {}}, {2, 3, {}}};
    auto pc = degree_centrality(path);
    CHECK(pc.at(2) == doctest::Approx(1.0));
    CHECK(pc.at(1) == doctest::Approx(0.5));
    CHECK(pc.at(3) == doctest::Approx(0.5));

    Ecn isolated;
    isolated.nodes[7] = EcnNode{};
    CHECK(degree_centrality(isolated).at(7) == doctest::Approx(0.0));
    CHECK_THROWS_AS(degree_centrality(Ecn{}), InvalidArgumentError);
}

TEST_CASE("degree_centrality stays in [0,1] and peaks at max degree") {
    std::mt19937 rng(5);
    for (int round = 0; round < 40; ++round) {
        Ecn ecn = test::random_ecn(rng, 50, 0.3);
        if (ecn.nodes.empty()) continue;
        auto centrality = degree_centrality(ecn);

        std::map<Pmid, std::set<Pmid>> neighbors;
        for (const auto& edge : ecn.edges) {
            neighbors[edge.source].insert(edge.target);
            neighbors[edge.target].insert(edge.source);
        }
        for (const auto& component : weakly_connected_components(ecn)) {
            double best_value = -1;
            Pmid best_node = 0;
            std::size_t best_degree = 0;
            for (Pmid pmid : component) {
                double value = centrality.at(pmid);
                CHECK(value >= 0.0);
                CHECK(value <= 1.0);
                if (value > best_value) {
                    best_value = value;
                    best_node = pmid;
                }
                best_degree = std::max(best_degree, neighbors[pmid].size());
            }
            CHECK(neighbors[best_node].size() == best_degree);
        }
    }
}

TEST_CASE("fixture graph reproduces the published shape") {
    Corpus corpus = load_corpus(test::data_path("fixture/corpus.jsonl"));
    DrugLexicon lexicon = DrugLexicon::load(test::data_path("fixture/lexicon.json"));

    Corpus hcq = filter_by_drug(corpus, lexicon, "HCQ");
    auto hcq_components = weakly_connected_components(build_ecn(hcq));
    CHECK(hcq_components.size() == 61);
    CHECK(hcq_components.front().size() == 45);

    Corpus ivm = filter_by_drug(corpus, lexicon, "ivermectin");
    Ecn ivm_ecn = build_ecn(ivm);
    CHECK(weakly_connected_components(ivm_ecn).size() == 7);
    CHECK(top_subgraph(ivm_ecn, 1).nodes.size() == 6);
}

TEST_CASE("build_ecn folds duplicate links and drops self references") {
    Corpus corpus = tiny_corpus();
    corpus.links.push_back({2, 1}); // duplicate
    corpus.links.push_back({2, 2}); // self loop never becomes an edge
    Ecn ecn = build_ecn(corpus);
    CHECK(ecn.edges.size() == 1);
    for (const auto& edge : ecn.edges) CHECK(edge.source != edge.target);
}
