#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <random>

#include "ecn/corpus_io.hpp"
#include "ecn/errors.hpp"
#include "ecn/pubmed.hpp"
#include "support/test_support.hpp"

using namespace ecn;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name) {
        path = fs::temp_directory_path() / ("ecn_test_" + name + "_" +
                                            std::to_string(::getpid()));
    }
    ~TempFile() { std::error_code ec; fs::remove(path, ec); }
};

} // namespace

TEST_CASE("build_query appends the comment-link operator verbatim") {
    const std::string clause = "Covid-19[MeSH] OR Covid-19[Title/Abstract]";
    CHECK(build_query(clause, LinkDirection::HasCommentIn) ==
          "(Covid-19[MeSH] OR Covid-19[Title/Abstract]) and hascommentin");
    CHECK(build_query(clause, LinkDirection::HasCommentOn) ==
          "(Covid-19[MeSH] OR Covid-19[Title/Abstract]) and hascommenton");
    CHECK_THROWS_AS(build_query("", LinkDirection::HasCommentIn), InvalidArgumentError);
}

TEST_CASE("esearch fixture parses ids in response order") {
    auto page = parse_esearch(test::read_file(test::data_path("eutils/esearch_basic.xml")));
    CHECK(page.ids == std::vector<Pmid>{32007143, 32187464, 32282022});
    CHECK(page.count == 5379);
    CHECK(page.ret_start == 0);
}

TEST_CASE("esearch edge cases") {
    auto empty = parse_esearch(test::read_file(test::data_path("eutils/esearch_empty.xml")));
    CHECK(empty.ids.empty());
    CHECK_THROWS_AS(parse_esearch(test::read_file(test::data_path("eutils/esearch_truncated.xml"))),
                    ParseError);
    CHECK_THROWS_AS(parse_esearch(test::read_file(test::data_path("eutils/esearch_error.xml"))),
                    RemoteError);
}

TEST_CASE("efetch fixture yields records, directed links and parsed dates") {
    auto result = parse_efetch(test::read_file(test::data_path("eutils/efetch_set.xml")),
                               {32187464, 32369280, 32282022});
    REQUIRE(result.records.size() == 3);
    CHECK(result.unresolved.empty());

    const PubRecord& trial = result.records[0];
    CHECK(trial.pmid == 32187464);
    CHECK(trial.epub_date == Date{2020, 3, 18});
    CHECK(trial.journal_date == Date{2020, 5, 7});
    CHECK(trial.pub_types.count("Randomized Controlled Trial") == 1);
    CHECK(trial.language == "eng");
    REQUIRE(trial.abstract.has_value());
    CHECK(trial.abstract->find("No benefit") != std::string::npos);

    const PubRecord& letter = result.records[1];
    CHECK_FALSE(letter.epub_date.has_value());
    CHECK(letter.journal_date == Date{2020, 5, 1}); // month-only collapses to day 1
    CHECK(letter.title.find("—") != std::string::npos); // numeric entity decoded
    CHECK(letter.title.find("&") != std::string::npos);

    const PubRecord& spanish = result.records[2];
    CHECK(spanish.language == "spa");
    CHECK(spanish.journal_date == Date{2020, 7, 1}); // MedlineDate "2020 Jul-Aug"

    // CommentIn on the trial, CommentOn entries in the letter; the letter's
    // self-reference is dropped and the reciprocal entry stays as a raw
    // duplicate for dedupe_links to fold.
    std::vector<CommentLink> expected = {
        {32369280, 32187464}, {32369280, 31986264}, {32369280, 32187464}};
    CHECK(result.links == expected);
    for (const auto& link : result.links) CHECK(link.source != link.target);
    CHECK(dedupe_links(result.links).size() == 2);
}

TEST_CASE("efetch reports requested pmids missing from the response") {
    auto result = parse_efetch(test::read_file(test::data_path("eutils/efetch_missing.xml")),
                               {32187464, 32369280, 99999999});
    CHECK(result.records.size() == 2);
    CHECK(result.unresolved == std::set<Pmid>{99999999});
}

TEST_CASE("efetch rejects malformed xml") {
    CHECK_THROWS_AS(parse_efetch("<PubmedArticleSet><PubmedArticle>", {1}), ParseError);
}

TEST_CASE("dedupe_links keeps first occurrences") {
    std::vector<CommentLink> links = {{1, 2}, {1, 2}, {3, 4}};
    CHECK(dedupe_links(links) == std::vector<CommentLink>{{1, 2}, {3, 4}});
    CHECK(dedupe_links({}).empty());
}

TEST_CASE("dedupe_links handles the repeated-row tally") {
    // 427 raw rows with exactly 36 duplicates -> 391 unique rows. The
    // expected count is recomputed here with a plain set.
    std::vector<CommentLink> raw;
    for (Pmid i = 0; i < 391; ++i) raw.push_back(CommentLink{9000 + i, 8000 + i % 40});
    for (Pmid i = 0; i < 36; ++i) raw.push_back(raw[static_cast<std::size_t>(i * 7 % 391)]);
    REQUIRE(raw.size() == 427);

    std::set<std::pair<Pmid, Pmid>> uniq;
    for (const auto& link : raw) uniq.insert({link.source, link.target});
    REQUIRE(uniq.size() == 391);

    auto deduped = dedupe_links(raw);
    CHECK(deduped.size() == 391);
    CHECK(dedupe_links(deduped) == deduped); // idempotent
}

TEST_CASE("dedupe_links is idempotent on random input") {
    std::mt19937 rng(7);
    for (int round = 0; round < 50; ++round) {
        std::vector<CommentLink> links;
        int n = static_cast<int>(rng() % 40);
        for (int i = 0; i < n; ++i) {
            links.push_back(CommentLink{static_cast<Pmid>(1 + rng() % 10),
                                        static_cast<Pmid>(20 + rng() % 10)});
        }
        auto once = dedupe_links(links);
        CHECK(dedupe_links(once) == once);
        std::set<CommentLink> uniq(links.begin(), links.end());
        CHECK(once.size() == uniq.size());
    }
}

TEST_CASE("corpus save/load round-trips field for field") {
    std::mt19937 rng(11);
    TempFile tmp("roundtrip");
    for (int round = 0; round < 30; ++round) {
        Corpus corpus = test::random_corpus(rng);
        save_corpus(corpus, tmp.path.string());
        Corpus loaded = load_corpus(tmp.path.string());
        // Links are written in sorted order; compare as multisets.
        std::multiset<CommentLink> a(corpus.links.begin(), corpus.links.end());
        std::multiset<CommentLink> b(loaded.links.begin(), loaded.links.end());
        CHECK(a == b);
        CHECK(loaded.records == corpus.records);
        CHECK(loaded.provenance == corpus.provenance);
        CHECK(loaded.unresolved == corpus.unresolved);

        // Saving what we loaded reproduces the file byte for byte.
        TempFile tmp2("roundtrip2");
        save_corpus(loaded, tmp2.path.string());
        CHECK(test::read_file(tmp.path.string()) == test::read_file(tmp2.path.string()));
    }
}

TEST_CASE("corpus load failure modes") {
    CHECK_THROWS_AS(load_corpus(test::data_path("mini/bad_schema.jsonl")), FormatError);
    Corpus corpus = load_corpus(test::data_path("mini/missing_link.jsonl"));
    CHECK(corpus.unresolved == std::set<Pmid>{202});
    CHECK_THROWS_AS(load_corpus(test::data_path("mini/nonexistent.jsonl")), IoError);
}

TEST_CASE("filter_by_drug matches case-insensitive substrings") {
    Corpus corpus;
    corpus.records[1] = PubRecord{1, "Remdesivir in adults with severe covid-19", {}, {}, {},
                                  "L", {"Journal Article"}, "en"};
    corpus.records[2] = PubRecord{2, "Tocilizumab works", {}, {}, {}, "L", {"Journal Article"},
                                  "en"};
    corpus.records[3] = PubRecord{3, "HYDROXYCHLOROQUINE and azithromycin outcomes", {}, {}, {},
                                  "L", {"Journal Article"}, "en"};
    DrugLexicon lexicon = DrugLexicon::defaults();

    Corpus rem = filter_by_drug(corpus, lexicon, "remdesivir");
    CHECK(rem.records.size() == 1);
    CHECK(rem.records.count(1) == 1);

    Corpus hcq = filter_by_drug(corpus, lexicon, "HCQ");
    CHECK(hcq.records.size() == 1);
    CHECK(hcq.records.count(3) == 1);

    CHECK_THROWS_AS(filter_by_drug(corpus, lexicon, "aspirin"), InvalidArgumentError);
}

TEST_CASE("filter_by_drug keeps link partners as flagged context") {
    Corpus corpus;
    corpus.records[1] = PubRecord{1, "Remdesivir trial", {}, {}, {}, "J", {"Journal Article"},
                                  "en"};
    corpus.records[2] = PubRecord{2, "Comment on an antiviral trial", {}, {}, {}, "J",
                                  {"Letter"}, "en"};
    corpus.records[3] = PubRecord{3, "Unrelated paper", {}, {}, {}, "J", {"Journal Article"},
                                  "en"};
    corpus.links = {{2, 1}, {2, 3}};

    DrugLexicon lexicon = DrugLexicon::defaults();
    Corpus scoped = filter_by_drug(corpus, lexicon, "remdesivir");
    CHECK(scoped.records.count(1) == 1);
    CHECK(scoped.records.count(2) == 1); // partner of a kept link
    CHECK(scoped.context_only == std::set<Pmid>{2});
    // 2->3 has no matched endpoint, so it is dropped along with record 3.
    CHECK(scoped.links == std::vector<CommentLink>{{2, 1}});
    CHECK(scoped.records.count(3) == 0);
}

TEST_CASE("filter_by_drug is idempotent and shrinking") {
    std::mt19937 rng(13);
    DrugLexicon lexicon = DrugLexicon::defaults();
    for (int round = 0; round < 30; ++round) {
        Corpus corpus = test::random_corpus(rng);
        for (const auto& group : {"remdesivir", "HCQ", "corticosteroid"}) {
            Corpus once = filter_by_drug(corpus, lexicon, group);
            for (const auto& [pmid, record] : once.records) {
                CHECK(corpus.records.count(pmid) == 1);
            }
            Corpus twice = filter_by_drug(once, lexicon, group);
            CHECK(twice.records == once.records);
            CHECK(twice.links == once.links);
            CHECK(twice.context_only == once.context_only);
        }
    }
}

TEST_CASE("fixture corpus: paper-scale HCQ slice") {
    Corpus corpus = load_corpus(test::data_path("fixture/corpus.jsonl"));
    DrugLexicon lexicon = DrugLexicon::load(test::data_path("fixture/lexicon.json"));
    Corpus hcq = filter_by_drug(corpus, lexicon, "HCQ");

    std::set<Pmid> sources;
    std::size_t resolved = 0;
    for (const auto& link : dedupe_links(hcq.links)) {
        if (!hcq.has_record(link.source) || !hcq.has_record(link.target)) continue;
        ++resolved;
        sources.insert(link.source);
    }
    std::size_t evidence = 0;
    std::size_t comments = 0;
    for (const auto& [pmid, record] : hcq.records) {
        if (classify_node(record, sources.count(pmid) > 0) == NodeKind::Comment) ++comments;
        else ++evidence;
    }
    CHECK(evidence == 56);
    CHECK(comments == 207);
    CHECK(resolved == 190);
}

TEST_CASE("parsers reject mutated documents without crashing") {
    // Truncations and single-byte corruptions must either parse or raise
    // one of the library's typed errors; nothing else may escape.
    auto exercise = [](const std::string& body, bool esearch) {
        try {
            if (esearch) parse_esearch(body);
            else parse_efetch(body, {32187464});
            return true;
        } catch (const ParseError&) {
            return true;
        } catch (const RemoteError&) {
            return true;
        } catch (...) {
            return false;
        }
    };

    for (bool esearch : {true, false}) {
        std::string body = test::read_file(
            test::data_path(esearch ? "eutils/esearch_basic.xml" : "eutils/efetch_set.xml"));
        for (std::size_t cut = 0; cut < body.size(); cut += 37) {
            CHECK(exercise(body.substr(0, cut), esearch));
        }
        std::mt19937 rng(esearch ? 1 : 2);
        for (int round = 0; round < 150; ++round) {
            std::string mutated = body;
            mutated[rng() % mutated.size()] =
                static_cast<char>("<>&\"=/x0"[rng() % 8]);
            CHECK(exercise(mutated, esearch));
        }
    }
}
