#include <doctest.h>

#include <random>

#include "ecn/corpus_io.hpp"
#include "ecn/errors.hpp"
#include "ecn/timeline.hpp"
#include "support/test_support.hpp"

using namespace ecn;

namespace {

SentimentSeries series_of(std::vector<std::pair<std::string, Sentiment>> events) {
    SentimentSeries series;
    Pmid pmid = 100;
    for (auto& [date, sentiment] : events) {
        series.events.push_back(TimelineEvent{Date::parse(date), sentiment, pmid++});
    }
    std::sort(series.events.begin(), series.events.end(),
              [](const TimelineEvent& a, const TimelineEvent& b) {
                  if (a.date != b.date) return a.date < b.date;
                  return a.comment_pmid < b.comment_pmid;
              });
    return series;
}

} // namespace

TEST_CASE("sentiment_series sorts events and counts undated comments") {
    Corpus corpus;
    for (Pmid p : {1, 11, 12, 13}) {
        PubRecord record;
        record.pmid = p;
        record.title = p == 1 ? "Remdesivir trial" : "Comment on remdesivir";
        record.pub_types = p == 1 ? std::set<std::string>{"Journal Article"}
                                  : std::set<std::string>{"Letter"};
        corpus.records[p] = record;
        if (p != 1) corpus.links.push_back({p, 1});
    }
    corpus.records[11].epub_date = Date{2020, 5, 16};
    corpus.records[12].journal_date = Date{2020, 3, 4}; // fallback date
    // 13 stays undated

    AnnotationSet set;
    for (Pmid p : {11, 12, 13}) {
        Annotation a;
        a.comment_pmid = p;
        a.target_pmid = 1;
        a.sentiment = Sentiment::Critical;
        a.topics = {{TopicLevel1::Other, "just mentioned"}};
        set.add(a);
    }

    auto series = sentiment_series(set, corpus, {1});
    REQUIRE(series.events.size() == 2);
    CHECK(series.undated_excluded == 1);
    CHECK(series.events[0].comment_pmid == 12);
    CHECK(series.events[1].comment_pmid == 11);

    // Shuffled annotation order yields the identical series.
    AnnotationSet reversed;
    for (Pmid p : {13, 12, 11}) {
        Annotation a;
        a.comment_pmid = p;
        a.target_pmid = 1;
        a.sentiment = Sentiment::Critical;
        a.topics = {{TopicLevel1::Other, "just mentioned"}};
        reversed.add(a);
    }
    auto again = sentiment_series(reversed, corpus, {1});
    CHECK(again.events == series.events);
}

TEST_CASE("first_critical finds the earliest critical event") {
    auto series = series_of({{"2020-05-16", Sentiment::Critical},
                             {"2020-03-04", Sentiment::Critical},
                             {"2020-02-01", Sentiment::Supportive}});
    CHECK(first_critical(series) == Date{2020, 3, 4});

    auto supportive = series_of({{"2020-05-16", Sentiment::Supportive}});
    CHECK_FALSE(first_critical(supportive).has_value());
    CHECK_FALSE(first_critical(SentimentSeries{}).has_value());
}

TEST_CASE("half_critical_date picks the ceil(n/2)-th critical") {
    auto four = series_of({{"2020-03-04", Sentiment::Critical},
                           {"2020-05-16", Sentiment::Critical},
                           {"2020-07-21", Sentiment::Critical},
                           {"2020-08-03", Sentiment::Critical},
                           {"2020-04-01", Sentiment::Supportive}});
    CHECK(half_critical_date(four) == Date{2020, 5, 16}); // k = 2

    auto one = series_of({{"2020-06-10", Sentiment::Critical}});
    CHECK(half_critical_date(one) == Date{2020, 6, 10});

    auto five = series_of({{"2020-01-01", Sentiment::Critical},
                           {"2020-02-01", Sentiment::Critical},
                           {"2020-03-01", Sentiment::Critical},
                           {"2020-04-01", Sentiment::Critical},
                           {"2020-05-01", Sentiment::Critical}});
    CHECK(half_critical_date(five) == Date{2020, 3, 1}); // ceil(5/2) = 3

    CHECK_FALSE(half_critical_date(series_of({{"2020-01-01", Sentiment::Neutral}})).has_value());
}

TEST_CASE("half_critical_date cumulative-count invariant on random series") {
    std::mt19937 rng(404);
    for (int round = 0; round < 1000; ++round) {
        SentimentSeries series;
        int n = static_cast<int>(rng() % 60);
        for (int i = 0; i < n; ++i) {
            Date date{2020, 1 + static_cast<int>(rng() % 12), 1 + static_cast<int>(rng() % 28)};
            series.events.push_back(TimelineEvent{
                date, static_cast<Sentiment>(rng() % 3), 100 + i});
        }
        std::sort(series.events.begin(), series.events.end(),
                  [](const TimelineEvent& a, const TimelineEvent& b) {
                      if (a.date != b.date) return a.date < b.date;
                      return a.comment_pmid < b.comment_pmid;
                  });

        std::size_t criticals = 0;
        for (const auto& event : series.events) {
            if (event.sentiment == Sentiment::Critical) ++criticals;
        }
        auto half = half_critical_date(series);
        if (criticals == 0) {
            CHECK_FALSE(half.has_value());
            continue;
        }
        REQUIRE(half.has_value());
        std::size_t k = (criticals + 1) / 2;

        auto cumulative_at = [&](const Date& date) {
            std::size_t count = 0;
            for (const auto& event : series.events) {
                if (event.sentiment == Sentiment::Critical && !(date < event.date)) ++count;
            }
            return count;
        };
        CHECK(cumulative_at(*half) >= k);
        CHECK(cumulative_at(half->plus_days(-1)) < k);

        auto first = first_critical(series);
        REQUIRE(first.has_value());
        CHECK(*first <= *half);
    }
}

TEST_CASE("lead_months converts day gaps at 30.4375 days per month") {
    CHECK(lead_months(Date{2020, 8, 15}, Date{2020, 12, 17}) == doctest::Approx(4.07).epsilon(0.01));
    CHECK(lead_months(Date{2020, 12, 17}, Date{2020, 12, 17}) == doctest::Approx(0.0));
    CHECK(lead_months(Date{2021, 4, 15}, Date{2021, 3, 31}) ==
          doctest::Approx(-0.49).epsilon(0.02));

    std::mt19937 rng(9);
    for (int i = 0; i < 200; ++i) {
        Date a{2019 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 12),
               1 + static_cast<int>(rng() % 28)};
        Date b = a.plus_days(static_cast<int>(rng() % 700) - 350);
        CHECK(lead_months(a, b) == doctest::Approx(-lead_months(b, a)));
    }
}

TEST_CASE("guideline config loads and resolves per drug") {
    auto guidelines = load_guidelines(test::data_path("fixture/guidelines.json"));
    CHECK(guidelines.size() == 6);
    auto hcq = guideline_for(guidelines, "HCQ");
    REQUIRE(hcq.has_value());
    CHECK(hcq->release_date == Date{2020, 12, 17});
    CHECK(hcq->polarity == GuidelinePolarity::Against);
    CHECK(hcq->version == 3);
    CHECK_FALSE(guideline_for(guidelines, "aspirin").has_value());
}

TEST_CASE("fixture timeline: LPV/r milestones") {
    Corpus corpus = load_corpus(test::data_path("fixture/corpus.jsonl"));
    DrugLexicon lexicon = DrugLexicon::load(test::data_path("fixture/lexicon.json"));
    Taxonomy taxonomy = Taxonomy::load(test::data_path("fixture/taxonomy.json"));
    auto set = load_annotations(test::data_path("fixture/annotations.csv"), corpus, taxonomy);
    auto guidelines = load_guidelines(test::data_path("fixture/guidelines.json"));

    auto series = sentiment_series(set, corpus, lexicon, "LPV/r");
    auto first = first_critical(series);
    auto half = half_critical_date(series);
    REQUIRE(first.has_value());
    REQUIRE(half.has_value());
    CHECK(first->year == 2020);
    CHECK(first->month == 5);
    CHECK(half->year == 2020);
    CHECK(half->month == 5);

    auto guideline = guideline_for(guidelines, "LPV/r");
    REQUIRE(guideline.has_value());
    CHECK(lead_months(*half, *guideline) == doctest::Approx(7.0).epsilon(0.12));
}

TEST_CASE("fixture series span the published comment windows") {
    Corpus corpus = load_corpus(test::data_path("fixture/corpus.jsonl"));
    DrugLexicon lexicon = DrugLexicon::load(test::data_path("fixture/lexicon.json"));
    Taxonomy taxonomy = Taxonomy::load(test::data_path("fixture/taxonomy.json"));
    auto set = load_annotations(test::data_path("fixture/annotations.csv"), corpus, taxonomy);

    auto series = sentiment_series(set, corpus, lexicon, "corticosteroid");
    REQUIRE_FALSE(series.events.empty());
    CHECK(series.events.front().date == Date{2020, 3, 20});
    CHECK(series.events.back().date == Date{2021, 6, 1});
}
