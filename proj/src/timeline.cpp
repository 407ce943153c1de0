#include "ecn/timeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "ecn/appraise.hpp"
#include "ecn/errors.hpp"

using nlohmann::json;

namespace ecn {

namespace {
constexpr double kDaysPerMonth = 30.4375; // mean Gregorian month
}

std::string to_string(GuidelinePolarity polarity) {
    switch (polarity) {
    case GuidelinePolarity::For: return "For";
    case GuidelinePolarity::Against: return "Against";
    case GuidelinePolarity::Conditional: return "Conditional";
    }
    return "Conditional";
}

std::optional<GuidelinePolarity> guideline_polarity_from_string(const std::string& text) {
    if (text == "For") return GuidelinePolarity::For;
    if (text == "Against") return GuidelinePolarity::Against;
    if (text == "Conditional") return GuidelinePolarity::Conditional;
    return std::nullopt;
}

std::vector<GuidelineRef> load_guidelines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open guideline file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError("guidelines '" + path + "': " + e.what());
    }
    if (!doc.is_array()) throw ParseError("guidelines '" + path + "': expected a JSON array");

    std::vector<GuidelineRef> out;
    for (const auto& entry : doc) {
        GuidelineRef ref;
        ref.drug = entry.at("drug").get<std::string>();
        ref.version = entry.value("version", 0);
        ref.release_date = Date::parse(entry.at("release_date").get<std::string>());
        auto polarity = guideline_polarity_from_string(entry.at("polarity").get<std::string>());
        if (!polarity) {
            throw ValidationError("guidelines '" + path + "': unknown polarity '" +
                                  entry.at("polarity").get<std::string>() + "'");
        }
        ref.polarity = *polarity;
        ref.note = entry.value("note", "");
        out.push_back(std::move(ref));
    }
    return out;
}

std::optional<GuidelineRef> guideline_for(const std::vector<GuidelineRef>& guidelines,
                                          const std::string& drug) {
    for (const auto& ref : guidelines) {
        if (ref.drug == drug) return ref;
    }
    return std::nullopt;
}

SentimentSeries sentiment_series(const AnnotationSet& annotations, const Corpus& corpus,
                                 const std::set<Pmid>& target_scope) {
    SentimentSeries series;
    for (const auto& annotation : annotations.items()) {
        if (!target_scope.count(annotation.target_pmid)) continue;
        auto record = corpus.records.find(annotation.comment_pmid);
        std::optional<Date> date =
            record != corpus.records.end() ? record->second.best_date() : std::nullopt;
        if (!date) {
            ++series.undated_excluded;
            continue;
        }
        series.events.push_back(TimelineEvent{*date, annotation.sentiment, annotation.comment_pmid});
    }
    std::sort(series.events.begin(), series.events.end(),
              [](const TimelineEvent& a, const TimelineEvent& b) {
                  if (a.date != b.date) return a.date < b.date;
                  return a.comment_pmid < b.comment_pmid;
              });
    return series;
}

SentimentSeries sentiment_series(const AnnotationSet& annotations, const Corpus& corpus,
                                 const DrugLexicon& lexicon, const std::string& group) {
    return sentiment_series(annotations, corpus, scope_for_drug(corpus, lexicon, group));
}

std::optional<Date> first_critical(const SentimentSeries& series) {
    for (const auto& event : series.events) {
        if (event.sentiment == Sentiment::Critical) return event.date;
    }
    return std::nullopt;
}

std::optional<Date> half_critical_date(const SentimentSeries& series) {
    std::size_t n = 0;
    for (const auto& event : series.events) {
        if (event.sentiment == Sentiment::Critical) ++n;
    }
    if (n == 0) return std::nullopt;
    std::size_t k = (n + 1) / 2; // ceil(n/2)
    std::size_t seen = 0;
    for (const auto& event : series.events) {
        if (event.sentiment != Sentiment::Critical) continue;
        if (++seen == k) return event.date;
    }
    return std::nullopt; // unreachable
}

double lead_months(const Date& event_date, const Date& release_date) {
    return static_cast<double>(days_between(event_date, release_date)) / kDaysPerMonth;
}

double lead_months(const Date& event_date, const GuidelineRef& guideline) {
    return lead_months(event_date, guideline.release_date);
}

} // namespace ecn
