#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ecn/annotate.hpp"
#include "ecn/types.hpp"

namespace ecn {

struct TimelineEvent {
    Date date;                // date of the commenting record
    Sentiment sentiment = Sentiment::Neutral;
    Pmid comment_pmid = 0;

    auto operator<=>(const TimelineEvent&) const = default;
};

struct SentimentSeries {
    std::vector<TimelineEvent> events; // ascending by (date, pmid)
    std::size_t undated_excluded = 0;  // comments without any usable date
};

enum class GuidelinePolarity { For, Against, Conditional };

std::string to_string(GuidelinePolarity polarity);
std::optional<GuidelinePolarity> guideline_polarity_from_string(const std::string& text);

struct GuidelineRef {
    std::string drug;
    int version = 0;
    Date release_date;
    GuidelinePolarity polarity = GuidelinePolarity::Conditional;
    std::string note;
};

std::vector<GuidelineRef> load_guidelines(const std::string& path);
std::optional<GuidelineRef> guideline_for(const std::vector<GuidelineRef>& guidelines,
                                          const std::string& drug);

// One event per annotation whose target lies in the scope, dated by the
// commenting record.
SentimentSeries sentiment_series(const AnnotationSet& annotations, const Corpus& corpus,
                                 const std::set<Pmid>& target_scope);
SentimentSeries sentiment_series(const AnnotationSet& annotations, const Corpus& corpus,
                                 const DrugLexicon& lexicon, const std::string& group);

// Earliest critical event, if any.
std::optional<Date> first_critical(const SentimentSeries& series);

// Date of the ceil(n/2)-th critical event among n critical events.
std::optional<Date> half_critical_date(const SentimentSeries& series);

// Signed fractional months from event to guideline release; positive when
// the event precedes the release. Month length: 30.4375 days.
double lead_months(const Date& event_date, const Date& release_date);
double lead_months(const Date& event_date, const GuidelineRef& guideline);

} // namespace ecn
