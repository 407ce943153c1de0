#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ecn/annotate.hpp"
#include "ecn/types.hpp"

namespace ecn {

struct SentimentCounts {
    std::size_t supportive = 0;
    std::size_t critical = 0;
    std::size_t neutral = 0;

    std::size_t total() const { return supportive + critical + neutral; }
    bool operator==(const SentimentCounts&) const = default;
};

enum class Assertion { Supported, Challenged, Uncertain };

std::string to_string(Assertion assertion);

// Target PMID sets for the three supported scopes.
std::set<Pmid> scope_for_drug(const Corpus& corpus, const DrugLexicon& lexicon,
                              const std::string& group);
std::set<Pmid> scope_for_article(const Corpus& corpus, Pmid pmid);
std::set<Pmid> scope_for_component(const std::vector<Pmid>& component);

// Counts annotations whose target lies in the scope.
SentimentCounts sentiment_distribution(const AnnotationSet& annotations,
                                       const std::set<Pmid>& target_scope);

// Supported when supportive > critical, Challenged when critical wins,
// Uncertain on a tie. Neutral counts never matter.
Assertion derive_assertion(const SentimentCounts& counts);

struct TopicLevel2Share {
    std::string tag;
    std::size_t count = 0;
    double percent = 0.0; // of all topic occurrences
};

struct TopicLevel1Share {
    TopicLevel1 level1 = TopicLevel1::Other;
    std::size_t count = 0;
    double percent = 0.0;
    std::vector<TopicLevel2Share> level2; // count descending, ties by tag
};

struct TopicDistribution {
    std::size_t total_occurrences = 0;
    std::vector<TopicLevel1Share> level1; // Methodology, ClinicalThemes, Other
};

// Percentages over topic occurrences; an annotation with k topics
// contributes k occurrences. Throws EmptyInputError on an empty set.
TopicDistribution topic_distribution(const AnnotationSet& annotations);

enum class GradeTopic { StudyDesign, PopulationData, Analysis, ClinicalPracticeRelated, AdverseEffect };
enum class CertaintyLevel { Low, ModerateLow, Moderate, ModerateHigh, High };

std::string to_string(GradeTopic topic);
std::optional<GradeTopic> grade_topic_from_string(const std::string& text);
std::string to_string(CertaintyLevel level);

// Level-2 tag -> grading topic; tags without an entry do not grade.
// Sentiment values default to +2/-2/0 and may be overridden from the
// config file's optional "values" section.
struct GradeMap {
    std::map<std::string, GradeTopic> mapping;
    double supportive_value = 2.0;
    double critical_value = -2.0;
    double neutral_value = 0.0;

    double value_of(Sentiment sentiment) const {
        switch (sentiment) {
        case Sentiment::Supportive: return supportive_value;
        case Sentiment::Critical: return critical_value;
        case Sentiment::Neutral: return neutral_value;
        }
        return neutral_value;
    }

    static GradeMap defaults();
    static GradeMap load(const std::string& path);
};

struct GradingScore {
    std::map<GradeTopic, double> topic_scores; // absent when no comment matched
    double total = 0.0;                        // sum of present topic scores
    CertaintyLevel level = CertaintyLevel::Moderate;
    bool ungraded_basis = false;               // no annotation matched any topic
};

// Half-open lower-closed intervals; the top interval is closed at 10.
CertaintyLevel certainty_level(double total);

// Averages the +-2 sentiment values of the annotations that target
// `evidence_pmid`, per grading topic, and sums the topic means.
GradingScore grade_evidence(Pmid evidence_pmid, const AnnotationSet& annotations,
                            const Corpus& corpus, const GradeMap& grade_map = GradeMap::defaults());

} // namespace ecn
