#include "ecn/appraise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "ecn/corpus_io.hpp"
#include "ecn/errors.hpp"

using nlohmann::json;

namespace ecn {

std::string to_string(Assertion assertion) {
    switch (assertion) {
    case Assertion::Supported: return "Supported";
    case Assertion::Challenged: return "Challenged";
    case Assertion::Uncertain: return "Uncertain";
    }
    return "Uncertain";
}

std::set<Pmid> scope_for_drug(const Corpus& corpus, const DrugLexicon& lexicon,
                              const std::string& group) {
    Corpus scoped = filter_by_drug(corpus, lexicon, group);
    std::set<Pmid> scope;
    for (const auto& [pmid, record] : scoped.records) scope.insert(pmid);
    return scope;
}

std::set<Pmid> scope_for_article(const Corpus& corpus, Pmid pmid) {
    if (!corpus.has_record(pmid)) {
        throw InvalidArgumentError("pmid " + std::to_string(pmid) + " is not in the corpus");
    }
    return {pmid};
}

std::set<Pmid> scope_for_component(const std::vector<Pmid>& component) {
    return {component.begin(), component.end()};
}

SentimentCounts sentiment_distribution(const AnnotationSet& annotations,
                                       const std::set<Pmid>& target_scope) {
    SentimentCounts counts;
    for (const auto& annotation : annotations.items()) {
        if (!target_scope.count(annotation.target_pmid)) continue;
        switch (annotation.sentiment) {
        case Sentiment::Supportive: ++counts.supportive; break;
        case Sentiment::Critical: ++counts.critical; break;
        case Sentiment::Neutral: ++counts.neutral; break;
        }
    }
    return counts;
}

Assertion derive_assertion(const SentimentCounts& counts) {
    if (counts.supportive > counts.critical) return Assertion::Supported;
    if (counts.critical > counts.supportive) return Assertion::Challenged;
    return Assertion::Uncertain;
}

TopicDistribution topic_distribution(const AnnotationSet& annotations) {
    if (annotations.empty()) throw EmptyInputError("topic_distribution needs annotations");

    std::map<TopicLevel1, std::map<std::string, std::size_t>> counts;
    std::size_t total = 0;
    for (const auto& annotation : annotations.items()) {
        for (const auto& topic : annotation.topics) {
            ++counts[topic.level1][topic.level2];
            ++total;
        }
    }

    TopicDistribution dist;
    dist.total_occurrences = total;
    for (auto level : {TopicLevel1::Methodology, TopicLevel1::ClinicalThemes, TopicLevel1::Other}) {
        TopicLevel1Share share;
        share.level1 = level;
        for (const auto& [tag, count] : counts[level]) {
            TopicLevel2Share leaf;
            leaf.tag = tag;
            leaf.count = count;
            leaf.percent = 100.0 * static_cast<double>(count) / static_cast<double>(total);
            share.count += count;
            share.level2.push_back(std::move(leaf));
        }
        share.percent = 100.0 * static_cast<double>(share.count) / static_cast<double>(total);
        std::sort(share.level2.begin(), share.level2.end(),
                  [](const TopicLevel2Share& a, const TopicLevel2Share& b) {
                      if (a.count != b.count) return a.count > b.count;
                      return a.tag < b.tag;
                  });
        dist.level1.push_back(std::move(share));
    }
    return dist;
}

std::string to_string(GradeTopic topic) {
    switch (topic) {
    case GradeTopic::StudyDesign: return "StudyDesign";
    case GradeTopic::PopulationData: return "PopulationData";
    case GradeTopic::Analysis: return "Analysis";
    case GradeTopic::ClinicalPracticeRelated: return "ClinicalPracticeRelated";
    case GradeTopic::AdverseEffect: return "AdverseEffect";
    }
    return "StudyDesign";
}

std::optional<GradeTopic> grade_topic_from_string(const std::string& text) {
    if (text == "StudyDesign") return GradeTopic::StudyDesign;
    if (text == "PopulationData") return GradeTopic::PopulationData;
    if (text == "Analysis") return GradeTopic::Analysis;
    if (text == "ClinicalPracticeRelated") return GradeTopic::ClinicalPracticeRelated;
    if (text == "AdverseEffect") return GradeTopic::AdverseEffect;
    return std::nullopt;
}

std::string to_string(CertaintyLevel level) {
    switch (level) {
    case CertaintyLevel::Low: return "Low";
    case CertaintyLevel::ModerateLow: return "ModerateLow";
    case CertaintyLevel::Moderate: return "Moderate";
    case CertaintyLevel::ModerateHigh: return "ModerateHigh";
    case CertaintyLevel::High: return "High";
    }
    return "Moderate";
}

GradeMap GradeMap::defaults() {
    GradeMap map;
    map.mapping["study design"] = GradeTopic::StudyDesign;
    map.mapping["population"] = GradeTopic::PopulationData;
    map.mapping["data"] = GradeTopic::PopulationData;
    map.mapping["analysis"] = GradeTopic::Analysis;
    map.mapping["clinical practice related"] = GradeTopic::ClinicalPracticeRelated;
    map.mapping["safety concerns"] = GradeTopic::AdverseEffect;
    map.mapping["adverse effect"] = GradeTopic::AdverseEffect;
    return map;
}

GradeMap GradeMap::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open grade map file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError("grade map '" + path + "': " + e.what());
    }
    // Either a flat tag->topic map, or {"mapping": {...}, "values": {...}}.
    GradeMap map;
    const json& mapping = doc.contains("mapping") ? doc["mapping"] : doc;
    for (auto it = mapping.begin(); it != mapping.end(); ++it) {
        auto topic = grade_topic_from_string(it.value().get<std::string>());
        if (!topic) {
            throw ValidationError("grade map '" + path + "': unknown grading topic '" +
                                  it.value().get<std::string>() + "'");
        }
        map.mapping[it.key()] = *topic;
    }
    if (doc.contains("values")) {
        const json& values = doc["values"];
        map.supportive_value = values.value("supportive", map.supportive_value);
        map.critical_value = values.value("critical", map.critical_value);
        map.neutral_value = values.value("neutral", map.neutral_value);
    }
    return map;
}

CertaintyLevel certainty_level(double total) {
    if (total < -10.0 || total > 10.0) {
        throw InvalidArgumentError("grading total " + std::to_string(total) +
                                   " outside [-10, 10]");
    }
    if (total < -6.0) return CertaintyLevel::Low;
    if (total < -2.0) return CertaintyLevel::ModerateLow;
    if (total < 2.0) return CertaintyLevel::Moderate;
    if (total < 6.0) return CertaintyLevel::ModerateHigh;
    return CertaintyLevel::High;
}

GradingScore grade_evidence(Pmid evidence_pmid, const AnnotationSet& annotations,
                            const Corpus& corpus, const GradeMap& grade_map) {
    if (!corpus.has_record(evidence_pmid)) {
        throw InvalidArgumentError("pmid " + std::to_string(evidence_pmid) +
                                   " is not in the corpus");
    }

    // An annotation contributes once per grading topic it touches, even if
    // two of its tags map to the same topic.
    std::map<GradeTopic, std::vector<double>> values;
    for (const auto& annotation : annotations.items()) {
        if (annotation.target_pmid != evidence_pmid) continue;
        std::set<GradeTopic> touched;
        for (const auto& topic : annotation.topics) {
            auto it = grade_map.mapping.find(topic.level2);
            if (it != grade_map.mapping.end()) touched.insert(it->second);
        }
        for (GradeTopic topic : touched) {
            values[topic].push_back(grade_map.value_of(annotation.sentiment));
        }
    }

    GradingScore score;
    for (const auto& [topic, sentiments] : values) {
        double sum = 0.0;
        for (double v : sentiments) sum += v;
        double mean = sum / static_cast<double>(sentiments.size());
        score.topic_scores[topic] = mean;
        score.total += mean;
    }
    score.ungraded_basis = score.topic_scores.empty();
    score.level = certainty_level(score.total);
    return score;
}

} // namespace ecn
