#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ecn/sentiment.hpp"
#include "ecn/types.hpp"

namespace ecn {

enum class TopicLevel1 { Methodology, ClinicalThemes, Other };

std::string to_string(TopicLevel1 level);
std::optional<TopicLevel1> topic_level1_from_string(const std::string& text);

struct TopicPath {
    TopicLevel1 level1 = TopicLevel1::Other;
    std::string level2;

    auto operator<=>(const TopicPath&) const = default;
};

// Two-level controlled vocabulary; shipped as editable data.
class Taxonomy {
public:
    static Taxonomy defaults();
    static Taxonomy load(const std::string& path);
    void save(const std::string& path) const;

    // Throws ValidationError naming the offending tag.
    void validate(const TopicPath& path) const;
    bool is_valid(const TopicPath& path) const;

    const std::set<std::string>& vocabulary(TopicLevel1 level) const;

private:
    std::map<TopicLevel1, std::set<std::string>> vocab_;
};

struct Annotation {
    Pmid comment_pmid = 0;
    Pmid target_pmid = 0;
    Sentiment sentiment = Sentiment::Neutral;
    std::vector<TopicPath> topics; // non-empty, no duplicates

    bool operator==(const Annotation&) const = default;
};

class AnnotationSet {
public:
    void add(Annotation annotation); // throws on duplicate pair
    const Annotation* find(Pmid comment, Pmid target) const;

    const std::vector<Annotation>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    bool operator==(const AnnotationSet& other) const { return items_ == other.items_; }

private:
    std::vector<Annotation> items_;
    std::map<std::pair<Pmid, Pmid>, std::size_t> index_;
};

struct AnnotationLoadOptions {
    bool strict = true;
};

struct AnnotationLoadReport {
    std::size_t loaded = 0;
    std::size_t skipped_unresolved = 0; // rows touching excluded/unresolved records
    std::vector<std::string> errors;    // populated in lenient mode
};

// Delimited rows `comment,target,sentiment,level1:level2[;level1:level2...]`
// or JSON-lines ({"comment":..,"target":..,"sentiment":..,"topics":[..]}).
// Every row is validated against the corpus links and the taxonomy.
AnnotationSet load_annotations(const std::string& path, const Corpus& corpus,
                               const Taxonomy& taxonomy,
                               const AnnotationLoadOptions& options = {},
                               AnnotationLoadReport* report = nullptr);

// Writes the delimited form accepted by load_annotations.
void save_annotations(const AnnotationSet& annotations, const std::string& path);

struct CoverageReport {
    std::size_t annotated_links = 0;
    std::size_t total_links = 0;
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_group; // annotated/total

    double fraction() const {
        return total_links ? static_cast<double>(annotated_links) / static_cast<double>(total_links)
                           : 0.0;
    }
};

CoverageReport coverage_report(const AnnotationSet& annotations, const Corpus& corpus,
                               const DrugLexicon* lexicon = nullptr);

} // namespace ecn
