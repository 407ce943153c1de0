#include "ecn/annotate.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ecn/corpus_io.hpp"
#include "ecn/errors.hpp"

using nlohmann::json;

namespace ecn {

namespace {

std::string lower(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

std::string trim(const std::string& text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    return text.substr(begin, end - begin);
}

TopicPath parse_topic_token(const std::string& token) {
    auto colon = token.find(':');
    if (colon == std::string::npos) {
        throw ParseError("topic '" + token + "' is missing the level1:level2 separator");
    }
    std::string level1_text = trim(token.substr(0, colon));
    std::string level2 = trim(token.substr(colon + 1));
    auto level1 = topic_level1_from_string(level1_text);
    if (!level1) throw ValidationError("unknown topic level-1 group '" + level1_text + "'");
    if (level2.empty()) throw ParseError("topic '" + token + "' has an empty level-2 tag");
    return TopicPath{*level1, level2};
}

Annotation parse_delimited_row(const std::string& row) {
    std::vector<std::string> fields;
    std::stringstream stream(row);
    std::string field;
    while (std::getline(stream, field, ',')) {
        fields.push_back(field);
        if (fields.size() == 3) {
            std::string rest;
            std::getline(stream, rest);
            fields.push_back(rest);
            break;
        }
    }
    if (fields.size() != 4) throw ParseError("expected 4 fields, got " + std::to_string(fields.size()));

    Annotation annotation;
    try {
        annotation.comment_pmid = std::stoll(trim(fields[0]));
        annotation.target_pmid = std::stoll(trim(fields[1]));
    } catch (...) {
        throw ParseError("non-numeric PMID in row");
    }
    auto sentiment = sentiment_from_string(trim(fields[2]));
    if (!sentiment) {
        throw ValidationError("unknown sentiment '" + trim(fields[2]) +
                              "' (expected supportive, critical or neutral)");
    }
    annotation.sentiment = *sentiment;

    std::stringstream topics(fields[3]);
    std::string token;
    while (std::getline(topics, token, ';')) {
        token = trim(token);
        if (!token.empty()) annotation.topics.push_back(parse_topic_token(token));
    }
    return annotation;
}

Annotation parse_json_row(const std::string& row) {
    json line = json::parse(row);
    Annotation annotation;
    annotation.comment_pmid = line.at("comment").get<Pmid>();
    annotation.target_pmid = line.at("target").get<Pmid>();
    auto sentiment = sentiment_from_string(line.at("sentiment").get<std::string>());
    if (!sentiment) {
        throw ValidationError("unknown sentiment '" + line.at("sentiment").get<std::string>() + "'");
    }
    annotation.sentiment = *sentiment;
    for (const auto& topic : line.at("topics")) {
        auto level1 = topic_level1_from_string(topic.at("level1").get<std::string>());
        if (!level1) {
            throw ValidationError("unknown topic level-1 group '" +
                                  topic.at("level1").get<std::string>() + "'");
        }
        annotation.topics.push_back(TopicPath{*level1, topic.at("level2").get<std::string>()});
    }
    return annotation;
}

} // namespace

std::string to_string(TopicLevel1 level) {
    switch (level) {
    case TopicLevel1::Methodology: return "methodology";
    case TopicLevel1::ClinicalThemes: return "clinical themes";
    case TopicLevel1::Other: return "other";
    }
    return "other";
}

std::optional<TopicLevel1> topic_level1_from_string(const std::string& text) {
    std::string low = lower(text);
    if (low == "methodology") return TopicLevel1::Methodology;
    if (low == "clinical themes" || low == "clinical_themes") return TopicLevel1::ClinicalThemes;
    if (low == "other") return TopicLevel1::Other;
    return std::nullopt;
}

Taxonomy Taxonomy::defaults() {
    Taxonomy t;
    t.vocab_[TopicLevel1::Methodology] = {
        "study design", "population", "data",    "intervention", "models",
        "outcomes",     "results",    "analysis", "discussion",  "generalizability"};
    t.vocab_[TopicLevel1::ClinicalThemes] = {
        "clinical practice related", "biological mechanisms", "clinical evidence related",
        "diagnosis",                 "treatment & drug",      "safety concerns",
        "dosage issues",             "drug interactions",     "alternative treatment",
        "animal model",              "genetic issues"};
    t.vocab_[TopicLevel1::Other] = {"just mentioned",  "ethical issues", "evidence-based medicine",
                                    "enlightenment",   "critical thinking", "other issues"};
    return t;
}

Taxonomy Taxonomy::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open taxonomy file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError("taxonomy '" + path + "': " + e.what());
    }
    Taxonomy t;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        auto level1 = topic_level1_from_string(it.key());
        if (!level1) throw ValidationError("taxonomy group '" + it.key() + "' is not a level-1 name");
        for (const auto& tag : it.value()) {
            t.vocab_[*level1].insert(tag.get<std::string>());
        }
    }
    for (auto level : {TopicLevel1::Methodology, TopicLevel1::ClinicalThemes, TopicLevel1::Other}) {
        if (t.vocab_[level].empty()) {
            throw ValidationError("taxonomy is missing tags for '" + to_string(level) + "'");
        }
    }
    return t;
}

void Taxonomy::save(const std::string& path) const {
    json doc = json::object();
    for (const auto& [level, tags] : vocab_) doc[to_string(level)] = tags;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write taxonomy file: " + path);
    out << doc.dump(2) << '\n';
}

const std::set<std::string>& Taxonomy::vocabulary(TopicLevel1 level) const {
    static const std::set<std::string> empty;
    auto it = vocab_.find(level);
    return it == vocab_.end() ? empty : it->second;
}

bool Taxonomy::is_valid(const TopicPath& path) const {
    return vocabulary(path.level1).count(path.level2) > 0;
}

void Taxonomy::validate(const TopicPath& path) const {
    if (is_valid(path)) return;
    // Distinguish a tag under the wrong parent from a completely unknown one.
    for (auto level : {TopicLevel1::Methodology, TopicLevel1::ClinicalThemes, TopicLevel1::Other}) {
        if (level != path.level1 && vocabulary(level).count(path.level2)) {
            throw ValidationError("topic tag '" + path.level2 + "' belongs to '" +
                                  to_string(level) + "', not '" + to_string(path.level1) + "'");
        }
    }
    throw ValidationError("unknown topic tag '" + path.level2 + "' under '" +
                          to_string(path.level1) + "'");
}

void AnnotationSet::add(Annotation annotation) {
    auto key = std::make_pair(annotation.comment_pmid, annotation.target_pmid);
    if (index_.count(key)) {
        throw ValidationError("duplicate annotation for pair " +
                              std::to_string(annotation.comment_pmid) + "->" +
                              std::to_string(annotation.target_pmid));
    }
    index_[key] = items_.size();
    items_.push_back(std::move(annotation));
}

const Annotation* AnnotationSet::find(Pmid comment, Pmid target) const {
    auto it = index_.find({comment, target});
    return it == index_.end() ? nullptr : &items_[it->second];
}

AnnotationSet load_annotations(const std::string& path, const Corpus& corpus,
                               const Taxonomy& taxonomy, const AnnotationLoadOptions& options,
                               AnnotationLoadReport* report) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open annotation file: " + path);

    std::set<std::pair<Pmid, Pmid>> corpus_pairs;
    for (const auto& link : dedupe_links(corpus.links)) {
        corpus_pairs.insert({link.source, link.target});
    }

    AnnotationLoadReport local_report;
    AnnotationLoadReport& rep = report ? *report : local_report;

    AnnotationSet annotations;
    std::string row;
    std::size_t line_no = 0;
    auto handle_error = [&](const std::string& message) {
        std::string full = path + ":" + std::to_string(line_no) + ": " + message;
        if (options.strict) throw ValidationError(full);
        rep.errors.push_back(full);
    };

    while (std::getline(in, row)) {
        ++line_no;
        std::string trimmed = trim(row);
        if (trimmed.empty() || trimmed[0] == '#') continue;

        Annotation annotation;
        try {
            annotation = trimmed[0] == '{' ? parse_json_row(trimmed) : parse_delimited_row(trimmed);
        } catch (const Error& e) {
            handle_error(e.what());
            continue;
        } catch (const json::exception& e) {
            handle_error(e.what());
            continue;
        }

        if (corpus.unresolved.count(annotation.comment_pmid) ||
            corpus.unresolved.count(annotation.target_pmid)) {
            ++rep.skipped_unresolved;
            continue;
        }
        if (!corpus_pairs.count({annotation.comment_pmid, annotation.target_pmid})) {
            handle_error("pair " + std::to_string(annotation.comment_pmid) + "->" +
                         std::to_string(annotation.target_pmid) + " is not a corpus link");
            continue;
        }
        if (annotation.topics.empty()) {
            handle_error("annotation needs at least one topic");
            continue;
        }
        bool topics_ok = true;
        std::set<TopicPath> seen_topics;
        for (const auto& topic : annotation.topics) {
            if (!seen_topics.insert(topic).second) {
                handle_error("duplicate topic '" + topic.level2 + "'");
                topics_ok = false;
                break;
            }
            try {
                taxonomy.validate(topic);
            } catch (const Error& e) {
                handle_error(e.what());
                topics_ok = false;
                break;
            }
        }
        if (!topics_ok) continue;

        try {
            annotations.add(std::move(annotation));
        } catch (const Error& e) {
            handle_error(e.what());
            continue;
        }
        ++rep.loaded;
    }
    return annotations;
}

void save_annotations(const AnnotationSet& annotations, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write annotation file: " + path);
    for (const auto& annotation : annotations.items()) {
        out << annotation.comment_pmid << ',' << annotation.target_pmid << ','
            << to_string(annotation.sentiment) << ',';
        for (std::size_t i = 0; i < annotation.topics.size(); ++i) {
            if (i) out << ';';
            out << to_string(annotation.topics[i].level1) << ':' << annotation.topics[i].level2;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

CoverageReport coverage_report(const AnnotationSet& annotations, const Corpus& corpus,
                               const DrugLexicon* lexicon) {
    CoverageReport report;
    for (const auto& link : dedupe_links(corpus.links)) {
        if (!corpus.has_record(link.source) || !corpus.has_record(link.target)) continue;
        ++report.total_links;
        if (annotations.find(link.source, link.target)) ++report.annotated_links;
    }
    if (lexicon) {
        for (const auto& [group, synonyms] : lexicon->groups) {
            Corpus scoped = filter_by_drug(corpus, *lexicon, group);
            std::vector<CommentLink> scoped_links = dedupe_links(scoped.links);
            std::size_t annotated = 0;
            std::size_t total = 0;
            for (const auto& link : scoped_links) {
                if (!scoped.has_record(link.source) || !scoped.has_record(link.target)) continue;
                ++total;
                if (annotations.find(link.source, link.target)) ++annotated;
            }
            report.per_group[group] = {annotated, total};
        }
    }
    return report;
}

} // namespace ecn
