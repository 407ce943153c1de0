#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ecn/date.hpp"

namespace ecn {

using Pmid = std::int64_t;

// One PubMed publication.
struct PubRecord {
    Pmid pmid = 0;
    std::string title;
    std::optional<std::string> abstract;
    std::optional<Date> epub_date;
    std::optional<Date> journal_date;
    std::string journal;
    std::set<std::string> pub_types;
    std::string language = "en"; // ISO 639

    // Electronic date wins; journal issue date is the fallback.
    std::optional<Date> best_date() const {
        if (epub_date) return epub_date;
        return journal_date;
    }

    bool operator==(const PubRecord&) const = default;
};

// Directed relation: source comments on target.
struct CommentLink {
    Pmid source = 0;
    Pmid target = 0;

    auto operator<=>(const CommentLink&) const = default;
};

struct Provenance {
    std::string query;
    std::string fetched_at; // ISO 8601, empty if unknown

    bool operator==(const Provenance&) const = default;
};

struct Corpus {
    std::map<Pmid, PubRecord> records;
    std::vector<CommentLink> links;
    std::set<Pmid> unresolved;   // link endpoints with no record
    std::set<Pmid> context_only; // kept only because a neighbor matched a filter
    Provenance provenance;

    bool has_record(Pmid pmid) const { return records.find(pmid) != records.end(); }

    // Recomputes `unresolved` from the current records/links.
    void reindex_unresolved();

    bool operator==(const Corpus&) const = default;
};

// Named drug groups with their title-matching synonyms.
struct DrugLexicon {
    std::map<std::string, std::vector<std::string>> groups;

    bool has_group(const std::string& name) const { return groups.count(name) > 0; }

    // Case-insensitive substring test against any synonym of `group`.
    bool title_matches(const std::string& title, const std::string& group) const;

    static DrugLexicon defaults();
    static DrugLexicon load(const std::string& path);
    void save(const std::string& path) const;
};

// Case-insensitive substring search.
bool contains_ci(const std::string& haystack, const std::string& needle);

} // namespace ecn
