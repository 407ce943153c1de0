#include "ecn/types.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "ecn/errors.hpp"

namespace ecn {

bool contains_ci(const std::string& haystack, const std::string& needle) {
    if (needle.empty()) return false;
    auto lower = [](unsigned char c) { return static_cast<char>(std::tolower(c)); };
    auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                          [&](char a, char b) {
                              return lower(static_cast<unsigned char>(a)) ==
                                     lower(static_cast<unsigned char>(b));
                          });
    return it != haystack.end();
}

void Corpus::reindex_unresolved() {
    unresolved.clear();
    for (const auto& link : links) {
        if (!has_record(link.source)) unresolved.insert(link.source);
        if (!has_record(link.target)) unresolved.insert(link.target);
    }
}

bool DrugLexicon::title_matches(const std::string& title, const std::string& group) const {
    auto it = groups.find(group);
    if (it == groups.end()) throw InvalidArgumentError("unknown drug group: '" + group + "'");
    for (const auto& synonym : it->second) {
        if (contains_ci(title, synonym)) return true;
    }
    return false;
}

DrugLexicon DrugLexicon::defaults() {
    DrugLexicon lex;
    lex.groups["corticosteroid"] = {"corticosteroid", "corticosteroids", "steroid", "steroids",
                                    "dexamethasone"};
    lex.groups["remdesivir"] = {"remdesivir"};
    lex.groups["HCQ"] = {"hydroxychloroquine"};
    lex.groups["LPV/r"] = {"lopinavir", "ritonavir"};
    lex.groups["ivermectin"] = {"ivermectin"};
    lex.groups["IL-6 receptor blockers"] = {"tocilizumab", "sarilumab", "IL-6"};
    return lex;
}

DrugLexicon DrugLexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open lexicon file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("lexicon '" + path + "': " + e.what());
    }
    if (!doc.is_object()) throw ParseError("lexicon '" + path + "': expected a JSON object");
    DrugLexicon lex;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        std::vector<std::string> synonyms;
        for (const auto& s : it.value()) synonyms.push_back(s.get<std::string>());
        if (synonyms.empty() ||
            std::any_of(synonyms.begin(), synonyms.end(),
                        [](const std::string& s) { return s.empty(); })) {
            throw ValidationError("lexicon group '" + it.key() + "' needs non-empty synonyms");
        }
        lex.groups[it.key()] = std::move(synonyms);
    }
    return lex;
}

void DrugLexicon::save(const std::string& path) const {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [group, synonyms] : groups) doc[group] = synonyms;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write lexicon file: " + path);
    out << doc.dump(2) << '\n';
}

} // namespace ecn
