#include "ecn/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "ecn/errors.hpp"

using nlohmann::json;

namespace ecn {

namespace {

json record_to_json(const PubRecord& record) {
    json line;
    line["kind"] = "record";
    line["pmid"] = record.pmid;
    line["title"] = record.title;
    if (record.abstract) line["abstract"] = *record.abstract;
    if (record.epub_date) line["epub_date"] = record.epub_date->to_string();
    if (record.journal_date) line["journal_date"] = record.journal_date->to_string();
    line["journal"] = record.journal;
    line["pub_types"] = record.pub_types;
    line["language"] = record.language;
    return line;
}

PubRecord record_from_json(const json& line) {
    PubRecord record;
    record.pmid = line.at("pmid").get<Pmid>();
    if (record.pmid <= 0) throw ValidationError("record with non-positive pmid");
    record.title = line.at("title").get<std::string>();
    if (line.contains("abstract")) record.abstract = line["abstract"].get<std::string>();
    if (line.contains("epub_date")) record.epub_date = Date::parse(line["epub_date"]);
    if (line.contains("journal_date")) record.journal_date = Date::parse(line["journal_date"]);
    if (line.contains("journal")) record.journal = line["journal"].get<std::string>();
    if (line.contains("pub_types")) {
        for (const auto& t : line["pub_types"]) record.pub_types.insert(t.get<std::string>());
    }
    if (line.contains("language")) record.language = line["language"].get<std::string>();
    return record;
}

} // namespace

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write corpus file: " + path);

    json header;
    header["kind"] = "header";
    header["schema"] = kCorpusSchemaVersion;
    header["query"] = corpus.provenance.query;
    header["fetched_at"] = corpus.provenance.fetched_at;
    out << header.dump() << '\n';

    for (const auto& [pmid, record] : corpus.records) {
        out << record_to_json(record).dump() << '\n';
    }

    std::vector<CommentLink> links = corpus.links;
    std::sort(links.begin(), links.end());
    for (const auto& link : links) {
        json line;
        line["kind"] = "link";
        line["source"] = link.source;
        line["target"] = link.target;
        out << line.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file: " + path);

    Corpus corpus;
    bool saw_header = false;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        if (text.empty()) continue;
        json line;
        try {
            line = json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        const std::string kind = line.value("kind", "");
        if (kind == "header") {
            int schema = line.value("schema", -1);
            if (schema != kCorpusSchemaVersion) {
                throw FormatError(path + ": unsupported corpus schema " +
                                  std::to_string(schema));
            }
            corpus.provenance.query = line.value("query", "");
            corpus.provenance.fetched_at = line.value("fetched_at", "");
            saw_header = true;
        } else if (kind == "record") {
            PubRecord record = record_from_json(line);
            if (corpus.records.count(record.pmid)) {
                throw ValidationError(path + ":" + std::to_string(line_no) +
                                      ": duplicate record pmid " + std::to_string(record.pmid));
            }
            corpus.records[record.pmid] = std::move(record);
        } else if (kind == "link") {
            CommentLink link{line.at("source").get<Pmid>(), line.at("target").get<Pmid>()};
            if (link.source == link.target) {
                throw ValidationError(path + ":" + std::to_string(line_no) +
                                      ": self-referential link " + std::to_string(link.source));
            }
            corpus.links.push_back(link);
        } else {
            throw ParseError(path + ":" + std::to_string(line_no) + ": unknown line kind '" +
                             kind + "'");
        }
    }
    if (!saw_header) throw FormatError(path + ": missing corpus header line");
    corpus.reindex_unresolved();
    return corpus;
}

std::vector<CommentLink> dedupe_links(const std::vector<CommentLink>& links) {
    std::vector<CommentLink> out;
    std::set<CommentLink> seen;
    out.reserve(links.size());
    for (const auto& link : links) {
        if (seen.insert(link).second) out.push_back(link);
    }
    return out;
}

Corpus filter_by_drug(const Corpus& corpus, const DrugLexicon& lexicon,
                      const std::string& group) {
    if (!lexicon.has_group(group)) {
        throw InvalidArgumentError("unknown drug group: '" + group + "'");
    }

    std::set<Pmid> matched;
    for (const auto& [pmid, record] : corpus.records) {
        if (lexicon.title_matches(record.title, group)) matched.insert(pmid);
    }

    Corpus out;
    out.provenance = corpus.provenance;
    for (Pmid pmid : matched) out.records[pmid] = corpus.records.at(pmid);

    for (const auto& link : corpus.links) {
        if (!matched.count(link.source) && !matched.count(link.target)) continue;
        out.links.push_back(link);
        for (Pmid end : {link.source, link.target}) {
            if (matched.count(end) || out.records.count(end)) continue;
            auto it = corpus.records.find(end);
            if (it != corpus.records.end()) {
                out.records[end] = it->second;
                out.context_only.insert(end);
            }
        }
    }
    out.reindex_unresolved();
    return out;
}

} // namespace ecn
