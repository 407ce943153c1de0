#include "ecn/pubmed.hpp"

#include <cctype>

#include "ecn/errors.hpp"
#include "ecn/xml.hpp"

namespace ecn {

namespace {

Pmid parse_pmid(const std::string& text) {
    if (text.empty()) throw ParseError("empty PMID");
    Pmid value = 0;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw ParseError("non-numeric PMID: '" + text + "'");
        }
        value = value * 10 + (c - '0');
    }
    if (value <= 0) throw ParseError("non-positive PMID: '" + text + "'");
    return value;
}

// <Year>/<Month>/<Day> triple; month and day may be missing and default to 1.
std::optional<Date> date_from_parts(const xml::Element& parent) {
    const auto* year = parent.find("Year");
    if (!year) return std::nullopt;
    Date d;
    try {
        d.year = std::stoi(year->text);
    } catch (...) {
        return std::nullopt;
    }
    if (const auto* month = parent.find("Month")) {
        auto m = month_from_token(month->text);
        if (m) d.month = *m;
    }
    if (const auto* day = parent.find("Day")) {
        try {
            d.day = std::stoi(day->text);
        } catch (...) {
        }
    }
    if (!d.valid()) return std::nullopt;
    return d;
}

// MedlineDate strings like "2020 Mar-Apr" or "2021 Spring"; we keep the year
// and the first month when one is recognizable.
std::optional<Date> date_from_medline(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && !std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i - start != 4) return std::nullopt;
    Date d;
    d.year = std::stoi(text.substr(start, 4));
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t month_start = i;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
    if (i > month_start) {
        if (auto m = month_from_token(text.substr(month_start, i - month_start))) d.month = *m;
    }
    if (!d.valid()) return std::nullopt;
    return d;
}

std::string gather_text(const xml::Element& element) {
    std::string out = element.text;
    for (const auto& child : element.children) out += gather_text(*child);
    return out;
}

PubRecord record_from_article(const xml::Element& pubmed_article) {
    const auto* citation = pubmed_article.find("MedlineCitation");
    if (!citation) throw ParseError("PubmedArticle without MedlineCitation");
    const auto* pmid_el = citation->find("PMID");
    if (!pmid_el) throw ParseError("MedlineCitation without PMID");

    PubRecord record;
    record.pmid = parse_pmid(pmid_el->text);

    const auto* article = citation->find("Article");
    if (article) {
        if (const auto* title = article->find("ArticleTitle")) {
            record.title = gather_text(*title);
        }
        if (const auto* abstract = article->find("Abstract")) {
            std::string text;
            for (const auto* part : abstract->find_all("AbstractText")) {
                if (!text.empty()) text += ' ';
                text += gather_text(*part);
            }
            if (!text.empty()) record.abstract = text;
        }
        if (const auto* journal = article->find("Journal")) {
            if (const auto* jtitle = journal->find("Title")) record.journal = jtitle->text;
            if (const auto* issue = journal->find("JournalIssue")) {
                if (const auto* pub_date = issue->find("PubDate")) {
                    record.journal_date = date_from_parts(*pub_date);
                    if (!record.journal_date) {
                        if (const auto* medline = pub_date->find("MedlineDate")) {
                            record.journal_date = date_from_medline(medline->text);
                        }
                    }
                }
            }
        }
        for (const auto* adate : article->find_all("ArticleDate")) {
            if (adate->attribute("DateType", "Electronic") == "Electronic") {
                record.epub_date = date_from_parts(*adate);
                break;
            }
        }
        if (const auto* langs = article->find("Language")) {
            record.language = langs->text;
        }
        if (const auto* type_list = article->find("PublicationTypeList")) {
            for (const auto* type : type_list->find_all("PublicationType")) {
                if (!type->text.empty()) record.pub_types.insert(type->text);
            }
        }
    }
    return record;
}

void links_from_article(const xml::Element& pubmed_article, Pmid self,
                        std::vector<CommentLink>& out) {
    const auto* citation = pubmed_article.find("MedlineCitation");
    const auto* list = citation ? citation->find("CommentsCorrectionsList") : nullptr;
    if (!list) return;
    for (const auto* entry : list->find_all("CommentsCorrections")) {
        const std::string ref_type = entry->attribute("RefType");
        if (ref_type != "CommentOn" && ref_type != "CommentIn") continue;
        const auto* pmid_el = entry->find("PMID");
        if (!pmid_el) continue;
        Pmid other = parse_pmid(pmid_el->text);
        CommentLink link = ref_type == "CommentOn" ? CommentLink{self, other}
                                                   : CommentLink{other, self};
        if (link.source == link.target) continue;
        out.push_back(link);
    }
}

} // namespace

std::string build_query(const std::string& topic_clause, LinkDirection direction) {
    if (topic_clause.empty()) throw InvalidArgumentError("empty topic clause");
    const char* suffix =
        direction == LinkDirection::HasCommentIn ? "hascommentin" : "hascommenton";
    return "(" + topic_clause + ") and " + suffix;
}

EsearchPage parse_esearch(const std::string& xml_body) {
    xml::Document doc = xml::parse(xml_body);
    const xml::Element& root = *doc.root;
    if (root.name == "ERROR") throw RemoteError("esearch: " + root.text);
    if (root.name != "eSearchResult") {
        throw ParseError("esearch: unexpected root element <" + root.name + ">");
    }
    if (const auto* error = root.find("ERROR")) {
        throw RemoteError("esearch: " + error->text);
    }
    EsearchPage page;
    auto read_count = [&](const char* name, std::size_t& into) {
        if (const auto* el = root.find(name)) {
            try {
                into = static_cast<std::size_t>(std::stoull(el->text));
            } catch (...) {
                throw ParseError(std::string("esearch: bad ") + name + " value");
            }
        }
    };
    read_count("Count", page.count);
    read_count("RetStart", page.ret_start);
    read_count("RetMax", page.ret_max);
    if (const auto* id_list = root.find("IdList")) {
        for (const auto* id : id_list->find_all("Id")) {
            page.ids.push_back(parse_pmid(id->text));
        }
    }
    return page;
}

FetchResult parse_efetch(const std::string& xml_body, const std::vector<Pmid>& requested) {
    xml::Document doc = xml::parse(xml_body);
    const xml::Element& root = *doc.root;
    if (root.name == "ERROR") throw RemoteError("efetch: " + root.text);
    if (root.name != "PubmedArticleSet") {
        throw ParseError("efetch: unexpected root element <" + root.name + ">");
    }
    FetchResult result;
    std::set<Pmid> seen;
    for (const auto* article : root.find_all("PubmedArticle")) {
        PubRecord record = record_from_article(*article);
        links_from_article(*article, record.pmid, result.links);
        seen.insert(record.pmid);
        result.records.push_back(std::move(record));
    }
    for (Pmid pmid : requested) {
        if (!seen.count(pmid)) result.unresolved.insert(pmid);
    }
    return result;
}

} // namespace ecn
