#pragma once

#include <set>
#include <string>
#include <vector>

#include "ecn/types.hpp"

namespace ecn {

enum class LinkDirection {
    HasCommentIn, // publications that received comments
    HasCommentOn, // publications that are comments
};

// Appends the PubMed "hascommentin"/"hascommenton" operator to a topic clause.
std::string build_query(const std::string& topic_clause, LinkDirection direction);

struct EsearchPage {
    std::vector<Pmid> ids; // response order
    std::size_t count = 0; // total hits reported by the server
    std::size_t ret_start = 0;
    std::size_t ret_max = 0;
};

// Parses an esearch.fcgi XML response. An <ERROR> banner raises RemoteError,
// malformed XML raises ParseError.
EsearchPage parse_esearch(const std::string& xml_body);

struct FetchResult {
    std::vector<PubRecord> records;           // response order
    std::vector<CommentLink> links;           // source comments on target
    std::set<Pmid> unresolved;                // requested but absent from the response
};

// Parses an efetch.fcgi PubmedArticleSet. CommentOn entries of record X
// yield X->target links; CommentIn entries of record Y yield source->Y.
// Self-referential entries are dropped.
FetchResult parse_efetch(const std::string& xml_body, const std::vector<Pmid>& requested);

} // namespace ecn
