#pragma once

#include <string>
#include <vector>

#include "ecn/types.hpp"

namespace ecn {

inline constexpr int kCorpusSchemaVersion = 1;

// JSON-lines persistence: a header line, one line per record, one per link.
// Records are written by ascending PMID and links in sorted order, so
// saving a loaded corpus reproduces the file byte for byte.
void save_corpus(const Corpus& corpus, const std::string& path);
Corpus load_corpus(const std::string& path);

// Keeps the first occurrence of each (source, target) pair.
std::vector<CommentLink> dedupe_links(const std::vector<CommentLink>& links);

// Keeps records whose title matches a synonym of `group`. A link survives
// when at least one endpoint matched; the other endpoint is retained and
// flagged context_only if it did not match on its own.
Corpus filter_by_drug(const Corpus& corpus, const DrugLexicon& lexicon,
                      const std::string& group);

} // namespace ecn
