#pragma once

#include <chrono>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ecn/pubmed.hpp"
#include "ecn/types.hpp"

namespace ecn {

// Token bucket shared across fetch workers. acquire() blocks until a
// request slot is available.
class RateLimiter {
public:
    explicit RateLimiter(double per_second);

    void acquire();
    bool try_acquire();
    double rate() const { return per_second_; }

private:
    void refill();

    double per_second_;
    double tokens_;
    std::chrono::steady_clock::time_point last_refill_;
    std::mutex mutex_;
};

struct EutilsOptions {
    std::string base_url = "https://eutils.ncbi.nlm.nih.gov";
    std::string api_key;            // defaults to $NCBI_API_KEY
    std::string cache_dir;          // defaults to $ECN_CACHE_DIR; empty disables caching
    std::optional<double> rate;     // requests/second; default 3, or 10 with an API key
    std::size_t fetch_batch = 200;  // PMIDs per efetch request

    static EutilsOptions from_env();
};

class EutilsClient {
public:
    explicit EutilsClient(EutilsOptions options = EutilsOptions::from_env());

    EsearchPage esearch(const std::string& query, std::size_t page_size, std::size_t page);
    FetchResult efetch(const std::vector<Pmid>& pmids);

    // esearch pagination + batched efetch, assembled into a corpus.
    // max_records == 0 means "everything the query returns".
    Corpus fetch_corpus(const std::string& query, std::size_t max_records = 0,
                        std::size_t page_size = 500);

    // Requests that actually reached the network (cache hits excluded).
    std::size_t network_requests() const { return network_requests_; }

    // Link rows seen before deduplication in the last fetch_corpus call.
    std::size_t last_raw_link_count() const { return last_raw_links_; }

    // Request paths without the API key; the key never enters the cache
    // identity. Exposed so callers can prime a response cache offline.
    static std::string esearch_path(const std::string& query, std::size_t ret_start,
                                    std::size_t ret_max);
    static std::string efetch_path(const std::vector<Pmid>& pmids);

    // Stable cache file name for a request URL (exposed for cache priming).
    static std::string cache_key(const std::string& url);

    const std::string& base_url() const { return options_.base_url; }

private:
    std::string get(const std::string& path_and_query);

    EutilsOptions options_;
    RateLimiter limiter_;
    std::size_t network_requests_ = 0;
    std::size_t last_raw_links_ = 0;
};

} // namespace ecn
