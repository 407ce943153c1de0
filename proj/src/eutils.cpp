#include "ecn/eutils.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#ifdef ECN_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "ecn/corpus_io.hpp"
#include "ecn/errors.hpp"

namespace fs = std::filesystem;

namespace ecn {

namespace {

std::string env_or_empty(const char* name) {
    const char* value = std::getenv(name);
    return value ? value : "";
}

std::string url_encode(const std::string& value) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(value.size());
    for (unsigned char c : value) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else if (c == ' ') {
            out.push_back('+');
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        }
    }
    return out;
}

std::string iso_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

RateLimiter::RateLimiter(double per_second)
    : per_second_(per_second > 0 ? per_second : 1.0),
      tokens_(per_second_),
      last_refill_(std::chrono::steady_clock::now()) {}

void RateLimiter::refill() {
    auto now = std::chrono::steady_clock::now();
    double elapsed = std::chrono::duration<double>(now - last_refill_).count();
    last_refill_ = now;
    tokens_ = std::min(per_second_, tokens_ + elapsed * per_second_);
}

bool RateLimiter::try_acquire() {
    std::lock_guard lock(mutex_);
    refill();
    if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return true;
    }
    return false;
}

void RateLimiter::acquire() {
    for (;;) {
        double wait_s = 0.0;
        {
            std::lock_guard lock(mutex_);
            refill();
            if (tokens_ >= 1.0) {
                tokens_ -= 1.0;
                return;
            }
            wait_s = (1.0 - tokens_) / per_second_;
        }
        std::this_thread::sleep_for(std::chrono::duration<double>(wait_s));
    }
}

EutilsOptions EutilsOptions::from_env() {
    EutilsOptions options;
    options.api_key = env_or_empty("NCBI_API_KEY");
    options.cache_dir = env_or_empty("ECN_CACHE_DIR");
    return options;
}

EutilsClient::EutilsClient(EutilsOptions options)
    : options_(std::move(options)),
      limiter_(options_.rate.value_or(options_.api_key.empty() ? 3.0 : 10.0)) {}

std::string EutilsClient::cache_key(const std::string& url) {
    // FNV-1a, stable across runs and platforms.
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : url) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    std::ostringstream name;
    name << std::hex << hash << ".xml";
    return name.str();
}

std::string EutilsClient::esearch_path(const std::string& query, std::size_t ret_start,
                                       std::size_t ret_max) {
    std::ostringstream path;
    path << "/entrez/eutils/esearch.fcgi?db=pubmed&retmode=xml"
         << "&term=" << url_encode(query)
         << "&retstart=" << ret_start
         << "&retmax=" << ret_max;
    return path.str();
}

std::string EutilsClient::efetch_path(const std::vector<Pmid>& pmids) {
    std::ostringstream path;
    path << "/entrez/eutils/efetch.fcgi?db=pubmed&retmode=xml&id=";
    for (std::size_t i = 0; i < pmids.size(); ++i) {
        if (i) path << ',';
        path << pmids[i];
    }
    return path.str();
}

std::string EutilsClient::get(const std::string& path_and_query) {
    const std::string url = options_.base_url + path_and_query;

    fs::path cache_file;
    if (!options_.cache_dir.empty()) {
        cache_file = fs::path(options_.cache_dir) / cache_key(url);
        if (fs::exists(cache_file)) {
            std::ifstream in(cache_file, std::ios::binary);
            std::ostringstream body;
            body << in.rdbuf();
            return body.str();
        }
    }

    std::string request_path = path_and_query;
    if (!options_.api_key.empty()) request_path += "&api_key=" + url_encode(options_.api_key);

    limiter_.acquire();
    httplib::Client client(options_.base_url);
    client.set_connection_timeout(15);
    client.set_read_timeout(60);
    client.set_follow_location(true);
    auto response = client.Get(request_path);
    ++network_requests_;
    if (!response) {
        throw TransportError("GET " + url + ": " + httplib::to_string(response.error()));
    }
    if (response->status != 200) {
        throw RemoteError("GET " + url + ": HTTP " + std::to_string(response->status));
    }

    if (!cache_file.empty()) {
        fs::create_directories(cache_file.parent_path());
        std::ofstream out(cache_file, std::ios::binary);
        out << response->body;
    }
    return response->body;
}

EsearchPage EutilsClient::esearch(const std::string& query, std::size_t page_size,
                                  std::size_t page) {
    return parse_esearch(get(esearch_path(query, page * page_size, page_size)));
}

FetchResult EutilsClient::efetch(const std::vector<Pmid>& pmids) {
    if (pmids.empty()) throw InvalidArgumentError("efetch requires at least one PMID");
    FetchResult merged;
    for (std::size_t offset = 0; offset < pmids.size(); offset += options_.fetch_batch) {
        std::size_t end = std::min(pmids.size(), offset + options_.fetch_batch);
        std::vector<Pmid> batch(pmids.begin() + static_cast<std::ptrdiff_t>(offset),
                                pmids.begin() + static_cast<std::ptrdiff_t>(end));
        FetchResult part = parse_efetch(get(efetch_path(batch)), batch);
        std::move(part.records.begin(), part.records.end(), std::back_inserter(merged.records));
        std::move(part.links.begin(), part.links.end(), std::back_inserter(merged.links));
        merged.unresolved.insert(part.unresolved.begin(), part.unresolved.end());
    }
    return merged;
}

Corpus EutilsClient::fetch_corpus(const std::string& query, std::size_t max_records,
                                  std::size_t page_size) {
    if (query.empty()) throw InvalidArgumentError("empty query");
    std::vector<Pmid> ids;
    for (std::size_t page = 0;; ++page) {
        EsearchPage result = esearch(query, page_size, page);
        for (Pmid id : result.ids) {
            ids.push_back(id);
            if (max_records && ids.size() >= max_records) break;
        }
        if (max_records && ids.size() >= max_records) break;
        if (result.ids.empty() || result.ret_start + result.ids.size() >= result.count) break;
    }

    Corpus corpus;
    corpus.provenance.query = query;
    corpus.provenance.fetched_at = iso_utc_now();
    if (ids.empty()) return corpus;

    FetchResult fetched = efetch(ids);
    last_raw_links_ = fetched.links.size();
    for (auto& record : fetched.records) {
        corpus.records[record.pmid] = std::move(record);
    }
    corpus.links = dedupe_links(fetched.links);
    corpus.reindex_unresolved();
    return corpus;
}

} // namespace ecn
