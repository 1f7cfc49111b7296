#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coword {

enum class FetchStatus { ok, dead, retryable_failed };

struct FetchResult {
    std::string url;
    FetchStatus status = FetchStatus::retryable_failed;
    int http_code = 0;
    std::optional<std::string> body;
    int attempts = 0;
};

struct TweetRecord {
    std::string url;
    std::string author;                  // handle without the leading '@'
    std::chrono::sys_seconds timestamp;  // UTC
    int year = 0;                        // derived from the UTC timestamp
    std::string text;
    std::string doi;                     // carried from the manifest
};

struct FetchPolicy {
    int max_parallel = 4;
    double rate_limit = 10.0;  // requests per second per host
    int max_retries = 2;
    std::chrono::milliseconds backoff_base{250};
    double backoff_multiplier = 2.0;
    std::chrono::milliseconds timeout{5000};

    void validate() const;
};

struct ManifestEntry {
    std::string url;
    std::string doi;
};

struct AvailabilityStats {
    std::size_t total = 0;
    std::size_t ok = 0;
    std::size_t dead = 0;
    std::size_t failed = 0;

    double dead_fraction() const {
        return total == 0 ? 0.0 : static_cast<double>(dead) / static_cast<double>(total);
    }
    double usable_fraction() const {
        return total == 0 ? 0.0 : static_cast<double>(ok) / static_cast<double>(total);
    }
};

struct YearFilterResult {
    std::vector<TweetRecord> retained;
    std::size_t removed = 0;
};

// Fetches every manifest URL, honoring per-host rate limits and retrying
// 5xx/transport failures with exponential backoff. 404/410 mark a tweet
// as deleted without retry. Results come back in input order.
// `endpoint_override`, when set (e.g. "http://127.0.0.1:8080"), redirects
// every request to that server while rate limiting still keys on the
// original host.
std::vector<FetchResult> fetch_manifest(const std::vector<std::string>& urls,
                                        const FetchPolicy& policy,
                                        const std::string& endpoint_override = {});

// Parses a fixture tweet page (see FORMATS.md): elements marked with the
// classes tweet-author, tweet-timestamp (ISO-8601 datetime attribute) and
// tweet-text. Throws a parse error naming the missing element.
TweetRecord extract_tweet(const std::string& body, const std::string& url,
                          const std::string& doi);

YearFilterResult filter_by_year(std::vector<TweetRecord> tweets, int from, int to);

AvailabilityStats availability_stats(const std::vector<FetchResult>& results);

// "YYYY-MM-DDThh:mm:ss" with optional fractional seconds and 'Z' or
// '+hh:mm'/'-hh:mm' offset; result is normalized to UTC.
std::chrono::sys_seconds parse_iso8601(const std::string& text);
std::string format_iso8601(std::chrono::sys_seconds ts);
int utc_year(std::chrono::sys_seconds ts);

// manifest file: `url<TAB>doi` per line
std::vector<ManifestEntry> load_manifest(const std::string& path);

// tweet store: one JSON object per line
std::string tweet_store_lines(const std::vector<TweetRecord>& tweets);
std::vector<TweetRecord> load_tweet_store(const std::string& path);

std::string availability_stats_json(const AvailabilityStats& stats);

}  // namespace coword
