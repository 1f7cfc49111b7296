#include "coword/harvest.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "coword/common.hpp"
#include "coword/ingest.hpp"

namespace coword {

using nlohmann::json;

void FetchPolicy::validate() const {
    if (max_parallel < 1) throw error("fetch policy: max_parallel must be >= 1");
    if (rate_limit <= 0) throw error("fetch policy: rate_limit must be > 0");
    if (max_retries < 0) throw error("fetch policy: max_retries must be >= 0");
}

namespace {

struct UrlParts {
    std::string scheme_host;  // "http://host:port"
    std::string host;
    std::string path;
};

UrlParts parse_url(const std::string& url) {
    UrlParts parts;
    std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw error("not an absolute URL: " + url);
    std::size_t host_start = scheme_end + 3;
    std::size_t path_start = url.find('/', host_start);
    if (path_start == std::string::npos) {
        parts.scheme_host = url;
        parts.host = url.substr(host_start);
        parts.path = "/";
    } else {
        parts.scheme_host = url.substr(0, path_start);
        parts.host = url.substr(host_start, path_start - host_start);
        parts.path = url.substr(path_start);
    }
    return parts;
}

// Paces requests per host at the policy rate with a burst of one:
// each acquisition books the next slot and sleeps until it opens.
class RateLimiter {
public:
    explicit RateLimiter(double per_second)
        : interval_(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
              std::chrono::duration<double>(1.0 / per_second))) {}

    void acquire(const std::string& host) {
        std::chrono::steady_clock::time_point slot;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto now = std::chrono::steady_clock::now();
            auto& next = next_slot_[host];
            if (next < now) next = now;
            slot = next;
            next += interval_;
        }
        std::this_thread::sleep_until(slot);
    }

private:
    std::chrono::steady_clock::duration interval_;
    std::mutex mutex_;
    std::map<std::string, std::chrono::steady_clock::time_point> next_slot_;
};

FetchResult fetch_one(const std::string& url, const FetchPolicy& policy,
                      const std::string& endpoint_override, RateLimiter& limiter,
                      std::map<std::string, std::unique_ptr<httplib::Client>>& clients) {
    FetchResult result;
    result.url = url;
    UrlParts parts = parse_url(url);
    std::string target = endpoint_override.empty() ? parts.scheme_host : endpoint_override;

    auto& client = clients[target];
    if (!client) {
        client = std::make_unique<httplib::Client>(target);
        auto secs = std::chrono::duration_cast<std::chrono::seconds>(policy.timeout);
        auto rest = std::chrono::duration_cast<std::chrono::microseconds>(
            policy.timeout - secs);
        client->set_connection_timeout(secs.count(), rest.count());
        client->set_read_timeout(secs.count(), rest.count());
        client->set_keep_alive(true);
    }

    auto delay = policy.backoff_base;
    for (int attempt = 1; attempt <= policy.max_retries + 1; ++attempt) {
        result.attempts = attempt;
        limiter.acquire(parts.host);
        httplib::Result res = client->Get(parts.path);
        if (!res) {
            result.status = FetchStatus::retryable_failed;
            result.http_code = 0;
        } else {
            result.http_code = res->status;
            if (res->status == 200) {
                result.status = FetchStatus::ok;
                result.body = res->body;
                return result;
            }
            if (res->status == 404 || res->status == 410) {
                result.status = FetchStatus::dead;
                return result;
            }
            result.status = FetchStatus::retryable_failed;
        }
        if (attempt <= policy.max_retries) {
            std::this_thread::sleep_for(delay);
            delay = std::chrono::milliseconds(static_cast<std::int64_t>(
                static_cast<double>(delay.count()) * policy.backoff_multiplier));
        }
    }
    return result;
}

}  // namespace

std::vector<FetchResult> fetch_manifest(const std::vector<std::string>& urls,
                                        const FetchPolicy& policy,
                                        const std::string& endpoint_override) {
    policy.validate();
    if (urls.empty()) throw error("fetch manifest is empty");

    std::vector<FetchResult> results(urls.size());
    RateLimiter limiter(policy.rate_limit);
    std::atomic<std::size_t> cursor{0};
    int workers = std::min<int>(policy.max_parallel, static_cast<int>(urls.size()));

    auto work = [&]() {
        std::map<std::string, std::unique_ptr<httplib::Client>> clients;
        while (true) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= urls.size()) break;
            results[i] = fetch_one(urls[i], policy, endpoint_override, limiter, clients);
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return results;
}

namespace {

std::string unescape_html(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '&') {
            if (s.compare(i, 5, "&amp;") == 0) { out += '&'; i += 5; continue; }
            if (s.compare(i, 4, "&lt;") == 0) { out += '<'; i += 4; continue; }
            if (s.compare(i, 4, "&gt;") == 0) { out += '>'; i += 4; continue; }
            if (s.compare(i, 6, "&quot;") == 0) { out += '"'; i += 6; continue; }
            if (s.compare(i, 5, "&#39;") == 0) { out += '\''; i += 5; continue; }
        }
        out += s[i++];
    }
    return out;
}

// Locates the element carrying class `name` and returns the text between
// its opening tag and the next closing tag. The fixture schema keeps one
// element per class and no nested markup inside it.
std::optional<std::string> element_text(const std::string& body, const std::string& name) {
    std::string marker = "class=\"" + name + "\"";
    std::size_t at = body.find(marker);
    if (at == std::string::npos) return std::nullopt;
    std::size_t open_end = body.find('>', at);
    if (open_end == std::string::npos) return std::nullopt;
    std::size_t close = body.find("</", open_end);
    if (close == std::string::npos) return std::nullopt;
    return unescape_html(
        std::string_view(body).substr(open_end + 1, close - open_end - 1));
}

std::optional<std::string> attribute_of(const std::string& body, const std::string& cls,
                                        const std::string& attr) {
    std::string marker = "class=\"" + cls + "\"";
    std::size_t at = body.find(marker);
    if (at == std::string::npos) return std::nullopt;
    std::size_t open_end = body.find('>', at);
    if (open_end == std::string::npos) return std::nullopt;
    std::string key = attr + "=\"";
    std::size_t k = body.find(key, at);
    if (k == std::string::npos || k > open_end) return std::nullopt;
    std::size_t v = k + key.size();
    std::size_t end = body.find('"', v);
    if (end == std::string::npos) return std::nullopt;
    return body.substr(v, end - v);
}

}  // namespace

std::chrono::sys_seconds parse_iso8601(const std::string& text) {
    int y, mo, d, h, mi, sec;
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi,
                    &sec, &consumed) != 6) {
        throw error("invalid ISO-8601 timestamp: " + text);
    }
    std::size_t pos = static_cast<std::size_t>(consumed);
    if (pos < text.size() && text[pos] == '.') {  // fractional seconds dropped
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    int offset_minutes = 0;
    if (pos < text.size()) {
        char c = text[pos];
        if (c == 'Z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            int oh = 0, om = 0;
            if (std::sscanf(text.c_str() + pos + 1, "%2d:%2d", &oh, &om) != 2) {
                throw error("invalid ISO-8601 offset: " + text);
            }
            offset_minutes = oh * 60 + om;
            if (c == '-') offset_minutes = -offset_minutes;
            pos += 6;
        }
    }
    if (pos != text.size()) throw error("trailing characters in timestamp: " + text);

    using namespace std::chrono;
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                       day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw error("invalid calendar date in timestamp: " + text);
    sys_seconds ts = sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
    return ts - minutes{offset_minutes};
}

std::string format_iso8601(std::chrono::sys_seconds ts) {
    using namespace std::chrono;
    auto days_part = floor<days>(ts);
    year_month_day ymd{days_part};
    hh_mm_ss<seconds> tod{ts - days_part};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ",
                  static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()),
                  static_cast<long>(tod.hours().count()),
                  static_cast<long>(tod.minutes().count()),
                  static_cast<long>(tod.seconds().count()));
    return buf;
}

int utc_year(std::chrono::sys_seconds ts) {
    using namespace std::chrono;
    return static_cast<int>(year_month_day{floor<days>(ts)}.year());
}

TweetRecord extract_tweet(const std::string& body, const std::string& url,
                          const std::string& doi) {
    auto author = element_text(body, "tweet-author");
    if (!author) throw error("tweet page parse: author not found");
    auto stamp = attribute_of(body, "tweet-timestamp", "datetime");
    if (!stamp) throw error("tweet page parse: timestamp not found");
    auto text = element_text(body, "tweet-text");
    if (!text) throw error("tweet page parse: text not found");

    TweetRecord rec;
    rec.url = url;
    rec.doi = doi;
    rec.author = trim(*author);
    if (!rec.author.empty() && rec.author.front() == '@') rec.author.erase(0, 1);
    if (rec.author.empty()) throw error("tweet page parse: author empty");
    rec.text = trim(*text);
    if (rec.text.empty()) throw error("tweet page parse: text empty");
    rec.timestamp = parse_iso8601(*stamp);
    rec.year = utc_year(rec.timestamp);
    return rec;
}

YearFilterResult filter_by_year(std::vector<TweetRecord> tweets, int from, int to) {
    if (from > to) throw error("year window start exceeds end");
    YearFilterResult out;
    out.retained.reserve(tweets.size());
    for (auto& t : tweets) {
        if (t.year >= from && t.year <= to) {
            out.retained.push_back(std::move(t));
        } else {
            ++out.removed;
        }
    }
    return out;
}

AvailabilityStats availability_stats(const std::vector<FetchResult>& results) {
    AvailabilityStats stats;
    stats.total = results.size();
    for (const FetchResult& r : results) {
        switch (r.status) {
            case FetchStatus::ok: ++stats.ok; break;
            case FetchStatus::dead: ++stats.dead; break;
            case FetchStatus::retryable_failed: ++stats.failed; break;
        }
    }
    return stats;
}

std::vector<ManifestEntry> load_manifest(const std::string& path) {
    std::vector<ManifestEntry> entries;
    std::vector<std::string> lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        std::size_t tab = lines[i].find('\t');
        if (tab == std::string::npos) {
            throw error(path + ":" + std::to_string(i + 1) +
                        ": manifest line must be url<TAB>doi");
        }
        entries.push_back(
            {trim(lines[i].substr(0, tab)), normalize_doi(lines[i].substr(tab + 1))});
    }
    return entries;
}

std::string tweet_store_lines(const std::vector<TweetRecord>& tweets) {
    std::ostringstream out;
    for (const TweetRecord& t : tweets) {
        json obj;
        obj["url"] = t.url;
        obj["author"] = t.author;
        obj["timestamp"] = format_iso8601(t.timestamp);
        obj["text"] = t.text;
        obj["doi"] = t.doi;
        out << obj.dump() << '\n';
    }
    return out.str();
}

std::vector<TweetRecord> load_tweet_store(const std::string& path) {
    std::vector<TweetRecord> tweets;
    std::vector<std::string> lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        json obj = json::parse(lines[i], nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            throw error(path + ":" + std::to_string(i + 1) + ": malformed tweet record");
        }
        TweetRecord t;
        try {
            t.url = obj.at("url").get<std::string>();
            t.author = obj.at("author").get<std::string>();
            t.timestamp = parse_iso8601(obj.at("timestamp").get<std::string>());
            t.text = obj.at("text").get<std::string>();
            t.doi = normalize_doi(obj.at("doi").get<std::string>());
        } catch (const json::exception& e) {
            throw error(path + ":" + std::to_string(i + 1) + ": " + e.what());
        }
        t.year = utc_year(t.timestamp);
        if (t.text.empty() || t.author.empty()) {
            throw error(path + ":" + std::to_string(i + 1) + ": empty author or text");
        }
        tweets.push_back(std::move(t));
    }
    return tweets;
}

std::string availability_stats_json(const AvailabilityStats& stats) {
    json obj;
    obj["total"] = stats.total;
    obj["ok"] = stats.ok;
    obj["dead"] = stats.dead;
    obj["failed"] = stats.failed;
    obj["dead_fraction"] = stats.dead_fraction();
    obj["usable_fraction"] = stats.usable_fraction();
    return obj.dump(2) + "\n";
}

}  // namespace coword
