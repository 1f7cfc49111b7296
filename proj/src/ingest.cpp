#include "coword/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "coword/common.hpp"
#include "coword/unicode.hpp"

namespace coword {

using nlohmann::json;

std::optional<double> AltmetricParse::url_coverage() const {
    if (total_tweet_count <= 0) return std::nullopt;
    return static_cast<double>(total_urls) / static_cast<double>(total_tweet_count);
}

double CorpusStats::doi_coverage() const {
    if (total_papers == 0) return 0.0;
    return static_cast<double>(papers_with_doi) / static_cast<double>(total_papers);
}

double CorpusStats::keyword_coverage() const {
    if (papers_with_doi == 0) return 0.0;
    return static_cast<double>(papers_with_keywords) / static_cast<double>(papers_with_doi);
}

std::string normalize_doi(std::string_view raw) {
    std::string s = trim(raw);
    s = uni::lower(s);
    for (std::string_view prefix :
         {"https://doi.org/", "http://doi.org/", "https://dx.doi.org/",
          "http://dx.doi.org/", "doi:"}) {
        if (s.rfind(prefix, 0) == 0) {
            s.erase(0, prefix.size());
            break;
        }
    }
    return trim(s);
}

namespace {

bool looks_like_url(std::string_view s) {
    return s.rfind("http://", 0) == 0 || s.rfind("https://", 0) == 0;
}

// keywords arrive as one semicolon-separated string
std::vector<std::string> split_keywords(const std::string& field) {
    std::vector<std::string> out;
    for (const std::string& part : split(field, ';')) {
        std::string k = trim(part);
        if (!k.empty()) out.push_back(std::move(k));
    }
    return out;
}

}  // namespace

PublicationParse parse_publications(std::istream& stream,
                                    const std::optional<YearWindow>& window) {
    if (!stream) throw error("publication stream unreadable");
    PublicationParse result;
    std::unordered_set<std::string> seen_dois;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        ++result.report.total_lines;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            result.report.rejections.push_back({line_number, "malformed line"});
            continue;
        }
        std::string doi;
        if (obj.contains("doi") && obj["doi"].is_string()) {
            doi = normalize_doi(obj["doi"].get<std::string>());
        }
        if (doi.empty()) {
            result.report.rejections.push_back({line_number, "missing doi"});
            continue;
        }
        if (!obj.contains("year") || !obj["year"].is_number_integer()) {
            result.report.rejections.push_back({line_number, "missing year"});
            continue;
        }
        int year = obj["year"].get<int>();
        if (window && !window->contains(year)) {
            result.report.rejections.push_back({line_number, "outside year window"});
            continue;
        }
        if (!seen_dois.insert(doi).second) {
            // first record wins
            result.report.rejections.push_back({line_number, "duplicate"});
            continue;
        }
        PublicationRecord rec;
        rec.doi = std::move(doi);
        rec.year = year;
        if (obj.contains("journal") && obj["journal"].is_string()) {
            rec.journal = trim(obj["journal"].get<std::string>());
        }
        if (obj.contains("keywords") && obj["keywords"].is_string()) {
            rec.keywords = split_keywords(obj["keywords"].get<std::string>());
        }
        if (obj.contains("title") && obj["title"].is_string()) {
            rec.title = obj["title"].get<std::string>();
        }
        ++result.report.accepted;
        result.records.push_back(std::move(rec));
    }
    if (stream.bad()) throw error("publication stream read failure");
    return result;
}

PublicationParse parse_publications_file(const std::string& path,
                                         const std::optional<YearWindow>& window) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open publication file: " + path);
    return parse_publications(in, window);
}

AltmetricParse parse_altmetric_links(std::istream& stream) {
    if (!stream) throw error("altmetric stream unreadable");
    AltmetricParse result;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        ++result.report.total_lines;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            result.report.rejections.push_back({line_number, "malformed line"});
            continue;
        }
        std::string doi;
        if (obj.contains("doi") && obj["doi"].is_string()) {
            doi = normalize_doi(obj["doi"].get<std::string>());
        }
        if (doi.empty()) {
            result.report.rejections.push_back({line_number, "missing doi"});
            continue;
        }
        AltmetricRecord rec;
        rec.doi = std::move(doi);
        auto read_count = [&](const char* key, std::int64_t& out) {
            if (!obj.contains(key)) return true;  // counts default to 0
            if (!obj[key].is_number_integer()) return false;
            out = obj[key].get<std::int64_t>();
            return out >= 0;
        };
        if (!read_count("account_count", rec.account_count) ||
            !read_count("tweet_count", rec.tweet_count) ||
            !read_count("news_count", rec.news_count)) {
            result.report.rejections.push_back({line_number, "negative or invalid count"});
            continue;
        }
        if (rec.account_count > 0 && rec.tweet_count == 0) {
            result.report.rejections.push_back({line_number, "inconsistent counts"});
            continue;
        }
        if (obj.contains("tweet_urls")) {
            if (!obj["tweet_urls"].is_array()) {
                result.report.rejections.push_back({line_number, "tweet_urls not an array"});
                continue;
            }
            for (const auto& u : obj["tweet_urls"]) {
                if (u.is_string() && looks_like_url(u.get<std::string>())) {
                    rec.tweet_urls.push_back(u.get<std::string>());
                } else {
                    ++result.report.dropped_urls;
                }
            }
        }
        result.total_tweet_count += rec.tweet_count;
        result.total_urls += static_cast<std::int64_t>(rec.tweet_urls.size());
        ++result.report.accepted;
        result.records.push_back(std::move(rec));
    }
    if (stream.bad()) throw error("altmetric stream read failure");
    return result;
}

AltmetricParse parse_altmetric_links_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open altmetric file: " + path);
    return parse_altmetric_links(in);
}

CorpusStats validate_corpus(const PublicationParse& pubs, const AltmetricParse& alts) {
    (void)alts;  // altmetric parse carries its own coverage numbers
    if (pubs.records.empty()) throw error("empty corpus");
    CorpusStats stats;
    stats.total_papers = pubs.report.total_lines;
    stats.papers_with_doi = pubs.records.size();
    stats.papers_with_keywords = static_cast<std::size_t>(
        std::count_if(pubs.records.begin(), pubs.records.end(),
                      [](const PublicationRecord& r) { return !r.keywords.empty(); }));
    return stats;
}

std::string corpus_stats_json(const CorpusStats& stats) {
    json obj;
    obj["total_papers"] = stats.total_papers;
    obj["papers_with_doi"] = stats.papers_with_doi;
    obj["papers_with_keywords"] = stats.papers_with_keywords;
    obj["doi_coverage"] = stats.doi_coverage();
    obj["keyword_coverage"] = stats.keyword_coverage();
    return obj.dump(2) + "\n";
}

std::string corpus_stats_summary(const CorpusStats& stats) {
    std::ostringstream out;
    out << "papers: " << stats.total_papers << "\n"
        << "with DOI: " << stats.papers_with_doi << " ("
        << format_percent(stats.doi_coverage(), 1) << ")\n"
        << "with keywords: " << stats.papers_with_keywords << " ("
        << format_percent(stats.keyword_coverage(), 1) << " of DOI papers)\n";
    return out.str();
}

}  // namespace coword
