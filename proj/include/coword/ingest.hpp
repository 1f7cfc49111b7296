#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace coword {

// One paper from the publication export.
struct PublicationRecord {
    std::string doi;  // normalized: lowercase, no resolver prefix
    int year = 0;
    std::string journal;
    std::vector<std::string> keywords;  // raw author keywords, unnormalized
    std::optional<std::string> title;
};

// Attention data joined to a paper via its DOI.
struct AltmetricRecord {
    std::string doi;
    std::vector<std::string> tweet_urls;
    std::int64_t account_count = 0;
    std::int64_t tweet_count = 0;
    std::int64_t news_count = 0;
};

struct Rejection {
    std::size_t line_number = 0;  // 1-based
    std::string reason;
};

struct ParseReport {
    std::size_t total_lines = 0;  // non-blank input lines
    std::size_t accepted = 0;
    std::vector<Rejection> rejections;
    std::size_t dropped_urls = 0;  // malformed tweet URLs dropped with a warning
};

struct PublicationParse {
    std::vector<PublicationRecord> records;
    ParseReport report;
};

struct AltmetricParse {
    std::vector<AltmetricRecord> records;
    ParseReport report;
    std::int64_t total_tweet_count = 0;
    std::int64_t total_urls = 0;

    // fraction of tweets whose page URL is present
    std::optional<double> url_coverage() const;
};

struct YearWindow {
    int from = 0;
    int to = 0;

    bool contains(int year) const { return year >= from && year <= to; }
};

struct CorpusStats {
    std::size_t total_papers = 0;      // all publication lines, with or without DOI
    std::size_t papers_with_doi = 0;
    std::size_t papers_with_keywords = 0;  // among the DOI papers

    double doi_coverage() const;
    // relative to the DOI papers
    double keyword_coverage() const;
};

// lowercase, strip doi.org resolver prefixes, trim
std::string normalize_doi(std::string_view raw);

// Publication file: one JSON object per line, fields doi/year/journal/
// keywords/title (see FORMATS.md). Malformed lines land in the report.
PublicationParse parse_publications(std::istream& stream,
                                    const std::optional<YearWindow>& window = std::nullopt);
PublicationParse parse_publications_file(const std::string& path,
                                         const std::optional<YearWindow>& window = std::nullopt);

AltmetricParse parse_altmetric_links(std::istream& stream);
AltmetricParse parse_altmetric_links_file(const std::string& path);

CorpusStats validate_corpus(const PublicationParse& pubs, const AltmetricParse& alts);

std::string corpus_stats_json(const CorpusStats& stats);
std::string corpus_stats_summary(const CorpusStats& stats);

}  // namespace coword
