#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coword/harvest.hpp"
#include "coword/ingest.hpp"
#include "coword/terms.hpp"

namespace coword {

// The four attention segments.
enum class Segment { all, not_tweeted, tweeted2, tweeted2_news };

constexpr Segment kSegments[] = {Segment::all, Segment::not_tweeted,
                                 Segment::tweeted2, Segment::tweeted2_news};

std::string segment_name(Segment s);
Segment segment_from_name(const std::string& name);

struct SegmentRule {
    std::int64_t min_accounts = 2;
    std::int64_t min_news = 1;
};

struct Segmentation {
    std::map<Segment, std::set<std::string>> members;  // DOIs per segment
    std::size_t tweeted_count = 0;  // papers with at least one tweet

    const std::set<std::string>& of(Segment s) const { return members.at(s); }
    std::size_t size(Segment s) const { return members.at(s).size(); }
    double fraction(Segment s) const;
    double tweeted_fraction() const;
};

enum class CorpusUnit { paper, tweet };

struct TermCorpus {
    CorpusUnit unit = CorpusUnit::paper;
    std::vector<std::vector<std::string>> documents;  // deduplicated terms
    std::vector<std::string> provenance;              // DOI or tweet URL per document
    std::vector<std::string> doc_dois;                // paper behind each document
    std::vector<std::int64_t> doc_occurrences;        // per-document count before dedup
    std::int64_t raw_occurrences = 0;                 // term occurrences before dedup
};

struct HashtagStats {
    std::int64_t total_hashtags = 0;  // occurrences before per-tweet dedup
    std::int64_t total_tweets = 0;
    std::int64_t tweeted_papers = 0;
    std::int64_t doi_papers = 0;
    std::int64_t tweets_with_hashtag = 0;
    std::map<std::int64_t, std::int64_t> per_paper_distribution;  // hashtags -> papers

    std::optional<double> hashtags_per_tweet() const;
    std::optional<double> hashtags_per_tweeted_paper() const;
    std::optional<double> hashtags_per_doi_paper() const;
    std::optional<double> tweets_with_hashtag_fraction() const;
};

Segmentation classify_papers(const std::vector<PublicationRecord>& pubs,
                             const std::vector<AltmetricRecord>& alts,
                             const SegmentRule& rule = {});

// One document per paper with at least one keyword; normalization and
// thesaurus merging applied, duplicates within a paper collapsed.
TermCorpus keyword_corpus(const std::set<std::string>& segment_dois,
                          const std::vector<PublicationRecord>& pubs,
                          const Thesaurus& thesaurus);

// One document per tweet targeting a segment paper; hashtag-less tweets
// stay as empty documents so tweet-level statistics remain exact.
TermCorpus hashtag_corpus(const std::vector<TweetRecord>& tweets,
                          const std::set<std::string>& segment_dois,
                          const Thesaurus& thesaurus);

HashtagStats hashtag_stats(const TermCorpus& corpus,
                           const std::vector<AltmetricRecord>& alts,
                           const std::vector<PublicationRecord>& pubs);

std::string segmentation_tsv(const Segmentation& seg);
Segmentation load_segmentation_tsv(const std::string& path);

// corpus file: one document per line, terms space-separated
std::string corpus_lines(const TermCorpus& corpus);
std::vector<std::vector<std::string>> load_corpus_lines(const std::string& path);

std::string hashtag_stats_json(const HashtagStats& stats);
HashtagStats load_hashtag_stats_json(const std::string& path);
std::string hashtag_stats_summary(const HashtagStats& stats);

}  // namespace coword
