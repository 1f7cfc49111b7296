#include "coword/segment.hpp"

#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "coword/common.hpp"

namespace coword {

using nlohmann::json;

std::string segment_name(Segment s) {
    switch (s) {
        case Segment::all: return "all";
        case Segment::not_tweeted: return "not_tweeted";
        case Segment::tweeted2: return "tweeted2";
        case Segment::tweeted2_news: return "tweeted2_news";
    }
    throw error("unknown segment");
}

Segment segment_from_name(const std::string& name) {
    for (Segment s : kSegments) {
        if (segment_name(s) == name) return s;
    }
    throw error("unknown segment name: " + name);
}

double Segmentation::fraction(Segment s) const {
    std::size_t total = size(Segment::all);
    return total == 0 ? 0.0
                      : static_cast<double>(size(s)) / static_cast<double>(total);
}

double Segmentation::tweeted_fraction() const {
    std::size_t total = size(Segment::all);
    return total == 0 ? 0.0
                      : static_cast<double>(tweeted_count) / static_cast<double>(total);
}

Segmentation classify_papers(const std::vector<PublicationRecord>& pubs,
                             const std::vector<AltmetricRecord>& alts,
                             const SegmentRule& rule) {
    std::unordered_map<std::string, const AltmetricRecord*> by_doi;
    by_doi.reserve(alts.size());
    for (const AltmetricRecord& a : alts) by_doi.emplace(a.doi, &a);

    Segmentation seg;
    for (Segment s : kSegments) seg.members[s];  // all four keys present
    for (const PublicationRecord& p : pubs) {
        seg.members[Segment::all].insert(p.doi);
        auto it = by_doi.find(p.doi);
        std::int64_t tweets = it == by_doi.end() ? 0 : it->second->tweet_count;
        std::int64_t accounts = it == by_doi.end() ? 0 : it->second->account_count;
        std::int64_t news = it == by_doi.end() ? 0 : it->second->news_count;
        if (tweets == 0) {
            seg.members[Segment::not_tweeted].insert(p.doi);
        } else {
            ++seg.tweeted_count;
        }
        if (accounts >= rule.min_accounts) {
            seg.members[Segment::tweeted2].insert(p.doi);
            if (news >= rule.min_news) {
                seg.members[Segment::tweeted2_news].insert(p.doi);
            }
        }
    }
    return seg;
}

TermCorpus keyword_corpus(const std::set<std::string>& segment_dois,
                          const std::vector<PublicationRecord>& pubs,
                          const Thesaurus& thesaurus) {
    TermCorpus corpus;
    corpus.unit = CorpusUnit::paper;
    for (const PublicationRecord& p : pubs) {
        if (!segment_dois.count(p.doi)) continue;
        std::vector<std::string> doc;
        std::unordered_set<std::string> seen;
        std::int64_t occurrences = 0;
        for (const std::string& raw : p.keywords) {
            auto norm = normalize_keyword(raw);
            if (!norm) continue;
            std::string term = thesaurus.apply(*norm);
            ++occurrences;
            if (seen.insert(term).second) doc.push_back(std::move(term));
        }
        if (doc.empty()) continue;  // keywordless papers contribute no document
        corpus.raw_occurrences += occurrences;
        corpus.documents.push_back(std::move(doc));
        corpus.provenance.push_back(p.doi);
        corpus.doc_dois.push_back(p.doi);
        corpus.doc_occurrences.push_back(occurrences);
    }
    return corpus;
}

TermCorpus hashtag_corpus(const std::vector<TweetRecord>& tweets,
                          const std::set<std::string>& segment_dois,
                          const Thesaurus& thesaurus) {
    TermCorpus corpus;
    corpus.unit = CorpusUnit::tweet;
    for (const TweetRecord& t : tweets) {
        if (!segment_dois.count(t.doi)) continue;
        std::vector<std::string> doc;
        std::unordered_set<std::string> seen;
        std::int64_t occurrences = 0;
        for (const std::string& tag : extract_hashtags(t.text)) {
            std::string term = thesaurus.apply(tag);
            ++occurrences;
            if (seen.insert(term).second) doc.push_back(std::move(term));
        }
        corpus.raw_occurrences += occurrences;
        corpus.documents.push_back(std::move(doc));  // empty docs retained
        corpus.provenance.push_back(t.url);
        corpus.doc_dois.push_back(t.doi);
        corpus.doc_occurrences.push_back(occurrences);
    }
    return corpus;
}

HashtagStats hashtag_stats(const TermCorpus& corpus,
                           const std::vector<AltmetricRecord>& alts,
                           const std::vector<PublicationRecord>& pubs) {
    (void)alts;
    if (corpus.unit != CorpusUnit::tweet) {
        throw error("hashtag_stats expects a tweet corpus");
    }
    HashtagStats stats;
    stats.total_hashtags = corpus.raw_occurrences;
    stats.total_tweets = static_cast<std::int64_t>(corpus.documents.size());
    stats.doi_papers = static_cast<std::int64_t>(pubs.size());

    // per-paper totals use occurrences before dedup (doc_occurrences)
    std::unordered_map<std::string, std::int64_t> per_paper;
    std::unordered_set<std::string> papers;
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
        papers.insert(corpus.doc_dois[i]);
        if (!corpus.documents[i].empty()) ++stats.tweets_with_hashtag;
    }
    stats.tweeted_papers = static_cast<std::int64_t>(papers.size());
    for (std::size_t i = 0; i < corpus.doc_occurrences.size(); ++i) {
        per_paper[corpus.doc_dois[i]] += corpus.doc_occurrences[i];
    }
    for (const auto& [doi, count] : per_paper) {
        if (count > 0) ++stats.per_paper_distribution[count];
    }
    return stats;
}

std::string segmentation_tsv(const Segmentation& seg) {
    // doi<TAB>comma-separated segment flags
    std::map<std::string, std::vector<std::string>> flags;
    for (Segment s : kSegments) {
        for (const std::string& doi : seg.of(s)) {
            flags[doi].push_back(segment_name(s));
        }
    }
    std::ostringstream out;
    for (const auto& [doi, names] : flags) {
        out << doi << '\t';
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i) out << ',';
            out << names[i];
        }
        out << '\n';
    }
    return out.str();
}

Segmentation load_segmentation_tsv(const std::string& path) {
    Segmentation seg;
    for (Segment s : kSegments) seg.members[s];
    std::vector<std::string> lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        std::size_t tab = lines[i].find('\t');
        if (tab == std::string::npos) {
            throw error(path + ":" + std::to_string(i + 1) +
                        ": segment line must be doi<TAB>flags");
        }
        std::string doi = lines[i].substr(0, tab);
        for (const std::string& flag : split(lines[i].substr(tab + 1), ',')) {
            seg.members[segment_from_name(trim(flag))].insert(doi);
        }
    }
    // tweeted papers are exactly those not in the not_tweeted segment
    seg.tweeted_count = seg.size(Segment::all) - seg.size(Segment::not_tweeted);
    return seg;
}

std::string corpus_lines(const TermCorpus& corpus) {
    std::ostringstream out;
    for (const auto& doc : corpus.documents) {
        for (std::size_t i = 0; i < doc.size(); ++i) {
            if (i) out << ' ';
            out << doc[i];
        }
        out << '\n';
    }
    return out.str();
}

std::vector<std::vector<std::string>> load_corpus_lines(const std::string& path) {
    std::vector<std::vector<std::string>> docs;
    for (const std::string& line : read_lines(path)) {
        std::vector<std::string> doc;
        for (const std::string& term : split(line, ' ')) {
            if (!term.empty()) doc.push_back(term);
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::string hashtag_stats_json(const HashtagStats& stats) {
    json obj;
    obj["total_hashtags"] = stats.total_hashtags;
    obj["total_tweets"] = stats.total_tweets;
    obj["tweeted_papers"] = stats.tweeted_papers;
    obj["doi_papers"] = stats.doi_papers;
    obj["tweets_with_hashtag"] = stats.tweets_with_hashtag;
    json dist = json::object();
    for (const auto& [count, papers] : stats.per_paper_distribution) {
        dist[std::to_string(count)] = papers;
    }
    obj["per_paper_distribution"] = dist;
    return obj.dump(2) + "\n";
}

HashtagStats load_hashtag_stats_json(const std::string& path) {
    json obj = json::parse(read_file(path), nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
        throw error("malformed hashtag stats file: " + path);
    }
    HashtagStats stats;
    stats.total_hashtags = obj.value("total_hashtags", 0ll);
    stats.total_tweets = obj.value("total_tweets", 0ll);
    stats.tweeted_papers = obj.value("tweeted_papers", 0ll);
    stats.doi_papers = obj.value("doi_papers", 0ll);
    stats.tweets_with_hashtag = obj.value("tweets_with_hashtag", 0ll);
    if (obj.contains("per_paper_distribution")) {
        for (const auto& [key, value] : obj["per_paper_distribution"].items()) {
            stats.per_paper_distribution[std::stoll(key)] = value.get<std::int64_t>();
        }
    }
    return stats;
}

namespace {

std::optional<double> ratio(std::int64_t num, std::int64_t den) {
    if (den <= 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::optional<double> HashtagStats::hashtags_per_tweet() const {
    return ratio(total_hashtags, total_tweets);
}
std::optional<double> HashtagStats::hashtags_per_tweeted_paper() const {
    return ratio(total_hashtags, tweeted_papers);
}
std::optional<double> HashtagStats::hashtags_per_doi_paper() const {
    return ratio(total_hashtags, doi_papers);
}
std::optional<double> HashtagStats::tweets_with_hashtag_fraction() const {
    return ratio(tweets_with_hashtag, total_tweets);
}

std::string hashtag_stats_summary(const HashtagStats& stats) {
    auto fmt = [](std::optional<double> v, int decimals) {
        return v ? format_fixed(*v, decimals) : std::string("n/a");
    };
    auto pct = [](std::optional<double> v) {
        return v ? format_percent(*v, 1) : std::string("n/a");
    };
    std::ostringstream out;
    out << stats.total_hashtags << " hashtags in " << stats.total_tweets
        << " tweets referring to " << stats.tweeted_papers << " papers\n"
        << fmt(stats.hashtags_per_tweet(), 2) << " hashtags per tweet, "
        << fmt(stats.hashtags_per_tweeted_paper(), 2) << " per tweeted paper, "
        << fmt(stats.hashtags_per_doi_paper(), 2) << " per paper with DOI\n"
        << "tweets with at least one hashtag: "
        << pct(stats.tweets_with_hashtag_fraction()) << "\n";
    return out.str();
}

}  // namespace coword
