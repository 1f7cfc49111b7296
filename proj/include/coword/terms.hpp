#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coword {

enum class TermKind { hashtag, keyword };

// variant -> canonical merge rules; chain-free by construction
class Thesaurus {
public:
    Thesaurus() = default;

    // Both sides are normalized for the given kind before insertion.
    // Throws on chains (a canonical that is also a variant).
    void add_rule(std::string_view variant, std::string_view canonical, TermKind kind);

    const std::string& apply(const std::string& term) const;

    std::size_t size() const { return mapping_.size(); }
    bool empty() const { return mapping_.empty(); }

    // File format: one `variant => canonical` per line, UTF-8. In keyword
    // files a line starting with `#` is a comment and a literal leading
    // `#` is escaped as `\#`; in hashtag files `#...` lines are rules and
    // comments are written with `\#`. See FORMATS.md.
    static Thesaurus load(const std::string& path, TermKind kind);

private:
    std::map<std::string, std::string> mapping_;
};

struct RankedEntry {
    std::string term;
    std::int64_t frequency = 0;
    std::size_t rank = 0;  // competition ranking: 1,2,2,4,...
};

struct RankedTerms {
    std::vector<RankedEntry> entries;  // frequency descending, term ascending within ties
    std::int64_t total_occurrences = 0;
};

struct TermSet {
    std::vector<std::string> terms;   // in rank order
    std::int64_t threshold = 0;       // selected iff frequency > threshold
    std::size_t target = 0;
    bool truncated_warning = false;   // first tie group alone exceeded the target

    // human-readable cut description, e.g. "more than 13 occurrences"
    std::string threshold_description() const;
};

// Hashtags: maximal runs of letters/digits/underscore after '#', skipping
// '#' inside URL tokens; output uppercased. Duplicates kept in order.
std::vector<std::string> extract_hashtags(std::string_view text);

// trim, lowercase; each whitespace run and each hyphen becomes '_'
std::optional<std::string> normalize_keyword(std::string_view raw);

std::vector<std::string> apply_thesaurus(const std::vector<std::string>& terms,
                                         const Thesaurus& thesaurus);

// Document-level counting: a term repeated within one document counts once.
RankedTerms rank_frequencies(const std::vector<std::vector<std::string>>& documents);

// Tie-aware top-N: whole frequency groups are taken in descending order
// while the running size stays within the target; a group that would
// overshoot is excluded entirely.
TermSet select_top(const RankedTerms& ranked, std::size_t target);

// top-1% of the vocabulary, at least 1
std::size_t default_target(std::size_t vocabulary_size);

std::string ranked_terms_tsv(const RankedTerms& ranked);
std::string term_set_lines(const TermSet& set);
std::vector<std::string> load_term_set_lines(const std::string& path);

}  // namespace coword
