#include "coword/terms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "coword/common.hpp"
#include "coword/unicode.hpp"

namespace coword {

namespace {

std::string normalize_for_kind(std::string_view term, TermKind kind) {
    if (kind == TermKind::hashtag) {
        std::string t = trim(term);
        return uni::upper(t);
    }
    auto norm = normalize_keyword(term);
    if (!norm) throw error("empty term in thesaurus rule");
    return *norm;
}

}  // namespace

void Thesaurus::add_rule(std::string_view variant, std::string_view canonical,
                         TermKind kind) {
    std::string v = normalize_for_kind(variant, kind);
    std::string c = normalize_for_kind(canonical, kind);
    if (v == c) return;  // identity rule, nothing to do
    if (mapping_.count(c)) {
        throw error("thesaurus chain: canonical '" + c + "' is also a variant");
    }
    for (const auto& [from, to] : mapping_) {
        if (to == v) {
            throw error("thesaurus chain: variant '" + v + "' is a canonical of '" +
                        from + "'");
        }
    }
    auto it = mapping_.find(v);
    if (it != mapping_.end()) {
        if (it->second != c) {
            throw error("conflicting thesaurus rules for variant '" + v + "'");
        }
        return;
    }
    mapping_.emplace(std::move(v), std::move(c));
}

const std::string& Thesaurus::apply(const std::string& term) const {
    auto it = mapping_.find(term);
    return it == mapping_.end() ? term : it->second;
}

Thesaurus Thesaurus::load(const std::string& path, TermKind kind) {
    Thesaurus t;
    std::vector<std::string> lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string line = trim(lines[i]);
        if (line.empty()) continue;
        bool escaped_hash = line.rfind("\\#", 0) == 0;
        if (kind == TermKind::keyword) {
            if (!escaped_hash && line.front() == '#') continue;  // comment
            if (escaped_hash) line.erase(0, 1);
        } else {
            if (escaped_hash) continue;  // comment in a hashtag thesaurus
        }
        std::size_t arrow = line.find("=>");
        if (arrow == std::string::npos) {
            throw error(path + ":" + std::to_string(i + 1) +
                        ": thesaurus rule must be 'variant => canonical'");
        }
        try {
            t.add_rule(trim(line.substr(0, arrow)), trim(line.substr(arrow + 2)), kind);
        } catch (const error& e) {
            throw error(path + ":" + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return t;
}

std::vector<std::string> extract_hashtags(std::string_view text) {
    std::vector<std::string> tags;
    std::size_t pos = 0;
    bool in_url = false;  // inside the remainder of a URL token
    bool at_token_start = true;
    bool prev_is_word = false;
    while (pos < text.size()) {
        std::size_t here = pos;
        char32_t cp = uni::decode(text, pos);
        if (uni::is_space(cp)) {
            in_url = false;
            at_token_start = true;
            prev_is_word = false;
            continue;
        }
        if (at_token_start) {
            std::string_view rest = text.substr(here);
            in_url = rest.rfind("http://", 0) == 0 || rest.rfind("https://", 0) == 0 ||
                     rest.rfind("www.", 0) == 0;
            at_token_start = false;
        }
        if (cp == U'#' && !in_url && !prev_is_word) {
            std::string tag = "#";
            std::size_t run = pos;
            while (run < text.size()) {
                std::size_t next = run;
                char32_t c = uni::decode(text, next);
                if (!uni::is_word_char(c)) break;
                uni::encode(uni::to_upper(c), tag);
                run = next;
            }
            if (tag.size() > 1) {
                tags.push_back(std::move(tag));
                pos = run;
                prev_is_word = true;  // the run ended on a word char
                continue;
            }
        }
        prev_is_word = uni::is_word_char(cp);
    }
    return tags;
}

std::optional<std::string> normalize_keyword(std::string_view raw) {
    std::string trimmed = trim(raw);
    if (trimmed.empty()) return std::nullopt;
    std::string out;
    out.reserve(trimmed.size());
    std::size_t pos = 0;
    bool pending_space = false;
    while (pos < trimmed.size()) {
        char32_t cp = uni::decode(trimmed, pos);
        if (uni::is_space(cp)) {
            pending_space = true;  // a run collapses to one underscore
            continue;
        }
        if (pending_space) {
            out.push_back('_');
            pending_space = false;
        }
        if (cp == U'-') {
            out.push_back('_');
        } else {
            uni::encode(uni::to_lower(cp), out);
        }
    }
    if (out.empty()) return std::nullopt;
    return out;
}

std::vector<std::string> apply_thesaurus(const std::vector<std::string>& terms,
                                         const Thesaurus& thesaurus) {
    std::vector<std::string> out;
    out.reserve(terms.size());
    for (const std::string& t : terms) out.push_back(thesaurus.apply(t));
    return out;
}

RankedTerms rank_frequencies(const std::vector<std::vector<std::string>>& documents) {
    std::unordered_map<std::string, std::int64_t> counts;
    std::unordered_set<std::string> seen;
    for (const auto& doc : documents) {
        seen.clear();
        for (const std::string& term : doc) {
            if (seen.insert(term).second) ++counts[term];
        }
    }
    RankedTerms ranked;
    ranked.entries.reserve(counts.size());
    for (auto& [term, freq] : counts) {
        ranked.entries.push_back({term, freq, 0});
        ranked.total_occurrences += freq;
    }
    std::sort(ranked.entries.begin(), ranked.entries.end(),
              [](const RankedEntry& a, const RankedEntry& b) {
                  if (a.frequency != b.frequency) return a.frequency > b.frequency;
                  return a.term < b.term;
              });
    for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
        if (i > 0 && ranked.entries[i].frequency == ranked.entries[i - 1].frequency) {
            ranked.entries[i].rank = ranked.entries[i - 1].rank;
        } else {
            ranked.entries[i].rank = i + 1;
        }
    }
    return ranked;
}

TermSet select_top(const RankedTerms& ranked, std::size_t target) {
    if (target < 1) throw error("select_top: target must be >= 1");
    TermSet set;
    set.target = target;
    std::size_t i = 0;
    const auto& entries = ranked.entries;
    while (i < entries.size()) {
        std::size_t j = i;
        while (j < entries.size() && entries[j].frequency == entries[i].frequency) ++j;
        if (set.terms.size() + (j - i) > target) break;  // never split a tie group
        for (std::size_t k = i; k < j; ++k) set.terms.push_back(entries[k].term);
        i = j;
    }
    // threshold is the frequency of the first excluded group
    set.threshold = i < entries.size() ? entries[i].frequency : 0;
    set.truncated_warning = set.terms.empty() && !entries.empty();
    return set;
}

std::string TermSet::threshold_description() const {
    return "more than " + std::to_string(threshold);
}

std::size_t default_target(std::size_t vocabulary_size) {
    if (vocabulary_size < 1) throw error("default_target: empty vocabulary");
    auto target = static_cast<std::size_t>(
        std::llround(0.01 * static_cast<double>(vocabulary_size)));
    return std::max<std::size_t>(target, 1);
}

std::string ranked_terms_tsv(const RankedTerms& ranked) {
    std::ostringstream out;
    for (const RankedEntry& e : ranked.entries) {
        out << e.term << '\t' << e.frequency << '\t' << e.rank << '\n';
    }
    return out.str();
}

std::string term_set_lines(const TermSet& set) {
    std::ostringstream out;
    for (const std::string& t : set.terms) out << t << '\n';
    return out.str();
}

std::vector<std::string> load_term_set_lines(const std::string& path) {
    std::vector<std::string> terms;
    for (const std::string& line : read_lines(path)) {
        std::string t = trim(line);
        if (!t.empty()) terms.push_back(std::move(t));
    }
    return terms;
}

}  // namespace coword
