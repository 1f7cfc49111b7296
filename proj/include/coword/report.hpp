#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coword/ingest.hpp"
#include "coword/netbuild.hpp"
#include "coword/segment.hpp"

namespace coword {

// Pairwise overlap between named term sets: lower triangle absolute
// intersection counts, upper triangle percentages of the smaller set.
struct OverlapTable {
    std::vector<std::string> names;
    std::vector<std::size_t> sizes;
    std::vector<std::vector<std::int64_t>> counts;  // symmetric; diagonal = size

    double percentage(std::size_t i, std::size_t j) const;
};

OverlapTable overlap_table(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& sets);
std::string overlap_csv(const OverlapTable& table);

// Top journals per segment by paper count plus the union list ordered by
// the share in the news segment.
struct JournalImportance {
    std::size_t top_n = 0;
    std::array<std::size_t, 4> segment_sizes{};  // kSegments order
    std::array<std::vector<std::pair<std::string, std::int64_t>>, 4> top;
    std::vector<std::string> union_journals;  // news share desc, ties by name

    std::int64_t count_of(Segment s, const std::string& journal) const;
    double share_of(Segment s, const std::string& journal) const;

    std::array<std::map<std::string, std::int64_t>, 4> counts;  // full tallies
};

JournalImportance journal_importance(const Segmentation& segmentation,
                                     const std::vector<PublicationRecord>& pubs,
                                     std::size_t top_n = 20);
std::string journal_importance_csv(const JournalImportance& ji);

// journal name normalization used for matching: trim + case fold
std::string fold_journal(const std::string& name);

struct HashtagHistogram {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::vector<std::int64_t> bins;  // bins[k] = papers with exactly lo+k hashtags
    std::int64_t within_range = 0;
    std::int64_t papers_with_hashtags = 0;  // over the full support
};

HashtagHistogram hashtag_histogram(const HashtagStats& stats, std::int64_t lo,
                                   std::int64_t hi);
std::string histogram_csv(const HashtagHistogram& hist);
std::string histogram_svg(const HashtagHistogram& hist);

struct RenderOptions {
    double width = 1000.0;
    double height = 800.0;
    double margin = 70.0;
    double max_radius = 28.0;  // radius of the heaviest node
    double max_stroke = 5.0;   // stroke width of the strongest edge
    bool labels = true;
};

std::string render_network_svg(const CoocGraph& graph,
                               const std::vector<NodePlacement>& layout,
                               const std::vector<int>& clusters,
                               const RenderOptions& options = {});

}  // namespace coword
