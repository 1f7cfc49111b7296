#include "coword/report.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "coword/common.hpp"
#include "coword/unicode.hpp"

namespace coword {

double OverlapTable::percentage(std::size_t i, std::size_t j) const {
    std::size_t denom = std::min(sizes[i], sizes[j]);
    if (denom == 0) return 0.0;
    return 100.0 * static_cast<double>(counts[i][j]) / static_cast<double>(denom);
}

OverlapTable overlap_table(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& sets) {
    if (sets.empty()) throw error("overlap table: no sets given");
    OverlapTable table;
    std::vector<std::set<std::string>> as_sets;
    for (const auto& [name, terms] : sets) {
        if (terms.empty()) throw error("overlap table: set " + name + " is empty");
        table.names.push_back(name);
        as_sets.emplace_back(terms.begin(), terms.end());
        table.sizes.push_back(as_sets.back().size());
    }
    const std::size_t n = sets.size();
    table.counts.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        table.counts[i][i] = static_cast<std::int64_t>(table.sizes[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            std::int64_t common = 0;
            for (const std::string& t : as_sets[i]) common += as_sets[j].count(t);
            table.counts[i][j] = table.counts[j][i] = common;
        }
    }
    return table;
}

std::string overlap_csv(const OverlapTable& table) {
    std::ostringstream out;
    out << "set";
    for (const std::string& name : table.names) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < table.names.size(); ++i) {
        out << table.names[i];
        for (std::size_t j = 0; j < table.names.size(); ++j) {
            out << ',';
            if (i == j) out << table.sizes[i];
            else if (i < j) out << format_fixed(table.percentage(i, j), 1);
            else out << table.counts[i][j];
        }
        out << '\n';
    }
    return out.str();
}

std::string fold_journal(const std::string& name) {
    return uni::upper(trim(name));
}

namespace {

std::size_t segment_index(Segment s) {
    for (std::size_t i = 0; i < 4; ++i) {
        if (kSegments[i] == s) return i;
    }
    throw error("unknown segment");
}

}  // namespace

std::int64_t JournalImportance::count_of(Segment s, const std::string& journal) const {
    const auto& tally = counts[segment_index(s)];
    auto it = tally.find(journal);
    return it == tally.end() ? 0 : it->second;
}

double JournalImportance::share_of(Segment s, const std::string& journal) const {
    std::size_t size = segment_sizes[segment_index(s)];
    if (size == 0) return 0.0;
    return static_cast<double>(count_of(s, journal)) / static_cast<double>(size);
}

JournalImportance journal_importance(const Segmentation& segmentation,
                                     const std::vector<PublicationRecord>& pubs,
                                     std::size_t top_n) {
    if (top_n < 1) throw error("journal importance: top_n must be >= 1");
    std::map<std::string, std::string> journal_of;  // doi -> folded journal
    for (const PublicationRecord& p : pubs) {
        std::string folded = fold_journal(p.journal);
        if (!folded.empty()) journal_of[p.doi] = folded;
    }

    JournalImportance ji;
    ji.top_n = top_n;
    for (std::size_t s = 0; s < 4; ++s) {
        const auto& dois = segmentation.of(kSegments[s]);
        if (dois.empty()) {
            throw error("journal importance: segment " + segment_name(kSegments[s]) +
                        " is empty");
        }
        ji.segment_sizes[s] = dois.size();
        for (const std::string& doi : dois) {
            auto it = journal_of.find(doi);
            if (it != journal_of.end()) ++ji.counts[s][it->second];
        }
        std::vector<std::pair<std::string, std::int64_t>> ranked(ji.counts[s].begin(),
                                                                 ji.counts[s].end());
        std::sort(ranked.begin(), ranked.end(),
                  [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second > b.second;
                      return a.first < b.first;
                  });
        if (ranked.size() > top_n) ranked.resize(top_n);
        ji.top[s] = std::move(ranked);
    }

    std::set<std::string> union_set;
    for (const auto& list : ji.top) {
        for (const auto& [journal, count] : list) union_set.insert(journal);
    }
    ji.union_journals.assign(union_set.begin(), union_set.end());
    std::sort(ji.union_journals.begin(), ji.union_journals.end(),
              [&](const std::string& a, const std::string& b) {
                  double sa = ji.share_of(Segment::tweeted2_news, a);
                  double sb = ji.share_of(Segment::tweeted2_news, b);
                  if (sa != sb) return sa > sb;
                  return a < b;
              });
    return ji;
}

std::string journal_importance_csv(const JournalImportance& ji) {
    std::ostringstream out;
    out << "journal";
    for (Segment s : kSegments) {
        out << ',' << segment_name(s) << "_count," << segment_name(s) << "_share";
    }
    out << '\n';
    for (const std::string& journal : ji.union_journals) {
        out << journal;
        for (Segment s : kSegments) {
            out << ',' << ji.count_of(s, journal) << ','
                << format_fixed(100.0 * ji.share_of(s, journal), 1);
        }
        out << '\n';
    }
    return out.str();
}

HashtagHistogram hashtag_histogram(const HashtagStats& stats, std::int64_t lo,
                                   std::int64_t hi) {
    if (lo < 0 || hi < lo) throw error("histogram: invalid range");
    HashtagHistogram hist;
    hist.lo = lo;
    hist.hi = hi;
    hist.bins.assign(static_cast<std::size_t>(hi - lo + 1), 0);
    for (const auto& [count, papers] : stats.per_paper_distribution) {
        if (count > 0) hist.papers_with_hashtags += papers;
        if (count >= lo && count <= hi) {
            hist.bins[static_cast<std::size_t>(count - lo)] += papers;
            hist.within_range += papers;
        }
    }
    return hist;
}

std::string histogram_csv(const HashtagHistogram& hist) {
    std::ostringstream out;
    out << "hashtags_per_paper,papers\n";
    for (std::size_t k = 0; k < hist.bins.size(); ++k) {
        out << (hist.lo + static_cast<std::int64_t>(k)) << ',' << hist.bins[k] << '\n';
    }
    return out.str();
}

std::string histogram_svg(const HashtagHistogram& hist) {
    const double bar_w = 18.0, gap = 4.0, plot_h = 260.0;
    const double left = 50.0, top = 20.0, bottom = 40.0;
    const double plot_w = static_cast<double>(hist.bins.size()) * (bar_w + gap);
    const double width = left + plot_w + 20.0;
    const double height = top + plot_h + bottom;
    std::int64_t max_bin = 0;
    for (std::int64_t b : hist.bins) max_bin = std::max(max_bin, b);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_fixed(width, 0)
        << "\" height=\"" << format_fixed(height, 0) << "\" viewBox=\"0 0 "
        << format_fixed(width, 0) << ' ' << format_fixed(height, 0) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << format_fixed(left, 1) << "\" y1=\"" << format_fixed(top, 1)
        << "\" x2=\"" << format_fixed(left, 1) << "\" y2=\""
        << format_fixed(top + plot_h, 1) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << format_fixed(left, 1) << "\" y1=\""
        << format_fixed(top + plot_h, 1) << "\" x2=\"" << format_fixed(left + plot_w, 1)
        << "\" y2=\"" << format_fixed(top + plot_h, 1) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << format_fixed(left - 6.0, 1) << "\" y=\""
        << format_fixed(top + 4.0, 1)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << max_bin << "</text>\n";
    for (std::size_t k = 0; k < hist.bins.size(); ++k) {
        double h = max_bin == 0 ? 0.0
                                : plot_h * static_cast<double>(hist.bins[k]) /
                                      static_cast<double>(max_bin);
        double x = left + static_cast<double>(k) * (bar_w + gap) + gap / 2.0;
        out << "<rect x=\"" << format_fixed(x, 1) << "\" y=\""
            << format_fixed(top + plot_h - h, 1) << "\" width=\"" << format_fixed(bar_w, 1)
            << "\" height=\"" << format_fixed(h, 1) << "\" fill=\"#4e79a7\"/>\n";
        std::int64_t value = hist.lo + static_cast<std::int64_t>(k);
        if (value == hist.lo || value == hist.hi || value % 5 == 0) {
            out << "<text x=\"" << format_fixed(x + bar_w / 2.0, 1) << "\" y=\""
                << format_fixed(top + plot_h + 14.0, 1)
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                   "font-size=\"10\">"
                << value << "</text>\n";
        }
    }
    out << "<text x=\"" << format_fixed(left + plot_w / 2.0, 1) << "\" y=\""
        << format_fixed(height - 8.0, 1)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << "hashtags per paper</text>\n";
    out << "</svg>\n";
    return out.str();
}

namespace {

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                          "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
                          "#9c755f", "#bab0ac", "#86bcb6", "#d37295"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_network_svg(const CoocGraph& graph,
                               const std::vector<NodePlacement>& layout,
                               const std::vector<int>& clusters,
                               const RenderOptions& options) {
    if (layout.size() != graph.nodes.size() || clusters.size() != graph.nodes.size()) {
        throw error("render: layout or clusters do not cover all nodes");
    }
    if (graph.nodes.empty()) throw error("render: empty graph");
    for (int c : clusters) {
        if (c < 1) throw error("render: cluster labels must be >= 1");
    }

    double min_x = layout[0].x, max_x = layout[0].x;
    double min_y = layout[0].y, max_y = layout[0].y;
    for (const NodePlacement& p : layout) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    double span_x = max_x - min_x, span_y = max_y - min_y;
    double usable_w = options.width - 2.0 * options.margin;
    double usable_h = options.height - 2.0 * options.margin;
    double scale = 1.0;
    if (span_x > 0.0 || span_y > 0.0) {
        scale = std::min(span_x > 0.0 ? usable_w / span_x : usable_w,
                         span_y > 0.0 ? usable_h / span_y : usable_h);
    }
    auto to_px = [&](const NodePlacement& p) {
        // svg y grows downward; flip so larger y plots higher
        double x = options.margin + (p.x - min_x) * scale + (usable_w - span_x * scale) / 2.0;
        double y = options.margin + (max_y - p.y) * scale + (usable_h - span_y * scale) / 2.0;
        return std::pair<double, double>{x, y};
    };

    std::int64_t max_weight = 0, max_count = 0;
    for (const CoocNode& node : graph.nodes) max_weight = std::max(max_weight, node.display_weight);
    for (const CoocEdge& e : graph.edges) max_count = std::max(max_count, e.count);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << format_fixed(options.width, 0) << "\" height=\""
        << format_fixed(options.height, 0) << "\" viewBox=\"0 0 "
        << format_fixed(options.width, 0) << ' ' << format_fixed(options.height, 0)
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    out << "<g stroke=\"#9aa5b1\" stroke-opacity=\"0.55\">\n";
    for (const CoocEdge& e : graph.edges) {
        auto [x1, y1] = to_px(layout[e.i]);
        auto [x2, y2] = to_px(layout[e.j]);
        double stroke = max_count > 0 ? options.max_stroke * static_cast<double>(e.count) /
                                            static_cast<double>(max_count)
                                      : 1.0;
        out << "<line x1=\"" << format_fixed(x1, 2) << "\" y1=\"" << format_fixed(y1, 2)
            << "\" x2=\"" << format_fixed(x2, 2) << "\" y2=\"" << format_fixed(y2, 2)
            << "\" stroke-width=\"" << format_fixed(stroke, 3) << "\"/>\n";
    }
    out << "</g>\n";

    out << "<g stroke=\"#40454d\" stroke-width=\"0.5\">\n";
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        auto [x, y] = to_px(layout[i]);
        double radius;
        if (graph.nodes[i].display_weight <= 0) {
            radius = 1.0;  // keep isolated nodes visible
        } else {
            radius = max_weight > 0
                         ? options.max_radius *
                               std::sqrt(static_cast<double>(graph.nodes[i].display_weight) /
                                         static_cast<double>(max_weight))
                         : 1.0;
        }
        const char* fill = kPalette[static_cast<std::size_t>(clusters[i] - 1) % kPaletteSize];
        out << "<circle cx=\"" << format_fixed(x, 2) << "\" cy=\"" << format_fixed(y, 2)
            << "\" r=\"" << format_fixed(radius, 2) << "\" fill=\"" << fill << "\"/>\n";
    }
    out << "</g>\n";

    if (options.labels) {
        out << "<g font-family=\"sans-serif\" font-size=\"9\" text-anchor=\"middle\" "
               "fill=\"#24292e\">\n";
        for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
            auto [x, y] = to_px(layout[i]);
            out << "<text x=\"" << format_fixed(x, 2) << "\" y=\""
                << format_fixed(y - 4.0, 2) << "\">" << xml_escape(graph.nodes[i].label)
                << "</text>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace coword
