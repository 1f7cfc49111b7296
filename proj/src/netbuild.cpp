#include "coword/netbuild.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "coword/common.hpp"

namespace coword {

std::int64_t CoocCounts::at(std::size_t i, std::size_t j) const {
    if (i == j) return diagonal[i];
    if (i > j) std::swap(i, j);
    auto it = pairs.find({i, j});
    return it == pairs.end() ? 0 : it->second;
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> CoocGraph::adjacency()
    const {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nodes.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].i].emplace_back(edges[e].j, e);
        adj[edges[e].j].emplace_back(edges[e].i, e);
    }
    return adj;
}

DocTermMatrix build_matrix(const std::vector<std::vector<std::string>>& documents,
                           const std::vector<std::string>& term_set) {
    if (term_set.empty()) throw error("build_matrix: empty term set");
    DocTermMatrix matrix;
    matrix.terms = term_set;
    matrix.column_sums.assign(term_set.size(), 0);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < term_set.size(); ++i) {
        if (!index.emplace(term_set[i], i).second) {
            throw error("build_matrix: duplicate term in set: " + term_set[i]);
        }
    }
    for (const auto& doc : documents) {
        std::vector<std::size_t> row;
        std::unordered_set<std::size_t> seen;
        for (const std::string& term : doc) {
            auto it = index.find(term);
            if (it == index.end()) continue;
            if (seen.insert(it->second).second) row.push_back(it->second);
        }
        if (row.empty()) continue;  // no selected terms, document dropped
        std::sort(row.begin(), row.end());
        for (std::size_t t : row) ++matrix.column_sums[t];
        matrix.rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < matrix.column_sums.size(); ++i) {
        if (matrix.column_sums[i] == 0) {
            throw error("build_matrix: term absent from corpus: " + term_set[i]);
        }
    }
    return matrix;
}

CoocCounts cooccurrence(const DocTermMatrix& matrix) {
    CoocCounts counts;
    counts.n = matrix.n_terms();
    counts.diagonal = matrix.column_sums;
    for (const auto& row : matrix.rows) {
        for (std::size_t a = 0; a < row.size(); ++a) {
            for (std::size_t b = a + 1; b < row.size(); ++b) {
                ++counts.pairs[{row[a], row[b]}];
            }
        }
    }
    return counts;
}

std::vector<std::vector<double>> cosine_normalize(
    const CoocCounts& counts, const std::vector<std::int64_t>& frequencies) {
    if (frequencies.size() != counts.n) {
        throw error("cosine_normalize: frequency table size mismatch");
    }
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        if (frequencies[i] <= 0) {
            throw error("cosine_normalize: zero frequency at term index " +
                        std::to_string(i));
        }
    }
    std::vector<std::vector<double>> sim(counts.n, std::vector<double>(counts.n, 0.0));
    for (const auto& [pair, c] : counts.pairs) {
        double s = static_cast<double>(c) /
                   std::sqrt(static_cast<double>(frequencies[pair.first]) *
                             static_cast<double>(frequencies[pair.second]));
        sim[pair.first][pair.second] = s;
        sim[pair.second][pair.first] = s;
    }
    return sim;
}

CoocGraph to_graph(const std::vector<std::vector<double>>& similarities,
                   const CoocCounts& counts,
                   const std::vector<std::int64_t>& frequencies,
                   const std::vector<std::string>& labels,
                   std::optional<double> min_edge_weight) {
    if (labels.size() != counts.n || frequencies.size() != counts.n) {
        throw error("to_graph: inconsistent tables");
    }
    CoocGraph graph;
    graph.nodes.resize(counts.n);
    for (std::size_t i = 0; i < counts.n; ++i) {
        graph.nodes[i].label = labels[i];
        graph.nodes[i].frequency = frequencies[i];
    }
    for (const auto& [pair, c] : counts.pairs) {
        auto [i, j] = pair;
        graph.nodes[i].display_weight += c;
        graph.nodes[j].display_weight += c;
        double s = similarities[i][j];
        if (min_edge_weight && s < *min_edge_weight) continue;
        graph.edges.push_back({i, j, c, s});
    }
    std::sort(graph.edges.begin(), graph.edges.end(),
              [](const CoocEdge& a, const CoocEdge& b) {
                  return std::tie(a.i, a.j) < std::tie(b.i, b.j);
              });
    return graph;
}

CoocGraph build_graph(const std::vector<std::vector<std::string>>& documents,
                      const std::vector<std::string>& term_set,
                      std::optional<double> min_edge_weight) {
    DocTermMatrix matrix = build_matrix(documents, term_set);
    CoocCounts counts = cooccurrence(matrix);
    auto sim = cosine_normalize(counts, matrix.column_sums);
    return to_graph(sim, counts, matrix.column_sums, matrix.terms, min_edge_weight);
}

namespace {

std::string quote_label(const std::string& label) {
    std::string out = "\"";
    for (char c : label) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string write_pajek(const CoocGraph& graph) {
    std::ostringstream out;
    out << "*Vertices " << graph.nodes.size() << "\n";
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        out << (i + 1) << ' ' << quote_label(graph.nodes[i].label) << "\n";
    }
    out << "*Edges\n";
    for (const CoocEdge& e : graph.edges) {
        out << (e.i + 1) << ' ' << (e.j + 1) << ' ' << format_fixed(e.similarity, 4)
            << "\n";
    }
    return out.str();
}

void write_pajek_file(const CoocGraph& graph, const std::string& path) {
    write_file_atomic(path, write_pajek(graph));
}

namespace {

[[noreturn]] void pajek_fail(std::size_t line_no, const std::string& what) {
    throw error("pajek parse error at line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

CoocGraph read_pajek(const std::string& content) {
    CoocGraph graph;
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!trim(line).empty()) return true;
        }
        return false;
    };

    if (!next_line()) throw error("pajek parse error: empty file");
    std::size_t n = 0;
    {
        std::istringstream header(line);
        std::string tag;
        header >> tag;
        std::string lowered;
        for (char c : tag) lowered += static_cast<char>(std::tolower(c));
        if (lowered != "*vertices" || !(header >> n)) {
            pajek_fail(line_no, "expected '*Vertices N'");
        }
    }
    graph.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!next_line()) pajek_fail(line_no, "missing vertex line");
        std::istringstream vs(line);
        std::size_t id = 0;
        if (!(vs >> id) || id != i + 1) pajek_fail(line_no, "vertex ids must be 1..N in order");
        std::string rest;
        std::getline(vs, rest);
        rest = trim(rest);
        if (rest.size() < 2 || rest.front() != '"') {
            pajek_fail(line_no, "vertex label must be double-quoted");
        }
        std::string label;
        std::size_t p = 1;
        bool closed = false;
        while (p < rest.size()) {
            if (rest[p] == '"') {
                if (p + 1 < rest.size() && rest[p + 1] == '"') {
                    label += '"';
                    p += 2;
                    continue;
                }
                closed = true;
                ++p;
                break;
            }
            label += rest[p++];
        }
        if (!closed || trim(rest.substr(p)).size() > 0) {
            pajek_fail(line_no, "malformed vertex label");
        }
        graph.nodes[i].label = label;
    }
    if (!next_line()) pajek_fail(line_no, "missing *Edges section");
    {
        std::string lowered;
        for (char c : trim(line)) lowered += static_cast<char>(std::tolower(c));
        if (lowered != "*edges") pajek_fail(line_no, "expected '*Edges'");
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    while (next_line()) {
        std::istringstream es(line);
        std::size_t i = 0, j = 0;
        double w = 0.0;
        if (!(es >> i >> j >> w)) pajek_fail(line_no, "edge line must be 'i j weight'");
        std::string extra;
        if (es >> extra) pajek_fail(line_no, "trailing tokens on edge line");
        if (i < 1 || i > n || j < 1 || j > n) {
            pajek_fail(line_no, "edge endpoint out of range (ids are 1-based)");
        }
        if (i == j) pajek_fail(line_no, "self-loops are not allowed");
        std::size_t a = std::min(i, j) - 1, b = std::max(i, j) - 1;
        if (!seen.insert({a, b}).second) pajek_fail(line_no, "duplicate edge");
        graph.edges.push_back({a, b, 0, w});
    }
    std::sort(graph.edges.begin(), graph.edges.end(),
              [](const CoocEdge& a, const CoocEdge& b) {
                  return std::tie(a.i, a.j) < std::tie(b.i, b.j);
              });
    return graph;
}

CoocGraph read_pajek_file(const std::string& path) {
    try {
        return read_pajek(read_file(path));
    } catch (const error& e) {
        throw error(path + ": " + e.what());
    }
}

std::string write_counts_tsv(const CoocGraph& graph) {
    std::ostringstream out;
    out << "i\tj\tcount\n";
    for (const CoocEdge& e : graph.edges) {
        out << (e.i + 1) << '\t' << (e.j + 1) << '\t' << e.count << '\n';
    }
    return out.str();
}

void apply_counts_tsv(CoocGraph& graph, const std::string& content) {
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> counts;
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || trim(line).empty()) continue;  // header
        std::istringstream ls(line);
        std::size_t i = 0, j = 0;
        std::int64_t c = 0;
        if (!(ls >> i >> j >> c) || i < 1 || j < 1) {
            throw error("counts parse error at line " + std::to_string(line_no));
        }
        counts[{std::min(i, j) - 1, std::max(i, j) - 1}] = c;
    }
    for (CoocNode& node : graph.nodes) node.display_weight = 0;
    for (CoocEdge& e : graph.edges) {
        auto it = counts.find({e.i, e.j});
        e.count = it == counts.end() ? 0 : it->second;
    }
    // display weight sums all co-occurrences, including edges that may
    // have been filtered out of the drawn graph
    for (const auto& [pair, c] : counts) {
        if (pair.first < graph.nodes.size()) graph.nodes[pair.first].display_weight += c;
        if (pair.second < graph.nodes.size()) graph.nodes[pair.second].display_weight += c;
    }
}

void apply_counts_file(CoocGraph& graph, const std::string& path) {
    apply_counts_tsv(graph, read_file(path));
}

std::string write_map_file(const CoocGraph& graph,
                           const std::vector<NodePlacement>& layout,
                           const std::vector<int>& clusters) {
    if (layout.size() != graph.nodes.size() || clusters.size() != graph.nodes.size()) {
        throw error("map file: layout or clusters do not cover all nodes");
    }
    std::ostringstream out;
    out << "id\tlabel\tx\ty\tcluster\tweight\n";
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        if (clusters[i] < 1) throw error("map file: missing cluster for node " +
                                         graph.nodes[i].label);
        out << (i + 1) << '\t' << graph.nodes[i].label << '\t'
            << format_fixed(layout[i].x, 6) << '\t' << format_fixed(layout[i].y, 6)
            << '\t' << clusters[i] << '\t' << graph.nodes[i].display_weight << '\n';
    }
    return out.str();
}

void write_map_file_to(const CoocGraph& graph, const std::vector<NodePlacement>& layout,
                       const std::vector<int>& clusters, const std::string& path) {
    write_file_atomic(path, write_map_file(graph, layout, clusters));
}

std::vector<MapRow> read_map_file(const std::string& path) {
    std::vector<MapRow> rows;
    std::vector<std::string> lines = read_lines(path);
    for (std::size_t i = 1; i < lines.size(); ++i) {  // skip header
        if (trim(lines[i]).empty()) continue;
        std::vector<std::string> cols = split(lines[i], '\t');
        if (cols.size() != 6) {
            throw error(path + ":" + std::to_string(i + 1) + ": map row needs 6 columns");
        }
        MapRow row;
        row.id = std::stoi(cols[0]);
        row.label = cols[1];
        row.x = std::stod(cols[2]);
        row.y = std::stod(cols[3]);
        row.cluster = std::stoi(cols[4]);
        row.weight = std::stod(cols[5]);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace coword
