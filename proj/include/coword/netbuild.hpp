#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coword {

// Binary word/document matrix restricted to a selected term set.
// Rows are stored sparsely as sorted term indices.
struct DocTermMatrix {
    std::vector<std::string> terms;              // column order = term set order
    std::vector<std::vector<std::size_t>> rows;  // sorted term indices per document
    std::vector<std::int64_t> column_sums;       // = term frequency in the corpus

    std::size_t n_docs() const { return rows.size(); }
    std::size_t n_terms() const { return terms.size(); }
};

// Symmetric co-occurrence counts; diagonal holds term frequencies.
struct CoocCounts {
    std::size_t n = 0;
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> pairs;  // i<j only
    std::vector<std::int64_t> diagonal;

    std::int64_t at(std::size_t i, std::size_t j) const;
};

struct CoocEdge {
    std::size_t i = 0;  // node indices, i < j
    std::size_t j = 0;
    std::int64_t count = 0;
    double similarity = 0.0;
};

struct CoocNode {
    std::string label;
    std::int64_t frequency = 0;       // occurrence count f_t (0 when unknown)
    std::int64_t display_weight = 0;  // total co-occurrence with all terms
};

struct CoocGraph {
    std::vector<CoocNode> nodes;
    std::vector<CoocEdge> edges;  // sorted by (i, j)

    std::size_t node_count() const { return nodes.size(); }
    // adjacency as (neighbor, edge index) lists
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency() const;
};

// Documents with none of the selected terms are dropped. A selected term
// absent from the corpus is an error naming the term.
DocTermMatrix build_matrix(const std::vector<std::vector<std::string>>& documents,
                           const std::vector<std::string>& term_set);

CoocCounts cooccurrence(const DocTermMatrix& matrix);

// s_ij = c_ij / sqrt(f_i * f_j), the cosine of binary occurrence columns
std::vector<std::vector<double>> cosine_normalize(
    const CoocCounts& counts, const std::vector<std::int64_t>& frequencies);

CoocGraph to_graph(const std::vector<std::vector<double>>& similarities,
                   const CoocCounts& counts,
                   const std::vector<std::int64_t>& frequencies,
                   const std::vector<std::string>& labels,
                   std::optional<double> min_edge_weight = std::nullopt);

CoocGraph build_graph(const std::vector<std::vector<std::string>>& documents,
                      const std::vector<std::string>& term_set,
                      std::optional<double> min_edge_weight = std::nullopt);

// Pajek network: *Vertices with 1-based quoted labels, then *Edges with
// similarity weights at 4 decimals; UTF-8, LF line endings.
std::string write_pajek(const CoocGraph& graph);
void write_pajek_file(const CoocGraph& graph, const std::string& path);
CoocGraph read_pajek(const std::string& content);
CoocGraph read_pajek_file(const std::string& path);

// edge count sidecar: i<TAB>j<TAB>count with Pajek vertex ids
std::string write_counts_tsv(const CoocGraph& graph);
void apply_counts_tsv(CoocGraph& graph, const std::string& content);
void apply_counts_file(CoocGraph& graph, const std::string& path);

struct NodePlacement {
    double x = 0.0;
    double y = 0.0;
};

// map file: id, label, x, y, cluster, weight (TSV with header)
std::string write_map_file(const CoocGraph& graph,
                           const std::vector<NodePlacement>& layout,
                           const std::vector<int>& clusters);
void write_map_file_to(const CoocGraph& graph, const std::vector<NodePlacement>& layout,
                       const std::vector<int>& clusters, const std::string& path);

struct MapRow {
    int id = 0;
    std::string label;
    double x = 0.0;
    double y = 0.0;
    int cluster = 0;
    double weight = 0.0;
};
std::vector<MapRow> read_map_file(const std::string& path);

}  // namespace coword
