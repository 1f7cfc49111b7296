#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "coword/netbuild.hpp"

namespace coword {

// Kamada-Kawai layout over graph-theoretic distances with edge length
// 1/similarity (stronger ties sit closer together).
struct LayoutOptions {
    double scale = 1.0;  // L in the energy model
    std::size_t max_iterations = 20000;
    double tolerance = 1e-6;  // stop when max gradient norm drops below
    std::uint64_t seed = 0;
    bool per_component = false;

    void validate() const;
};

struct Layout {
    std::vector<NodePlacement> positions;
    double energy = 0.0;
    double initial_energy = 0.0;  // of the seeded circle placement
    std::size_t iterations = 0;
};

// All-pairs shortest paths with edge length 1/s; unreachable -> +inf.
std::vector<std::vector<double>> graph_distances(const CoocGraph& graph);

// Components over edges with positive similarity, each sorted ascending;
// ordered by size descending, ties toward the smaller first node.
std::vector<std::vector<std::size_t>> connected_components(const CoocGraph& graph);

// E = sum over finite-distance pairs of (1/2) k_ij (d_ij - L*l_ij)^2
// with k_ij = 1/l_ij^2.
double layout_energy(const std::vector<std::vector<double>>& distances,
                     const std::vector<NodePlacement>& positions, double scale);

std::array<double, 2> layout_gradient(const std::vector<std::vector<double>>& distances,
                                      const std::vector<NodePlacement>& positions,
                                      double scale, std::size_t node);

Layout layout_kk(const CoocGraph& graph, const LayoutOptions& options);

}  // namespace coword
