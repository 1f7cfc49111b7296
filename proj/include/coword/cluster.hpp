#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "coword/netbuild.hpp"

namespace coword {

// Resolution-parameterized clustering of a co-occurrence graph. The
// objective maximized is Q(partition) = sum over same-cluster pairs of
// (s_ij - resolution); pairs without an edge contribute -resolution.
struct ClusterParams {
    double resolution = 1.0;
    std::size_t min_cluster_size = 1;
    std::size_t random_starts = 10;
    std::size_t iterations = 10;
    std::uint64_t seed = 0;
    bool merge_small = true;
    // execution knob only: results are identical for any thread count
    std::size_t threads = 1;

    void validate() const;
};

struct ClusterAssignment {
    // one label per node, 1-based and consecutive; cluster 1 is the
    // largest (ties broken by lexicographically smallest member set)
    std::vector<int> labels;
    std::size_t cluster_count = 0;
    double quality = 0.0;

    // member node indices per cluster, labels[0]-first ordering
    std::vector<std::vector<std::size_t>> members() const;
};

// Canonical quality evaluation: iterates edges in stored order, so two
// partitions equal up to relabeling produce bitwise-identical values.
double partition_quality(const CoocGraph& graph, const std::vector<int>& labels,
                         double resolution);

ClusterAssignment cluster(const CoocGraph& graph, const ClusterParams& params);

struct TuneResult {
    double resolution = 0.0;
    ClusterAssignment assignment;
    std::string warning;  // empty when the target count was reached
};

// Grid-plus-bisection search for a resolution whose cluster count hits
// target_clusters; on miss returns the probe minimizing |count - target|
// (ties -> smaller resolution). params.resolution is ignored.
TuneResult tune_resolution(const CoocGraph& graph, std::size_t target_clusters,
                           const ClusterParams& params, double gamma_min,
                           double gamma_max, std::size_t max_probes = 32);

std::string cluster_tsv(const CoocGraph& graph, const ClusterAssignment& assignment);
std::vector<int> load_cluster_tsv(const CoocGraph& graph, const std::string& content);

}  // namespace coword
