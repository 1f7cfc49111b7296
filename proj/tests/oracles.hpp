#pragma once

#include <algorithm>
#include <vector>

#include "coword/cluster.hpp"
#include "coword/netbuild.hpp"

namespace coword::testutil {

// Exhaustive search over all set partitions (restricted growth string
// enumeration), scored with the same partition_quality the solver uses so
// an optimal heuristic result matches bitwise. Feasible to ~12 nodes.
inline double exhaustive_best_quality(const CoocGraph& graph, double resolution,
                                      std::vector<int>* best_labels = nullptr) {
    const std::size_t n = graph.nodes.size();
    std::vector<int> rgs(n, 0);
    std::vector<int> best = rgs;
    double best_q = partition_quality(graph, rgs, resolution);

    auto advance = [&]() -> bool {
        for (std::size_t i = n; i-- > 1;) {
            int cap = 0;
            for (std::size_t k = 0; k < i; ++k) cap = std::max(cap, rgs[k]);
            if (rgs[i] <= cap) {  // can grow without a gap in the numbering
                ++rgs[i];
                std::fill(rgs.begin() + static_cast<std::ptrdiff_t>(i) + 1, rgs.end(),
                          0);
                return true;
            }
        }
        return false;
    };

    while (advance()) {
        double q = partition_quality(graph, rgs, resolution);
        if (q > best_q) {
            best_q = q;
            best = rgs;
        }
    }
    if (best_labels) *best_labels = best;
    return best_q;
}

}  // namespace coword::testutil
