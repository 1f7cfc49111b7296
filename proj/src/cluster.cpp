#include "coword/cluster.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "coword/common.hpp"

namespace coword {

void ClusterParams::validate() const {
    if (resolution < 0.0 || !std::isfinite(resolution)) {
        throw error("cluster params: resolution must be >= 0");
    }
    if (min_cluster_size < 1) throw error("cluster params: min_cluster_size must be >= 1");
    if (random_starts < 1) throw error("cluster params: random_starts must be >= 1");
    if (iterations < 1) throw error("cluster params: iterations must be >= 1");
    if (threads < 1) throw error("cluster params: threads must be >= 1");
}

std::vector<std::vector<std::size_t>> ClusterAssignment::members() const {
    std::vector<std::vector<std::size_t>> out(cluster_count);
    for (std::size_t v = 0; v < labels.size(); ++v) {
        out[static_cast<std::size_t>(labels[v]) - 1].push_back(v);
    }
    return out;
}

double partition_quality(const CoocGraph& graph, const std::vector<int>& labels,
                         double resolution) {
    if (labels.size() != graph.nodes.size()) {
        throw error("partition_quality: label count does not match node count");
    }
    double intra = 0.0;
    for (const CoocEdge& e : graph.edges) {
        if (labels[e.i] == labels[e.j]) intra += e.similarity;
    }
    std::unordered_map<int, std::int64_t> sizes;
    for (int label : labels) ++sizes[label];
    std::int64_t same_pairs = 0;
    for (const auto& [label, m] : sizes) same_pairs += m * (m - 1) / 2;
    return intra - resolution * static_cast<double>(same_pairs);
}

namespace {

using Adjacency = std::vector<std::vector<std::pair<std::size_t, double>>>;

Adjacency similarity_adjacency(const CoocGraph& graph) {
    Adjacency adj(graph.nodes.size());
    for (const CoocEdge& e : graph.edges) {
        adj[e.i].emplace_back(e.j, e.similarity);
        adj[e.j].emplace_back(e.i, e.similarity);
    }
    return adj;
}

struct MoveState {
    std::vector<int> labels;
    std::vector<std::int64_t> sizes;
    std::set<int> free_ids;  // labels with no members, lowest first
};

// Up to params.iterations sweeps of single-node moves, fresh shuffle each
// sweep, early exit once a sweep moves nothing. Returns whether any node
// moved at all.
bool node_sweeps(const Adjacency& adj, const ClusterParams& params, Rng& rng,
                 std::vector<std::size_t>& order, MoveState& st) {
    const double gamma = params.resolution;
    std::vector<double> acc(adj.size(), 0.0);
    std::vector<int> touched;
    bool any = false;

    for (std::size_t sweep = 0; sweep < params.iterations; ++sweep) {
        rng.shuffle(order);
        std::size_t moved = 0;
        for (std::size_t v : order) {
            const int from = st.labels[v];
            touched.clear();
            for (const auto& [u, s] : adj[v]) {
                int c = st.labels[u];
                if (acc[c] == 0.0 &&
                    std::find(touched.begin(), touched.end(), c) == touched.end()) {
                    touched.push_back(c);
                }
                acc[c] += s;
            }
            std::sort(touched.begin(), touched.end());
            const double removal =
                acc[from] - gamma * static_cast<double>(st.sizes[from] - 1);

            double best_gain = 0.0;
            int best = from;
            for (int c : touched) {
                if (c == from) continue;
                double gain = acc[c] - gamma * static_cast<double>(st.sizes[c]) - removal;
                if (gain > best_gain) {
                    best_gain = gain;
                    best = c;
                }
            }
            if (st.sizes[from] > 1 && !st.free_ids.empty() && -removal > best_gain) {
                best_gain = -removal;
                best = *st.free_ids.begin();
            }

            if (best_gain > 0.0 && best != from) {
                if (--st.sizes[from] == 0) st.free_ids.insert(from);
                st.free_ids.erase(best);
                st.labels[v] = best;
                ++st.sizes[best];
                ++moved;
            }
            for (int c : touched) acc[c] = 0.0;
        }
        if (moved) any = true;
        else break;
    }
    return any;
}

// Greedily merge whole clusters while some pair has a positive merge gain
// S(A,B) - gamma*|A|*|B|. Best gain wins; ties go to the lowest label
// pair. Single-node moves alone stall on partitions where only a full
// merge pays off, which is exactly the gamma -> 0 regime.
bool merge_phase(const CoocGraph& graph, double gamma, MoveState& st) {
    bool any = false;
    for (;;) {
        std::map<std::pair<int, int>, double> between;
        for (const CoocEdge& e : graph.edges) {
            int a = st.labels[e.i], b = st.labels[e.j];
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            between[{a, b}] += e.similarity;
        }
        double best_gain = 0.0;
        std::pair<int, int> best{-1, -1};
        for (const auto& [pair, s] : between) {
            double gain = s - gamma * static_cast<double>(st.sizes[pair.first]) *
                                  static_cast<double>(st.sizes[pair.second]);
            if (gain > best_gain) {
                best_gain = gain;
                best = pair;
            }
        }
        if (best.first < 0) return any;
        for (int& l : st.labels) {
            if (l == best.second) l = best.first;
        }
        st.sizes[best.first] += st.sizes[best.second];
        st.sizes[best.second] = 0;
        st.free_ids.insert(best.second);
        any = true;
    }
}

// One seeded run: singleton init, then alternate node sweeps with whole-
// cluster merges until neither improves; every applied change strictly
// raises the objective, so this terminates. Labels come back as
// arbitrary ints in [0, n).
std::vector<int> local_moving(const CoocGraph& graph, const Adjacency& adj,
                              const ClusterParams& params, std::uint64_t start_seed) {
    const std::size_t n = adj.size();
    MoveState st;
    st.labels.resize(n);
    std::iota(st.labels.begin(), st.labels.end(), 0);
    st.sizes.assign(n, 1);

    Rng rng(start_seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    for (;;) {
        node_sweeps(adj, params, rng, order, st);
        if (!merge_phase(graph, params.resolution, st)) break;
    }
    return st.labels;
}

// Absorb clusters below min_size into the cluster they are most similar
// to, smallest cluster first (ties toward the lower label on both the
// choice of cluster and the merge target).
void merge_small_clusters(const CoocGraph& graph, std::vector<int>& labels,
                          std::size_t min_size) {
    for (;;) {
        std::map<int, std::int64_t> sizes;
        for (int label : labels) ++sizes[label];
        if (sizes.size() <= 1) return;

        int chosen = -1;
        std::int64_t chosen_size = 0;
        for (const auto& [label, size] : sizes) {  // map order: label ascending
            if (size >= static_cast<std::int64_t>(min_size)) continue;
            if (chosen == -1 || size < chosen_size) {
                chosen = label;
                chosen_size = size;
            }
        }
        if (chosen == -1) return;

        std::map<int, double> total;
        for (const auto& [label, size] : sizes) {
            if (label != chosen) total[label] = 0.0;
        }
        for (const CoocEdge& e : graph.edges) {
            int li = labels[e.i], lj = labels[e.j];
            if (li == chosen && lj != chosen) total[lj] += e.similarity;
            else if (lj == chosen && li != chosen) total[li] += e.similarity;
        }
        int target = -1;
        double best = -1.0;
        for (const auto& [label, sim] : total) {
            if (sim > best) {
                best = sim;
                target = label;
            }
        }
        for (int& label : labels) {
            if (label == chosen) label = target;
        }
    }
}

// Renumber to 1-based labels ordered by decreasing size, ties broken by
// the lexicographically smallest member set.
std::vector<int> canonicalize(const std::vector<int>& labels, std::size_t* count_out) {
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t v = 0; v < labels.size(); ++v) groups[labels[v]].push_back(v);
    std::vector<std::vector<std::size_t>> clusters;
    for (auto& [label, members] : groups) clusters.push_back(std::move(members));
    std::sort(clusters.begin(), clusters.end(),
              [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a < b;
              });
    std::vector<int> out(labels.size(), 0);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (std::size_t v : clusters[c]) out[v] = static_cast<int>(c + 1);
    }
    if (count_out) *count_out = clusters.size();
    return out;
}

}  // namespace

ClusterAssignment cluster(const CoocGraph& graph, const ClusterParams& params) {
    params.validate();
    if (graph.nodes.empty()) throw error("cluster: empty graph");

    const Adjacency adj = similarity_adjacency(graph);
    struct StartResult {
        std::vector<int> labels;
        std::size_t count = 0;
        double quality = 0.0;
    };
    std::vector<StartResult> results(params.random_starts);

    auto run_start = [&](std::size_t k) {
        std::uint64_t seed = derive_seed(params.seed, "start-" + std::to_string(k));
        std::vector<int> labels = local_moving(graph, adj, params, seed);
        if (params.merge_small && params.min_cluster_size > 1) {
            merge_small_clusters(graph, labels, params.min_cluster_size);
        }
        StartResult r;
        r.labels = canonicalize(labels, &r.count);
        r.quality = partition_quality(graph, r.labels, params.resolution);
        results[k] = std::move(r);
    };

    std::size_t workers = std::min(params.threads, params.random_starts);
    if (workers <= 1) {
        for (std::size_t k = 0; k < params.random_starts; ++k) run_start(k);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t k = cursor.fetch_add(1);
                    if (k >= params.random_starts) return;
                    run_start(k);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < params.random_starts; ++k) {
        if (results[k].quality > results[best].quality) best = k;
    }
    ClusterAssignment out;
    out.labels = std::move(results[best].labels);
    out.cluster_count = results[best].count;
    out.quality = results[best].quality;
    return out;
}

TuneResult tune_resolution(const CoocGraph& graph, std::size_t target_clusters,
                           const ClusterParams& params, double gamma_min,
                           double gamma_max, std::size_t max_probes) {
    if (target_clusters < 1) throw error("tune_resolution: target must be >= 1");
    if (!(gamma_min >= 0.0) || !(gamma_max >= gamma_min)) {
        throw error("tune_resolution: empty or invalid resolution range");
    }
    if (max_probes < 1) throw error("tune_resolution: max_probes must be >= 1");
    if (graph.nodes.empty()) throw error("tune_resolution: empty graph");

    struct Probe {
        double gamma;
        ClusterAssignment assignment;
    };
    std::vector<Probe> probes;
    auto evaluate = [&](double gamma) -> const Probe& {
        ClusterParams p = params;
        p.resolution = gamma;
        probes.push_back({gamma, cluster(graph, p)});
        return probes.back();
    };
    auto hit = [&](const Probe& p) { return p.assignment.cluster_count == target_clusters; };
    auto finish = [&](const Probe& p, std::string warning) {
        TuneResult r;
        r.resolution = p.gamma;
        r.assignment = p.assignment;
        r.warning = std::move(warning);
        return r;
    };

    std::string base_warning;
    if (target_clusters > graph.nodes.size()) {
        base_warning = "target cluster count " + std::to_string(target_clusters) +
                       " exceeds node count " + std::to_string(graph.nodes.size());
    }

    // coarse grid, then bisect inside the first bracketing interval
    std::size_t grid = std::min<std::size_t>(max_probes, 9);
    if (gamma_max == gamma_min) grid = 1;
    for (std::size_t k = 0; k < grid; ++k) {
        double gamma = grid == 1
                           ? gamma_min
                           : gamma_min + (gamma_max - gamma_min) *
                                             static_cast<double>(k) /
                                             static_cast<double>(grid - 1);
        const Probe& p = evaluate(gamma);
        if (hit(p)) return finish(p, base_warning);
    }

    std::size_t bracket = probes.size();
    for (std::size_t k = 0; k + 1 < grid; ++k) {
        if (probes[k].assignment.cluster_count < target_clusters &&
            probes[k + 1].assignment.cluster_count > target_clusters) {
            bracket = k;
            break;
        }
    }
    if (bracket < probes.size()) {
        double lo = probes[bracket].gamma;
        double hi = probes[bracket + 1].gamma;
        while (probes.size() < max_probes) {
            double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const Probe& p = evaluate(mid);
            if (hit(p)) return finish(p, base_warning);
            if (p.assignment.cluster_count < target_clusters) lo = mid;
            else hi = mid;
        }
    }

    std::size_t best = 0;
    auto distance = [&](const Probe& p) {
        auto c = static_cast<std::int64_t>(p.assignment.cluster_count);
        auto t = static_cast<std::int64_t>(target_clusters);
        return std::llabs(c - t);
    };
    for (std::size_t k = 1; k < probes.size(); ++k) {
        if (distance(probes[k]) < distance(probes[best]) ||
            (distance(probes[k]) == distance(probes[best]) &&
             probes[k].gamma < probes[best].gamma)) {
            best = k;
        }
    }
    std::string warning = base_warning;
    if (warning.empty()) {
        warning = "no resolution in [" + format_fixed(gamma_min, 4) + ", " +
                  format_fixed(gamma_max, 4) + "] produced " +
                  std::to_string(target_clusters) + " clusters; closest count was " +
                  std::to_string(probes[best].assignment.cluster_count);
    }
    return finish(probes[best], warning);
}

std::string cluster_tsv(const CoocGraph& graph, const ClusterAssignment& assignment) {
    if (assignment.labels.size() != graph.nodes.size()) {
        throw error("cluster export: assignment does not cover all nodes");
    }
    std::ostringstream out;
    out << "term\tcluster\n";
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        out << graph.nodes[i].label << '\t' << assignment.labels[i] << '\n';
    }
    return out.str();
}

std::vector<int> load_cluster_tsv(const CoocGraph& graph, const std::string& content) {
    std::map<std::string, int> by_term;
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 || trim(line).empty()) continue;
        std::vector<std::string> cols = split(line, '\t');
        if (cols.size() != 2) {
            throw error("cluster file line " + std::to_string(line_no) +
                        ": expected 'term<TAB>cluster'");
        }
        int label = 0;
        try {
            label = std::stoi(cols[1]);
        } catch (const std::exception&) {
            throw error("cluster file line " + std::to_string(line_no) +
                        ": bad cluster label");
        }
        if (label < 1) {
            throw error("cluster file line " + std::to_string(line_no) +
                        ": cluster labels are 1-based");
        }
        if (!by_term.emplace(cols[0], label).second) {
            throw error("cluster file line " + std::to_string(line_no) +
                        ": duplicate term " + cols[0]);
        }
    }
    std::vector<int> labels(graph.nodes.size(), 0);
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        auto it = by_term.find(graph.nodes[i].label);
        if (it == by_term.end()) {
            throw error("cluster file does not cover term " + graph.nodes[i].label);
        }
        labels[i] = it->second;
    }
    return labels;
}

}  // namespace coword
