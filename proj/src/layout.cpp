#include "coword/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "coword/common.hpp"

namespace coword {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// coincident points have no direction; nudge deterministically
void separation(const NodePlacement& a, const NodePlacement& b, double& dx,
                double& dy, double& d) {
    dx = a.x - b.x;
    dy = a.y - b.y;
    d = std::sqrt(dx * dx + dy * dy);
    if (d < 1e-12) {
        dx = 1e-9;
        dy = 0.0;
        d = 1e-9;
    }
}

}  // namespace

void LayoutOptions::validate() const {
    if (!(scale > 0.0)) throw error("layout options: scale must be > 0");
    if (max_iterations < 1) throw error("layout options: max_iterations must be >= 1");
    if (!(tolerance > 0.0)) throw error("layout options: tolerance must be > 0");
}

std::vector<std::vector<double>> graph_distances(const CoocGraph& graph) {
    const std::size_t n = graph.nodes.size();
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    for (const CoocEdge& e : graph.edges) {
        if (e.similarity <= 0.0) continue;
        double len = 1.0 / e.similarity;
        adj[e.i].emplace_back(e.j, len);
        adj[e.j].emplace_back(e.i, len);
    }
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInf));
    for (std::size_t src = 0; src < n; ++src) {
        auto& row = dist[src];
        row[src] = 0.0;
        std::vector<bool> done(n, false);
        for (;;) {
            std::size_t u = n;
            double best = kInf;
            for (std::size_t v = 0; v < n; ++v) {
                if (!done[v] && row[v] < best) {
                    best = row[v];
                    u = v;
                }
            }
            if (u == n) break;
            done[u] = true;
            for (const auto& [v, len] : adj[u]) {
                if (row[u] + len < row[v]) row[v] = row[u] + len;
            }
        }
    }
    return dist;
}

std::vector<std::vector<std::size_t>> connected_components(const CoocGraph& graph) {
    const std::size_t n = graph.nodes.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const CoocEdge& e : graph.edges) {
        if (e.similarity <= 0.0) continue;
        adj[e.i].push_back(e.j);
        adj[e.j].push_back(e.i);
    }
    std::vector<std::vector<std::size_t>> components;
    std::vector<bool> seen(n, false);
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::vector<std::size_t> comp, queue{start};
        seen[start] = true;
        while (!queue.empty()) {
            std::size_t u = queue.back();
            queue.pop_back();
            comp.push_back(u);
            for (std::size_t v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    std::sort(components.begin(), components.end(),
              [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a.front() < b.front();
              });
    return components;
}

double layout_energy(const std::vector<std::vector<double>>& distances,
                     const std::vector<NodePlacement>& positions, double scale) {
    double energy = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        for (std::size_t j = i + 1; j < positions.size(); ++j) {
            double l = distances[i][j];
            if (!std::isfinite(l) || l <= 0.0) continue;
            double dx = positions[i].x - positions[j].x;
            double dy = positions[i].y - positions[j].y;
            double d = std::sqrt(dx * dx + dy * dy);
            double diff = d - scale * l;
            energy += 0.5 * diff * diff / (l * l);
        }
    }
    return energy;
}

std::array<double, 2> layout_gradient(const std::vector<std::vector<double>>& distances,
                                      const std::vector<NodePlacement>& positions,
                                      double scale, std::size_t node) {
    double gx = 0.0, gy = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (i == node) continue;
        double l = distances[node][i];
        if (!std::isfinite(l) || l <= 0.0) continue;
        double dx, dy, d;
        separation(positions[node], positions[i], dx, dy, d);
        double k = 1.0 / (l * l);
        double factor = k * (1.0 - scale * l / d);
        gx += factor * dx;
        gy += factor * dy;
    }
    return {gx, gy};
}

namespace {

// energy restricted to pairs touching `node` — the only terms a move of
// that node can change
double node_energy(const std::vector<std::vector<double>>& dist,
                   const std::vector<NodePlacement>& pos, double scale,
                   std::size_t node, const NodePlacement& at) {
    double energy = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (i == node) continue;
        double l = dist[node][i];
        if (!std::isfinite(l) || l <= 0.0) continue;
        double dx = at.x - pos[i].x;
        double dy = at.y - pos[i].y;
        double diff = std::sqrt(dx * dx + dy * dy) - scale * l;
        energy += 0.5 * diff * diff / (l * l);
    }
    return energy;
}

struct SolveResult {
    std::vector<NodePlacement> positions;
    double initial_energy = 0.0;
    std::size_t iterations = 0;
};

SolveResult solve_component(const std::vector<std::vector<double>>& dist,
                            const LayoutOptions& options, std::uint64_t seed) {
    const std::size_t n = dist.size();
    SolveResult result;
    result.positions.assign(n, {0.0, 0.0});
    if (n == 1) return result;

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    rng.shuffle(perm);
    for (std::size_t slot = 0; slot < n; ++slot) {
        double angle =
            2.0 * std::numbers::pi * static_cast<double>(slot) / static_cast<double>(n);
        result.positions[perm[slot]] = {std::cos(angle), std::sin(angle)};
    }
    result.initial_energy = layout_energy(dist, result.positions, options.scale);

    auto& pos = result.positions;
    const double L = options.scale;
    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        std::size_t m = n;
        double best_norm2 = -1.0;
        std::array<double, 2> gm{0.0, 0.0};
        for (std::size_t v = 0; v < n; ++v) {
            std::array<double, 2> g = layout_gradient(dist, pos, L, v);
            double norm2 = g[0] * g[0] + g[1] * g[1];
            if (norm2 > best_norm2) {
                best_norm2 = norm2;
                m = v;
                gm = g;
            }
        }
        if (std::sqrt(best_norm2) < options.tolerance) break;
        ++result.iterations;

        double a = 0.0, b = 0.0, c = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == m) continue;
            double l = dist[m][i];
            if (!std::isfinite(l) || l <= 0.0) continue;
            double dx, dy, d;
            separation(pos[m], pos[i], dx, dy, d);
            double k = 1.0 / (l * l);
            double d3 = d * d * d;
            a += k * (1.0 - L * l * dy * dy / d3);
            b += k * (L * l * dx * dy / d3);
            c += k * (1.0 - L * l * dx * dx / d3);
        }

        double before = node_energy(dist, pos, L, m, pos[m]);
        bool accepted = false;
        double det = a * c - b * b;
        if (std::abs(det) > 1e-15 * (std::abs(a * c) + b * b + 1e-30)) {
            NodePlacement trial{pos[m].x - (c * gm[0] - b * gm[1]) / det,
                                pos[m].y - (a * gm[1] - b * gm[0]) / det};
            if (node_energy(dist, pos, L, m, trial) < before) {
                pos[m] = trial;
                accepted = true;
            }
        }
        if (!accepted) {
            double t = 1.0;
            for (int halving = 0; halving <= 30; ++halving) {
                NodePlacement trial{pos[m].x - t * gm[0], pos[m].y - t * gm[1]};
                if (node_energy(dist, pos, L, m, trial) < before) {
                    pos[m] = trial;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
        }
        if (!accepted) break;  // no descent direction left at this precision
    }
    return result;
}

std::string describe_components(const CoocGraph& graph,
                                const std::vector<std::vector<std::size_t>>& comps) {
    std::string out;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (c) out += "; ";
        out += "[";
        for (std::size_t k = 0; k < comps[c].size(); ++k) {
            if (k) out += ", ";
            out += graph.nodes[comps[c][k]].label;
        }
        out += "]";
    }
    return out;
}

}  // namespace

Layout layout_kk(const CoocGraph& graph, const LayoutOptions& options) {
    options.validate();
    if (graph.nodes.empty()) throw error("layout: empty graph");

    auto comps = connected_components(graph);
    if (comps.size() > 1 && !options.per_component) {
        throw error("layout: graph is disconnected (" + std::to_string(comps.size()) +
                    " components: " + describe_components(graph, comps) +
                    "); enable per-component layout");
    }

    auto full_dist = graph_distances(graph);
    Layout layout;
    layout.positions.assign(graph.nodes.size(), {0.0, 0.0});

    struct Placed {
        std::vector<NodePlacement> positions;
        double min_x, max_x, min_y, max_y;
    };
    std::vector<Placed> placed;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto& comp = comps[c];
        std::vector<std::vector<double>> dist(comp.size(),
                                              std::vector<double>(comp.size()));
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (std::size_t j = 0; j < comp.size(); ++j) {
                dist[i][j] = full_dist[comp[i]][comp[j]];
            }
        }
        SolveResult solved = solve_component(
            dist, options, derive_seed(options.seed, "component-" + std::to_string(c)));
        layout.iterations += solved.iterations;
        layout.initial_energy += solved.initial_energy;
        Placed p;
        p.positions = std::move(solved.positions);
        p.min_x = p.min_y = kInf;
        p.max_x = p.max_y = -kInf;
        for (const auto& q : p.positions) {
            p.min_x = std::min(p.min_x, q.x);
            p.max_x = std::max(p.max_x, q.x);
            p.min_y = std::min(p.min_y, q.y);
            p.max_y = std::max(p.max_y, q.y);
        }
        placed.push_back(std::move(p));
    }

    if (comps.size() == 1) {
        for (std::size_t i = 0; i < comps[0].size(); ++i) {
            layout.positions[comps[0][i]] = placed[0].positions[i];
        }
    } else {
        // grid packing: components in size order, row-major, one cell each
        double cell_w = 0.0, cell_h = 0.0;
        for (const Placed& p : placed) {
            cell_w = std::max(cell_w, p.max_x - p.min_x);
            cell_h = std::max(cell_h, p.max_y - p.min_y);
        }
        double margin = 0.25 * std::max(cell_w, cell_h);
        if (margin <= 0.0) margin = 1.0;
        std::size_t cols = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(comps.size()))));
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const Placed& p = placed[c];
            std::size_t row = c / cols, col = c % cols;
            double cx = static_cast<double>(col) * (cell_w + margin) + cell_w / 2.0;
            double cy = -(static_cast<double>(row) * (cell_h + margin) + cell_h / 2.0);
            double shift_x = cx - 0.5 * (p.min_x + p.max_x);
            double shift_y = cy - 0.5 * (p.min_y + p.max_y);
            for (std::size_t i = 0; i < comps[c].size(); ++i) {
                layout.positions[comps[c][i]] = {p.positions[i].x + shift_x,
                                                 p.positions[i].y + shift_y};
            }
        }
    }

    layout.energy = layout_energy(full_dist, layout.positions, options.scale);
    return layout;
}

}  // namespace coword
