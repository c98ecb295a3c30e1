#pragma once

// Shared generators and brute-force oracles for the test suites. Everything
// here is deliberately independent of the library code paths it checks:
// oracles build their own dense matrices / run their own searches.

#include <cmath>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "dgc/graph.hpp"
#include "dgc/rng.hpp"

namespace dgc_test {

struct EdgeTriple {
    dgc::NodeId u, v;
    double w;
};

// Erdos-Renyi with uniform random weights in [wmin, wmax].
inline std::vector<EdgeTriple> er_edges(dgc::NodeId n, double avg_degree, double wmin,
                                        double wmax, std::uint64_t seed) {
    dgc::Rng rng(seed);
    const double p = avg_degree / static_cast<double>(n - 1);
    std::vector<EdgeTriple> edges;
    for (dgc::NodeId u = 0; u < n; ++u) {
        for (dgc::NodeId v = u + 1; v < n; ++v) {
            if (rng.next_double() < p) {
                edges.push_back({u, v, wmin + (wmax - wmin) * rng.next_double()});
            }
        }
    }
    return edges;
}

// Union k-nearest-neighbour graph over random 2-d points with a Gaussian
// kernel; mirrors the similarity-graph construction at small scale.
inline std::vector<EdgeTriple> knn_edges(dgc::NodeId n, int K, std::uint64_t seed) {
    dgc::Rng rng(seed);
    std::vector<std::pair<double, double>> pts(n);
    for (auto& p : pts) p = {rng.next_double(), rng.next_double()};
    auto d2 = [&](dgc::NodeId a, dgc::NodeId b) {
        const double dx = pts[a].first - pts[b].first;
        const double dy = pts[a].second - pts[b].second;
        return dx * dx + dy * dy;
    };
    std::set<std::pair<dgc::NodeId, dgc::NodeId>> pairs;
    for (dgc::NodeId u = 0; u < n; ++u) {
        std::vector<std::pair<double, dgc::NodeId>> order;
        for (dgc::NodeId v = 0; v < n; ++v) {
            if (v != u) order.push_back({d2(u, v), v});
        }
        std::sort(order.begin(), order.end());
        for (int i = 0; i < K && i < static_cast<int>(order.size()); ++i) {
            const dgc::NodeId v = order[i].second;
            pairs.insert({std::min(u, v), std::max(u, v)});
        }
    }
    std::vector<EdgeTriple> edges;
    for (auto [u, v] : pairs) edges.push_back({u, v, std::exp(-d2(u, v) * 8.0)});
    return edges;
}

inline dgc::Graph make_graph(dgc::NodeId n, const std::vector<EdgeTriple>& edges) {
    dgc::Graph g(n);
    for (const auto& e : edges) g.add_edge(e.u, e.v, e.w);
    return g;
}

// Dense Laplacian built directly from the edge triples (bypasses Graph).
inline Eigen::MatrixXd dense_laplacian_oracle(dgc::NodeId n, const std::vector<EdgeTriple>& edges) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : edges) {
        L(e.u, e.u) += e.w;
        L(e.v, e.v) += e.w;
        L(e.u, e.v) -= e.w;
        L(e.v, e.u) -= e.w;
    }
    return L;
}

// Complete graph with unit weights.
inline dgc::Graph complete_graph(dgc::NodeId n, double w = 1.0) {
    dgc::Graph g(n);
    for (dgc::NodeId u = 0; u < n; ++u) {
        for (dgc::NodeId v = u + 1; v < n; ++v) g.add_edge(u, v, w);
    }
    return g;
}

// All-pairs shortest paths by n runs of Dijkstra over an explicit adjacency
// list; oracle for the spanner stretch checks.
inline std::vector<std::vector<double>> all_pairs_dijkstra(dgc::NodeId n,
                                                           const std::vector<EdgeTriple>& edges) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<std::pair<dgc::NodeId, double>>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].push_back({e.v, e.w});
        adj[e.v].push_back({e.u, e.w});
    }
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInf));
    for (dgc::NodeId src = 0; src < n; ++src) {
        auto& d = dist[src];
        d[src] = 0.0;
        using Item = std::pair<double, dgc::NodeId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        pq.push({0.0, src});
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (du > d[u]) continue;
            for (auto [v, w] : adj[u]) {
                if (du + w < d[v]) {
                    d[v] = du + w;
                    pq.push({d[v], v});
                }
            }
        }
    }
    return dist;
}

}  // namespace dgc_test
