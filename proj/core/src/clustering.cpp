#include "dgc/clustering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "dgc/rng.hpp"

namespace dgc {

namespace {

constexpr int kKMeansMaxIters = 100;
constexpr double kKMeansTol = 1e-8;

// k-means with k-means++ seeding. Rows of X are points. Ties in the
// assignment step go to the lowest cluster index; empty clusters keep their
// previous centroid. Deterministic given seed.
std::vector<std::int32_t> kmeans(const Eigen::MatrixXd& X, int k, std::uint64_t seed) {
    const Eigen::Index n = X.rows();
    Rng rng(seed);

    Eigen::MatrixXd centroids(k, X.cols());
    centroids.row(0) = X.row(static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n))));
    Eigen::VectorXd d2 = (X.rowwise() - centroids.row(0)).rowwise().squaredNorm();
    for (int j = 1; j < k; ++j) {
        const double total = d2.sum();
        Eigen::Index pick;
        if (total > 0.0) {
            double target = rng.next_double() * total;
            pick = n - 1;
            double acc = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n)));
        }
        centroids.row(j) = X.row(pick);
        d2 = d2.cwiseMin((X.rowwise() - centroids.row(j)).rowwise().squaredNorm());
    }

    std::vector<std::int32_t> labels(static_cast<std::size_t>(n), 0);
    for (int iter = 0; iter < kKMeansMaxIters; ++iter) {
        for (Eigen::Index i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::int32_t arg = 0;
            for (int j = 0; j < k; ++j) {
                const double d = (X.row(i) - centroids.row(j)).squaredNorm();
                if (d < best) {
                    best = d;
                    arg = j;
                }
            }
            labels[static_cast<std::size_t>(i)] = arg;
        }
        Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, X.cols());
        std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            next.row(labels[static_cast<std::size_t>(i)]) += X.row(i);
            ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
        }
        double moved = 0.0;
        for (int j = 0; j < k; ++j) {
            if (counts[static_cast<std::size_t>(j)] > 0) {
                next.row(j) /= static_cast<double>(counts[static_cast<std::size_t>(j)]);
            } else {
                next.row(j) = centroids.row(j);
            }
            moved = std::max(moved, (next.row(j) - centroids.row(j)).norm());
        }
        centroids = next;
        if (moved < kKMeansTol) break;
    }
    // Final assignment against the converged centroids.
    for (Eigen::Index i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::int32_t arg = 0;
        for (int j = 0; j < k; ++j) {
            const double d = (X.row(i) - centroids.row(j)).squaredNorm();
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        labels[static_cast<std::size_t>(i)] = arg;
    }
    return labels;
}

struct CutVolumes {
    std::vector<double> cut;
    std::vector<double> vol;
};

CutVolumes accumulate_cut_volumes(const Graph& g, const Partition& p) {
    CutVolumes cv;
    cv.cut.assign(static_cast<std::size_t>(p.k), 0.0);
    cv.vol.assign(static_cast<std::size_t>(p.k), 0.0);
    for (const auto& e : g.edges()) {
        const auto lu = static_cast<std::size_t>(p.labels[e.u]);
        const auto lv = static_cast<std::size_t>(p.labels[e.v]);
        if (lu == lv) {
            cv.vol[lu] += 2.0 * e.w;
        } else {
            cv.vol[lu] += e.w;
            cv.vol[lv] += e.w;
            cv.cut[lu] += e.w;
            cv.cut[lv] += e.w;
        }
    }
    return cv;
}

}  // namespace

void Partition::validate(NodeId n) const {
    if (labels.size() != n) {
        throw std::invalid_argument("Partition: " + std::to_string(labels.size()) +
                                    " labels for " + std::to_string(n) + " nodes");
    }
    if (k <= 0) throw std::invalid_argument("Partition: k must be positive");
    for (auto l : labels) {
        if (l < 0 || l >= k) {
            throw std::invalid_argument("Partition: label " + std::to_string(l) +
                                        " outside [0, " + std::to_string(k) + ")");
        }
    }
}

Partition spectral_cluster(const Graph& g, int k, std::uint64_t seed) {
    if (k <= 0) throw std::invalid_argument("spectral_cluster: k must be positive");
    const auto basis = g.normalized_laplacian_basis(static_cast<std::size_t>(k));
    // normalized_laplacian_basis throws when k exceeds the active count.

    Eigen::MatrixXd U = basis.vectors;
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
        const double norm = U.row(i).norm();
        if (norm > 0.0) U.row(i) /= norm;
    }
    const auto labels_active = kmeans(U, k, seed);

    Partition p;
    p.k = k;
    p.labels.assign(g.node_count(), 0);  // isolated nodes land in cluster 0
    for (std::size_t i = 0; i < basis.active.size(); ++i) {
        p.labels[basis.active[i]] = labels_active[i];
    }
    return p;
}

NcutResult ncut(const Graph& g, const Partition& p) {
    p.validate(g.node_count());
    const auto cv = accumulate_cut_volumes(g, p);
    NcutResult r;
    for (int j = 0; j < p.k; ++j) {
        if (cv.vol[static_cast<std::size_t>(j)] > 0.0) {
            r.value += cv.cut[static_cast<std::size_t>(j)] / cv.vol[static_cast<std::size_t>(j)];
            r.defined = true;
        } else {
            ++r.zero_volume_clusters;
        }
    }
    if (!r.defined) r.value = std::numeric_limits<double>::quiet_NaN();
    return r;
}

double sym_diff_vol(const Graph& g, std::span<const NodeId> a, std::span<const NodeId> b) {
    std::vector<char> in_a(g.node_count(), 0);
    std::vector<char> in_b(g.node_count(), 0);
    for (NodeId v : a) {
        if (v >= g.node_count()) throw std::out_of_range("sym_diff_vol: node out of range");
        in_a[v] = 1;
    }
    for (NodeId v : b) {
        if (v >= g.node_count()) throw std::out_of_range("sym_diff_vol: node out of range");
        in_b[v] = 1;
    }
    std::vector<NodeId> delta;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (in_a[v] != in_b[v]) delta.push_back(v);
    }
    return g.volume(delta);
}

ClusterQuality partition_quality(const Graph& g, const Partition& p) {
    p.validate(g.node_count());
    const auto cv = accumulate_cut_volumes(g, p);
    ClusterQuality q;
    q.cluster_conductance.assign(static_cast<std::size_t>(p.k),
                                 std::numeric_limits<double>::quiet_NaN());
    for (int j = 0; j < p.k; ++j) {
        const auto js = static_cast<std::size_t>(j);
        if (cv.vol[js] > 0.0) {
            q.cluster_conductance[js] = cv.cut[js] / cv.vol[js];
            q.ncut += q.cluster_conductance[js];
            q.max_conductance = std::max(q.max_conductance, q.cluster_conductance[js]);
        } else {
            q.has_zero_volume_cluster = true;
        }
    }
    q.lambda_k1 =
        g.normalized_laplacian_eigenvalues(static_cast<std::size_t>(p.k) + 1).back();
    q.upsilon = q.max_conductance > 0.0 ? q.lambda_k1 / q.max_conductance
                                        : std::numeric_limits<double>::infinity();
    return q;
}

double match_partitions(const Partition& a, const Partition& b, const Graph& g) {
    a.validate(g.node_count());
    b.validate(g.node_count());
    if (a.k != b.k) {
        throw std::invalid_argument("match_partitions: partitions have different k");
    }
    const int k = a.k;
    const auto deg = g.degrees();
    const double vol_total = 2.0 * g.total_weight();
    if (vol_total <= 0.0) return 0.0;

    // vol(A_i delta B_j) = vol(A_i) + vol(B_j) - 2 vol(A_i intersect B_j).
    std::vector<double> vol_a(static_cast<std::size_t>(k), 0.0);
    std::vector<double> vol_b(static_cast<std::size_t>(k), 0.0);
    std::vector<std::vector<double>> vol_ab(static_cast<std::size_t>(k),
                                            std::vector<double>(static_cast<std::size_t>(k), 0.0));
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto ia = static_cast<std::size_t>(a.labels[v]);
        const auto ib = static_cast<std::size_t>(b.labels[v]);
        vol_a[ia] += deg[v];
        vol_b[ib] += deg[v];
        vol_ab[ia][ib] += deg[v];
    }
    std::vector<std::vector<double>> cost(static_cast<std::size_t>(k),
                                          std::vector<double>(static_cast<std::size_t>(k), 0.0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                vol_a[static_cast<std::size_t>(i)] + vol_b[static_cast<std::size_t>(j)] -
                2.0 * vol_ab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }

    double best;
    if (k <= 20) {
        // Assignment by DP over subsets of b-clusters.
        const std::size_t full = (std::size_t{1} << k) - 1;
        std::vector<double> f(full + 1, std::numeric_limits<double>::infinity());
        f[0] = 0.0;
        for (std::size_t mask = 0; mask < full; ++mask) {
            if (!std::isfinite(f[mask])) continue;
            const int i = std::popcount(mask);  // next a-cluster to assign
            for (int j = 0; j < k; ++j) {
                if (mask & (std::size_t{1} << j)) continue;
                const std::size_t nxt = mask | (std::size_t{1} << j);
                f[nxt] = std::min(f[nxt],
                                  f[mask] + cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            }
        }
        best = f[full];
    } else {
        // Greedy fallback for very large k.
        std::vector<char> used(static_cast<std::size_t>(k), 0);
        best = 0.0;
        for (int i = 0; i < k; ++i) {
            int arg = -1;
            double bc = std::numeric_limits<double>::infinity();
            for (int j = 0; j < k; ++j) {
                if (!used[static_cast<std::size_t>(j)] &&
                    cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] < bc) {
                    bc = cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    arg = j;
                }
            }
            used[static_cast<std::size_t>(arg)] = 1;
            best += bc;
        }
    }
    return best / vol_total;
}

}  // namespace dgc
