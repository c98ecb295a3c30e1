#include <doctest.h>

#include <cmath>
#include <vector>

#include "dgc/clustering.hpp"
#include "dgc/graph.hpp"
#include "test_util.hpp"

using dgc::Graph;
using dgc::NodeId;
using dgc::Partition;

namespace {

Graph disjoint_cliques(int k, int size, double w = 1.0) {
    Graph g(static_cast<NodeId>(k * size));
    for (int c = 0; c < k; ++c) {
        const NodeId base = static_cast<NodeId>(c * size);
        for (int i = 0; i < size; ++i) {
            for (int j = i + 1; j < size; ++j) {
                g.add_edge(base + static_cast<NodeId>(i), base + static_cast<NodeId>(j), w);
            }
        }
    }
    return g;
}

Partition block_partition(int k, int size) {
    Partition p;
    p.k = k;
    for (int c = 0; c < k; ++c) {
        for (int i = 0; i < size; ++i) p.labels.push_back(c);
    }
    return p;
}

// Exhaustive minimum NCut over all 2-partitions (node 0 pinned to side 0).
double brute_force_min_ncut2(const Graph& g) {
    const NodeId n = g.node_count();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (1ULL << (n - 1)); ++mask) {
        Partition p;
        p.k = 2;
        p.labels.assign(n, 0);
        for (NodeId v = 1; v < n; ++v) {
            if (mask & (1ULL << (v - 1))) p.labels[v] = 1;
        }
        auto r = dgc::ncut(g, p);
        if (r.defined && r.zero_volume_clusters == 0 && r.value < best) best = r.value;
    }
    return best;
}

}  // namespace

TEST_CASE("ncut on pinned examples") {
    auto k4 = dgc_test::complete_graph(4);
    Partition split22 = {{0, 0, 1, 1}, 2};
    auto r = dgc::ncut(k4, split22);
    CHECK(r.defined);
    CHECK(r.value == doctest::Approx(4.0 / 3.0));

    Partition all_one = {{0, 0, 0, 0}, 1};
    CHECK(dgc::ncut(k4, all_one).value == 0.0);

    Graph two(4);
    two.add_edge(0, 1, 1.0);
    two.add_edge(2, 3, 1.0);
    Partition comps = {{0, 0, 1, 1}, 2};
    CHECK(dgc::ncut(two, comps).value == 0.0);

    // zero-volume cluster is skipped and flagged
    Partition with_empty = {{0, 0, 0, 0}, 3};
    auto rz = dgc::ncut(k4, with_empty);
    CHECK(rz.defined);
    CHECK(rz.zero_volume_clusters == 2);

    Graph empty(3);
    Partition pe = {{0, 0, 0}, 1};
    auto re = dgc::ncut(empty, pe);
    CHECK_FALSE(re.defined);
    CHECK(std::isnan(re.value));
}

TEST_CASE("sym_diff_vol on pinned examples") {
    auto k4 = dgc_test::complete_graph(4);
    std::vector<NodeId> a = {0, 1};
    std::vector<NodeId> b = {1, 2};
    std::vector<NodeId> empty;
    CHECK(dgc::sym_diff_vol(k4, a, a) == 0.0);
    CHECK(dgc::sym_diff_vol(k4, a, empty) == doctest::Approx(6.0));
    CHECK(dgc::sym_diff_vol(k4, a, b) == doctest::Approx(6.0));
}

TEST_CASE("partition quality on pinned examples") {
    auto g = disjoint_cliques(3, 5);
    auto p = block_partition(3, 5);
    auto q = dgc::partition_quality(g, p);
    CHECK(q.ncut == 0.0);
    CHECK(q.max_conductance == 0.0);
    CHECK(std::isinf(q.upsilon));

    Graph p3(3);
    p3.add_edge(0, 1, 1.0);
    p3.add_edge(1, 2, 1.0);
    Partition single = {{0, 0, 0}, 1};
    auto qp = dgc::partition_quality(p3, single);
    CHECK(qp.lambda_k1 == doctest::Approx(1.0));

    // ncut equals the sum of per-cluster conductances by construction
    auto k4 = dgc_test::complete_graph(4);
    Partition split = {{0, 1, 1, 0}, 2};
    auto qs = dgc::partition_quality(k4, split);
    double sum = 0.0;
    for (double c : qs.cluster_conductance) sum += c;
    CHECK(qs.ncut == doctest::Approx(sum));
    CHECK(qs.ncut == doctest::Approx(dgc::ncut(k4, split).value));
}

TEST_CASE("match_partitions on pinned examples") {
    auto k4 = dgc_test::complete_graph(4);
    Partition a = {{0, 0, 1, 1}, 2};
    Partition permuted = {{1, 1, 0, 0}, 2};
    CHECK(dgc::match_partitions(a, a, k4) == 0.0);
    CHECK(dgc::match_partitions(a, permuted, k4) == 0.0);

    Partition moved = {{0, 1, 1, 1}, 2};  // node 1 changed sides
    CHECK(dgc::match_partitions(a, moved, k4) == doctest::Approx(0.5));

    Partition k3 = {{0, 1, 2, 0}, 3};
    CHECK_THROWS_AS(dgc::match_partitions(a, k3, k4), std::invalid_argument);

    // symmetry
    auto edges = dgc_test::er_edges(20, 5.0, 0.5, 2.0, 5);
    auto g = dgc_test::make_graph(20, edges);
    dgc::Rng rng(8);
    Partition x, y;
    x.k = y.k = 3;
    for (int i = 0; i < 20; ++i) {
        x.labels.push_back(static_cast<std::int32_t>(rng.next_below(3)));
        y.labels.push_back(static_cast<std::int32_t>(rng.next_below(3)));
    }
    CHECK(dgc::match_partitions(x, y, g) ==
          doctest::Approx(dgc::match_partitions(y, x, g)).epsilon(1e-12));
}

TEST_CASE("spectral clustering recovers disjoint cliques exactly") {
    auto g = disjoint_cliques(4, 6);
    auto truth = block_partition(4, 6);
    auto p = dgc::spectral_cluster(g, 4, 31);
    CHECK(dgc::match_partitions(p, truth, g) == doctest::Approx(0.0));
}

TEST_CASE("spectral clustering finds the planted 2-cut and matches brute force") {
    Graph g(12);
    for (NodeId i = 0; i < 6; ++i) {
        for (NodeId j = i + 1; j < 6; ++j) {
            g.add_edge(i, j, 1.0);
            g.add_edge(i + 6, j + 6, 1.0);
        }
    }
    g.add_edge(0, 6, 0.01);  // weak bridge
    auto p = dgc::spectral_cluster(g, 2, 7);
    auto r = dgc::ncut(g, p);
    const double best = brute_force_min_ncut2(g);
    CHECK(r.value == doctest::Approx(best).epsilon(1e-9));

    Partition truth = {{0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1}, 2};
    CHECK(dgc::match_partitions(p, truth, g) == doctest::Approx(0.0));
}

TEST_CASE("embedding of a k-component graph has zero within-component spread") {
    auto g = disjoint_cliques(3, 7);
    auto basis = g.normalized_laplacian_basis(3);
    Eigen::MatrixXd U = basis.vectors;
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
        const double nrm = U.row(i).norm();
        if (nrm > 0) U.row(i) /= nrm;
    }
    for (int c = 0; c < 3; ++c) {
        for (int i = 1; i < 7; ++i) {
            CHECK((U.row(c * 7) - U.row(c * 7 + i)).norm() < 1e-8);
        }
    }
}

TEST_CASE("weight scaling leaves labels and ncut unchanged") {
    auto edges = dgc_test::knn_edges(40, 5, 13);
    auto g = dgc_test::make_graph(40, edges);
    Graph g4(40);
    for (const auto& e : edges) g4.add_edge(e.u, e.v, 4.0 * e.w);

    auto p = dgc::spectral_cluster(g, 3, 99);
    auto p4 = dgc::spectral_cluster(g4, 3, 99);
    REQUIRE(p.labels.size() == p4.labels.size());
    for (std::size_t i = 0; i < p.labels.size(); ++i) CHECK(p.labels[i] == p4.labels[i]);
    CHECK(dgc::ncut(g, p).value == doctest::Approx(dgc::ncut(g4, p4).value).epsilon(1e-12));
}

TEST_CASE("kmeans path is deterministic given the seed") {
    auto edges = dgc_test::er_edges(50, 8.0, 0.5, 2.0, 23);
    auto g = dgc_test::make_graph(50, edges);
    auto p1 = dgc::spectral_cluster(g, 4, 555);
    auto p2 = dgc::spectral_cluster(g, 4, 555);
    for (std::size_t i = 0; i < p1.labels.size(); ++i) CHECK(p1.labels[i] == p2.labels[i]);
}

TEST_CASE("isolated nodes get label 0 and drop out of ncut") {
    Graph g(8);  // nodes 6 and 7 isolated
    for (NodeId i = 0; i < 3; ++i) {
        for (NodeId j = i + 1; j < 3; ++j) {
            g.add_edge(i, j, 1.0);
            g.add_edge(i + 3, j + 3, 1.0);
        }
    }
    auto p = dgc::spectral_cluster(g, 2, 17);
    CHECK(p.labels[6] == 0);
    CHECK(p.labels[7] == 0);
    CHECK(dgc::ncut(g, p).value == 0.0);
}

TEST_CASE("errors: too few non-isolated nodes") {
    Graph g(10);
    g.add_edge(0, 1, 1.0);
    CHECK_THROWS_AS(dgc::spectral_cluster(g, 3, 1), std::invalid_argument);
}
