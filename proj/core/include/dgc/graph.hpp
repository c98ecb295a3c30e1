#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dgc {

using NodeId = std::uint32_t;

// Weights this small would make the ridge-regularized solves downstream
// ill-conditioned; reject them at construction.
inline constexpr double kMinEdgeWeight = 1e-12;

// Undirected weighted edge, stored with u < v. No self-loops.
struct WeightedEdge {
    NodeId u = 0;
    NodeId v = 0;
    double w = 0.0;

    WeightedEdge() = default;
    WeightedEdge(NodeId a, NodeId b, double weight);

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// One row of a scaled incidence matrix: coefficient * (e_u - e_v).
struct IncidenceRow {
    NodeId u = 0;
    NodeId v = 0;
    double coefficient = 0.0;
};

// Weighted undirected multigraph over a fixed node set [0, n).
// Parallel edges are stored as-is; all Laplacian quantities sum them lazily.
// Immutable once a snapshot has been handed to readers; mutation is
// append-only through add_edge.
class Graph {
public:
    explicit Graph(NodeId n) : n_(n) {}
    Graph(NodeId n, std::vector<WeightedEdge> edges);

    NodeId node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::span<const WeightedEdge> edges() const { return edges_; }

    void add_edge(NodeId u, NodeId v, double w);
    void add_edge(const WeightedEdge& e);

    double total_weight() const { return total_weight_; }

    // Weighted degree per node.
    std::vector<double> degrees() const;

    // Nodes with non-zero degree, ascending. Normalized-Laplacian
    // operations act on this induced subgraph (D^{-1/2} is undefined at
    // degree zero).
    std::vector<NodeId> non_isolated_nodes() const;

    // x^T L x = sum_e w_e (x_u - x_v)^2. Throws on dimension mismatch.
    double quadratic_form(std::span<const double> x) const;
    double quadratic_form(const Eigen::VectorXd& x) const;

    // vol(S) = sum of weighted degrees over S. Duplicate node ids in `s`
    // are counted once. Throws std::out_of_range on bad indices.
    double volume(std::span<const NodeId> s) const;

    // Total weight of edges with exactly one endpoint in S.
    double cut_weight(std::span<const NodeId> s) const;

    // phi(S) = cut(S) / vol(S); throws std::domain_error when vol(S) = 0.
    double conductance(std::span<const NodeId> s) const;

    // Dense unnormalized Laplacian, n x n.
    Eigen::MatrixXd dense_laplacian() const;

    // The k smallest eigenvalues of D^{-1/2} L D^{-1/2} restricted to the
    // non-isolated induced subgraph, ascending. Values in [0, 2]; tiny
    // negative round-off is clamped to zero. Throws std::invalid_argument
    // if k exceeds the number of non-isolated nodes.
    std::vector<double> normalized_laplacian_eigenvalues(std::size_t k) const;

    // Eigenpairs version used by spectral clustering: returns the k smallest
    // eigenvalues and the corresponding eigenvector matrix (rows follow
    // non_isolated_nodes() order).
    struct SpectralBasis {
        std::vector<NodeId> active;   // non-isolated nodes, ascending
        Eigen::VectorXd values;       // k smallest eigenvalues
        Eigen::MatrixXd vectors;      // |active| x k
    };
    SpectralBasis normalized_laplacian_basis(std::size_t k) const;

private:
    void check_node(NodeId v) const;
    std::vector<char> node_mask(std::span<const NodeId> s) const;
    Eigen::MatrixXd build_normalized_laplacian(const std::vector<NodeId>& active) const;

    NodeId n_;
    std::vector<WeightedEdge> edges_;
    double total_weight_ = 0.0;
};

}  // namespace dgc
