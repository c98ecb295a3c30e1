#include "dgc/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace dgc {

WeightedEdge::WeightedEdge(NodeId a, NodeId b, double weight) : u(a), v(b), w(weight) {
    if (a == b) {
        throw std::invalid_argument("WeightedEdge: self-loop at node " + std::to_string(a));
    }
    if (!(weight >= kMinEdgeWeight)) {
        throw std::invalid_argument("WeightedEdge: weight " + std::to_string(weight) +
                                    " below minimum " + std::to_string(kMinEdgeWeight));
    }
    if (u > v) std::swap(u, v);
}

Graph::Graph(NodeId n, std::vector<WeightedEdge> edges) : n_(n) {
    edges_.reserve(edges.size());
    for (const auto& e : edges) add_edge(e);
}

void Graph::check_node(NodeId v) const {
    if (v >= n_) {
        throw std::out_of_range("Graph: node " + std::to_string(v) + " not in [0, " +
                                std::to_string(n_) + ")");
    }
}

void Graph::add_edge(const WeightedEdge& e) {
    check_node(e.u);
    check_node(e.v);
    edges_.push_back(e);
    total_weight_ += e.w;
}

void Graph::add_edge(NodeId u, NodeId v, double w) { add_edge(WeightedEdge(u, v, w)); }

std::vector<double> Graph::degrees() const {
    std::vector<double> deg(n_, 0.0);
    for (const auto& e : edges_) {
        deg[e.u] += e.w;
        deg[e.v] += e.w;
    }
    return deg;
}

std::vector<NodeId> Graph::non_isolated_nodes() const {
    std::vector<char> seen(n_, 0);
    for (const auto& e : edges_) {
        seen[e.u] = 1;
        seen[e.v] = 1;
    }
    std::vector<NodeId> out;
    for (NodeId v = 0; v < n_; ++v) {
        if (seen[v]) out.push_back(v);
    }
    return out;
}

double Graph::quadratic_form(std::span<const double> x) const {
    if (x.size() != n_) {
        throw std::invalid_argument("quadratic_form: vector length " + std::to_string(x.size()) +
                                    " != node count " + std::to_string(n_));
    }
    double acc = 0.0;
    for (const auto& e : edges_) {
        const double d = x[e.u] - x[e.v];
        acc += e.w * d * d;
    }
    return acc;
}

double Graph::quadratic_form(const Eigen::VectorXd& x) const {
    return quadratic_form(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

std::vector<char> Graph::node_mask(std::span<const NodeId> s) const {
    std::vector<char> mask(n_, 0);
    for (NodeId v : s) {
        check_node(v);
        mask[v] = 1;
    }
    return mask;
}

double Graph::volume(std::span<const NodeId> s) const {
    const auto mask = node_mask(s);
    double acc = 0.0;
    for (const auto& e : edges_) {
        // Adding 2w in one operation keeps volume(V) == 2 * total_weight()
        // bit-exact (scaling by two commutes with rounding).
        if (mask[e.u] && mask[e.v]) {
            acc += 2.0 * e.w;
        } else if (mask[e.u] || mask[e.v]) {
            acc += e.w;
        }
    }
    return acc;
}

double Graph::cut_weight(std::span<const NodeId> s) const {
    const auto mask = node_mask(s);
    double acc = 0.0;
    for (const auto& e : edges_) {
        if (mask[e.u] != mask[e.v]) acc += e.w;
    }
    return acc;
}

double Graph::conductance(std::span<const NodeId> s) const {
    const auto mask = node_mask(s);
    double vol = 0.0;
    double cut = 0.0;
    for (const auto& e : edges_) {
        if (mask[e.u] && mask[e.v]) {
            vol += 2.0 * e.w;
        } else if (mask[e.u] || mask[e.v]) {
            vol += e.w;
            cut += e.w;
        }
    }
    if (vol <= 0.0) {
        throw std::domain_error("conductance: node set has zero volume");
    }
    return cut / vol;
}

Eigen::MatrixXd Graph::dense_laplacian() const {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& e : edges_) {
        L(e.u, e.u) += e.w;
        L(e.v, e.v) += e.w;
        L(e.u, e.v) -= e.w;
        L(e.v, e.u) -= e.w;
    }
    return L;
}

namespace {

void clamp_roundoff(Eigen::VectorXd& values) {
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values[i] < 0.0 && values[i] > -1e-9) values[i] = 0.0;
    }
}

}  // namespace

Eigen::MatrixXd Graph::build_normalized_laplacian(const std::vector<NodeId>& active) const {
    const auto na = static_cast<Eigen::Index>(active.size());
    std::vector<Eigen::Index> pos(n_, -1);
    for (Eigen::Index i = 0; i < na; ++i) pos[active[static_cast<std::size_t>(i)]] = i;

    Eigen::VectorXd deg = Eigen::VectorXd::Zero(na);
    for (const auto& e : edges_) {
        deg[pos[e.u]] += e.w;
        deg[pos[e.v]] += e.w;
    }
    Eigen::VectorXd dinv_sqrt = deg.cwiseSqrt().cwiseInverse();

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(na, na);
    for (const auto& e : edges_) {
        const Eigen::Index i = pos[e.u];
        const Eigen::Index j = pos[e.v];
        const double val = e.w * dinv_sqrt[i] * dinv_sqrt[j];
        M(i, j) -= val;
        M(j, i) -= val;
    }
    M.diagonal().array() += 1.0;  // normalized Laplacian = I - D^{-1/2} A D^{-1/2}
    return M;
}

Graph::SpectralBasis Graph::normalized_laplacian_basis(std::size_t k) const {
    SpectralBasis out;
    out.active = non_isolated_nodes();
    if (k > out.active.size()) {
        throw std::invalid_argument("normalized_laplacian: k = " + std::to_string(k) +
                                    " exceeds " + std::to_string(out.active.size()) +
                                    " non-isolated nodes");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_normalized_laplacian(out.active));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("normalized_laplacian: eigensolver failed");
    }
    out.values = solver.eigenvalues().head(static_cast<Eigen::Index>(k));
    clamp_roundoff(out.values);
    out.vectors = solver.eigenvectors().leftCols(static_cast<Eigen::Index>(k));
    return out;
}

std::vector<double> Graph::normalized_laplacian_eigenvalues(std::size_t k) const {
    const auto active = non_isolated_nodes();
    if (k > active.size()) {
        throw std::invalid_argument("normalized_laplacian: k = " + std::to_string(k) +
                                    " exceeds " + std::to_string(active.size()) +
                                    " non-isolated nodes");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_normalized_laplacian(active),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("normalized_laplacian: eigensolver failed");
    }
    Eigen::VectorXd values = solver.eigenvalues().head(static_cast<Eigen::Index>(k));
    clamp_roundoff(values);
    return std::vector<double>(values.data(), values.data() + values.size());
}

}  // namespace dgc
