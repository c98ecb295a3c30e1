#include "dgc/sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgc {

double SamplerConfig::c() const { return oversample * 8.0 * std::log(static_cast<double>(n)) / (epsilon * epsilon); }

void SamplerConfig::validate() const {
    if (n < 2) throw std::invalid_argument("SamplerConfig: need n >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0 / 3.0)) {
        throw std::invalid_argument("SamplerConfig: epsilon must lie in (0, 1/3)");
    }
    if (!(delta > 0.0)) throw std::invalid_argument("SamplerConfig: delta must be positive");
    if (!(oversample > 0.0)) throw std::invalid_argument("SamplerConfig: oversample must be positive");
}

OnlineSampler::OnlineSampler(SamplerConfig cfg) : cfg_(cfg), rng_(cfg.seed) {
    cfg_.validate();
    const auto n = static_cast<Eigen::Index>(cfg_.n);
    gram_ = Eigen::MatrixXd::Zero(n, n);
    gram_.diagonal().setConstant(cfg_.ridge());
    minv_ = Eigen::MatrixXd::Zero(n, n);
    minv_.diagonal().setConstant(1.0 / cfg_.ridge());
    max_gram_diag_ = cfg_.ridge();
}

double OnlineSampler::ridge_leverage(const WeightedEdge& e) const {
    if (e.u >= cfg_.n || e.v >= cfg_.n) {
        throw std::out_of_range("ridge_leverage: edge endpoint outside [0, n)");
    }
    const double q = minv_(e.u, e.u) + minv_(e.v, e.v) - 2.0 * minv_(e.u, e.v);
    const double l = (1.0 + cfg_.epsilon) * e.w * q;
    if (!(l > 0.0) || !std::isfinite(l)) {
        throw std::runtime_error("ridge_leverage: non-positive score, accumulator lost "
                                 "positive-definiteness");
    }
    return l;
}

double OnlineSampler::ridge_leverage_dense(const WeightedEdge& e) const {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(cfg_.n);
    b[e.u] = std::sqrt(e.w);
    b[e.v] = -std::sqrt(e.w);
    Eigen::LLT<Eigen::MatrixXd> llt(gram_);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("ridge_leverage_dense: accumulator not SPD");
    }
    return (1.0 + cfg_.epsilon) * b.dot(llt.solve(b));
}

SampleDecision OnlineSampler::offer(const WeightedEdge& e) {
    const double l = ridge_leverage(e);
    const double p = std::min(cfg_.c() * l, 1.0);
    const double draw = rng_.next_double();
    ++offers_;

    SampleDecision d;
    d.probability = p;
    d.kept = draw < p;
    if (d.kept) {
        d.scaled_weight = e.w / p;
        append_row(e.u, e.v, d.scaled_weight, p);
    }
    return d;
}

void OnlineSampler::append_row(NodeId u, NodeId v, double scaled_weight, double probability) {
    rows_.push_back(IncidenceRow{u, v, std::sqrt(scaled_weight)});
    row_probs_.push_back(probability);

    // Gram accumulator: adding row r = coef*(e_u - e_v) touches 4 entries.
    gram_(u, u) += scaled_weight;
    gram_(v, v) += scaled_weight;
    gram_(u, v) -= scaled_weight;
    gram_(v, u) -= scaled_weight;
    max_gram_diag_ = std::max({max_gram_diag_, gram_(u, u), gram_(v, v)});

    ++keeps_since_refresh_;
    // Tiny ridge relative to the accumulated mass means the inverse spans
    // many orders of magnitude and Sherman-Morrison loses digits faster;
    // refresh from the exact accumulator more often in that regime.
    const bool ill_conditioned = max_gram_diag_ > 1e4 * cfg_.ridge();
    const std::size_t interval = ill_conditioned ? 128 : 8192;
    if (keeps_since_refresh_ >= interval) {
        refresh_inverse();
        return;
    }

    // Sherman-Morrison downdate of the inverse: x = M^{-1} r in O(n) because
    // r is 2-sparse.
    const double coef = std::sqrt(scaled_weight);
    Eigen::VectorXd x = coef * (minv_.col(u) - minv_.col(v));
    const double denom = 1.0 + coef * (x[u] - x[v]);
    minv_.noalias() -= x * (x / denom).transpose();
}

void OnlineSampler::refresh_inverse() {
    Eigen::LLT<Eigen::MatrixXd> llt(gram_);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("OnlineSampler: Gram accumulator not SPD during refresh");
    }
    minv_ = llt.solve(Eigen::MatrixXd::Identity(gram_.rows(), gram_.cols()));
    keeps_since_refresh_ = 0;
}

Graph OnlineSampler::sparsifier_graph() const {
    Graph h(cfg_.n);
    for (const auto& r : rows_) {
        h.add_edge(r.u, r.v, r.coefficient * r.coefficient);
    }
    return h;
}

Eigen::MatrixXd OnlineSampler::recompute_gram() const {
    const auto n = static_cast<Eigen::Index>(cfg_.n);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    g.diagonal().setConstant(cfg_.ridge());
    for (const auto& r : rows_) {
        const double w = r.coefficient * r.coefficient;
        g(r.u, r.u) += w;
        g(r.v, r.v) += w;
        g(r.u, r.v) -= w;
        g(r.v, r.u) -= w;
    }
    return g;
}

void OnlineSampler::dump_rows(std::ostream& out) const {
    char buf[128];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& r = rows_[i];
        std::snprintf(buf, sizeof(buf), "%u %u %.17g %.17g\n", r.u, r.v,
                      r.coefficient * r.coefficient, row_probs_[i]);
        out << buf;
    }
}

double exact_effective_resistance(const Graph& g, NodeId u, NodeId v) {
    const NodeId n = g.node_count();
    if (u >= n || v >= n) throw std::out_of_range("exact_effective_resistance: bad endpoint");
    if (u == v) return 0.0;

    // Connectivity check via union-find.
    std::vector<NodeId> parent(n);
    for (NodeId i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& e : g.edges()) parent[find(e.u)] = find(e.v);
    if (find(u) != find(v)) {
        throw std::invalid_argument("exact_effective_resistance: endpoints disconnected");
    }

    Eigen::MatrixXd L = g.dense_laplacian();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("exact_effective_resistance: eigensolver failed");
    }
    const Eigen::VectorXd& vals = solver.eigenvalues();
    const Eigen::MatrixXd& vecs = solver.eigenvectors();
    const double cutoff = 1e-10 * std::max(1.0, vals[vals.size() - 1]);

    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b[u] = 1.0;
    b[v] = -1.0;
    double r = 0.0;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (vals[i] > cutoff) {
            const double proj = vecs.col(i).dot(b);
            r += proj * proj / vals[i];
        }
    }
    return r;
}

}  // namespace dgc
