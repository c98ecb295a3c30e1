#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "dgc/graph.hpp"
#include "dgc/rng.hpp"

namespace dgc {

// Parameters of the online row sampler. The sampling constant is
// c = oversample * 8 ln(n) / epsilon^2 and the ridge is delta / epsilon.
//
// The theoretical constant (oversample = 1) keeps essentially every edge on
// graphs of a few thousand nodes; the experiment harness runs with
// oversample = kExperimentOversample, which preserves quadratic forms and
// the low spectrum on the test corpus while actually sparsifying.
struct SamplerConfig {
    NodeId n = 0;
    double epsilon = 0.3;       // must lie in (0, 1/3)
    double delta = 0.3e-6;      // ridge control, > 0; default epsilon * 1e-6
    std::uint64_t seed = 0;
    double oversample = 1.0;

    double c() const;           // sampling constant
    double ridge() const { return delta / epsilon; }
    void validate() const;      // throws std::invalid_argument
};

// Harness-calibrated sampler settings for the bundled experiments.
inline constexpr double kExperimentOversample = 0.01;
inline constexpr double kExperimentDelta = 18.0;

// Outcome of offering one edge.
struct SampleDecision {
    bool kept = false;
    double probability = 0.0;   // min(c * l, 1), always in (0, 1]
    double scaled_weight = 0.0; // w / probability when kept, 0 otherwise
};

// Online spectral sparsifier via ridge leverage score sampling.
//
// State is an append-only list of scaled incidence rows sqrt(w/p) * b(e)
// plus the Gram accumulator  G = B'^T B' + (delta/epsilon) I.  The score of
// an incoming edge is  l = (1+eps) * r(e)^T G^{-1} r(e)  with the weighted
// incidence vector r(e) = sqrt(w) * b(e); the edge is kept with probability
// min(c*l, 1) and, if kept, its row is appended and G updated. Rows are
// never removed or edited, so the kept set at any earlier offer count is a
// prefix of the kept set at any later one.
//
// G changes by a 2-sparse rank-1 term per kept row, so the accumulator
// update is O(1) and the explicit inverse is maintained by a
// Sherman-Morrison update in O(n^2); scoring is then O(1) lookups. The
// inverse is re-derived from the exact accumulator by a fresh Cholesky
// factorization on a fixed cadence (more often when the ridge is tiny and
// the system badly conditioned).
//
// Single-writer: offers are strictly serialized by the caller.
class OnlineSampler {
public:
    explicit OnlineSampler(SamplerConfig cfg);

    const SamplerConfig& config() const { return cfg_; }

    // (1+eps) * r(e)^T (B'^T B' + (delta/eps) I)^{-1} r(e), r(e) = sqrt(w) b(e).
    double ridge_leverage(const WeightedEdge& e) const;

    // Same quantity via a fresh dense factorization of the accumulator;
    // O(n^3), used by tests to pin the fast path.
    double ridge_leverage_dense(const WeightedEdge& e) const;

    SampleDecision offer(const WeightedEdge& e);

    std::size_t offer_count() const { return offers_; }
    const std::vector<IncidenceRow>& rows() const { return rows_; }
    // Keep probability of rows()[i] at the time it was appended.
    const std::vector<double>& row_probabilities() const { return row_probs_; }

    // Materialize H: row sqrt(w/p) * b(e) becomes edge (u, v) of weight w/p.
    Graph sparsifier_graph() const;

    const Eigen::MatrixXd& gram() const { return gram_; }
    // B'^T B' + (delta/eps) I rebuilt from the row list, for consistency checks.
    Eigen::MatrixXd recompute_gram() const;

    // State dump, one row per line: "u v scaled_weight p".
    void dump_rows(std::ostream& out) const;

private:
    void append_row(NodeId u, NodeId v, double scaled_weight, double probability);
    void refresh_inverse();

    SamplerConfig cfg_;
    std::vector<IncidenceRow> rows_;
    std::vector<double> row_probs_;
    Eigen::MatrixXd gram_;
    Eigen::MatrixXd minv_;
    Rng rng_;
    std::size_t offers_ = 0;
    std::size_t keeps_since_refresh_ = 0;
    double max_gram_diag_;
};

// Effective resistance b(u,v)^T L^+ b(u,v) via dense pseudoinverse.
// Verification oracle, O(n^3); throws std::invalid_argument when u and v
// are not in the same connected component.
double exact_effective_resistance(const Graph& g, NodeId u, NodeId v);

}  // namespace dgc
