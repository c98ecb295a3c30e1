#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dgc/graph.hpp"

namespace dgc {

// Node -> cluster labeling. Labels lie in [0, k); isolated nodes carry
// label 0 and are excluded from cut/volume accounting.
struct Partition {
    std::vector<std::int32_t> labels;
    int k = 0;

    void validate(NodeId n) const;  // throws std::invalid_argument
};

struct NcutResult {
    double value = 0.0;
    bool defined = false;            // false when every cluster has zero volume
    int zero_volume_clusters = 0;    // skipped (flagged, not an error)
};

struct ClusterQuality {
    double ncut = 0.0;
    std::vector<double> cluster_conductance;  // NaN for zero-volume clusters
    double max_conductance = 0.0;
    double lambda_k1 = 0.0;   // (k+1)-th smallest normalized-Laplacian eigenvalue
    double upsilon = std::numeric_limits<double>::infinity();
    bool has_zero_volume_cluster = false;
};

// Spectral clustering: embed non-isolated nodes with the k smallest
// eigenvectors of the normalized Laplacian, row-normalize, then k-means with
// k-means++ seeding. Deterministic given (graph, k, seed). Throws
// std::invalid_argument when fewer than k non-isolated nodes exist.
Partition spectral_cluster(const Graph& g, int k, std::uint64_t seed);

// NCut(P) = sum_i cut(A_i) / vol(A_i); zero-volume clusters are skipped and
// counted in the result. Lower is better.
NcutResult ncut(const Graph& g, const Partition& p);

// vol_G(A delta B).
double sym_diff_vol(const Graph& g, std::span<const NodeId> a, std::span<const NodeId> b);

// All quality metrics for one partition. lambda_k1 comes from the
// (k+1)-smallest normalized-Laplacian eigenvalue; eigensolver errors
// propagate.
ClusterQuality partition_quality(const Graph& g, const Partition& p);

// Best-alignment total symmetric-difference volume between two k-way
// partitions, normalized by vol(V). Zero iff the partitions agree up to a
// relabeling. Exact assignment via subset DP (k <= 20), greedy beyond.
double match_partitions(const Partition& a, const Partition& b, const Graph& g);

}  // namespace dgc
