#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dgc/clustering.hpp"
#include "dgc/graph.hpp"
#include "dgc/sparsifier.hpp"

namespace dgc {

enum class UpdateKind : std::uint8_t { Insert, Delete };

struct UpdateEvent {
    int time = 0;   // tau in [1, t]
    int site = 0;   // in [1, s]
    UpdateKind kind = UpdateKind::Insert;
    WeightedEdge edge;
};

// Per-(time, site) update streams. Events are held in canonical processing
// order: ascending (time, site), inserts before deletes within a group,
// original arrival order otherwise. That order is part of the deterministic
// contract of every protocol run.
struct StreamSchedule {
    int t = 0;
    int s = 0;
    std::vector<UpdateEvent> events;

    static StreamSchedule from_events(int t, int s, std::vector<UpdateEvent> events);

    std::size_t insert_count() const;
    std::size_t delete_count() const;

    // Checks time/site ranges, that no identical edge is inserted twice at
    // the same (time, site), and that every delete matches an edge inserted
    // at a strictly earlier time and still live. Throws
    // std::invalid_argument.
    void validate() const;
};

// Schedule with every Delete event dropped; what the monotone protocols
// effectively consume.
StreamSchedule strip_deletions(const StreamSchedule& sched);

struct TimePointRecord {
    int tau = 0;
    std::int64_t comm_cumulative = 0;
    double ncut = 0.0;     // NaN when !ncut_defined
    bool ncut_defined = false;
};

// Cumulative edges-transmitted counts, one entry per time point.
struct CommLedger {
    std::vector<std::int64_t> cumulative;
};

struct ProtocolRun {
    std::string algorithm;
    std::vector<TimePointRecord> records;  // exactly t entries
    std::int64_t final_comm = 0;
    Graph final_graph{0};        // the algorithm's own graph at final tau
    Partition final_partition;   // from the last clustered time point
    bool has_partition = false;

    CommLedger ledger() const;
};

struct RunOptions {
    int clusters = 4;
    double epsilon = 0.3;
    double delta = kExperimentDelta;
    double oversample = kExperimentOversample;
    std::uint64_t sampler_seed = 1;
    std::uint64_t cluster_seed = 1;
    // Cluster every this many time points (the final tau is always
    // clustered); 0 means final tau only. Affects reporting only.
    int cluster_every = 1;
    // CNTRL transmits deletions to the coordinator when true.
    bool cntrl_forward_deletions = true;
};

// Test/introspection hook, called once per time point with the algorithm's
// graph and the true graph G^tau (deletions applied).
using SnapshotObserver =
    std::function<void(int tau, const Graph& algo_graph, const Graph& true_graph)>;

// The five algorithms. Every runner produces exactly t records, evaluates
// NCut on the true graph G^tau with labels from its own graph, and is
// bit-deterministic given (schedule, options).
//
// CNTRL: every update is forwarded; the coordinator clusters G^tau itself.
ProtocolRun run_cntrl(const StreamSchedule& sched, NodeId n, const RunOptions& opt,
                      const SnapshotObserver& observer = {});
// D2-CAMP: one monotone online sampler per site over its own insert stream;
// only rows kept during tau are transmitted; the coordinator clusters the
// union of the site sparsifiers. Deletions are ignored.
ProtocolRun run_d2camp(const StreamSchedule& sched, NodeId n, const RunOptions& opt,
                       const SnapshotObserver& observer = {});
// D2-CABL: one shared blackboard sampler; sites read scores for free and a
// kept row costs one unit. Deletions are ignored.
ProtocolRun run_d2cabl(const StreamSchedule& sched, NodeId n, const RunOptions& opt,
                       const SnapshotObserver& observer = {});
// STMP/STBL: static rebuilds from scratch at every tau with fresh
// hash-derived seeds; the entire resulting sparsifier is transmitted.
ProtocolRun run_stmp(const StreamSchedule& sched, NodeId n, const RunOptions& opt,
                     const SnapshotObserver& observer = {});
ProtocolRun run_stbl(const StreamSchedule& sched, NodeId n, const RunOptions& opt,
                     const SnapshotObserver& observer = {});

// Dispatch by algorithm name: cntrl, d2camp, d2cabl, stmp, stbl.
ProtocolRun run_algorithm(const std::string& name, const StreamSchedule& sched, NodeId n,
                          const RunOptions& opt, const SnapshotObserver& observer = {});

}  // namespace dgc
