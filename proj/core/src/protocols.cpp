#include "dgc/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dgc/rng.hpp"

namespace dgc {

namespace {

constexpr std::uint64_t kTagSite = 0x5174e5;
constexpr std::uint64_t kTagGlobal = 0xb1acb0a2d;

std::uint64_t site_sampler_seed(std::uint64_t base, int site, int tau) {
    return mix_seed(base, {kTagSite, static_cast<std::uint64_t>(site),
                           static_cast<std::uint64_t>(tau)});
}

std::uint64_t global_sampler_seed(std::uint64_t base, int tau) {
    return mix_seed(base, {kTagGlobal, static_cast<std::uint64_t>(tau)});
}

// Key identifying one edge value for deletion matching.
struct EdgeKey {
    NodeId u, v;
    std::uint64_t wbits;
    bool operator==(const EdgeKey&) const = default;
};

struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& k) const {
        std::uint64_t h = (static_cast<std::uint64_t>(k.u) << 32) | k.v;
        h ^= k.wbits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        std::uint64_t s = h;
        return static_cast<std::size_t>(splitmix64(s));
    }
};

EdgeKey key_of(const WeightedEdge& e) {
    std::uint64_t wbits;
    static_assert(sizeof(wbits) == sizeof(e.w));
    std::memcpy(&wbits, &e.w, sizeof(wbits));
    return EdgeKey{e.u, e.v, wbits};
}

// Multiset of live edges: inserts append, deletes cancel one earlier
// instance of the same (u, v, w).
class LiveEdgeSet {
public:
    void insert(const WeightedEdge& e) {
        edges_.push_back(e);
        ++live_[key_of(e)];
    }
    void erase(const WeightedEdge& e) {
        auto it = live_.find(key_of(e));
        if (it == live_.end() || it->second == 0) {
            throw std::invalid_argument("delete of non-existent edge");
        }
        --it->second;
        ++deleted_;
    }
    // Current edge multiset in arrival order (deleted instances skipped,
    // earliest instances first).
    std::vector<WeightedEdge> current() const {
        // to_skip = inserted instances minus live ones, per edge value
        std::unordered_map<EdgeKey, int, EdgeKeyHash> to_skip;
        to_skip.reserve(live_.size());
        for (const auto& e : edges_) ++to_skip[key_of(e)];
        for (const auto& [k, alive] : live_) to_skip[k] -= alive;
        std::vector<WeightedEdge> out;
        out.reserve(edges_.size() - deleted_);
        for (const auto& e : edges_) {
            auto& skip = to_skip[key_of(e)];
            if (skip > 0) {
                --skip;
            } else {
                out.push_back(e);
            }
        }
        return out;
    }
    Graph graph(NodeId n) const {
        Graph g(n);
        for (const auto& e : current()) g.add_edge(e);
        return g;
    }

private:
    std::vector<WeightedEdge> edges_;
    std::unordered_map<EdgeKey, int, EdgeKeyHash> live_;
    std::size_t deleted_ = 0;
};

bool cluster_at(int tau, int t, int every) {
    if (tau == t) return true;
    return every > 0 && tau % every == 0;
}

// Shared per-tau bookkeeping: clustering, NCut-on-true-graph, record row.
class RunBuilder {
public:
    RunBuilder(std::string name, const StreamSchedule& sched, NodeId n, const RunOptions& opt,
               const SnapshotObserver& observer)
        : sched_(sched), n_(n), opt_(opt), observer_(observer) {
        if (opt.clusters < 1) throw std::invalid_argument("RunOptions: clusters must be >= 1");
        run_.algorithm = std::move(name);
        run_.final_graph = Graph(n);
    }

    // algo_graph_fn is only invoked when the graph is actually needed
    // (clustering point or observer attached).
    void finish_tau(int tau, std::int64_t comm_cumulative,
                    const std::function<Graph()>& algo_graph_fn) {
        TimePointRecord rec;
        rec.tau = tau;
        rec.comm_cumulative = comm_cumulative;
        rec.ncut = std::numeric_limits<double>::quiet_NaN();

        const bool clustering = cluster_at(tau, sched_.t, opt_.cluster_every);
        Graph algo_graph{0};
        const bool need_graph = clustering || observer_ || tau == sched_.t;
        if (need_graph) algo_graph = algo_graph_fn();

        if (clustering || observer_) {
            Graph true_graph = truth_.graph(n_);
            if (observer_) observer_(tau, algo_graph, true_graph);
            if (clustering) {
                try {
                    Partition p = spectral_cluster(algo_graph, opt_.clusters,
                                                   opt_.cluster_seed);
                    auto r = ncut(true_graph, p);
                    rec.ncut_defined = r.defined;
                    rec.ncut = r.value;
                    run_.final_partition = std::move(p);
                    run_.has_partition = true;
                } catch (const std::invalid_argument&) {
                    // fewer than k non-isolated nodes at this tau: flagged,
                    // not an error
                }
            }
        }
        if (tau == sched_.t) {
            run_.final_graph = std::move(algo_graph);
            run_.final_comm = comm_cumulative;
        }
        run_.records.push_back(rec);
    }

    LiveEdgeSet& truth() { return truth_; }
    ProtocolRun take() && { return std::move(run_); }

private:
    const StreamSchedule& sched_;
    NodeId n_;
    const RunOptions& opt_;
    const SnapshotObserver& observer_;
    LiveEdgeSet truth_;
    ProtocolRun run_;
};

SamplerConfig sampler_config(NodeId n, const RunOptions& opt, std::uint64_t seed) {
    SamplerConfig cfg;
    cfg.n = n;
    cfg.epsilon = opt.epsilon;
    cfg.delta = opt.delta;
    cfg.oversample = opt.oversample;
    cfg.seed = seed;
    return cfg;
}

// Iterate the canonical event order grouped by tau.
template <typename Fn>
void for_each_tau(const StreamSchedule& sched, Fn&& fn) {
    std::size_t i = 0;
    for (int tau = 1; tau <= sched.t; ++tau) {
        const std::size_t begin = i;
        while (i < sched.events.size() && sched.events[i].time == tau) ++i;
        fn(tau, std::span<const UpdateEvent>(sched.events.data() + begin, i - begin));
    }
}

Graph union_sparsifiers(NodeId n, const std::vector<OnlineSampler>& samplers) {
    Graph g(n);
    for (const auto& s : samplers) {
        for (const auto& r : s.rows()) g.add_edge(r.u, r.v, r.coefficient * r.coefficient);
    }
    return g;
}

}  // namespace

StreamSchedule StreamSchedule::from_events(int t, int s, std::vector<UpdateEvent> events) {
    StreamSchedule sched;
    sched.t = t;
    sched.s = s;
    std::stable_sort(events.begin(), events.end(), [](const UpdateEvent& a, const UpdateEvent& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.site != b.site) return a.site < b.site;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    sched.events = std::move(events);
    return sched;
}

std::size_t StreamSchedule::insert_count() const {
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(),
                      [](const UpdateEvent& e) { return e.kind == UpdateKind::Insert; }));
}

std::size_t StreamSchedule::delete_count() const { return events.size() - insert_count(); }

void StreamSchedule::validate() const {
    std::unordered_map<EdgeKey, int, EdgeKeyHash> live;
    std::unordered_map<EdgeKey, int, EdgeKeyHash> arriving;
    struct SiteTimeKey {
        int time, site;
        EdgeKey e;
        bool operator==(const SiteTimeKey&) const = default;
    };
    struct SiteTimeHash {
        std::size_t operator()(const SiteTimeKey& k) const {
            std::uint64_t s = EdgeKeyHash{}(k.e);
            s ^= (static_cast<std::uint64_t>(k.time) << 24) ^ k.site;
            return static_cast<std::size_t>(splitmix64(s));
        }
    };
    std::unordered_set<SiteTimeKey, SiteTimeHash> seen;

    int prev_time = 0;
    int flush_time = 0;
    auto flush = [&]() {
        for (auto& [k, cnt] : arriving) live[k] += cnt;
        arriving.clear();
    };
    for (const auto& ev : events) {
        if (ev.time < 1 || ev.time > t) {
            throw std::invalid_argument("schedule: time " + std::to_string(ev.time) +
                                        " outside [1, " + std::to_string(t) + "]");
        }
        if (ev.site < 1 || ev.site > s) {
            throw std::invalid_argument("schedule: site " + std::to_string(ev.site) +
                                        " outside [1, " + std::to_string(s) + "]");
        }
        if (ev.time < prev_time) {
            throw std::invalid_argument("schedule: events not in canonical time order");
        }
        prev_time = ev.time;
        if (ev.time > flush_time) {
            flush();
            flush_time = ev.time;
        }
        if (ev.kind == UpdateKind::Insert) {
            SiteTimeKey st{ev.time, ev.site, key_of(ev.edge)};
            if (!seen.insert(st).second) {
                throw std::invalid_argument("schedule: identical edge inserted twice at one "
                                            "(time, site)");
            }
            ++arriving[key_of(ev.edge)];
        } else {
            auto it = live.find(key_of(ev.edge));
            if (it == live.end() || it->second == 0) {
                throw std::invalid_argument(
                    "schedule: delete with no live earlier insert (edge " +
                    std::to_string(ev.edge.u) + "-" + std::to_string(ev.edge.v) + ")");
            }
            --it->second;
        }
    }
}

StreamSchedule strip_deletions(const StreamSchedule& sched) {
    StreamSchedule out;
    out.t = sched.t;
    out.s = sched.s;
    for (const auto& ev : sched.events) {
        if (ev.kind == UpdateKind::Insert) out.events.push_back(ev);
    }
    return out;
}

CommLedger ProtocolRun::ledger() const {
    CommLedger l;
    l.cumulative.reserve(records.size());
    for (const auto& r : records) l.cumulative.push_back(r.comm_cumulative);
    return l;
}

ProtocolRun run_cntrl(const StreamSchedule& sched, NodeId n, const RunOptions& opt,
                      const SnapshotObserver& observer) {
    RunBuilder rb("cntrl", sched, n, opt, observer);
    std::int64_t comm = 0;
    for_each_tau(sched, [&](int tau, std::span<const UpdateEvent> bucket) {
        for (const auto& ev : bucket) {
            if (ev.kind == UpdateKind::Insert) {
                rb.truth().insert(ev.edge);
                ++comm;
            } else {
                rb.truth().erase(ev.edge);
                if (opt.cntrl_forward_deletions) ++comm;
            }
        }
        rb.finish_tau(tau, comm, [&] { return rb.truth().graph(n); });
    });
    return std::move(rb).take();
}

ProtocolRun run_d2camp(const StreamSchedule& sched, NodeId n, const RunOptions& opt,
                       const SnapshotObserver& observer) {
    RunBuilder rb("d2camp", sched, n, opt, observer);
    std::vector<OnlineSampler> samplers;
    samplers.reserve(static_cast<std::size_t>(sched.s));
    for (int site = 1; site <= sched.s; ++site) {
        samplers.emplace_back(sampler_config(n, opt, site_sampler_seed(opt.sampler_seed, site, 1)));
    }
    std::int64_t comm = 0;
    for_each_tau(sched, [&](int tau, std::span<const UpdateEvent> bucket) {
        for (const auto& ev : bucket) {
            if (ev.kind == UpdateKind::Insert) {
                rb.truth().insert(ev.edge);
                // site stream feeds that site's monotone sampler; a kept row
                // is exactly one transmitted edge (new relative to tau-1 by
                // monotonicity)
                if (samplers[static_cast<std::size_t>(ev.site - 1)].offer(ev.edge).kept) ++comm;
            } else {
                rb.truth().erase(ev.edge);  // ignored by the protocol, applied to the truth
            }
        }
        rb.finish_tau(tau, comm, [&] { return union_sparsifiers(n, samplers); });
    });
    return std::move(rb).take();
}

ProtocolRun run_d2cabl(const StreamSchedule& sched, NodeId n, const RunOptions& opt,
                       const SnapshotObserver& observer) {
    RunBuilder rb("d2cabl", sched, n, opt, observer);
    OnlineSampler blackboard(sampler_config(n, opt, global_sampler_seed(opt.sampler_seed, 1)));
    std::int64_t comm = 0;
    for_each_tau(sched, [&](int tau, std::span<const UpdateEvent> bucket) {
        for (const auto& ev : bucket) {
            if (ev.kind == UpdateKind::Insert) {
                rb.truth().insert(ev.edge);
                // scoring reads the blackboard for free; only an appended
                // row is broadcast
                if (blackboard.offer(ev.edge).kept) ++comm;
            } else {
                rb.truth().erase(ev.edge);
            }
        }
        rb.finish_tau(tau, comm, [&] { return blackboard.sparsifier_graph(); });
    });
    return std::move(rb).take();
}

ProtocolRun run_stmp(const StreamSchedule& sched, NodeId n, const RunOptions& opt,
                     const SnapshotObserver& observer) {
    RunBuilder rb("stmp", sched, n, opt, observer);
    std::vector<LiveEdgeSet> site_edges(static_cast<std::size_t>(sched.s));
    std::int64_t comm = 0;
    for_each_tau(sched, [&](int tau, std::span<const UpdateEvent> bucket) {
        for (const auto& ev : bucket) {
            auto& local = site_edges[static_cast<std::size_t>(ev.site - 1)];
            if (ev.kind == UpdateKind::Insert) {
                rb.truth().insert(ev.edge);
                local.insert(ev.edge);
            } else {
                rb.truth().erase(ev.edge);
                local.erase(ev.edge);
            }
        }
        // From-scratch rebuild: every site constructs a fresh sparsifier of
        // its current local graph and transmits all of it.
        std::vector<OnlineSampler> fresh;
        fresh.reserve(static_cast<std::size_t>(sched.s));
        for (int site = 1; site <= sched.s; ++site) {
            fresh.emplace_back(
                sampler_config(n, opt, site_sampler_seed(opt.sampler_seed, site, tau)));
            for (const auto& e : site_edges[static_cast<std::size_t>(site - 1)].current()) {
                if (fresh.back().offer(e).kept) ++comm;
            }
        }
        rb.finish_tau(tau, comm, [&] { return union_sparsifiers(n, fresh); });
    });
    return std::move(rb).take();
}

ProtocolRun run_stbl(const StreamSchedule& sched, NodeId n, const RunOptions& opt,
                     const SnapshotObserver& observer) {
    RunBuilder rb("stbl", sched, n, opt, observer);
    std::int64_t comm = 0;
    for_each_tau(sched, [&](int tau, std::span<const UpdateEvent> bucket) {
        for (const auto& ev : bucket) {
            if (ev.kind == UpdateKind::Insert) {
                rb.truth().insert(ev.edge);
            } else {
                rb.truth().erase(ev.edge);
            }
        }
        OnlineSampler fresh(sampler_config(n, opt, global_sampler_seed(opt.sampler_seed, tau)));
        for (const auto& e : rb.truth().current()) {
            if (fresh.offer(e).kept) ++comm;
        }
        rb.finish_tau(tau, comm, [&] { return fresh.sparsifier_graph(); });
    });
    return std::move(rb).take();
}

ProtocolRun run_algorithm(const std::string& name, const StreamSchedule& sched, NodeId n,
                          const RunOptions& opt, const SnapshotObserver& observer) {
    if (name == "cntrl") return run_cntrl(sched, n, opt, observer);
    if (name == "d2camp") return run_d2camp(sched, n, opt, observer);
    if (name == "d2cabl") return run_d2cabl(sched, n, opt, observer);
    if (name == "stmp") return run_stmp(sched, n, opt, observer);
    if (name == "stbl") return run_stbl(sched, n, opt, observer);
    throw std::invalid_argument("unknown algorithm: " + name);
}

}  // namespace dgc
