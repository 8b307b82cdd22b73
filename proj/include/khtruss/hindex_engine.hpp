// Parallel higher-order truss decomposition via per-edge H-index
// iteration: synchronous rounds, asynchronous sweeps, and an
// asynchronous mode with a redundant-recomputation skip rule. All three
// converge to the same fixpoint, trussness - 2 per edge.
#pragma once

#include <atomic>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "khtruss/graph.hpp"
#include "khtruss/h_index.hpp"
#include "khtruss/parallel.hpp"
#include "khtruss/stats.hpp"

namespace khtruss {

// Common h-neighbor sets on the full graph, computed once. These are the
// fixed index sets of every H-index evaluation; they are never
// recomputed as values shrink.
class CommonNeighborCache {
public:
    static CommonNeighborCache build(const Graph& g, int h, int workers = 1) {
        detail::require_h(h);
        const std::size_t m = g.edge_count();
        std::vector<std::vector<VertexId>> per_edge(m);
        const EdgeMask mask = EdgeMask::all_alive(m);
        parallel_for_blocks(workers, m, [&](int, std::size_t lo, std::size_t hi) {
            BfsScratch s1, s2;
            for (std::size_t e = lo; e < hi; ++e)
                per_edge[e] = common_h_neighbors(g, mask, static_cast<EdgeId>(e), h, s1, s2);
        });

        CommonNeighborCache c;
        c.offsets_.assign(m + 1, 0);
        for (std::size_t e = 0; e < m; ++e)
            c.offsets_[e + 1] = c.offsets_[e] + per_edge[e].size();
        c.verts_.resize(c.offsets_[m]);
        for (std::size_t e = 0; e < m; ++e)
            std::copy(per_edge[e].begin(), per_edge[e].end(),
                      c.verts_.begin() + static_cast<std::ptrdiff_t>(c.offsets_[e]));
        return c;
    }

    std::span<const VertexId> targets(EdgeId e) const {
        return {verts_.data() + offsets_[e], verts_.data() + offsets_[e + 1]};
    }
    std::int32_t support(EdgeId e) const {
        return static_cast<std::int32_t>(offsets_[e + 1] - offsets_[e]);
    }
    std::size_t edge_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }

private:
    std::vector<std::size_t> offsets_;
    std::vector<VertexId> verts_;
};

// Scratch for the hop-indexed bottleneck DP. One per worker.
struct PathKeyScratch {
    std::vector<std::int32_t> key_a, key_b, best;
    std::vector<std::uint32_t> mark_a, mark_b, mark_best;
    std::vector<VertexId> frontier_a, frontier_b;
    std::uint32_t counter = 0;
    std::uint32_t best_token = 0;

    void ensure(std::size_t n) {
        if (key_a.size() < n) {
            key_a.resize(n, 0);
            key_b.resize(n, 0);
            best.resize(n, 0);
            mark_a.resize(n, 0);
            mark_b.resize(n, 0);
            mark_best.resize(n, 0);
        }
    }
    std::uint32_t fresh() {
        if (++counter == 0) {
            std::fill(mark_a.begin(), mark_a.end(), 0);
            std::fill(mark_b.begin(), mark_b.end(), 0);
            std::fill(mark_best.begin(), mark_best.end(), 0);
            counter = 1;
        }
        return counter;
    }
    // Best key of w from the last run, or 0 if w was not reached.
    std::int32_t best_key(VertexId w) const {
        return mark_best[w] == best_token ? best[w] : 0;
    }
};

namespace detail {

// Hop-indexed DP for the h-hop reachable path key: P_1(s,v) = value of
// edge (s,v); P_d(s,w) = max over neighbors v of min(P_{d-1}(s,v),
// value(v,w)); P(s,w) = max over d <= h. Max-min over hop-bounded walks,
// which equals the max-min over simple paths of length <= h.
// Intermediate hops range over all vertices; results land in s.best.
template <class ValueFn>
void path_keys_run(const Graph& g, VertexId source, int h, ValueFn&& value,
                   PathKeyScratch& s) {
    s.ensure(g.vertex_count());
    s.best_token = s.fresh();

    auto* prev_key = &s.key_a;
    auto* cur_key = &s.key_b;
    auto* cur_mark = &s.mark_b;
    auto* prev_front = &s.frontier_a;
    auto* cur_front = &s.frontier_b;

    prev_front->clear();
    {
        auto ns = g.neighbors(source);
        auto es = g.incident_edges(source);
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const VertexId w = ns[i];
            const std::int32_t k = value(es[i]);
            (*prev_key)[w] = k;
            s.mark_best[w] = s.best_token;
            s.best[w] = k;
            prev_front->push_back(w);
        }
    }

    for (int d = 2; d <= h && !prev_front->empty(); ++d) {
        cur_front->clear();
        const std::uint32_t tok = s.fresh();
        for (VertexId v : *prev_front) {
            const std::int32_t pv = (*prev_key)[v];
            auto ns = g.neighbors(v);
            auto es = g.incident_edges(v);
            for (std::size_t i = 0; i < ns.size(); ++i) {
                const VertexId w = ns[i];
                const std::int32_t cand = std::min(pv, value(es[i]));
                if ((*cur_mark)[w] != tok) {
                    (*cur_mark)[w] = tok;
                    (*cur_key)[w] = cand;
                    cur_front->push_back(w);
                } else if (cand > (*cur_key)[w]) {
                    (*cur_key)[w] = cand;
                }
            }
        }
        for (VertexId w : *cur_front) {
            if (s.mark_best[w] != s.best_token) {
                s.mark_best[w] = s.best_token;
                s.best[w] = (*cur_key)[w];
            } else if ((*cur_key)[w] > s.best[w]) {
                s.best[w] = (*cur_key)[w];
            }
        }
        std::swap(prev_key, cur_key);
        std::swap(prev_front, cur_front);
        cur_mark = (cur_mark == &s.mark_b) ? &s.mark_a : &s.mark_b;
    }
}

}  // namespace detail

// P(source, w) for each target w, aligned with `targets`.
inline std::vector<std::int32_t> path_keys(const Graph& g, VertexId source,
                                           std::span<const VertexId> targets, int h,
                                           std::span<const std::int32_t> edge_values) {
    detail::require_h(h);
    PathKeyScratch s;
    detail::path_keys_run(g, source, h, [&](EdgeId e) { return edge_values[e]; }, s);
    std::vector<std::int32_t> out;
    out.reserve(targets.size());
    for (VertexId w : targets) out.push_back(s.best_key(w));
    return out;
}

// Per-worker state for compute_h_sup.
struct EngineScratch {
    PathKeyScratch pk;
    std::vector<std::int32_t> key_u, mins;
};

// One H-index evaluation for e = (u, v): H over
// { min(P(u,w), P(v,w)) : w in the cached common h-neighbor set of e }.
// `value` supplies the per-edge H values to read (previous-round
// snapshot in synchronous mode, live cells in asynchronous mode).
template <class ValueFn>
std::int32_t compute_h_sup(const Graph& g, const CommonNeighborCache& cache, EdgeId e,
                           int h, ValueFn&& value, EngineScratch& s) {
    const auto targets = cache.targets(e);
    if (targets.empty()) return 0;
    const auto [u, v] = g.edge(e);

    detail::path_keys_run(g, u, h, value, s.pk);
    s.key_u.clear();
    for (VertexId w : targets) s.key_u.push_back(s.pk.best_key(w));

    detail::path_keys_run(g, v, h, value, s.pk);
    s.mins.clear();
    for (std::size_t i = 0; i < targets.size(); ++i)
        s.mins.push_back(std::min(s.key_u[i], s.pk.best_key(targets[i])));

    return h_index(s.mins);
}

inline std::int32_t compute_h_sup(const Graph& g, const CommonNeighborCache& cache,
                                  EdgeId e, int h,
                                  std::span<const std::int32_t> edge_values) {
    detail::require_h(h);
    EngineScratch s;
    return compute_h_sup(g, cache, e, h, [&](EdgeId id) { return edge_values[id]; }, s);
}

// Edges whose H value can influence compute_h_sup(e): all edges with
// both endpoints within distance h of an endpoint of e (every edge on a
// length-<=h walk from u or v to a common h-neighbor lies in this ball).
// Excludes e itself.
inline std::vector<EdgeId> dependency_edges(const Graph& g, EdgeId e, int h,
                                            BfsScratch& s, BfsScratch& edge_seen) {
    detail::require_h(h);
    const auto [u, v] = g.edge(e);
    s.ensure(g.vertex_count());

    std::vector<VertexId> ball = {u, v};
    const VertexId seeds[2] = {u, v};
    detail::bounded_bfs(g, nullptr, seeds, static_cast<std::uint32_t>(h), s,
                        [&](VertexId w) { ball.push_back(w); });
    const std::uint32_t vtok = s.epoch;

    edge_seen.ensure(g.edge_count());
    const std::uint32_t etok = edge_seen.fresh();
    std::vector<EdgeId> out;
    for (VertexId x : ball) {
        auto ns = g.neighbors(x);
        auto es = g.incident_edges(x);
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const EdgeId ie = es[i];
            if (ie == e || edge_seen.stamp[ie] == etok) continue;
            if (s.stamp[ns[i]] != vtok) continue;
            edge_seen.stamp[ie] = etok;
            out.push_back(ie);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<EdgeId> dependency_edges(const Graph& g, EdgeId e, int h) {
    BfsScratch s, edge_seen;
    return dependency_edges(g, e, h, s, edge_seen);
}

// Cached dependency sets for the pruning rule. Edges whose set exceeds
// `cap` store nothing and are always recomputed.
class DependencyCache {
public:
    static DependencyCache build(const Graph& g, int h, std::size_t cap,
                                 int workers = 1) {
        const std::size_t m = g.edge_count();
        std::vector<std::vector<EdgeId>> per_edge(m);
        std::vector<std::uint8_t> capped(m, 0);
        parallel_for_blocks(workers, m, [&](int, std::size_t lo, std::size_t hi) {
            BfsScratch s, edge_seen;
            for (std::size_t e = lo; e < hi; ++e) {
                auto deps = dependency_edges(g, static_cast<EdgeId>(e), h, s, edge_seen);
                if (deps.size() > cap)
                    capped[e] = 1;
                else
                    per_edge[e] = std::move(deps);
            }
        });

        DependencyCache c;
        c.capped_ = std::move(capped);
        c.offsets_.assign(m + 1, 0);
        for (std::size_t e = 0; e < m; ++e)
            c.offsets_[e + 1] = c.offsets_[e] + per_edge[e].size();
        c.ids_.resize(c.offsets_[m]);
        for (std::size_t e = 0; e < m; ++e)
            std::copy(per_edge[e].begin(), per_edge[e].end(),
                      c.ids_.begin() + static_cast<std::ptrdiff_t>(c.offsets_[e]));
        return c;
    }

    bool capped(EdgeId e) const { return capped_[e] != 0; }
    std::span<const EdgeId> deps(EdgeId e) const {
        return {ids_.data() + offsets_[e], ids_.data() + offsets_[e + 1]};
    }

private:
    std::vector<std::size_t> offsets_;
    std::vector<EdgeId> ids_;
    std::vector<std::uint8_t> capped_;
};

// H-index iteration state. previous is only used by synchronous rounds.
struct HState {
    HSupportArray current;
    HSupportArray previous;
    int round = 0;
};

struct EngineOptions {
    // Called after every sweep with (round, current values); controlling
    // thread only, values quiescent.
    std::function<void(int, std::span<const std::int32_t>)> round_observer;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::size_t dependency_cap = 4096;  // pruned mode only
};

namespace detail {

inline void check_engine_args(int h, int workers) {
    require_h(h);
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

struct SweepControl {
    std::atomic<bool> changed{false};
    std::atomic<bool> abort{false};
};

inline void throw_if_aborted(const SweepControl& ctl) {
    if (ctl.abort.load(std::memory_order_relaxed))
        throw TimeoutError("decomposition deadline exceeded");
}

inline bool deadline_hit(const EngineOptions& opts) {
    return opts.deadline && std::chrono::steady_clock::now() > *opts.deadline;
}

inline RunStats make_stats(Mode mode, const Graph& g, int h, int workers) {
    RunStats st;
    st.mode = mode;
    st.h = h;
    st.workers = workers;
    st.vertex_count = static_cast<std::int64_t>(g.vertex_count());
    st.edge_count = static_cast<std::int64_t>(g.edge_count());
    return st;
}

inline DecompositionResult finish(const Graph&, int h, HState&& state, RunStats st,
                                  std::chrono::steady_clock::time_point t0) {
    DecompositionResult out;
    out.result.h = h;
    out.result.trussness.resize(state.current.size());
    for (std::size_t e = 0; e < state.current.size(); ++e)
        out.result.trussness[e] = state.current[e] + 2;
    st.rounds = state.round;
    out.stats = st;
    out.stats.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return out;
}

}  // namespace detail

// Synchronous rounds: every edge recomputed from the previous-round
// snapshot; deterministic for any worker count.
inline DecompositionResult decompose_sync(const Graph& g, int h, int workers,
                                          const EngineOptions& opts = {}) {
    detail::check_engine_args(h, workers);
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t m = g.edge_count();

    const auto cache = CommonNeighborCache::build(g, h, workers);
    HState state;
    state.current.resize(m);
    state.previous.resize(m);
    for (EdgeId e = 0; e < m; ++e) state.current[e] = cache.support(e);

    RunStats st = detail::make_stats(Mode::sync, g, h, workers);
    std::vector<EngineScratch> ws(static_cast<std::size_t>(workers));
    std::vector<std::int64_t> evals(static_cast<std::size_t>(workers), 0);

    bool changed = true;
    while (changed) {
        ++state.round;
        state.previous.swap(state.current);
        const auto& prev = state.previous;
        auto& cur = state.current;

        detail::SweepControl ctl;
        const bool timed = opts.deadline.has_value();
        parallel_for_blocks(workers, m, [&](int w, std::size_t lo, std::size_t hi) {
            auto& scratch = ws[static_cast<std::size_t>(w)];
            auto read = [&prev](EdgeId id) { return prev[id]; };
            for (std::size_t e = lo; e < hi; ++e) {
                if (ctl.abort.load(std::memory_order_relaxed)) return;
                if (timed && (e & 255u) == 0 && detail::deadline_hit(opts))
                    ctl.abort.store(true, std::memory_order_relaxed);
                const std::int32_t nv =
                    compute_h_sup(g, cache, static_cast<EdgeId>(e), h, read, scratch);
                assert(nv <= prev[e]);
                cur[e] = nv;
                ++evals[static_cast<std::size_t>(w)];
                if (nv != prev[e]) ctl.changed.store(true, std::memory_order_relaxed);
            }
        });
        detail::throw_if_aborted(ctl);
        changed = ctl.changed.load();
        if (opts.round_observer) opts.round_observer(state.round, state.current);
    }

    for (std::int64_t c : evals) st.evaluations += c;
    return detail::finish(g, h, std::move(state), st, t0);
}

namespace detail {

// Shared sweep body for the asynchronous engines. Recomputes the edges
// of [lo, hi) in EdgeId order reading live cells; returns via ctl.
template <class ShouldCompute, class Record>
void async_sweep_range(const Graph& g, const CommonNeighborCache& cache, int h,
                       HSupportArray& values, std::size_t lo, std::size_t hi,
                       EngineScratch& scratch, SweepControl& ctl, bool timed,
                       const EngineOptions& opts, std::int64_t& evals,
                       std::int64_t& skips, ShouldCompute&& should_compute,
                       Record&& record) {
    auto read = [&values](EdgeId id) {
        return std::atomic_ref<std::int32_t>(values[id]).load(std::memory_order_relaxed);
    };
    for (std::size_t e = lo; e < hi; ++e) {
        if (ctl.abort.load(std::memory_order_relaxed)) return;
        if (timed && (e & 255u) == 0 && deadline_hit(opts))
            ctl.abort.store(true, std::memory_order_relaxed);
        const auto id = static_cast<EdgeId>(e);
        const std::int32_t old = values[e];  // single writer per cell
        if (!should_compute(id, old)) {
            ++skips;
            record(id, old, old);
            continue;
        }
        const std::int32_t nv = compute_h_sup(g, cache, id, h, read, scratch);
        assert(nv <= old);
        ++evals;
        if (nv != old) {
            std::atomic_ref<std::int32_t>(values[e]).store(nv, std::memory_order_relaxed);
            ctl.changed.store(true, std::memory_order_relaxed);
        }
        record(id, old, nv);
    }
}

}  // namespace detail

// Asynchronous sweeps: one fixed-order pass per round over a single live
// array; reads see the freshest available values. Same fixpoint as
// decompose_sync, usually in fewer rounds.
inline DecompositionResult decompose_async(const Graph& g, int h, int workers,
                                           const EngineOptions& opts = {}) {
    detail::check_engine_args(h, workers);
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t m = g.edge_count();

    const auto cache = CommonNeighborCache::build(g, h, workers);
    HState state;
    state.current.resize(m);
    for (EdgeId e = 0; e < m; ++e) state.current[e] = cache.support(e);

    RunStats st = detail::make_stats(Mode::async, g, h, workers);
    std::vector<EngineScratch> ws(static_cast<std::size_t>(workers));
    std::vector<std::int64_t> evals(static_cast<std::size_t>(workers), 0);
    const bool timed = opts.deadline.has_value();

    bool changed = true;
    while (changed) {
        ++state.round;
        detail::SweepControl ctl;
        parallel_for_blocks(workers, m, [&](int w, std::size_t lo, std::size_t hi) {
            std::int64_t skips = 0;
            detail::async_sweep_range(
                g, cache, h, state.current, lo, hi, ws[static_cast<std::size_t>(w)], ctl,
                timed, opts, evals[static_cast<std::size_t>(w)], skips,
                [](EdgeId, std::int32_t) { return true; },
                [](EdgeId, std::int32_t, std::int32_t) {});
        });
        detail::throw_if_aborted(ctl);
        changed = ctl.changed.load();
        if (opts.round_observer) opts.round_observer(state.round, state.current);
    }

    for (std::int64_t c : evals) st.evaluations += c;
    return detail::finish(g, h, std::move(state), st, t0);
}

// Asynchronous sweeps plus the skip rule: edge e is not recomputed in a
// sweep when every dependency either (i) kept its value last sweep,
// (ii) dropped from an old value already below e's current value, or
// (iii) dropped to a new value still >= e's current value. None of these
// can lower e's H-index, so skipped edges keep their value.
inline DecompositionResult decompose_pruned(const Graph& g, int h, int workers,
                                            const EngineOptions& opts = {}) {
    detail::check_engine_args(h, workers);
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t m = g.edge_count();

    const auto cache = CommonNeighborCache::build(g, h, workers);
    const auto deps = DependencyCache::build(g, h, opts.dependency_cap, workers);
    HState state;
    state.current.resize(m);
    for (EdgeId e = 0; e < m; ++e) state.current[e] = cache.support(e);

    RunStats st = detail::make_stats(Mode::pruned, g, h, workers);
    std::vector<EngineScratch> ws(static_cast<std::size_t>(workers));
    std::vector<std::int64_t> evals(static_cast<std::size_t>(workers), 0);
    std::vector<std::int64_t> skips(static_cast<std::size_t>(workers), 0);
    const bool timed = opts.deadline.has_value();

    // (old, new) value pairs from the previous sweep, read-only during
    // the current one; each edge's slots have a single writer.
    HSupportArray prev_old(m), prev_new(m), cur_old(m), cur_new(m);

    bool changed = true;
    while (changed) {
        ++state.round;
        const bool first = state.round == 1;
        detail::SweepControl ctl;
        parallel_for_blocks(workers, m, [&](int w, std::size_t lo, std::size_t hi) {
            auto skippable = [&](EdgeId e, std::int32_t cur) {
                if (first || deps.capped(e)) return false;
                for (EdgeId d : deps.deps(e)) {
                    const std::int32_t o = prev_old[d];
                    const std::int32_t n = prev_new[d];
                    if (o == n) continue;       // (i) unchanged
                    if (o < cur) continue;      // (ii) was already below
                    if (n >= cur) continue;     // (iii) still at or above
                    return false;
                }
                return true;
            };
            detail::async_sweep_range(
                g, cache, h, state.current, lo, hi, ws[static_cast<std::size_t>(w)], ctl,
                timed, opts, evals[static_cast<std::size_t>(w)],
                skips[static_cast<std::size_t>(w)],
                [&](EdgeId e, std::int32_t cur) { return !skippable(e, cur); },
                [&](EdgeId e, std::int32_t o, std::int32_t n) {
                    cur_old[e] = o;
                    cur_new[e] = n;
                });
        });
        detail::throw_if_aborted(ctl);
        changed = ctl.changed.load();
        prev_old.swap(cur_old);
        prev_new.swap(cur_new);
        if (opts.round_observer) opts.round_observer(state.round, state.current);
    }

    for (std::int64_t c : evals) st.evaluations += c;
    for (std::int64_t c : skips) st.skipped += c;
    return detail::finish(g, h, std::move(state), st, t0);
}

// One synchronous application of the H-index operator to `values`.
inline HSupportArray compute_all_h_sup(const Graph& g, const CommonNeighborCache& cache,
                                       int h, const HSupportArray& values,
                                       int workers = 1) {
    HSupportArray out(values.size());
    parallel_for_blocks(workers, values.size(), [&](int, std::size_t lo, std::size_t hi) {
        EngineScratch s;
        auto read = [&values](EdgeId id) { return values[id]; };
        for (std::size_t e = lo; e < hi; ++e)
            out[e] = compute_h_sup(g, cache, static_cast<EdgeId>(e), h, read, s);
    });
    return out;
}

}  // namespace khtruss
