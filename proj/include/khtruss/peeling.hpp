// Sequential bin-sort peeling decomposition (the ground-truth oracle)
// and a definitional brute-force checker for tiny graphs.
#pragma once

#include <cassert>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "khtruss/graph.hpp"
#include "khtruss/stats.hpp"

namespace khtruss {

// Bucket queue over candidate trussness levels k = support + 2.
// bin_of is the per-edge locator; removed edges carry -1.
class BinQueue {
public:
    BinQueue(const HSupportArray& supports) {
        std::int32_t ub = 2;
        for (std::int32_t s : supports) ub = std::max(ub, s + 2);
        bins_.resize(static_cast<std::size_t>(ub) + 1);
        bin_of_.resize(supports.size());
        for (EdgeId e = 0; e < supports.size(); ++e) {
            const std::int32_t k = supports[e] + 2;
            bins_[static_cast<std::size_t>(k)].insert(e);
            bin_of_[e] = k;
        }
    }

    std::int32_t max_level() const { return static_cast<std::int32_t>(bins_.size()) - 1; }
    bool empty_at(std::int32_t k) const { return bins_[static_cast<std::size_t>(k)].empty(); }

    EdgeId pop(std::int32_t k, bool reversed) {
        auto& bin = bins_[static_cast<std::size_t>(k)];
        assert(!bin.empty());
        const EdgeId e = reversed ? *bin.rbegin() : *bin.begin();
        bin.erase(e);
        bin_of_[e] = -1;
        return e;
    }

    void move(EdgeId e, std::int32_t k) {
        if (bin_of_[e] == k) return;
        bins_[static_cast<std::size_t>(bin_of_[e])].erase(e);
        bins_[static_cast<std::size_t>(k)].insert(e);
        bin_of_[e] = k;
    }

    std::int32_t level_of(EdgeId e) const { return bin_of_[e]; }

private:
    std::vector<std::set<EdgeId>> bins_;
    std::vector<std::int32_t> bin_of_;
};

struct PeelOptions {
    bool reverse_pop = false;  // pop highest EdgeId first (tie-break determinism check)
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Alive edges whose h-support can drop when e is removed: every alive
// edge with an endpoint within distance h-1 (pre-removal distances) of
// either endpoint of e. Precondition: e already masked out. Multi-source
// BFS from both endpoints on the post-removal mask yields the same ball.
inline std::vector<EdgeId> affected_edges(const Graph& g, const EdgeMask& mask,
                                          EdgeId e, int h, BfsScratch& s,
                                          BfsScratch& edge_seen) {
    detail::require_h(h);
    const auto [u, v] = g.edge(e);
    edge_seen.ensure(g.edge_count());
    const std::uint32_t etok = edge_seen.fresh();

    std::vector<EdgeId> out;
    auto collect_incident = [&](VertexId w) {
        auto es = g.incident_edges(w);
        for (EdgeId ie : es) {
            if (!mask.is_alive(ie)) continue;
            if (edge_seen.stamp[ie] == etok) continue;
            edge_seen.stamp[ie] = etok;
            out.push_back(ie);
        }
    };

    const VertexId seeds[2] = {u, v};
    collect_incident(u);
    collect_incident(v);
    detail::bounded_bfs(g, mask.alive.data(), seeds,
                        static_cast<std::uint32_t>(h - 1), s, collect_incident);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<EdgeId> affected_edges(const Graph& g, const EdgeMask& mask,
                                          EdgeId e, int h) {
    BfsScratch s, edge_seen;
    return affected_edges(g, mask, e, h, s, edge_seen);
}

// Bin-sort peeling: removes edges in non-decreasing level order,
// recomputing the h-support of affected edges under the shrinking mask.
// t(e, h) is the level at which e is popped.
inline DecompositionResult peel(const Graph& g, int h, const PeelOptions& opts = {}) {
    detail::require_h(h);
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t m = g.edge_count();

    HSupportArray sup = all_h_supports(g, h);
    BinQueue bins(sup);
    EdgeMask mask = EdgeMask::all_alive(m);
    BfsScratch s1, s2, edge_seen;

    DecompositionResult out;
    out.result.h = h;
    out.result.trussness.assign(m, 2);
    out.stats.mode = Mode::peel;
    out.stats.h = h;
    out.stats.workers = 1;
    out.stats.vertex_count = static_cast<std::int64_t>(g.vertex_count());
    out.stats.edge_count = static_cast<std::int64_t>(m);

    std::size_t pops = 0;
    for (std::int32_t k = 2; k <= bins.max_level(); ++k) {
        while (!bins.empty_at(k)) {
            const EdgeId e = bins.pop(k, opts.reverse_pop);
            out.result.trussness[e] = k;
            mask.remove(e);
            if (opts.deadline && (++pops & 1023u) == 0 &&
                std::chrono::steady_clock::now() > *opts.deadline)
                throw TimeoutError("peel: deadline exceeded");

            for (EdgeId a : affected_edges(g, mask, e, h, s1, edge_seen)) {
                if (sup[a] <= k - 2) continue;
                const std::int32_t ns = h_support(g, mask, a, h, s1, s2);
                assert(ns <= sup[a]);  // supports cannot rise under deletion
                sup[a] = ns;
                ++out.stats.evaluations;
                bins.move(a, std::max(ns + 2, k));
            }
        }
    }

    out.stats.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return out;
}

// Definitional checker: for k = 2, 3, ... repeatedly delete any edge
// whose in-subgraph h-support is < k-1; edges removed while computing the
// (k+1)-level fixpoint get t = k. Recomputes supports from scratch after
// every deletion. Test oracle for graphs up to a few hundred edges.
inline TrussnessResult brute_force_decompose(const Graph& g, int h) {
    detail::require_h(h);
    const std::size_t m = g.edge_count();
    TrussnessResult res;
    res.h = h;
    res.trussness.assign(m, 2);

    EdgeMask mask = EdgeMask::all_alive(m);
    BfsScratch s1, s2;
    std::size_t alive = m;
    for (std::int32_t k = 2; alive > 0; ++k) {
        bool deleted = true;
        while (deleted) {
            deleted = false;
            for (EdgeId e = 0; e < m; ++e) {
                if (!mask.is_alive(e)) continue;
                if (h_support(g, mask, e, h, s1, s2) < k - 1) {
                    res.trussness[e] = k;
                    mask.remove(e);
                    --alive;
                    deleted = true;
                }
            }
        }
    }
    return res;
}

}  // namespace khtruss
