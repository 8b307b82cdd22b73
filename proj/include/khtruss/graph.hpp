// Immutable undirected simple graph in CSR form with a dense edge index,
// plus hop-bounded neighborhood primitives (h-hop neighbors, common
// h-neighbors, h-support) on the full graph or on a masked subgraph.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "khtruss/parallel.hpp"

namespace khtruss {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Per-edge h-support (or H-index) values, indexed by EdgeId.
using HSupportArray = std::vector<std::int32_t>;

class Graph {
public:
    Graph() = default;

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }

    // Neighbors of v, ascending. incident_edges(v)[i] is the EdgeId of
    // the edge (v, neighbors(v)[i]).
    std::span<const VertexId> neighbors(VertexId v) const {
        return {nbr_.data() + offsets_[v], nbr_.data() + offsets_[v + 1]};
    }
    std::span<const EdgeId> incident_edges(VertexId v) const {
        return {eid_.data() + offsets_[v], eid_.data() + offsets_[v + 1]};
    }
    std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

    // Endpoints of e as (u, v) with u < v.
    std::pair<VertexId, VertexId> edge(EdgeId e) const { return edges_[e]; }

    static constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

    // Dense id of the undirected edge {u, v}, or kNoEdge if absent.
    EdgeId edge_id(VertexId u, VertexId v) const {
        if (u == v || u >= vertex_count_ || v >= vertex_count_) return kNoEdge;
        if (degree(u) > degree(v)) std::swap(u, v);
        auto ns = neighbors(u);
        auto it = std::lower_bound(ns.begin(), ns.end(), v);
        if (it == ns.end() || *it != v) return kNoEdge;
        return incident_edges(u)[static_cast<std::size_t>(it - ns.begin())];
    }

    bool has_edge(VertexId u, VertexId v) const { return edge_id(u, v) != kNoEdge; }

    friend Graph build_graph(const std::vector<std::pair<std::int64_t, std::int64_t>>& edges);

private:
    std::size_t vertex_count_ = 0;
    std::vector<std::size_t> offsets_;             // size vertex_count_+1
    std::vector<VertexId> nbr_;                    // sorted per vertex
    std::vector<EdgeId> eid_;                      // parallel to nbr_
    std::vector<std::pair<VertexId, VertexId>> edges_;  // lexicographic, u < v
};

// Builds a simple graph: self-loops dropped, duplicates and reverse
// orientations collapsed. EdgeIds follow the lexicographic order of the
// normalized (u, v) pairs. vertex_count = 1 + max id seen.
inline Graph build_graph(const std::vector<std::pair<std::int64_t, std::int64_t>>& edges) {
    // Keep ids well inside int32 so support counts always fit.
    constexpr std::int64_t kMaxId = std::numeric_limits<std::int32_t>::max() - 2;

    std::int64_t max_id = -1;
    std::vector<std::pair<VertexId, VertexId>> cleaned;
    cleaned.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0)
            throw std::invalid_argument("build_graph: negative vertex id");
        if (a > kMaxId || b > kMaxId)
            throw std::invalid_argument("build_graph: vertex id " +
                                        std::to_string(std::max(a, b)) +
                                        " exceeds supported index width");
        max_id = std::max({max_id, a, b});
        if (a == b) continue;
        auto u = static_cast<VertexId>(std::min(a, b));
        auto v = static_cast<VertexId>(std::max(a, b));
        cleaned.emplace_back(u, v);
    }
    std::sort(cleaned.begin(), cleaned.end());
    cleaned.erase(std::unique(cleaned.begin(), cleaned.end()), cleaned.end());

    Graph g;
    g.vertex_count_ = static_cast<std::size_t>(max_id + 1);
    g.edges_ = std::move(cleaned);

    const std::size_t n = g.vertex_count_;
    const std::size_t m = g.edges_.size();
    g.offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : g.edges_) {
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (std::size_t i = 1; i <= n; ++i) g.offsets_[i] += g.offsets_[i - 1];

    g.nbr_.resize(2 * m);
    g.eid_.resize(2 * m);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (EdgeId e = 0; e < m; ++e) {
        const auto [u, v] = g.edges_[e];
        g.nbr_[cursor[u]] = v;
        g.eid_[cursor[u]++] = e;
        g.nbr_[cursor[v]] = u;
        g.eid_[cursor[v]++] = e;
    }
    // Edge list is lexicographically sorted, so per-vertex neighbor runs
    // come out ascending except for the mixed u/v interleaving; fix up.
    for (VertexId v = 0; v < n; ++v) {
        auto b = g.offsets_[v], e = g.offsets_[v + 1];
        std::vector<std::pair<VertexId, EdgeId>> tmp;
        tmp.reserve(e - b);
        for (auto i = b; i < e; ++i) tmp.emplace_back(g.nbr_[i], g.eid_[i]);
        std::sort(tmp.begin(), tmp.end());
        for (auto i = b; i < e; ++i) {
            g.nbr_[i] = tmp[i - b].first;
            g.eid_[i] = tmp[i - b].second;
        }
    }
    return g;
}

// Edge liveness during peeling. The alive subgraph is always a subgraph
// of the original Graph.
struct EdgeMask {
    std::vector<std::uint8_t> alive;

    static EdgeMask all_alive(std::size_t edge_count) {
        EdgeMask m;
        m.alive.assign(edge_count, 1);
        return m;
    }
    bool is_alive(EdgeId e) const { return alive[e] != 0; }
    void remove(EdgeId e) { alive[e] = 0; }
};

// Reusable frontier/stamp buffers for the hop-bounded BFS primitives.
// One instance per worker; never shared concurrently.
struct BfsScratch {
    std::vector<std::uint32_t> stamp;
    std::vector<VertexId> frontier, next;
    std::uint32_t epoch = 0;

    void ensure(std::size_t n) {
        if (stamp.size() < n) stamp.resize(n, 0);
    }
    std::uint32_t fresh() {
        if (++epoch == 0) {
            std::fill(stamp.begin(), stamp.end(), 0);
            epoch = 1;
        }
        return epoch;
    }
};

namespace detail {

// Level-bounded BFS from the seed set. Visits every vertex within
// distance `radius` of a seed (seeds themselves at distance 0) and calls
// visit(w) exactly once per newly reached vertex, seeds excluded.
// A null `alive` means all edges are alive.
template <class Visit>
void bounded_bfs(const Graph& g, const std::uint8_t* alive,
                 std::span<const VertexId> seeds, std::uint32_t radius,
                 BfsScratch& s, Visit&& visit) {
    s.ensure(g.vertex_count());
    const std::uint32_t tok = s.fresh();
    s.frontier.clear();
    for (VertexId v : seeds) {
        if (s.stamp[v] == tok) continue;
        s.stamp[v] = tok;
        s.frontier.push_back(v);
    }
    for (std::uint32_t d = 1; d <= radius && !s.frontier.empty(); ++d) {
        s.next.clear();
        for (VertexId v : s.frontier) {
            auto ns = g.neighbors(v);
            auto es = g.incident_edges(v);
            for (std::size_t i = 0; i < ns.size(); ++i) {
                if (alive && !alive[es[i]]) continue;
                const VertexId w = ns[i];
                if (s.stamp[w] == tok) continue;
                s.stamp[w] = tok;
                visit(w);
                s.next.push_back(w);
            }
        }
        s.frontier.swap(s.next);
    }
}

inline void require_h(int h) {
    if (h < 1) throw std::invalid_argument("h must be >= 1");
}

}  // namespace detail

// All w != v with alive-subgraph distance dist(v, w) <= h, ascending.
inline std::vector<VertexId> h_neighbors(const Graph& g, const EdgeMask& mask,
                                         VertexId v, int h, BfsScratch& s) {
    detail::require_h(h);
    assert(v < g.vertex_count());
    std::vector<VertexId> out;
    const VertexId seed[1] = {v};
    detail::bounded_bfs(g, mask.alive.data(), seed, static_cast<std::uint32_t>(h), s,
                        [&](VertexId w) { out.push_back(w); });
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<VertexId> h_neighbors(const Graph& g, const EdgeMask& mask,
                                         VertexId v, int h) {
    BfsScratch s;
    return h_neighbors(g, mask, v, h, s);
}

// Common h-neighbors of e = (u, v): vertices within alive-subgraph
// distance h of both endpoints. Never contains u or v.
inline std::vector<VertexId> common_h_neighbors(const Graph& g, const EdgeMask& mask,
                                                EdgeId e, int h, BfsScratch& s,
                                                BfsScratch& s2) {
    detail::require_h(h);
    const auto [u, v] = g.edge(e);

    // Mark the h-ball of u in s, then scan the h-ball of v against it.
    s.ensure(g.vertex_count());
    const VertexId seed_u[1] = {u};
    std::uint32_t ball_tok = 0;
    detail::bounded_bfs(g, mask.alive.data(), seed_u, static_cast<std::uint32_t>(h), s,
                        [](VertexId) {});
    ball_tok = s.epoch;

    std::vector<VertexId> out;
    const VertexId seed_v[1] = {v};
    detail::bounded_bfs(g, mask.alive.data(), seed_v, static_cast<std::uint32_t>(h), s2,
                        [&](VertexId w) {
                            if (w != u && w != v && s.stamp[w] == ball_tok)
                                out.push_back(w);
                        });
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<VertexId> common_h_neighbors(const Graph& g, const EdgeMask& mask,
                                                EdgeId e, int h) {
    BfsScratch s, s2;
    return common_h_neighbors(g, mask, e, h, s, s2);
}

inline std::int32_t h_support(const Graph& g, const EdgeMask& mask, EdgeId e, int h,
                              BfsScratch& s, BfsScratch& s2) {
    return static_cast<std::int32_t>(common_h_neighbors(g, mask, e, h, s, s2).size());
}

inline std::int32_t h_support(const Graph& g, const EdgeMask& mask, EdgeId e, int h) {
    BfsScratch s, s2;
    return h_support(g, mask, e, h, s, s2);
}

// h-support of every edge on the full graph (all edges alive).
inline HSupportArray all_h_supports(const Graph& g, int h, int workers = 1) {
    detail::require_h(h);
    const std::size_t m = g.edge_count();
    HSupportArray out(m, 0);
    EdgeMask mask = EdgeMask::all_alive(m);
    parallel_for_blocks(workers, m, [&](int, std::size_t lo, std::size_t hi) {
        BfsScratch s, s2;
        for (std::size_t e = lo; e < hi; ++e)
            out[e] = h_support(g, mask, static_cast<EdgeId>(e), h, s, s2);
    });
    return out;
}

}  // namespace khtruss
