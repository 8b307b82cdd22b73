// Seeded synthetic graph generators for tests and benchmarks.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace khtruss {

using EdgeList = std::vector<std::pair<std::int64_t, std::int64_t>>;

// G(n, p): each of the C(n, 2) edges present independently with
// probability p.
inline EdgeList erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("erdos_renyi: p not in [0,1]");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    EdgeList edges;
    for (std::size_t u = 0; u + 1 < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(rng))
                edges.emplace_back(static_cast<std::int64_t>(u),
                                   static_cast<std::int64_t>(v));
    // Keep vertex n-1 represented even if it drew no edges.
    if (n >= 2 && edges.empty()) edges.emplace_back(0, 1);
    return edges;
}

// Preferential attachment: seed clique on attach+1 vertices, then each
// new vertex attaches to `attach` distinct existing vertices sampled
// proportionally to degree.
inline EdgeList barabasi_albert(std::size_t n, std::size_t attach, std::uint64_t seed) {
    if (attach < 1) throw std::invalid_argument("barabasi_albert: attach must be >= 1");
    if (n < attach + 1)
        throw std::invalid_argument("barabasi_albert: need n >= attach + 1");
    std::mt19937_64 rng(seed);

    EdgeList edges;
    std::vector<std::size_t> repeated;  // endpoint multiset, degree-proportional
    for (std::size_t u = 0; u < attach + 1; ++u)
        for (std::size_t v = u + 1; v < attach + 1; ++v) {
            edges.emplace_back(static_cast<std::int64_t>(u),
                               static_cast<std::int64_t>(v));
            repeated.push_back(u);
            repeated.push_back(v);
        }

    std::vector<std::size_t> picked;
    for (std::size_t v = attach + 1; v < n; ++v) {
        picked.clear();
        while (picked.size() < attach) {
            std::uniform_int_distribution<std::size_t> pick(0, repeated.size() - 1);
            const std::size_t t = repeated[pick(rng)];
            bool dup = false;
            for (std::size_t q : picked) dup = dup || (q == t);
            if (!dup) picked.push_back(t);
        }
        for (std::size_t t : picked) {
            edges.emplace_back(static_cast<std::int64_t>(v), static_cast<std::int64_t>(t));
            repeated.push_back(v);
            repeated.push_back(t);
        }
    }
    return edges;
}

}  // namespace khtruss
