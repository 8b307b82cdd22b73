#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace khtruss {

inline int default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Static block partition of [0, total) across `workers` threads.
// fn(worker_index, begin, end) runs on worker 0 in the calling thread.
// Join provides the inter-round synchronization the engines rely on.
template <class Fn>
void parallel_for_blocks(int workers, std::size_t total, Fn&& fn) {
    if (workers <= 1 || total == 0) {
        fn(0, std::size_t{0}, total);
        return;
    }
    const auto w = static_cast<std::size_t>(workers);
    const std::size_t block = (total + w - 1) / w;
    std::vector<std::thread> pool;
    pool.reserve(w - 1);
    for (std::size_t i = 1; i < w; ++i) {
        const std::size_t lo = std::min(total, i * block);
        const std::size_t hi = std::min(total, lo + block);
        pool.emplace_back([&fn, i, lo, hi] { fn(static_cast<int>(i), lo, hi); });
    }
    fn(0, std::size_t{0}, std::min(total, block));
    for (auto& t : pool) t.join();
}

}  // namespace khtruss
