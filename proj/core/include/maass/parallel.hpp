#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace maass {

// Deterministic parallel map: items are split into fixed contiguous blocks,
// one per worker, and results land in preallocated slots, so the output is
// identical for any scheduling at a fixed worker count.
template <class T>
std::vector<T> parallel_map(std::size_t n, int workers,
                            const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(n);
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::size_t w = std::min<std::size_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::size_t k = 0; k < w; ++k) {
        pool.emplace_back([&, k] {
            for (std::size_t i = k; i < n; i += w) out[i] = fn(i);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

} // namespace maass
