#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace rcs {

// Static block partition of [begin, end) over at most `workers` threads.
// Callers write to disjoint, index-addressed slots, so the result is
// identical for any worker count.
template <typename F>
void parallel_for(std::size_t begin, std::size_t end, int workers, F&& body) {
    const std::size_t count = end > begin ? end - begin : 0;
    if (count == 0) return;
    std::size_t nthreads = workers > 1 ? static_cast<std::size_t>(workers) : 1;
    if (nthreads > count) nthreads = count;
    if (nthreads <= 1) {
        for (std::size_t i = begin; i < end; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    const std::size_t chunk = (count + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
        const std::size_t lo = begin + t * chunk;
        const std::size_t hi = lo + chunk < end ? lo + chunk : end;
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace rcs
