#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace scldpcl {

inline int default_jobs() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// Runs fn(begin, end) over contiguous chunks of [0, n). jobs <= 0 means all cores.
// Aggregation stays deterministic as long as callers combine per-chunk results
// by index, not by completion order.
inline void parallel_chunks(long n, int jobs, const std::function<void(long, long)>& fn) {
    if (jobs <= 0) jobs = default_jobs();
    if (n <= 0) return;
    if (jobs == 1 || n == 1) {
        fn(0, n);
        return;
    }
    int workers = static_cast<int>(std::min<long>(jobs, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    long chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        long b = w * chunk;
        long e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace scldpcl
