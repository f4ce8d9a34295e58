#pragma once

// Thread pool sizing and a deterministic parallel fill. Results are written
// into a caller-provided vector indexed by work item, so reductions done
// afterwards are independent of the thread count. MOMENTLAB_THREADS caps the
// number of workers.

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace momentlab {

inline int thread_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("MOMENTLAB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1 && v <= 256) n = static_cast<int>(v);
    }
    return n;
}

// fill out[i] = f(i) for i in [0, n); out must already have size n
template <typename F, typename T>
void parallel_fill(std::size_t n, const F& f, std::vector<T>& out) {
    int workers = thread_count();
    if (workers <= 1 || n < 256) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return;
    }
    if (static_cast<std::size_t>(workers) > n) workers = static_cast<int>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi]() {
            for (std::size_t i = lo; i < hi; ++i) out[i] = f(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace momentlab
