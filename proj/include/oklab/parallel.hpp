#ifndef OKLAB_PARALLEL_HPP
#define OKLAB_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace oklab {

/* Worker count for data-parallel loops, taken from OKOUNKOV_THREADS.
 * Unset or invalid values fall back to single-threaded execution. */
inline unsigned worker_count() {
    if (const char* s = std::getenv("OKOUNKOV_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && v >= 1 && v <= 256) return static_cast<unsigned>(v);
    }
    return 1;
}

/* Run fn(i) for i in [0, count), split into contiguous chunks across the
 * configured workers. The first exception thrown by any worker is rethrown. */
inline void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        size_t lo = static_cast<size_t>(w) * chunk;
        size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, &errors, lo, hi, w] {
            try {
                for (size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace oklab

#endif
