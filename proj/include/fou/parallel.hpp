#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace fou {

/// Run fn(begin, end) over a partition of [0, count) on `workers` threads.
/// Chunk boundaries depend only on (count, workers); callers that index
/// output slots and RNG streams by item stay deterministic regardless of
/// scheduling. The first exception thrown by any worker is rethrown.
template <class Fn>
void parallel_chunks(std::size_t count, int workers, Fn&& fn) {
    if (count == 0) return;
    const auto n_workers = static_cast<std::size_t>(std::max(workers, 1));
    if (n_workers == 1 || count == 1) {
        fn(std::size_t{0}, count);
        return;
    }
    const std::size_t n_threads = std::min(n_workers, count);
    const std::size_t base = count / n_threads;
    const std::size_t extra = count % n_threads;

    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(n_threads);
    std::size_t begin = 0;
    for (std::size_t i = 0; i < n_threads; ++i) {
        const std::size_t len = base + (i < extra ? 1 : 0);
        const std::size_t end = begin + len;
        threads.emplace_back([&, i, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Number of hardware threads, with a sane fallback.
inline int default_workers() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

} // namespace fou
