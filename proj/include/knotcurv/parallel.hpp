#pragma once

#include <cstddef>
#include <span>
#include <thread>
#include <vector>

namespace knotcurv {

/// Effective worker count: 0 means "use the hardware".
inline unsigned resolve_workers(unsigned workers) {
    if (workers != 0)
        return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Pairwise (balanced-tree) summation. The reduction shape depends only on
/// the element count, so the result is bitwise identical however the
/// elements were produced.
inline double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0)
        return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double v : values)
            s += v;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

/// Runs fn(row) for row in [0, rows) across `workers` threads. Rows write
/// into fixed slots of caller-owned storage; combined with pairwise_sum
/// this gives a reduction whose value does not depend on the worker count.
template <typename RowFn>
void parallel_for(std::size_t rows, unsigned workers, RowFn&& fn) {
    const unsigned w = std::min<unsigned>(resolve_workers(workers),
                                          rows == 0 ? 1u : static_cast<unsigned>(rows));
    if (w <= 1) {
        for (std::size_t r = 0; r < rows; ++r)
            fn(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned t = 0; t < w; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t r = t; r < rows; r += w)
                fn(r);
        });
    }
    for (auto& th : pool)
        th.join();
}

}  // namespace knotcurv
