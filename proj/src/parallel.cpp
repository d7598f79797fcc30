#include "parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace naifs {

int worker_count() {
    if (const char* env = std::getenv("NAIFS_WORKERS")) {
        int n = std::atoi(env);
        if (n >= 1) return std::min(n, 64);
    }
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return static_cast<int>(std::min(hw, 16u));
}

namespace {
thread_local bool g_inside_parallel = false;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const int workers = g_inside_parallel ? 1 : worker_count();
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    const std::size_t nthreads = std::min<std::size_t>(workers, n);
    std::vector<std::exception_ptr> errors(nthreads);
    std::vector<std::size_t> error_index(nthreads, n);
    std::vector<std::thread> threads;
    threads.reserve(nthreads);

    for (std::size_t t = 0; t < nthreads; ++t) {
        threads.emplace_back([&, t]() {
            g_inside_parallel = true;
            // strided partition: item i handled by thread i % nthreads
            for (std::size_t i = t; i < n; i += nthreads) {
                try {
                    fn(i);
                } catch (...) {
                    if (!errors[t]) {
                        errors[t] = std::current_exception();
                        error_index[t] = i;
                    }
                    break;
                }
            }
            g_inside_parallel = false;
        });
    }
    for (auto& th : threads) th.join();

    // rethrow the failure with the smallest item index for determinism
    std::size_t best = n;
    std::exception_ptr first;
    for (std::size_t t = 0; t < nthreads; ++t) {
        if (errors[t] && error_index[t] < best) {
            best = error_index[t];
            first = errors[t];
        }
    }
    if (first) std::rethrow_exception(first);
}

} // namespace naifs
