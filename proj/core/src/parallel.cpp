#include "hardylab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace hardylab {

namespace {

std::size_t read_cap() {
    const char* env = std::getenv("HA_LAB_THREADS");
    long v = 0;
    if (env != nullptr) v = std::atol(env);
    if (v <= 0) {
        unsigned hc = std::thread::hardware_concurrency();
        return hc == 0 ? 1 : hc;
    }
    return static_cast<std::size_t>(std::min<long>(v, 256));
}

thread_local bool in_parallel_region = false;

}  // namespace

std::size_t worker_count() {
    static const std::size_t cap = read_cap();
    return cap;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(worker_count(), n);
    if (workers < 2 || in_parallel_region) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};

    auto body = [&]() {
        in_parallel_region = true;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load(std::memory_order_relaxed)) break;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) first_error = std::current_exception();
                break;
            }
        }
        in_parallel_region = false;
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();

    if (failed.load()) std::rethrow_exception(first_error);
}

}  // namespace hardylab
