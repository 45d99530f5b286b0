#include "lowzero/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace lowzero {

namespace {
std::atomic<int> g_workers{0};  // 0 = not resolved yet

int resolve_from_env() {
    const char* env = std::getenv("LOWZERO_THREADS");
    if (env != nullptr) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}
}  // namespace

int worker_count() {
    int w = g_workers.load(std::memory_order_relaxed);
    if (w == 0) {
        w = resolve_from_env();
        g_workers.store(w, std::memory_order_relaxed);
    }
    return w;
}

void set_worker_count(int n) {
    g_workers.store(std::max(1, n), std::memory_order_relaxed);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    const int workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace lowzero
