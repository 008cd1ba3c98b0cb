#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace setderiv {

/// Process-wide worker cap (CLI --threads). 0 means hardware concurrency.
void set_thread_count(int n);
int thread_count();

/// Split [begin,end) into contiguous chunks, one per worker. Results that
/// need a deterministic reduction should be accumulated per chunk and merged
/// in chunk order by the caller.
inline void parallel_for(int begin, int end, const std::function<void(int, int)>& body) {
    int n = end - begin;
    if (n <= 0) return;
    int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        body(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve((size_t)workers);
    int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        int b = begin + w * chunk;
        int e = std::min(end, b + chunk);
        if (b >= e) break;
        pool.emplace_back(body, b, e);
    }
    for (auto& t : pool) t.join();
}

}  // namespace setderiv
