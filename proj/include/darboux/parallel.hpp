#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace darboux {

inline int embed_thread_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* cap = std::getenv("DARBOUX_EMBED_THREADS")) {
        const int c = std::atoi(cap);
        if (c >= 1) hw = std::min(hw, c);
    }
    return hw;
}

// Deterministic per-index work sharing; fn(i) must be independent per index.
template <typename Fn>
void parallel_for(long n, Fn&& fn) {
    const int workers = std::min<long>(embed_thread_count(), n);
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (long i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace darboux
