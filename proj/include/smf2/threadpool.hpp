#ifndef SMF2_THREADPOOL_HPP
#define SMF2_THREADPOOL_HPP

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace smf2 {

// parallel_for over [0, n) with deterministic per-index output slots;
// results must be written only to the caller's index-addressed storage.
inline void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& body) {
    if (threads <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned use = std::min<unsigned>(threads, (unsigned)n);
    for (unsigned t = 0; t < use; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

inline unsigned default_threads() {
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : h;
}

} // namespace smf2

#endif
