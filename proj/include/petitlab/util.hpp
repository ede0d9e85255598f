#ifndef PETITLAB_UTIL_HPP
#define PETITLAB_UTIL_HPP

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace petitlab {

/// Worker count: PETITLAB_THREADS caps it, default hardware concurrency.
inline int worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    int n = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("PETITLAB_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return n;
}

/// Index-parallel loop with deterministic output: body(i) must write only to
/// slot i of preallocated storage.
inline void parallel_for(long long count, const std::function<void(long long)>& body) {
    int workers = worker_count();
    if (workers <= 1 || count < 256) {
        for (long long i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (long long i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : threads) t.join();
}

/// FNV-1a, for deterministic certificate digests in reports.
inline std::string fnv1a_hex(const std::string& data) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace petitlab

#endif
