#pragma once

// Deterministic parallel loop: results are written by index, so the outcome
// is independent of the worker count and scheduling.

#include <atomic>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hsplus {

// Global worker cap used by the CLI --threads flag (0 = hardware default).
int thread_count();
void set_thread_count(int n);

inline void parallel_for(int count, const std::function<void(int)>& body) {
    const int workers = std::min(count, std::max(1, thread_count()));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mu;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace hsplus
