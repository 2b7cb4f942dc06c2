#include "hsplus/threading.hpp"

namespace hsplus {

namespace {
int g_threads = 0;
}

int thread_count() {
    if (g_threads > 0) return g_threads;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void set_thread_count(int n) { g_threads = n; }

}  // namespace hsplus
