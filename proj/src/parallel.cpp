#include "bregman/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace bregman {

int worker_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("BREGMAN_BOUND_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

std::size_t chunk_count(std::size_t n) {
    return std::min<std::size_t>(static_cast<std::size_t>(worker_count()), std::max<std::size_t>(n, 1));
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t chunks = chunk_count(n);
    if (chunks == 1) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(chunks);
    const std::size_t per = (n + chunks - 1) / chunks;
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = c * per;
        const std::size_t end = std::min(n, begin + per);
        if (begin >= end) break;
        threads.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
    }
    for (auto& t : threads) t.join();
}

}  // namespace bregman
