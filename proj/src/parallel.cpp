#include "tvpar/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tvpar {

std::size_t thread_count() {
    if (const char* env = std::getenv("TVPAR_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<std::size_t>(v);
        } catch (...) {
            // fall through to hardware default
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {
thread_local int parallel_depth = 0;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t workers = std::min(thread_count(), n);
    // nested calls run inline; the outermost loop already owns the workers
    if (workers <= 1 || parallel_depth > 0) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        if (begin >= n) break;
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&fn, begin, end] {
            ++parallel_depth;
            fn(begin, end);
            --parallel_depth;
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace tvpar
