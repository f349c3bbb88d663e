#include "darboux_lab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dlab {
namespace {

std::atomic<unsigned> g_max_threads{std::max(1u, std::thread::hardware_concurrency())};

}  // namespace

void set_max_threads(unsigned n) { g_max_threads.store(std::max(1u, n)); }

unsigned max_threads() { return g_max_threads.load(); }

void configure_threads_from_env() {
    const char* env = std::getenv("DARBOUX_LAB_THREADS");
    if (env == nullptr) return;
    try {
        const long v = std::stol(env);
        if (v > 0) set_max_threads(static_cast<unsigned>(v));
    } catch (const std::exception&) {
        // Unparseable values are ignored; the default stays in effect.
    }
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(max_threads(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(n);
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dlab
