#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rbt {

inline std::atomic<unsigned>& thread_count_setting()
{
    static std::atomic<unsigned> n{0};
    return n;
}

// 0 restores the hardware default.
inline void set_thread_count(unsigned n) { thread_count_setting() = n; }

inline unsigned thread_count()
{
    unsigned n = thread_count_setting();
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

namespace detail {

// Runs f(i) for i in [0, n). Work is pulled from a shared counter; results must be written
// by index so the output does not depend on scheduling. The exception from the lowest
// failing index is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f)
{
    unsigned workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto run = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail
}  // namespace rbt
