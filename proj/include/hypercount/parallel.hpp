#ifndef HYPERCOUNT_PARALLEL_HPP
#define HYPERCOUNT_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hypercount {

// f(i) for i in [0, count), item i on worker i % workers. The first exception
// (by worker index) is rethrown after all workers finish.
template <class F>
void parallel_for(std::size_t count, unsigned workers, F&& f) {
    workers = std::max(1u, workers);
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) f(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace hypercount

#endif // HYPERCOUNT_PARALLEL_HPP
