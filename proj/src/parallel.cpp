#include "freering/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>

#include "lapack_util.hpp"

namespace freering {

void parallel_for_index(long count, const std::function<void(long)>& f) {
    if (count <= 0) return;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<long>(hw, count));
    if (workers == 1) {
        for (long i = 0; i < count; ++i) f(i);
        return;
    }

    detail::set_blas_threads(1);
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const long i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    detail::set_blas_threads(static_cast<int>(hw));
    if (error) std::rethrow_exception(error);
}

}  // namespace freering
