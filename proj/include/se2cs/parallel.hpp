#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace se2cs::detail {

// Runs fn(k) for k in [0, count) on up to hardware_concurrency threads. The first
// exception thrown by any task is rethrown on the caller's thread.
template <class Fn>
void parallel_for(int count, Fn&& fn) {
    const int workers = std::min<int>(count, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (int k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto body = [&] {
        for (int k = next++; k < count; k = next++) {
            try {
                fn(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace se2cs::detail
