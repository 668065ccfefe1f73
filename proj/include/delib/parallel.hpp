#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace delib {

// Static split of [0, count) across threads. Work items must write only to
// their own index so results are identical for any thread count.
inline void parallel_for_index(int count, int threads, const std::function<void(int)>& work) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) work(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([=, &work] {
            for (int i = t; i < count; i += threads) work(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace delib
