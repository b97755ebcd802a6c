#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace arbordyn {

inline unsigned default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Runs fn(block_index) for every block and returns results ordered by block
// index. The work split is independent of the thread count, so any
// downstream merge done in block order is deterministic.
template <class R>
std::vector<R> parallel_blocks(size_t nblocks, unsigned threads, const std::function<R(size_t)>& fn) {
    std::vector<R> out(nblocks);
    if (nblocks == 0) return out;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(nblocks)));
    if (threads == 1) {
        for (size_t b = 0; b < nblocks; ++b) out[b] = fn(b);
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                size_t b = next.fetch_add(1);
                if (b >= nblocks) return;
                out[b] = fn(b);
            }
        });
    for (auto& th : pool) th.join();
    return out;
}

// splitmix64; used to derive per-block RNG seeds from a master seed.
inline uint64_t mix_seed(uint64_t seed, uint64_t counter) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace arbordyn
