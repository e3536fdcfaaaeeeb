#pragma once

// Deterministic work distribution.  Work is split into a fixed number of
// chunks that depends only on the problem size, never on the worker count;
// workers pull chunks from an atomic counter and write into per-chunk slots,
// which the caller reduces in chunk order.  Output is therefore byte-identical
// for any --jobs value.

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace siegel::par {

inline int default_jobs() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 2 : static_cast<int>(hc);
}

// Runs body(chunk_index, begin, end) over [0, total) split into `chunks`
// half-open ranges.  body must only touch state owned by its chunk.
template <class Body>
void for_chunks(std::uint64_t total, int chunks, int jobs, Body&& body) {
    if (total == 0) return;
    if (chunks < 1) chunks = 1;
    if (static_cast<std::uint64_t>(chunks) > total) chunks = static_cast<int>(total);
    const std::uint64_t per = total / chunks, extra = total % chunks;

    auto chunk_range = [&](int c) {
        const std::uint64_t uc = static_cast<std::uint64_t>(c);
        const std::uint64_t begin = uc * per + std::min<std::uint64_t>(uc, extra);
        return std::pair<std::uint64_t, std::uint64_t>(begin, begin + per + (uc < extra ? 1 : 0));
    };

    if (jobs <= 1 || chunks == 1) {
        for (int c = 0; c < chunks; ++c) {
            auto [b, e] = chunk_range(c);
            body(c, b, e);
        }
        return;
    }

    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int c = next.fetch_add(1);
            if (c >= chunks) return;
            auto [b, e] = chunk_range(c);
            body(c, b, e);
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min(jobs, chunks);
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

// Chunked map-reduce with ordered reduction: results combined in chunk order,
// so floating-point output does not depend on the worker count.
template <class T, class Map, class Reduce>
T map_reduce(std::uint64_t total, int chunks, int jobs, T init, Map&& map, Reduce&& reduce) {
    if (total == 0) return init;
    if (chunks < 1) chunks = 1;
    if (static_cast<std::uint64_t>(chunks) > total) chunks = static_cast<int>(total);
    std::vector<T> slots(static_cast<std::size_t>(chunks), init);
    for_chunks(total, chunks, jobs,
               [&](int c, std::uint64_t b, std::uint64_t e) { slots[static_cast<std::size_t>(c)] = map(b, e); });
    T acc = init;
    for (const T& s : slots) acc = reduce(acc, s);
    return acc;
}

}  // namespace siegel::par
