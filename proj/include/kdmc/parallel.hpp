// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace kdmc {

/// Fixed chunk width for parallel sample batches. Chunk boundaries depend
/// only on sample indices, never on the worker count, so per-chunk results
/// can be reduced in index order and every statistic comes out identical for
/// any number of workers.
inline constexpr std::int64_t kSampleChunk = 64;

/// Runs `body(first, last, chunk_result&)` over [begin, end) split into
/// fixed-width chunks, using up to `workers` threads, and returns the
/// per-chunk results in index order. `Result` must be default-constructible.
template <typename Result, typename Body>
std::vector<Result> chunked_parallel(std::int64_t begin, std::int64_t end, int workers,
                                     Body&& body) {
    const std::int64_t total = end - begin;
    if (total <= 0) return {};
    const auto n_chunks = static_cast<std::size_t>((total + kSampleChunk - 1) / kSampleChunk);
    std::vector<Result> results(n_chunks);

    auto run_chunk = [&](std::size_t c) {
        const std::int64_t first = begin + static_cast<std::int64_t>(c) * kSampleChunk;
        const std::int64_t last = std::min(end, first + kSampleChunk);
        body(first, last, results[c]);
    };

    if (workers <= 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
        return results;
    }

    std::atomic<std::size_t> next{0};
    auto worker_loop = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) return;
            run_chunk(c);
        }
    };
    const auto n_threads = static_cast<std::size_t>(
        std::min<std::int64_t>(workers, static_cast<std::int64_t>(n_chunks)));
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) threads.emplace_back(worker_loop);
    for (auto& t : threads) t.join();
    return results;
}

}  // namespace kdmc
