#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace amoeba {

/// Worker cap: AMOEBA_THREADS when set to a positive integer, otherwise the
/// machine's hardware concurrency.
unsigned worker_count();

/// Samples per chunk in every Monte Carlo loop. Fixed so that results depend
/// only on the seed, never on the number of workers.
inline constexpr std::uint64_t kChunkSize = 1u << 15;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of chunk `index` derived from the user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Runs body(chunk_index, begin, end) over [0, n) split into kChunkSize chunks,
/// distributing chunks over worker threads. Callers store per-chunk results
/// and reduce them in chunk order.
void for_each_chunk(std::uint64_t n, const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& body);

inline std::size_t chunk_count(std::uint64_t n) {
  return static_cast<std::size_t>((n + kChunkSize - 1) / kChunkSize);
}

}  // namespace amoeba
