#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <unordered_set>
#include <vector>

// Deterministic randomness helpers. mt19937_64 is specified bit-exactly by
// the standard; the distribution adaptors are not, so bounded draws and
// sampling are done by hand to keep outputs identical across toolchains.

namespace citeflow::rng {

// splitmix64 finalizer, used to decorrelate seeds.
inline constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for a sub-stream identified by up to three indices. Streams depend
// only on (base, a, b, c), never on evaluation order, so parallel schedules
// cannot change results.
inline constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                           std::uint64_t b = 0, std::uint64_t c = 0) noexcept {
    std::uint64_t s = mix(base);
    s = mix(s ^ a);
    s = mix(s ^ b);
    s = mix(s ^ c);
    return s;
}

// Unbiased draw from [0, n). Rejection sampling; n >= 1.
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
    std::uint64_t v = gen();
    while (v < threshold) v = gen();
    return v % n;
}

// m distinct indices from [0, n), unordered. Partial Fisher-Yates when m is a
// large share of n, rejection into a set otherwise; the strategy depends only
// on (n, m), so sequences stay reproducible.
inline std::vector<std::uint32_t> sample_distinct(std::mt19937_64& gen,
                                                  std::uint32_t n, std::uint32_t m) {
    std::vector<std::uint32_t> out;
    if (m == 0 || n == 0) return out;
    if (m > n) m = n;
    out.reserve(m);
    if (std::uint64_t(m) * 3 >= n) {
        std::vector<std::uint32_t> pool(n);
        for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
        for (std::uint32_t k = 0; k < m; ++k) {
            const auto j = k + static_cast<std::uint32_t>(bounded(gen, n - k));
            std::swap(pool[k], pool[j]);
        }
        pool.resize(m);
        return pool;
    }
    std::unordered_set<std::uint32_t> seen;
    seen.reserve(m * 2);
    while (out.size() < m) {
        const auto v = static_cast<std::uint32_t>(bounded(gen, n));
        if (seen.insert(v).second) out.push_back(v);
    }
    return out;
}

} // namespace citeflow::rng
