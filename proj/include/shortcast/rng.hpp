#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace shortcast {

// Deterministic seeding and sampling. std::mt19937_64 is fully specified by
// the standard, but the std distributions are not, so every draw helper here
// is hand-rolled. All pipeline outputs depend only on the master seed.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Seed-splitting scheme: child = splitmix64(splitmix64(master ^ fnv1a(tag)) + index).
// A run's master seed plus a stable tag ("synth", "cv.fold", "search.draw", ...)
// yields an independent stream per component.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t index = 0) {
    return splitmix64(splitmix64(master ^ fnv1a64(tag)) + index);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t u64() { return eng_(); }

    // [0, 1) with 53 random bits.
    double canonical() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // Unbiased integer in [0, n) via masked rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = ~0ULL >> __builtin_clzll(n - 1 | 1);
        std::uint64_t v;
        do {
            v = eng_() & mask;
        } while (v >= n);
        return v;
    }

    // Inclusive [lo, hi].
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool bernoulli(double p) { return canonical() < p; }

    // Box-Muller; two draws per call, no cached state.
    double normal(double mean = 0.0, double stddev = 1.0) {
        double u1 = 1.0 - canonical();  // (0, 1]
        double u2 = canonical();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * M_PI * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from [0, n), ascending.
    std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k);

private:
    std::mt19937_64 eng_;
};

inline std::vector<std::uint32_t> Rng::sample_without_replacement(std::uint32_t n,
                                                                  std::uint32_t k) {
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    if (k > n) k = n;
    for (std::uint32_t i = 0; i < k; ++i) {
        std::uint32_t j = i + static_cast<std::uint32_t>(below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace shortcast
