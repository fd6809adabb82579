#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "clair/errors.hpp"

namespace clair {

// Deterministic random stream. The standard <random> distributions are
// implementation-defined, so draws are derived from raw mt19937_64 output
// to keep generated graphs reproducible across compilers.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, bound), bias-free via rejection.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) throw invalid_parameter("uniform_below: bound must be positive");
        std::uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
        for (;;) {
            std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform_below(n)); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1].
    double uniform_pos() { return 1.0 - uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // Sample k distinct indexes from [0, n) (partial Fisher-Yates).
    std::vector<std::size_t> sample_indexes(std::size_t n, std::size_t k) {
        if (k > n) throw invalid_parameter("sample_indexes: k exceeds population");
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + index(n - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace clair
