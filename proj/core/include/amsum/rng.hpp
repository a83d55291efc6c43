#ifndef AMSUM_RNG_HPP
#define AMSUM_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "amsum/errors.hpp"

namespace amsum {

/// Seeded random stream with pinned draw semantics, so trained artifacts are
/// reproducible run to run without depending on std distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 bits of mantissa.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n); rejection sampled, unbiased.
    std::uint64_t below(std::uint64_t n);

    // Index drawn from an unnormalized nonnegative weight vector.
    int categorical(const std::vector<double>& weights);

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace amsum

#endif  // AMSUM_RNG_HPP
