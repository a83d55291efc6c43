#include "amsum/rng.hpp"

namespace amsum {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw ArgumentError("Rng::below: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

int Rng::categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ArgumentError("Rng::categorical: negative weight");
        total += w;
    }
    if (total <= 0.0) throw ArgumentError("Rng::categorical: all weights zero");
    const double u = uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return static_cast<int>(i);
    }
    // Rounding can push u past the last partial sum; return the last
    // positive-weight index.
    for (std::size_t i = weights.size(); i > 0; --i) {
        if (weights[i - 1] > 0.0) return static_cast<int>(i - 1);
    }
    return static_cast<int>(weights.size()) - 1;
}

}  // namespace amsum
