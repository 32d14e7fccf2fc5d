#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xmodal/matrix.hpp"

namespace xmodal {

/// Deterministic random source. The generator is xoshiro256** seeded through
/// splitmix64, so a seed value identifies the same sample stream on every
/// platform. All stochastic code in the library draws from one of these;
/// nothing touches global or hardware entropy.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();

    // Uniform double in [0, 1) with 53-bit resolution.
    double uniform();
    double uniform(double lo, double hi);

    // Standard normal via Box-Muller (second value cached).
    double normal();
    double normal(double mean, double stddev);

    bool bernoulli(double p);

    // Uniform integer in [0, n). n must be positive.
    std::size_t index(std::size_t n);

    // Fisher-Yates shuffle.
    void shuffle(std::vector<std::size_t>& values);

    // Counts from `draws` categorical samples over `probs` (which must sum
    // to ~1). Result sums to `draws` exactly.
    std::vector<double> multinomial(std::size_t draws, std::span<const double> probs);

    Matrix normal_matrix(std::size_t rows, std::size_t cols, double stddev);
    Matrix uniform_matrix(std::size_t rows, std::size_t cols, double lo, double hi);

private:
    std::uint64_t seed_;
    std::uint64_t state_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace xmodal
