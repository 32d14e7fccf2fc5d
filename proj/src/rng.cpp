#include "xmodal/rng.hpp"

#include <cmath>

#include "xmodal/errors.hpp"

namespace xmodal {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& s : state_) s = splitmix64(sm);
}

std::uint64_t SeededRng::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double SeededRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double SeededRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

double SeededRng::normal(double mean, double stddev) {
    return mean + stddev * normal();
}

bool SeededRng::bernoulli(double p) {
    return uniform() < p;
}

std::size_t SeededRng::index(std::size_t n) {
    if (n == 0) throw DomainError("SeededRng::index: n must be positive");
    return static_cast<std::size_t>(next_u64() % n);
}

void SeededRng::shuffle(std::vector<std::size_t>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::swap(values[i - 1], values[index(i)]);
    }
}

std::vector<double> SeededRng::multinomial(std::size_t draws, std::span<const double> probs) {
    if (probs.empty()) throw DomainError("multinomial: empty probability vector");
    std::vector<double> counts(probs.size(), 0.0);
    for (std::size_t d = 0; d < draws; ++d) {
        const double u = uniform();
        double cum = 0.0;
        std::size_t pick = probs.size() - 1;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            cum += probs[i];
            if (u < cum) {
                pick = i;
                break;
            }
        }
        counts[pick] += 1.0;
    }
    return counts;
}

Matrix SeededRng::normal_matrix(std::size_t rows, std::size_t cols, double stddev) {
    Matrix m(rows, cols);
    for (double& v : m.data()) v = normal(0.0, stddev);
    return m;
}

Matrix SeededRng::uniform_matrix(std::size_t rows, std::size_t cols, double lo, double hi) {
    Matrix m(rows, cols);
    for (double& v : m.data()) v = uniform(lo, hi);
    return m;
}

}  // namespace xmodal
