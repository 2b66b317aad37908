#pragma once

#include <chabauty/rational.hpp>

#include <cstdint>

namespace chabauty {

/// SplitMix64. Fixed algorithm so seeded runs are reproducible across
/// platforms and standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi], inclusive.
    long long uniform(long long lo, long long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(next() % span);
    }

    double uniform_real(double lo, double hi) {
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    /// Random rational with numerator in [-h, h] and denominator in [1, h].
    Rat rational(long long h) { return make_rat(Int(uniform(-h, h)), Int(uniform(1, h))); }

    /// Random nonzero rational of height at most h.
    Rat nonzero_rational(long long h) {
        for (;;) {
            Rat q = rational(h);
            if (!q.is_zero()) return q;
        }
    }

    /// Random positive rational of height at most h.
    Rat positive_rational(long long h) { return make_rat(Int(uniform(1, h)), Int(uniform(1, h))); }

private:
    std::uint64_t state_;
};

} // namespace chabauty
