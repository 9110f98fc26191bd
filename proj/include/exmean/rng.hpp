#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace exmean {

/// Counter-based splittable random generator.
///
/// Output j of stream s under seed x is
///     mix(mix(x + (s+1)*GAMMA) + (j+1)*GAMMA)
/// where mix is the 64-bit splitmix finalizer and GAMMA = 0x9E3779B97F4A7C15.
/// Streams derived from distinct indices are independent for statistical
/// purposes, outputs depend only on (seed, stream, counter), and no state
/// is shared, so replicates can be evaluated in any order or thread.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : key_(mix(seed + kGamma)), counter_(0) {}

    /// Child generator for substream `index`; does not disturb this stream.
    [[nodiscard]] CounterRng stream(std::uint64_t index) const {
        return CounterRng(key_, index);
    }

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

    /// Uniform on [0,1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0,1]; safe as a log() argument.
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; draws two uniforms per pair.
    void gaussian_pair(double& g0, double& g1) {
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double t = 2.0 * std::numbers::pi * uniform();
        g0 = r * std::cos(t);
        g1 = r * std::sin(t);
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double g0, g1;
        gaussian_pair(g0, g1);
        spare_ = g1;
        have_spare_ = true;
        return g0;
    }

private:
    CounterRng(std::uint64_t parent_key, std::uint64_t index)
        : key_(mix(parent_key + (index + 1) * kGamma)), counter_(0) {}

    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace exmean
