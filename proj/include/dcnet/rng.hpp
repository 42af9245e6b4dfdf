#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace dcnet::rng {

// All randomness in this project flows from explicit 64-bit seeds through
// this header. The engine is std::mt19937_64 (its output sequence is pinned
// by the C++ standard), and every conversion to doubles/integers is done
// here by hand, so streams are reproducible bit-for-bit across platforms
// and standard-library implementations.

// One splitmix64 scramble step.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Deterministic sub-seed for stream `stream` of a master seed. Experiments
// that run many reps/columns in any order derive one stream per unit of
// work from this, so results never depend on execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master + 0x9E3779B97F4A7C15ull * (stream + 1));
}

class Generator {
public:
    explicit Generator(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; generates pairs, caches the spare.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    // Unit-rate exponential by inverse CDF.
    double exponential() { return -std::log(1.0 - uniform()); }

    // Fair random sign.
    double sign() { return (engine_() & 1ull) ? 1.0 : -1.0; }

    // Uniform integer in [0, n), unbiased via rejection.
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n < 2) return 0;
        const std::uint64_t bound = ~std::uint64_t(0) - ~std::uint64_t(0) % n;
        std::uint64_t u;
        do {
            u = engine_();
        } while (u >= bound);
        return u % n;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Fisher-Yates permutation of 0..n-1.
inline std::vector<std::size_t> permutation(std::size_t n, Generator& g) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(g.uniform_int(i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

} // namespace dcnet::rng
