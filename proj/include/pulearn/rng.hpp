#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace pulearn {

// splitmix64 finalizer; used both as a seed mixer and to derive independent
// sub-stream seeds from (base_seed, index...) tuples.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(splitmix64(base) ^ a) ^ b);
}

// Deterministic 64-bit generator: mt19937_64 with Box-Muller normals.
// Identical seed gives an identical stream; the algorithm name is recorded
// in experiment reports.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    static std::string algorithm_name() { return "mt19937_64/box-muller"; }

    std::uint64_t seed() const { return seed_; }

    // uniform on [0, 1), 53-bit resolution
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // uniform on (0, 1]; never zero, safe under log()
    double uniform01_open() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace pulearn
