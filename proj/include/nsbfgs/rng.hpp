#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace nsbfgs {

// Seedable random source with fully specified variate transforms, so that any
// implementation with an mt19937_64 reproduces the same streams bit-for-bit.
//
//   uniform01: top 53 bits of the raw draw, scaled by 2^-53  ->  [0,1)
//   normal:    Box-Muller on two uniforms, cosine branch only
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal() {
        // 1 - u1 keeps the log argument in (0, 1].
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        return r * std::cos(2.0 * kPi * u2);
    }

    std::vector<double> normals(std::size_t n) {
        std::vector<double> out(n);
        for (auto& v : out) v = normal();
        return out;
    }

  private:
    static constexpr double kPi = 3.14159265358979323846;
    std::mt19937_64 gen_;
};

} // namespace nsbfgs
