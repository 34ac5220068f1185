#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace l1x {

// Deterministic counter-based generator (splitmix64 core). Each (seed, stream)
// pair yields an independent sequence, so per-sample streams can be drawn in
// any order and still reproduce bit-for-bit.
class Prng {
 public:
  explicit Prng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^
                   mix(stream + 0xbf58476d1ce4e5b9ULL))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // uniform in (0, 1]
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // standard normal via Box-Muller; avoids std::normal_distribution, whose
  // output is implementation-defined
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = next_unit();
    const double v = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 2.0 * 3.14159265358979323846 * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::complex<double> normal_complex() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace l1x
