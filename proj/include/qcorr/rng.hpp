#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qcorr/matrix.hpp"

namespace qcorr {

// Seeded generator used for all sampling. Uniform doubles come from the top
// 53 bits of mt19937_64 and normals from an explicit Box-Muller transform, so
// a given seed reproduces the same sequence on any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1]; safe as a log argument.
  double uniform_positive() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next_u64() { return engine_(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_positive();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
  }

  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) * (1.0 / std::sqrt(2.0));
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// splitmix64; used to derive independent substream seeds.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Haar-distributed SU(2) element via a normalized quaternion.
inline Mat2 random_su2(Rng& rng) {
  double q[4];
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& qi : q) {
      qi = rng.normal();
      norm2 += qi * qi;
    }
  } while (norm2 < 1e-12);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& qi : q) qi *= inv;
  Mat2 u;
  u(0, 0) = Complex(q[0], q[3]);
  u(0, 1) = Complex(q[2], q[1]);
  u(1, 0) = Complex(-q[2], q[1]);
  u(1, 1) = Complex(q[0], -q[3]);
  return u;
}

}  // namespace qcorr
