#pragma once

#include <complex>
#include <random>

namespace reglab::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline std::complex<double> random_complex(double rmin, double rmax) {
  return std::polar(uniform(rmin, rmax), uniform(-3.14159, 3.14159));
}

}  // namespace reglab::testing
