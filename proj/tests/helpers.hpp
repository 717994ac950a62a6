#pragma once

#include <string>
#include <vector>

#include "lagcfg/configuration.hpp"

namespace testing_helpers {

using lagcfg::Scalar;

inline Scalar q(long num, long den = 1) { return Scalar::rational(num, den); }
inline Scalar z(double re, double im = 0.0) { return Scalar::complex(re, im); }

inline std::vector<Scalar> qs(std::initializer_list<long> values) {
  std::vector<Scalar> out;
  for (long v : values) out.push_back(q(v));
  return out;
}

inline lagcfg::SympVector vec(std::initializer_list<long> values) {
  return lagcfg::SympVector(qs(values));
}

// Random nonzero rational p/q with |p| <= 9, 1 <= q <= 5.
inline Scalar random_rational(lagcfg::Rng& rng, bool nonzero = true) {
  long p = nonzero ? rng.uniform_nonzero(-9, 9) : rng.uniform(-9, 9);
  return Scalar::rational(p, rng.uniform(1, 5));
}

}  // namespace testing_helpers
