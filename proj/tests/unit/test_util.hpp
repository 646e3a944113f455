#pragma once

#include <gmpxx.h>

#include <random>
#include <string>

#include "rlnc_das/field.hpp"

namespace rlnc_das::testing {

// Group order of ristretto255, from its published definition.
inline mpz_class ristretto_order() {
  mpz_class l;
  l = 1;
  l <<= 252;
  l += mpz_class("27742317777372353535851937790883648493");
  return l;
}

inline mpz_class to_mpz(const Scalar& s) {
  mpz_class r = 0;
  for (int i = 3; i >= 0; --i) {
    r <<= 64;
    r += mpz_class(std::to_string(s.limbs[i]));
  }
  return r;
}

inline Scalar from_mpz(mpz_class v) {
  Scalar s;
  const mpz_class mask = (mpz_class(1) << 64) - 1;
  for (int i = 0; i < 4; ++i) {
    mpz_class limb = v & mask;
    s.limbs[i] = std::stoull(limb.get_str());
    v >>= 64;
  }
  return s;
}

inline mpz_class modulus_of(const Field& f) {
  if (f.is_small()) return mpz_class(std::to_string(f.small_modulus()));
  return ristretto_order();
}

inline std::mt19937_64 rng(std::uint64_t seed = 12345) { return std::mt19937_64(seed); }

}  // namespace rlnc_das::testing
