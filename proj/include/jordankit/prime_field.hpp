#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"
#include "util.hpp"

namespace jordankit {

/// The prime field F_p. Scalars are reduced representatives in [0, p).
/// Only prime moduli are accepted; extension fields are out of scope.
struct PrimeField {
  uint32_t p;

  explicit PrimeField(uint32_t modulus) : p(modulus) {
    if (!is_prime_u64(p)) throw Error("PrimeField: modulus " + std::to_string(p) + " is not prime");
  }

  uint32_t reduce(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(p);
    if (r < 0) r += p;
    return static_cast<uint32_t>(r);
  }

  uint32_t add(uint32_t a, uint32_t b) const { return (a + b) % p; }
  uint32_t sub(uint32_t a, uint32_t b) const { return (a + p - b) % p; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
  }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }

  uint32_t inv(uint32_t a) const {
    if (a == 0) throw Error("PrimeField: zero has no inverse");
    return static_cast<uint32_t>(mod_inverse(a, p));
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p == b.p; }
  friend bool operator!=(const PrimeField& a, const PrimeField& b) { return a.p != b.p; }
};

}  // namespace jordankit
