#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace jordankit {

// Stable 64-bit FNV-1a; used for element hashing and group digests so that
// reports are reproducible across platforms and standard library versions.
inline uint64_t fnv1a64(const std::string& bytes, uint64_t seed = 0xcbf29ce484222325ULL) {
  uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex16(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

inline uint64_t lcm_u64(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

// Largest power of p dividing n; p == 0 means "no p-part" and yields 1.
inline uint64_t p_part(uint64_t n, uint32_t p) {
  if (p == 0) return 1;
  uint64_t part = 1;
  while (n % p == 0) {
    n /= p;
    part *= p;
  }
  return part;
}

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Modular inverse of a mod m; requires gcd(a, m) == 1.
inline uint64_t mod_inverse(uint64_t a, uint64_t m) {
  int64_t t = 0, new_t = 1;
  int64_t r = static_cast<int64_t>(m), new_r = static_cast<int64_t>(a % m);
  while (new_r != 0) {
    int64_t q = r / new_r;
    int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

}  // namespace jordankit
