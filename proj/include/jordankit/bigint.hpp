#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace jordankit {

/// Minimal unsigned big integer. The constant formulas are exact combinatorial
/// bounds, so values like c_G * J(n)^{c_G} must never be rounded or truncated;
/// everything else in the toolkit fits in 64 bits.
class BigUint {
 public:
  BigUint() = default;
  BigUint(uint64_t v) {  // NOLINT: implicit by design, mirrors integer literals
    if (v != 0) {
      limbs_.push_back(static_cast<uint32_t>(v & 0xffffffffULL));
      if (v >> 32) limbs_.push_back(static_cast<uint32_t>(v >> 32));
    }
  }

  static BigUint from_string(const std::string& dec) {
    if (dec.empty()) throw Error("BigUint: empty decimal string");
    BigUint r;
    for (char c : dec) {
      if (c < '0' || c > '9') throw Error("BigUint: bad decimal digit in '" + dec + "'");
      r.mul_small(10);
      r.add_small(static_cast<uint32_t>(c - '0'));
    }
    return r;
  }

  bool is_zero() const { return limbs_.empty(); }

  bool fits_u64() const { return limbs_.size() <= 2; }

  uint64_t to_u64() const {
    if (!fits_u64()) throw Error("BigUint: value does not fit in 64 bits");
    uint64_t v = 0;
    if (limbs_.size() > 1) v = static_cast<uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
  }

  friend BigUint operator*(const BigUint& a, const BigUint& b) {
    if (a.is_zero() || b.is_zero()) return BigUint();
    BigUint r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.limbs_.size(); ++j) {
        uint64_t cur = static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] + r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<uint32_t>(cur & 0xffffffffULL);
        carry = cur >> 32;
      }
      size_t k = i + b.limbs_.size();
      while (carry) {
        uint64_t cur = r.limbs_[k] + carry;
        r.limbs_[k] = static_cast<uint32_t>(cur & 0xffffffffULL);
        carry = cur >> 32;
        ++k;
      }
    }
    r.trim();
    return r;
  }

  BigUint& operator*=(const BigUint& b) {
    *this = *this * b;
    return *this;
  }

  static BigUint pow(const BigUint& base, uint64_t exp) {
    BigUint r(1), b = base;
    while (exp) {
      if (exp & 1) r *= b;
      exp >>= 1;
      if (exp) b *= b;
    }
    return r;
  }

  // -1, 0, +1 comparison.
  int cmp(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (size_t i = limbs_.size(); i-- > 0;) {
      if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
  }

  friend bool operator==(const BigUint& a, const BigUint& b) { return a.cmp(b) == 0; }
  friend bool operator!=(const BigUint& a, const BigUint& b) { return a.cmp(b) != 0; }
  friend bool operator<(const BigUint& a, const BigUint& b) { return a.cmp(b) < 0; }
  friend bool operator<=(const BigUint& a, const BigUint& b) { return a.cmp(b) <= 0; }
  friend bool operator>(const BigUint& a, const BigUint& b) { return a.cmp(b) > 0; }
  friend bool operator>=(const BigUint& a, const BigUint& b) { return a.cmp(b) >= 0; }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> tmp = limbs_;
    std::string out;
    while (!tmp.empty()) {
      // divide by 10^9, collecting the remainder as the next 9 digits
      uint64_t rem = 0;
      for (size_t i = tmp.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | tmp[i];
        tmp[i] = static_cast<uint32_t>(cur / 1000000000ULL);
        rem = cur % 1000000000ULL;
      }
      while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
      std::string chunk = std::to_string(rem);
      if (tmp.empty()) {
        out.insert(0, chunk);
      } else {
        out.insert(0, std::string(9 - chunk.size(), '0') + chunk);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  void mul_small(uint32_t m) {
    uint64_t carry = 0;
    for (auto& limb : limbs_) {
      uint64_t cur = static_cast<uint64_t>(limb) * m + carry;
      limb = static_cast<uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
    trim();
  }

  void add_small(uint32_t a) {
    uint64_t carry = a;
    for (auto& limb : limbs_) {
      if (!carry) break;
      uint64_t cur = limb + carry;
      limb = static_cast<uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
  }

  std::vector<uint32_t> limbs_;  // little-endian base 2^32, no leading zeros
};

}  // namespace jordankit
