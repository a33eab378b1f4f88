#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "prime_field.hpp"
#include "util.hpp"

namespace jordankit {

class GroupElement;

// Caps on user-supplied carriers (JSON literals, closure generators, catalog
// parameters). Internally constructed elements — coset-action permutations of
// quotient groups in particular — may have larger degree; they are bounded by
// the group order cap instead.
inline constexpr uint32_t kMaxUserDegree = 64;
inline constexpr uint32_t kMaxUserDim = 8;

/// Permutation of {0,...,d-1}, stored as the image array.
struct PermElement {
  std::vector<uint16_t> images;

  explicit PermElement(std::vector<uint16_t> imgs) : images(std::move(imgs)) {
    std::vector<bool> seen(images.size(), false);
    for (uint16_t v : images) {
      if (v >= images.size() || seen[v]) throw Error("PermElement: image array is not a bijection");
      seen[v] = true;
    }
  }

  static PermElement identity(uint32_t degree) {
    std::vector<uint16_t> imgs(degree);
    for (uint32_t i = 0; i < degree; ++i) imgs[i] = static_cast<uint16_t>(i);
    return PermElement(std::move(imgs));
  }

  uint32_t degree() const { return static_cast<uint32_t>(images.size()); }
};

/// Invertible square matrix over F_p. Entries are reduced representatives;
/// the determinant is checked to be nonzero at construction.
struct MatrixElement {
  uint32_t dim;
  PrimeField field;
  std::vector<uint32_t> entries;  // row-major, dim*dim

  MatrixElement(uint32_t n, PrimeField f, std::vector<uint32_t> e)
      : dim(n), field(f), entries(std::move(e)) {
    if (dim == 0 || entries.size() != static_cast<size_t>(dim) * dim)
      throw Error("MatrixElement: entry count does not match dimension");
    for (uint32_t& v : entries) v %= field.p;
    if (determinant() == 0) throw Error("MatrixElement: matrix is singular mod " + std::to_string(field.p));
  }

  static MatrixElement identity(uint32_t n, PrimeField f) {
    std::vector<uint32_t> e(static_cast<size_t>(n) * n, 0);
    for (uint32_t i = 0; i < n; ++i) e[static_cast<size_t>(i) * n + i] = 1;
    return MatrixElement(n, f, std::move(e));
  }

  uint32_t at(uint32_t r, uint32_t c) const { return entries[static_cast<size_t>(r) * dim + c]; }

  uint32_t determinant() const {
    std::vector<uint32_t> m = entries;
    uint32_t det = 1;
    for (uint32_t col = 0; col < dim; ++col) {
      uint32_t pivot = dim;
      for (uint32_t row = col; row < dim; ++row) {
        if (m[static_cast<size_t>(row) * dim + col] != 0) {
          pivot = row;
          break;
        }
      }
      if (pivot == dim) return 0;
      if (pivot != col) {
        for (uint32_t c = 0; c < dim; ++c)
          std::swap(m[static_cast<size_t>(pivot) * dim + c], m[static_cast<size_t>(col) * dim + c]);
        det = field.neg(det);
      }
      uint32_t pv = m[static_cast<size_t>(col) * dim + col];
      det = field.mul(det, pv);
      uint32_t pv_inv = field.inv(pv);
      for (uint32_t row = col + 1; row < dim; ++row) {
        uint32_t factor = field.mul(m[static_cast<size_t>(row) * dim + col], pv_inv);
        if (factor == 0) continue;
        for (uint32_t c = col; c < dim; ++c) {
          uint32_t sub = field.mul(factor, m[static_cast<size_t>(col) * dim + c]);
          m[static_cast<size_t>(row) * dim + c] =
              field.sub(m[static_cast<size_t>(row) * dim + c], sub);
        }
      }
    }
    return det;
  }
};

/// Component of a direct product: a pair of elements composed slotwise.
/// Shared pointers keep copies cheap; elements are immutable values.
struct PairElement {
  std::shared_ptr<const GroupElement> left;
  std::shared_ptr<const GroupElement> right;
};

/// One element of any supported carrier: permutation, matrix over F_p, or a
/// pair of such (direct products). Immutable value type with a canonical
/// total order, stable hashing and exact composition.
class GroupElement {
 public:
  enum class Kind { perm = 0, mat = 1, pair = 2 };

  explicit GroupElement(PermElement p) : v_(std::move(p)) {}
  explicit GroupElement(MatrixElement m) : v_(std::move(m)) {}
  explicit GroupElement(PairElement pr) : v_(std::move(pr)) {}

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  const PermElement& perm() const { return std::get<PermElement>(v_); }
  const MatrixElement& mat() const { return std::get<MatrixElement>(v_); }
  const PairElement& pair() const { return std::get<PairElement>(v_); }

  void append_bytes(std::string& out) const;

  std::string bytes() const {
    std::string out;
    append_bytes(out);
    return out;
  }

  uint64_t hash() const { return fnv1a64(bytes()); }

 private:
  std::variant<PermElement, MatrixElement, PairElement> v_;
};

inline GroupElement make_perm(const std::vector<uint16_t>& images) {
  return GroupElement(PermElement(images));
}

inline GroupElement make_mat(uint32_t p, uint32_t dim, std::vector<uint32_t> entries) {
  return GroupElement(MatrixElement(dim, PrimeField(p), std::move(entries)));
}

inline GroupElement make_pair(GroupElement left, GroupElement right) {
  return GroupElement(PairElement{std::make_shared<const GroupElement>(std::move(left)),
                                  std::make_shared<const GroupElement>(std::move(right))});
}

inline void GroupElement::append_bytes(std::string& out) const {
  auto push32 = [&out](uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
  };
  switch (kind()) {
    case Kind::perm: {
      out.push_back('P');
      push32(perm().degree());
      for (uint16_t v : perm().images) push32(v);
      break;
    }
    case Kind::mat: {
      out.push_back('M');
      push32(mat().dim);
      push32(mat().field.p);
      for (uint32_t v : mat().entries) push32(v);
      break;
    }
    case Kind::pair: {
      out.push_back('D');
      pair().left->append_bytes(out);
      pair().right->append_bytes(out);
      break;
    }
  }
}

inline bool same_carrier(const GroupElement& a, const GroupElement& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case GroupElement::Kind::perm:
      return a.perm().degree() == b.perm().degree();
    case GroupElement::Kind::mat:
      return a.mat().dim == b.mat().dim && a.mat().field == b.mat().field;
    case GroupElement::Kind::pair:
      return same_carrier(*a.pair().left, *b.pair().left) &&
             same_carrier(*a.pair().right, *b.pair().right);
  }
  return false;
}

inline std::string carrier_desc(const GroupElement& a) {
  switch (a.kind()) {
    case GroupElement::Kind::perm:
      return "perm(degree=" + std::to_string(a.perm().degree()) + ")";
    case GroupElement::Kind::mat:
      return "mat(dim=" + std::to_string(a.mat().dim) + ", p=" + std::to_string(a.mat().field.p) + ")";
    case GroupElement::Kind::pair:
      return "pair(" + carrier_desc(*a.pair().left) + ", " + carrier_desc(*a.pair().right) + ")";
  }
  return "?";
}

/// a · b. For permutations this is function composition applying b first,
/// matching matrix multiplication acting on column vectors.
inline GroupElement compose(const GroupElement& a, const GroupElement& b) {
  if (!same_carrier(a, b))
    throw CarrierMismatchError("compose: carrier mismatch between " + carrier_desc(a) + " and " +
                               carrier_desc(b));
  switch (a.kind()) {
    case GroupElement::Kind::perm: {
      const auto& pa = a.perm().images;
      const auto& pb = b.perm().images;
      std::vector<uint16_t> out(pa.size());
      for (size_t i = 0; i < pa.size(); ++i) out[i] = pa[pb[i]];
      return GroupElement(PermElement(std::move(out)));
    }
    case GroupElement::Kind::mat: {
      const auto& ma = a.mat();
      const auto& mb = b.mat();
      const uint32_t n = ma.dim;
      const uint64_t p = ma.field.p;
      std::vector<uint32_t> out(static_cast<size_t>(n) * n, 0);
      for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t k = 0; k < n; ++k) {
          uint64_t aik = ma.at(i, k);
          if (aik == 0) continue;
          for (uint32_t j = 0; j < n; ++j) {
            out[static_cast<size_t>(i) * n + j] = static_cast<uint32_t>(
                (out[static_cast<size_t>(i) * n + j] + aik * mb.at(k, j)) % p);
          }
        }
      }
      return GroupElement(MatrixElement(n, ma.field, std::move(out)));
    }
    case GroupElement::Kind::pair:
      return make_pair(compose(*a.pair().left, *b.pair().left),
                       compose(*a.pair().right, *b.pair().right));
  }
  throw Error("compose: unreachable");
}

inline GroupElement inverse(const GroupElement& a) {
  switch (a.kind()) {
    case GroupElement::Kind::perm: {
      const auto& imgs = a.perm().images;
      std::vector<uint16_t> out(imgs.size());
      for (size_t i = 0; i < imgs.size(); ++i) out[imgs[i]] = static_cast<uint16_t>(i);
      return GroupElement(PermElement(std::move(out)));
    }
    case GroupElement::Kind::mat: {
      // Gauss-Jordan on [A | I]
      const auto& m = a.mat();
      const uint32_t n = m.dim;
      const PrimeField& f = m.field;
      std::vector<uint32_t> left = m.entries;
      std::vector<uint32_t> right(static_cast<size_t>(n) * n, 0);
      for (uint32_t i = 0; i < n; ++i) right[static_cast<size_t>(i) * n + i] = 1;
      for (uint32_t col = 0; col < n; ++col) {
        uint32_t pivot = n;
        for (uint32_t row = col; row < n; ++row) {
          if (left[static_cast<size_t>(row) * n + col] != 0) {
            pivot = row;
            break;
          }
        }
        if (pivot == n) throw Error("inverse: singular matrix");
        if (pivot != col) {
          for (uint32_t c = 0; c < n; ++c) {
            std::swap(left[static_cast<size_t>(pivot) * n + c], left[static_cast<size_t>(col) * n + c]);
            std::swap(right[static_cast<size_t>(pivot) * n + c], right[static_cast<size_t>(col) * n + c]);
          }
        }
        uint32_t inv_pv = f.inv(left[static_cast<size_t>(col) * n + col]);
        for (uint32_t c = 0; c < n; ++c) {
          left[static_cast<size_t>(col) * n + c] = f.mul(left[static_cast<size_t>(col) * n + c], inv_pv);
          right[static_cast<size_t>(col) * n + c] = f.mul(right[static_cast<size_t>(col) * n + c], inv_pv);
        }
        for (uint32_t row = 0; row < n; ++row) {
          if (row == col) continue;
          uint32_t factor = left[static_cast<size_t>(row) * n + col];
          if (factor == 0) continue;
          for (uint32_t c = 0; c < n; ++c) {
            left[static_cast<size_t>(row) * n + c] = f.sub(
                left[static_cast<size_t>(row) * n + c], f.mul(factor, left[static_cast<size_t>(col) * n + c]));
            right[static_cast<size_t>(row) * n + c] = f.sub(
                right[static_cast<size_t>(row) * n + c], f.mul(factor, right[static_cast<size_t>(col) * n + c]));
          }
        }
      }
      return GroupElement(MatrixElement(n, f, std::move(right)));
    }
    case GroupElement::Kind::pair:
      return make_pair(inverse(*a.pair().left), inverse(*a.pair().right));
  }
  throw Error("inverse: unreachable");
}

inline GroupElement identity_like(const GroupElement& a) {
  switch (a.kind()) {
    case GroupElement::Kind::perm:
      return GroupElement(PermElement::identity(a.perm().degree()));
    case GroupElement::Kind::mat:
      return GroupElement(MatrixElement::identity(a.mat().dim, a.mat().field));
    case GroupElement::Kind::pair:
      return make_pair(identity_like(*a.pair().left), identity_like(*a.pair().right));
  }
  throw Error("identity_like: unreachable");
}

inline bool is_identity(const GroupElement& a) {
  switch (a.kind()) {
    case GroupElement::Kind::perm: {
      const auto& imgs = a.perm().images;
      for (size_t i = 0; i < imgs.size(); ++i)
        if (imgs[i] != i) return false;
      return true;
    }
    case GroupElement::Kind::mat: {
      const auto& m = a.mat();
      for (uint32_t i = 0; i < m.dim; ++i)
        for (uint32_t j = 0; j < m.dim; ++j)
          if (m.at(i, j) != (i == j ? 1u : 0u)) return false;
      return true;
    }
    case GroupElement::Kind::pair:
      return is_identity(*a.pair().left) && is_identity(*a.pair().right);
  }
  return false;
}

/// Canonical total order: carrier kind, then shape, then the flattened
/// image/entry array lexicographically. Deterministic tie-breaking everywhere
/// downstream depends on this.
inline int canonical_cmp(const GroupElement& a, const GroupElement& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case GroupElement::Kind::perm: {
      if (a.perm().degree() != b.perm().degree())
        return a.perm().degree() < b.perm().degree() ? -1 : 1;
      const auto& x = a.perm().images;
      const auto& y = b.perm().images;
      for (size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
      return 0;
    }
    case GroupElement::Kind::mat: {
      if (a.mat().dim != b.mat().dim) return a.mat().dim < b.mat().dim ? -1 : 1;
      if (a.mat().field.p != b.mat().field.p) return a.mat().field.p < b.mat().field.p ? -1 : 1;
      const auto& x = a.mat().entries;
      const auto& y = b.mat().entries;
      for (size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
      return 0;
    }
    case GroupElement::Kind::pair: {
      int c = canonical_cmp(*a.pair().left, *b.pair().left);
      if (c != 0) return c;
      return canonical_cmp(*a.pair().right, *b.pair().right);
    }
  }
  return 0;
}

inline bool canonical_less(const GroupElement& a, const GroupElement& b) {
  return canonical_cmp(a, b) < 0;
}

inline bool operator==(const GroupElement& a, const GroupElement& b) {
  return canonical_cmp(a, b) == 0;
}
inline bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }

struct ElementHash {
  size_t operator()(const GroupElement& e) const { return static_cast<size_t>(e.hash()); }
};
struct ElementEq {
  bool operator()(const GroupElement& a, const GroupElement& b) const { return a == b; }
};

/// Smallest k >= 1 with g^k = identity.
inline uint64_t element_order(const GroupElement& g) {
  const GroupElement id = identity_like(g);
  GroupElement acc = g;
  uint64_t k = 1;
  constexpr uint64_t kOrderScanCap = 2000000;
  while (!(acc == id)) {
    acc = compose(acc, g);
    if (++k > kOrderScanCap) throw Error("element_order: order exceeds scan cap");
  }
  return k;
}

// Rejects carriers beyond the desk-scale caps; applies to user-facing input
// paths only (JSON literals, closure generators, catalog builders).
inline void validate_user_carrier(const GroupElement& e) {
  switch (e.kind()) {
    case GroupElement::Kind::perm:
      if (e.perm().degree() > kMaxUserDegree)
        throw Error("permutation degree " + std::to_string(e.perm().degree()) + " exceeds cap " +
                    std::to_string(kMaxUserDegree));
      break;
    case GroupElement::Kind::mat:
      if (e.mat().dim > kMaxUserDim)
        throw Error("matrix dimension " + std::to_string(e.mat().dim) + " exceeds cap " +
                    std::to_string(kMaxUserDim));
      break;
    case GroupElement::Kind::pair:
      validate_user_carrier(*e.pair().left);
      validate_user_carrier(*e.pair().right);
      break;
  }
}

}  // namespace jordankit
