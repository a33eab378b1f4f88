#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "element.hpp"
#include "errors.hpp"
#include "util.hpp"

namespace jordankit {

inline constexpr size_t kDefaultOrderCap = 20000;
// Below this order a full multiplication table is precomputed; above it,
// products fall back to hashed element lookups.
inline constexpr size_t kMulTableLimit = 2048;

/// Fixed-width bitset over the positions of a parent group. Subgroups are
/// masks; intersections and closure tests are word operations.
class Bitmask {
 public:
  Bitmask() = default;
  explicit Bitmask(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  size_t size() const { return n_; }
  bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i) { w_[i >> 6] |= (1ULL << (i & 63)); }
  void reset(size_t i) { w_[i >> 6] &= ~(1ULL << (i & 63)); }

  size_t count() const {
    size_t c = 0;
    for (uint64_t w : w_) c += static_cast<size_t>(__builtin_popcountll(w));
    return c;
  }

  Bitmask operator&(const Bitmask& o) const {
    Bitmask r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }

  Bitmask operator|(const Bitmask& o) const {
    Bitmask r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
  }

  bool operator==(const Bitmask& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Bitmask& o) const { return !(*this == o); }

  bool is_subset_of(const Bitmask& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  // Lexicographic order on the bit string b_0 b_1 ... b_{n-1}; the canonical
  // tie-break among equal-order subgroups.
  bool lex_less(const Bitmask& o) const {
    for (size_t i = 0; i < w_.size(); ++i) {
      if (w_[i] == o.w_[i]) continue;
      uint64_t diff = w_[i] ^ o.w_[i];
      uint64_t low = diff & (~diff + 1);
      return (o.w_[i] & low) != 0;  // other has 1 at first differing position
    }
    return false;
  }

  uint64_t hash() const {
    uint64_t h = 0xcbf29ce484222325ULL ^ n_;
    for (uint64_t w : w_) {
      h ^= w;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::vector<int> positions() const {
    std::vector<int> out;
    for (size_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(static_cast<int>(i));
    return out;
  }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// An explicitly enumerated finite group: elements in canonical order, an
/// element-to-position index, recorded generators and precomputed inverses.
/// Immutable after construction; queries are safe to run concurrently.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  /// Closure of the generators under composition (breadth-first product
  /// saturation). Throws CapExceededError with the partial count when the
  /// closure grows past `cap`.
  static GroupPtr closure(const std::vector<GroupElement>& gens, size_t cap = kDefaultOrderCap) {
    if (gens.empty()) throw PreconditionError("closure: empty generator list");
    for (const auto& g : gens) {
      if (!same_carrier(g, gens.front()))
        throw CarrierMismatchError("closure: generators live on different carriers: " +
                                   carrier_desc(gens.front()) + " vs " + carrier_desc(g));
    }
    std::vector<GroupElement> elements;
    std::unordered_map<GroupElement, int, ElementHash, ElementEq> index;
    auto add = [&](const GroupElement& e) -> bool {
      if (index.contains(e)) return false;
      index.emplace(e, static_cast<int>(elements.size()));
      elements.push_back(e);
      return true;
    };
    add(identity_like(gens.front()));
    for (const auto& g : gens) add(g);
    for (size_t i = 0; i < elements.size(); ++i) {
      for (const auto& g : gens) {
        GroupElement prod = compose(elements[i], g);
        if (add(prod) && elements.size() > cap)
          throw CapExceededError("closure: order cap " + std::to_string(cap) +
                                     " exceeded (partial count " + std::to_string(elements.size()) + ")",
                                 elements.size());
      }
    }
    return finalize(std::move(elements), gens, /*verify_closed=*/false);
  }

  /// Wraps an already-closed element set (used by products, quotients and
  /// subgroup extraction). Verifies closure unless the caller vouches for it.
  static GroupPtr from_elements(std::vector<GroupElement> elements, std::vector<GroupElement> gens,
                                bool verify_closed = true) {
    if (elements.empty()) throw PreconditionError("from_elements: empty element list");
    return finalize(std::move(elements), gens, verify_closed);
  }

  size_t order() const { return elements_.size(); }
  const GroupElement& at(size_t pos) const { return elements_[pos]; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  int identity_pos() const { return identity_pos_; }
  const std::vector<int>& generator_positions() const { return generators_; }

  std::vector<GroupElement> generator_elements() const {
    std::vector<GroupElement> out;
    out.reserve(generators_.size());
    for (int g : generators_) out.push_back(elements_[static_cast<size_t>(g)]);
    return out;
  }

  int index_of(const GroupElement& e) const {
    auto it = index_.find(e);
    return it == index_.end() ? -1 : it->second;
  }

  bool contains(const GroupElement& e) const { return index_.contains(e); }

  /// Position of elements_[a] * elements_[b].
  int mul(int a, int b) const {
    if (!table_.empty()) return table_[static_cast<size_t>(a) * order() + static_cast<size_t>(b)];
    int r = index_of(compose(elements_[static_cast<size_t>(a)], elements_[static_cast<size_t>(b)]));
    if (r < 0) throw Error("FiniteGroup::mul: product escaped the element set");
    return r;
  }

  int inv(int a) const { return inverse_[static_cast<size_t>(a)]; }

  int conj(int x, int g) const { return mul(mul(inv(g), x), g); }  // g^{-1} x g

  uint64_t element_order_at(int pos) const {
    int acc = pos;
    uint64_t k = 1;
    while (acc != identity_pos_) {
      acc = mul(acc, pos);
      ++k;
    }
    return k;
  }

  uint64_t digest() const { return digest_; }
  std::string digest_hex() const { return hex16(digest_); }

 private:
  static GroupPtr finalize(std::vector<GroupElement> elements, const std::vector<GroupElement>& gens,
                           bool verify_closed) {
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    std::sort(elements.begin(), elements.end(), canonical_less);
    for (size_t i = 1; i < elements.size(); ++i) {
      if (elements[i] == elements[i - 1]) throw Error("FiniteGroup: duplicate elements");
    }
    g->elements_ = std::move(elements);
    g->index_.reserve(g->elements_.size() * 2);
    g->identity_pos_ = -1;
    for (size_t i = 0; i < g->elements_.size(); ++i) {
      if (!same_carrier(g->elements_[i], g->elements_[0]))
        throw CarrierMismatchError("FiniteGroup: mixed carriers in element list");
      g->index_.emplace(g->elements_[i], static_cast<int>(i));
      if (is_identity(g->elements_[i])) g->identity_pos_ = static_cast<int>(i);
    }
    if (g->identity_pos_ < 0) throw Error("FiniteGroup: identity missing from element list");

    std::string all_bytes;
    for (const auto& e : g->elements_) e.append_bytes(all_bytes);
    g->digest_ = fnv1a64(all_bytes);

    g->inverse_.resize(g->elements_.size());
    for (size_t i = 0; i < g->elements_.size(); ++i) {
      int ipos = g->index_of(inverse(g->elements_[i]));
      if (ipos < 0) throw Error("FiniteGroup: element set not closed under inversion");
      g->inverse_[i] = ipos;
    }

    if (g->order() <= kMulTableLimit) {
      const size_t n = g->order();
      g->table_.resize(n * n);
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
          int r = g->index_of(compose(g->elements_[i], g->elements_[j]));
          if (r < 0) throw Error("FiniteGroup: element set not closed under composition");
          g->table_[i * n + j] = static_cast<uint16_t>(r);
        }
      }
    } else if (verify_closed) {
      for (size_t i = 0; i < g->order(); ++i) {
        for (size_t j = 0; j < g->order(); ++j) {
          if (g->index_of(compose(g->elements_[i], g->elements_[j])) < 0)
            throw Error("FiniteGroup: element set not closed under composition");
        }
      }
    }

    for (const auto& gen : gens) {
      int pos = g->index_of(gen);
      if (pos < 0) throw Error("FiniteGroup: recorded generator not in element set");
      g->generators_.push_back(pos);
    }
    if (g->generators_.empty()) g->generators_.push_back(g->identity_pos_);
    return g;
  }

  FiniteGroup() = default;

  std::vector<GroupElement> elements_;
  std::unordered_map<GroupElement, int, ElementHash, ElementEq> index_;
  std::vector<int> generators_;
  std::vector<int> inverse_;
  std::vector<uint16_t> table_;
  int identity_pos_ = -1;
  uint64_t digest_ = 0;
};

// Closure of the given positions inside `g`, as a mask. Breadth-first over
// right multiplication by the seed elements.
inline Bitmask closure_mask(const FiniteGroup& g, const std::vector<int>& seed) {
  Bitmask mask(g.order());
  std::vector<int> work;
  mask.set(static_cast<size_t>(g.identity_pos()));
  work.push_back(g.identity_pos());
  for (size_t i = 0; i < work.size(); ++i) {
    for (int s : seed) {
      int t = g.mul(work[i], s);
      if (!mask.test(static_cast<size_t>(t))) {
        mask.set(static_cast<size_t>(t));
        work.push_back(t);
      }
    }
  }
  return mask;
}

// Greedy small generating set for a subgroup mask (not guaranteed minimal).
inline std::vector<int> small_generators(const FiniteGroup& g, const Bitmask& mask) {
  std::vector<int> gens;
  Bitmask covered(g.order());
  covered.set(static_cast<size_t>(g.identity_pos()));
  for (size_t i = 0; i < mask.size(); ++i) {
    if (!mask.test(i) || covered.test(i)) continue;
    gens.push_back(static_cast<int>(i));
    covered = closure_mask(g, gens);
  }
  return gens;
}

/// Subgroup of an explicit FiniteGroup: membership mask plus a recorded small
/// generating set. Construction verifies the subgroup axioms.
struct Subgroup {
  GroupPtr parent;
  Bitmask mask;
  std::vector<int> gens;

  size_t order() const { return mask.count(); }
  bool contains(int pos) const { return mask.test(static_cast<size_t>(pos)); }
  std::vector<int> positions() const { return mask.positions(); }
  bool is_trivial() const { return order() == 1; }
  bool is_full() const { return order() == parent->order(); }

  std::vector<GroupElement> generator_elements() const {
    std::vector<GroupElement> out;
    for (int g : gens) out.push_back(parent->at(static_cast<size_t>(g)));
    return out;
  }

  static Subgroup generated(GroupPtr parent, const std::vector<int>& seed) {
    Bitmask mask = closure_mask(*parent, seed);
    Subgroup s;
    s.parent = std::move(parent);
    s.mask = std::move(mask);
    s.gens = small_generators(*s.parent, s.mask);
    return s;
  }

  static Subgroup from_mask(GroupPtr parent, Bitmask mask, bool verify = true) {
    if (mask.size() != parent->order()) throw PreconditionError("Subgroup: mask size mismatch");
    if (!mask.test(static_cast<size_t>(parent->identity_pos())))
      throw PreconditionError("Subgroup: mask does not contain the identity");
    if (verify) {
      auto pos = mask.positions();
      for (int a : pos) {
        if (!mask.test(static_cast<size_t>(parent->inv(a))))
          throw PreconditionError("Subgroup: mask not closed under inversion");
        for (int b : pos) {
          if (!mask.test(static_cast<size_t>(parent->mul(a, b))))
            throw PreconditionError("Subgroup: mask not closed under composition");
        }
      }
    }
    Subgroup s;
    s.parent = std::move(parent);
    s.mask = std::move(mask);
    s.gens = small_generators(*s.parent, s.mask);
    return s;
  }

  static Subgroup trivial(GroupPtr parent) {
    Bitmask mask(parent->order());
    mask.set(static_cast<size_t>(parent->identity_pos()));
    return from_mask(std::move(parent), std::move(mask), false);
  }

  static Subgroup full(GroupPtr parent) {
    Bitmask mask(parent->order());
    for (size_t i = 0; i < mask.size(); ++i) mask.set(i);
    Subgroup s;
    s.parent = parent;
    s.mask = std::move(mask);
    for (int g : parent->generator_positions()) s.gens.push_back(g);
    return s;
  }
};

inline void require_same_parent(const Subgroup& a, const Subgroup& b, const char* what) {
  if (a.parent.get() != b.parent.get())
    throw PreconditionError(std::string(what) + ": subgroups have different parents");
}

/// Mask intersection of two subgroups of the same parent.
inline Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b, "intersect");
  return Subgroup::from_mask(a.parent, a.mask & b.mask, false);
}

// |A·B| by direct enumeration of products.
inline size_t product_set_size(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b, "product_set_size");
  Bitmask prod(a.parent->order());
  auto pa = a.positions();
  auto pb = b.positions();
  for (int x : pa)
    for (int y : pb) prod.set(static_cast<size_t>(a.parent->mul(x, y)));
  return prod.count();
}

// A·B as a mask; a subgroup when either factor is normal.
inline Bitmask product_set_mask(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b, "product_set_mask");
  Bitmask prod(a.parent->order());
  for (int x : a.positions())
    for (int y : b.positions()) prod.set(static_cast<size_t>(a.parent->mul(x, y)));
  return prod;
}

inline Bitmask conjugate_mask(const FiniteGroup& g, const Bitmask& mask, int by) {
  Bitmask out(g.order());
  for (size_t i = 0; i < mask.size(); ++i) {
    if (mask.test(i)) out.set(static_cast<size_t>(g.conj(static_cast<int>(i), by)));
  }
  return out;
}

/// Exhaustive normality check: conjugation by every parent element preserves
/// the mask. This is the certificate-grade check; nothing is assumed.
inline bool is_normal_mask(const FiniteGroup& g, const Bitmask& mask) {
  auto members = mask.positions();
  for (size_t x = 0; x < g.order(); ++x) {
    for (int h : members) {
      if (!mask.test(static_cast<size_t>(g.conj(h, static_cast<int>(x))))) return false;
    }
  }
  return true;
}

inline bool is_normal(const Subgroup& s) { return is_normal_mask(*s.parent, s.mask); }

/// Exhaustive abelianness check over all member pairs.
inline bool is_abelian_mask(const FiniteGroup& g, const Bitmask& mask) {
  auto members = mask.positions();
  for (int a : members)
    for (int b : members)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

inline bool is_abelian(const FiniteGroup& g) {
  for (int a : g.generator_positions())
    for (int b : g.generator_positions())
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

/// Centralizer of the set `mask` in g. Commuting with a generating set of the
/// subgroup is equivalent to commuting with all of it.
inline Bitmask centralizer_mask(const FiniteGroup& g, const Bitmask& mask) {
  std::vector<int> gens = small_generators(g, mask);
  if (gens.empty()) gens.push_back(g.identity_pos());
  Bitmask out(g.order());
  for (size_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (int h : gens) {
      if (g.mul(static_cast<int>(x), h) != g.mul(h, static_cast<int>(x))) {
        ok = false;
        break;
      }
    }
    if (ok) out.set(x);
  }
  return out;
}

inline Subgroup center(GroupPtr g) {
  Bitmask all(g->order());
  for (size_t i = 0; i < all.size(); ++i) all.set(i);
  Bitmask z(g->order());
  for (size_t x = 0; x < g->order(); ++x) {
    bool ok = true;
    for (int h : g->generator_positions()) {
      if (g->mul(static_cast<int>(x), h) != g->mul(h, static_cast<int>(x))) {
        ok = false;
        break;
      }
    }
    if (ok) z.set(x);
  }
  return Subgroup::from_mask(std::move(g), std::move(z), false);
}

/// Commutator subgroup [G, G], generated by all commutators.
inline Subgroup derived_subgroup(GroupPtr g) {
  std::vector<int> comms;
  Bitmask seen(g->order());
  for (size_t x = 0; x < g->order(); ++x) {
    for (size_t y = 0; y < g->order(); ++y) {
      int c = g->mul(g->mul(g->inv(static_cast<int>(x)), g->inv(static_cast<int>(y))),
                     g->mul(static_cast<int>(x), static_cast<int>(y)));
      if (!seen.test(static_cast<size_t>(c))) {
        seen.set(static_cast<size_t>(c));
        comms.push_back(c);
      }
    }
  }
  return Subgroup::generated(std::move(g), comms);
}

/// Smallest normal subgroup containing the seed positions: alternate subgroup
/// closure with conjugation by the recorded generators until stable.
inline Bitmask normal_closure_mask(const FiniteGroup& g, std::vector<int> seed) {
  Bitmask mask = closure_mask(g, seed);
  bool grew = true;
  while (grew) {
    grew = false;
    auto members = mask.positions();
    for (int m : members) {
      for (int gen : g.generator_positions()) {
        int c = g.conj(m, gen);
        if (!mask.test(static_cast<size_t>(c))) {
          seed.push_back(c);
          mask = closure_mask(g, seed);
          grew = true;
        }
      }
    }
  }
  return mask;
}

/// A subgroup re-packaged as a standalone group, with the position map back
/// into the parent.
struct ExtractedGroup {
  GroupPtr group;
  std::vector<int> to_parent;  // group position -> parent position
  size_t parent_order = 0;

  Bitmask lift_mask(const Bitmask& sub_mask) const {
    Bitmask out(parent_order);
    for (size_t i = 0; i < sub_mask.size(); ++i)
      if (sub_mask.test(i)) out.set(static_cast<size_t>(to_parent[i]));
    return out;
  }
};

inline ExtractedGroup subgroup_as_group(const Subgroup& s) {
  std::vector<GroupElement> elements;
  for (int p : s.positions()) elements.push_back(s.parent->at(static_cast<size_t>(p)));
  std::vector<GroupElement> gens = s.generator_elements();
  if (gens.empty()) gens.push_back(identity_like(elements.front()));
  ExtractedGroup out;
  out.group = FiniteGroup::from_elements(std::move(elements), std::move(gens), false);
  out.parent_order = s.parent->order();
  out.to_parent.reserve(out.group->order());
  for (size_t i = 0; i < out.group->order(); ++i) {
    int pp = s.parent->index_of(out.group->at(i));
    if (pp < 0) throw Error("subgroup_as_group: element lost in extraction");
    out.to_parent.push_back(pp);
  }
  return out;
}

}  // namespace jordankit
