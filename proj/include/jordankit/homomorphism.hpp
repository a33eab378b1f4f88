#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "group.hpp"

namespace jordankit {

inline constexpr uint64_t kDefaultSeed = 0x6a6b2d7365656400ULL;
// Exhaustive pair verification up to this domain order; sampled above.
inline constexpr size_t kHomExhaustiveLimit = 4096;

/// Element-level map between two explicit groups, with multiplicativity
/// verified at construction: exhaustively for |domain| <= 4096, on
/// 10*|domain| seeded random pairs above that.
class Homomorphism {
 public:
  enum class Verification { exhaustive, sampled };

  static Homomorphism make(GroupPtr domain, GroupPtr codomain, std::vector<int> image_of,
                           uint64_t seed = kDefaultSeed) {
    Homomorphism h;
    h.domain_ = std::move(domain);
    h.codomain_ = std::move(codomain);
    h.image_of_ = std::move(image_of);
    h.seed_ = seed;
    if (h.image_of_.size() != h.domain_->order())
      throw PreconditionError("Homomorphism: image array size mismatch");
    if (h.image_of_[static_cast<size_t>(h.domain_->identity_pos())] != h.codomain_->identity_pos())
      throw PreconditionError("Homomorphism: identity does not map to identity");

    const size_t n = h.domain_->order();
    if (n <= kHomExhaustiveLimit) {
      h.mode_ = Verification::exhaustive;
      for (size_t x = 0; x < n; ++x) {
        for (size_t y = 0; y < n; ++y) {
          if (!h.check_pair(static_cast<int>(x), static_cast<int>(y)))
            throw PreconditionError("Homomorphism: not multiplicative at pair (" +
                                    std::to_string(x) + ", " + std::to_string(y) + ")");
        }
      }
      h.pairs_checked_ = n * n;
    } else {
      h.mode_ = Verification::sampled;
      std::mt19937_64 rng(seed);
      const size_t samples = 10 * n;
      for (size_t i = 0; i < samples; ++i) {
        int x = static_cast<int>(rng() % n);
        int y = static_cast<int>(rng() % n);
        if (!h.check_pair(x, y))
          throw PreconditionError("Homomorphism: not multiplicative at sampled pair (" +
                                  std::to_string(x) + ", " + std::to_string(y) + ")");
      }
      h.pairs_checked_ = samples;
    }
    return h;
  }

  const GroupPtr& domain() const { return domain_; }
  const GroupPtr& codomain() const { return codomain_; }
  int apply(int pos) const { return image_of_[static_cast<size_t>(pos)]; }
  Verification verification() const { return mode_; }
  size_t pairs_checked() const { return pairs_checked_; }

  std::string verification_desc() const {
    return mode_ == Verification::exhaustive
               ? "exhaustive"
               : "sampled(" + std::to_string(pairs_checked_) + ")";
  }

  Bitmask image_mask(const Bitmask& domain_mask) const {
    Bitmask out(codomain_->order());
    for (size_t i = 0; i < domain_mask.size(); ++i)
      if (domain_mask.test(i)) out.set(static_cast<size_t>(image_of_[i]));
    return out;
  }

  /// Image of a subgroup of the domain, as a verified subgroup of the codomain.
  Subgroup image_subgroup(const Subgroup& s) const {
    if (s.parent.get() != domain_.get())
      throw PreconditionError("image_subgroup: subgroup does not live in the domain");
    return Subgroup::from_mask(codomain_, image_mask(s.mask));
  }

  Subgroup image() const {
    Bitmask all(domain_->order());
    for (size_t i = 0; i < all.size(); ++i) all.set(i);
    return Subgroup::from_mask(codomain_, image_mask(all));
  }

  /// Full preimage of a subgroup of the codomain.
  Subgroup preimage(const Subgroup& s) const {
    if (s.parent.get() != codomain_.get())
      throw PreconditionError("preimage: subgroup does not live in the codomain");
    Bitmask out(domain_->order());
    for (size_t i = 0; i < domain_->order(); ++i)
      if (s.mask.test(static_cast<size_t>(image_of_[i]))) out.set(i);
    return Subgroup::from_mask(domain_, std::move(out), false);
  }

  Subgroup kernel() const { return preimage(Subgroup::trivial(codomain_)); }

  bool is_surjective() const { return image_mask_count() == codomain_->order(); }
  bool is_injective() const { return kernel().order() == 1; }

 private:
  size_t image_mask_count() const {
    Bitmask out(codomain_->order());
    for (int v : image_of_) out.set(static_cast<size_t>(v));
    return out.count();
  }

  bool check_pair(int x, int y) const {
    int lhs = image_of_[static_cast<size_t>(domain_->mul(x, y))];
    int rhs = codomain_->mul(image_of_[static_cast<size_t>(x)], image_of_[static_cast<size_t>(y)]);
    return lhs == rhs;
  }

  GroupPtr domain_;
  GroupPtr codomain_;
  std::vector<int> image_of_;
  Verification mode_ = Verification::exhaustive;
  size_t pairs_checked_ = 0;
  uint64_t seed_ = 0;
};

/// G1 x G2 on paired elements, with the two projection homomorphisms.
struct DirectProduct {
  GroupPtr group;
  GroupPtr left;
  GroupPtr right;
  Homomorphism pi1;
  Homomorphism pi2;
};

inline DirectProduct direct_product(GroupPtr left, GroupPtr right, size_t cap = kDefaultOrderCap,
                                    uint64_t seed = kDefaultSeed) {
  const size_t n1 = left->order(), n2 = right->order();
  if (n1 * n2 > cap)
    throw CapExceededError("direct_product: |G1|*|G2| = " + std::to_string(n1 * n2) +
                               " exceeds cap " + std::to_string(cap),
                           n1 * n2);
  std::vector<GroupElement> elements;
  elements.reserve(n1 * n2);
  for (size_t i = 0; i < n1; ++i)
    for (size_t j = 0; j < n2; ++j) elements.push_back(make_pair(left->at(i), right->at(j)));

  std::vector<GroupElement> gens;
  const GroupElement id_l = left->at(static_cast<size_t>(left->identity_pos()));
  const GroupElement id_r = right->at(static_cast<size_t>(right->identity_pos()));
  for (const auto& g : left->generator_elements()) gens.push_back(make_pair(g, id_r));
  for (const auto& g : right->generator_elements()) gens.push_back(make_pair(id_l, g));

  DirectProduct p{FiniteGroup::from_elements(std::move(elements), std::move(gens), false),
                  left,
                  right,
                  Homomorphism(),
                  Homomorphism()};

  std::vector<int> im1(p.group->order()), im2(p.group->order());
  for (size_t i = 0; i < p.group->order(); ++i) {
    const auto& pr = p.group->at(i).pair();
    im1[i] = left->index_of(*pr.left);
    im2[i] = right->index_of(*pr.right);
    if (im1[i] < 0 || im2[i] < 0) throw Error("direct_product: component lookup failed");
  }
  p.pi1 = Homomorphism::make(p.group, left, std::move(im1), seed);
  p.pi2 = Homomorphism::make(p.group, right, std::move(im2), seed);
  return p;
}

/// G/N via the action of G on the left cosets of N. Cosets are identified by
/// their canonical (minimal-in-order) representative; the quotient's elements
/// are the induced coset permutations, so composition is exact and the
/// projection is an honest verified homomorphism.
struct QuotientGroup {
  GroupPtr base;
  Subgroup kernel;
  std::vector<int> coset_reps;  // base positions, ascending == canonical reps
  GroupPtr group;
  Homomorphism projection;

  size_t order() const { return group->order(); }
};

inline QuotientGroup quotient(GroupPtr base, const Subgroup& n, uint64_t seed = kDefaultSeed) {
  if (n.parent.get() != base.get())
    throw PreconditionError("quotient: kernel does not live in the base group");
  if (!is_normal(n)) throw NotNormalError("quotient: subgroup is not normal");

  const size_t order = base->order();
  std::vector<int> coset_id(order, -1);
  std::vector<int> reps;
  auto n_pos = n.positions();
  for (size_t g = 0; g < order; ++g) {
    if (coset_id[g] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(g));
    for (int k : n_pos) coset_id[static_cast<size_t>(base->mul(static_cast<int>(g), k))] = id;
  }
  const size_t q = reps.size();

  // left multiplication action on cosets: pi_a(j) = coset(rep_a * rep_j)
  std::vector<GroupElement> elements;
  elements.reserve(q);
  for (size_t a = 0; a < q; ++a) {
    std::vector<uint16_t> images(q);
    for (size_t j = 0; j < q; ++j)
      images[j] = static_cast<uint16_t>(coset_id[static_cast<size_t>(base->mul(reps[a], reps[j]))]);
    elements.push_back(GroupElement(PermElement(std::move(images))));
  }

  std::vector<GroupElement> qgens;
  for (int g : base->generator_positions()) {
    std::vector<uint16_t> images(q);
    for (size_t j = 0; j < q; ++j)
      images[j] = static_cast<uint16_t>(coset_id[static_cast<size_t>(base->mul(g, reps[j]))]);
    qgens.push_back(GroupElement(PermElement(std::move(images))));
  }

  QuotientGroup out;
  out.base = base;
  out.kernel = n;
  out.coset_reps = reps;
  out.group = FiniteGroup::from_elements(std::move(elements), std::move(qgens), false);

  std::vector<int> image_of(order);
  std::vector<int> coset_to_group(q);
  for (size_t a = 0; a < q; ++a) {
    std::vector<uint16_t> images(q);
    for (size_t j = 0; j < q; ++j)
      images[j] = static_cast<uint16_t>(coset_id[static_cast<size_t>(base->mul(reps[a], reps[j]))]);
    int pos = out.group->index_of(GroupElement(PermElement(std::move(images))));
    if (pos < 0) throw Error("quotient: coset permutation missing from quotient group");
    coset_to_group[a] = pos;
  }
  for (size_t g = 0; g < order; ++g)
    image_of[g] = coset_to_group[static_cast<size_t>(coset_id[g])];
  out.projection = Homomorphism::make(base, out.group, std::move(image_of), seed);

  if (out.projection.kernel().mask != n.mask)
    throw Error("quotient: projection kernel differs from the given subgroup");
  return out;
}

/// Full preimage of a subgroup of the codomain under h. Spec-level alias for
/// Homomorphism::preimage.
inline Subgroup preimage(const Homomorphism& h, const Subgroup& s) { return h.preimage(s); }

}  // namespace jordankit
