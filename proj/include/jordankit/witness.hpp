#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "bigint.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "homomorphism.hpp"
#include "util.hpp"

namespace jordankit {

struct Certificates {
  bool normal = false;
  bool abelian = false;
  bool p_prime = false;
};

/// A constructed subgroup together with the index bound it was required to
/// meet. All certificates are results of exhaustive checks. A violated bound
/// is recorded as a falsification (bound_satisfied = false), never an error:
/// bound verification is the whole point of the harness.
struct WitnessReport {
  std::string construction;
  Subgroup subgroup;   // the witness A, inside the group under analysis
  uint64_t index = 0;  // [parent : A], exact
  BigUint bound;
  bool bound_satisfied = false;
  Certificates certificates;
  uint32_t p = 0;
  std::map<std::string, std::string> chain;  // named intermediate values

  bool certified() const {
    return certificates.normal && certificates.abelian && certificates.p_prime;
  }

  // every verified chain link holds (entries recording a failed check carry
  // the literal value "false")
  bool chain_ok() const {
    for (const auto& [key, value] : chain)
      if (value == "false") return false;
    return true;
  }
};

namespace detail {

inline Certificates certify(const FiniteGroup& g, const Bitmask& mask, uint32_t p) {
  Certificates c;
  c.normal = is_normal_mask(g, mask);
  c.abelian = is_abelian_mask(g, mask);
  c.p_prime = (p == 0) || (mask.count() % p != 0);
  return c;
}

}  // namespace detail

/// Gamma <= G1 x G2 re-packaged for witness construction: Gamma as a group of
/// its own, plus the restricted projections onto its images in each factor.
struct ProductContext {
  GroupPtr gamma_group;
  std::vector<int> gamma_to_parent;
  GroupPtr image1;
  GroupPtr image2;
  Homomorphism rho1;  // gamma_group -> image1
  Homomorphism rho2;  // gamma_group -> image2
};

inline ProductContext make_product_context(const DirectProduct& prod, const Subgroup& gamma,
                                           uint64_t seed = kDefaultSeed) {
  if (gamma.parent.get() != prod.group.get())
    throw PreconditionError("make_product_context: gamma is not a subgroup of the product");
  ExtractedGroup eg = subgroup_as_group(gamma);

  auto build_side = [&](const Homomorphism& pi, GroupPtr factor) {
    std::vector<GroupElement> img_elements;
    Bitmask img_mask(factor->order());
    for (int parent_pos : eg.to_parent) {
      int f = pi.apply(parent_pos);
      if (!img_mask.test(static_cast<size_t>(f))) {
        img_mask.set(static_cast<size_t>(f));
        img_elements.push_back(factor->at(static_cast<size_t>(f)));
      }
    }
    std::vector<GroupElement> gens;
    for (int gp : eg.group->generator_positions())
      gens.push_back(factor->at(static_cast<size_t>(pi.apply(eg.to_parent[static_cast<size_t>(gp)]))));
    GroupPtr image = FiniteGroup::from_elements(std::move(img_elements), std::move(gens), true);
    std::vector<int> image_of(eg.group->order());
    for (size_t i = 0; i < eg.group->order(); ++i) {
      image_of[i] = image->index_of(factor->at(static_cast<size_t>(pi.apply(eg.to_parent[i]))));
      if (image_of[i] < 0) throw Error("make_product_context: image element lookup failed");
    }
    return std::make_pair(image, Homomorphism::make(eg.group, image, std::move(image_of), seed));
  };

  auto [img1, rho1] = build_side(prod.pi1, prod.left);
  auto [img2, rho2] = build_side(prod.pi2, prod.right);
  return ProductContext{eg.group, std::move(eg.to_parent), img1, img2, std::move(rho1),
                        std::move(rho2)};
}

/// The direct-product construction: pull both factor witnesses back into
/// Gamma and intersect. A = rho1^{-1}(a1) & rho2^{-1}(a2) is the kernel of
/// the diagonal map Gamma -> Gamma/A~1 x Gamma/A~2, so its index is at most
/// the product of the factor indices. For p > 0 the report also records the
/// exact chain value |Gamma/A~1|*|Gamma/A~2| / |Gamma/A~1A~2| and verifies
/// that the index matches it exactly.
inline WitnessReport product_witness(const ProductContext& ctx, const Subgroup& a1,
                                     const Subgroup& a2, uint32_t p) {
  if (a1.parent.get() != ctx.image1.get() || a2.parent.get() != ctx.image2.get())
    throw PreconditionError("product_witness: a_i must live in the projected images of gamma");
  for (const Subgroup* a : {&a1, &a2}) {
    if (!is_normal(*a)) throw PreconditionError("product_witness: a_i is not normal in Gamma_i");
    if (!is_abelian_mask(*a->parent, a->mask))
      throw PreconditionError("product_witness: a_i is not abelian");
    if (p != 0 && a->order() % p == 0)
      throw PreconditionError("product_witness: a_i is not a p'-subgroup");
  }

  Subgroup lifted1 = ctx.rho1.preimage(a1);
  Subgroup lifted2 = ctx.rho2.preimage(a2);
  Subgroup a = intersect(lifted1, lifted2);

  const FiniteGroup& gamma = *ctx.gamma_group;
  WitnessReport r;
  r.construction = "product";
  r.p = p;
  r.subgroup = a;
  r.index = gamma.order() / a.order();
  uint64_t idx1 = ctx.image1->order() / a1.order();
  uint64_t idx2 = ctx.image2->order() / a2.order();
  r.bound = BigUint(idx1) * BigUint(idx2);
  r.bound_satisfied = BigUint(r.index) <= r.bound;
  r.certificates = detail::certify(gamma, a.mask, p);
  r.chain["index_gamma1_a1"] = std::to_string(idx1);
  r.chain["index_gamma2_a2"] = std::to_string(idx2);
  r.chain["index_lift1"] = std::to_string(gamma.order() / lifted1.order());
  r.chain["index_lift2"] = std::to_string(gamma.order() / lifted2.order());
  if (p != 0) {
    uint64_t prod_size = product_set_size(lifted1, lifted2);
    uint64_t q1 = gamma.order() / lifted1.order();
    uint64_t q2 = gamma.order() / lifted2.order();
    uint64_t q12 = gamma.order() / prod_size;
    uint64_t chain_value = q1 * q2 / q12;
    r.chain["chain_value"] = std::to_string(chain_value);
    r.chain["chain_exact"] = (chain_value == r.index) ? "true" : "false";
  }
  return r;
}

/// Schur-Zassenhaus complement for abelian N, by cocycle averaging: correct a
/// transversal t by g(x) = f(x)^m, where f(x) is the product of the cocycle
/// e(x,y) = t(x)t(y)t(xy)^{-1} over all cosets y and m inverts [H:N] modulo
/// the exponent of N. The corrected transversal is a homomorphic section and
/// its image is the complement.
inline Subgroup schur_zassenhaus_cocycle(GroupPtr h, const Subgroup& n) {
  if (n.parent.get() != h.get())
    throw PreconditionError("schur_zassenhaus: subgroup does not live in the given group");
  if (!is_abelian_mask(*h, n.mask))
    throw PreconditionError("schur_zassenhaus_cocycle: kernel is not abelian");
  if (!is_normal(n)) throw PreconditionError("schur_zassenhaus: subgroup is not normal");
  const uint64_t q = h->order() / n.order();
  if (gcd_u64(n.order(), q) != 1)
    throw NoComplementError("schur_zassenhaus: Hall condition gcd(|N|, [H:N]) = 1 fails");

  // left cosets of N, canonical minimal representatives
  std::vector<int> coset_id(h->order(), -1);
  std::vector<int> rep;
  auto n_pos = n.positions();
  for (size_t g = 0; g < h->order(); ++g) {
    if (coset_id[g] >= 0) continue;
    int id = static_cast<int>(rep.size());
    rep.push_back(static_cast<int>(g));
    for (int k : n_pos) coset_id[static_cast<size_t>(h->mul(static_cast<int>(g), k))] = id;
  }
  // make the identity coset use the identity as transversal point
  rep[static_cast<size_t>(coset_id[static_cast<size_t>(h->identity_pos())])] = h->identity_pos();

  uint64_t exponent = 1;
  for (int k : n_pos) exponent = lcm_u64(exponent, h->element_order_at(k));
  const uint64_t m = mod_inverse(q % exponent, exponent);

  auto coset_of = [&](int pos) { return coset_id[static_cast<size_t>(pos)]; };
  auto e_cocycle = [&](int x, int y) {
    int txy = rep[static_cast<size_t>(coset_of(h->mul(rep[static_cast<size_t>(x)], rep[static_cast<size_t>(y)])))];
    return h->mul(h->mul(rep[static_cast<size_t>(x)], rep[static_cast<size_t>(y)]), h->inv(txy));
  };

  Bitmask mask(h->order());
  for (size_t x = 0; x < q; ++x) {
    int f = h->identity_pos();
    for (size_t y = 0; y < q; ++y) f = h->mul(f, e_cocycle(static_cast<int>(x), static_cast<int>(y)));
    int gx = h->identity_pos();  // f^m by repeated squaring
    int base = f;
    uint64_t e = m;
    while (e) {
      if (e & 1) gx = h->mul(gx, base);
      base = h->mul(base, base);
      e >>= 1;
    }
    mask.set(static_cast<size_t>(h->mul(h->inv(gx), rep[x])));
  }
  if (mask.count() != q) throw Error("schur_zassenhaus_cocycle: corrected transversal collapsed");
  Subgroup c = Subgroup::from_mask(h, std::move(mask));
  if (intersect(c, n).order() != 1)
    throw Error("schur_zassenhaus_cocycle: complement meets the kernel");
  return c;
}

/// Schur-Zassenhaus by exhaustive search over subgroups of order [H:N]; any
/// such subgroup meets N trivially by coprimality. Canonical tie-break:
/// lexicographically smallest mask.
inline Subgroup schur_zassenhaus_search(GroupPtr h, const Subgroup& n) {
  if (n.parent.get() != h.get())
    throw PreconditionError("schur_zassenhaus: subgroup does not live in the given group");
  if (!is_normal(n)) throw PreconditionError("schur_zassenhaus: subgroup is not normal");
  const uint64_t q = h->order() / n.order();
  if (gcd_u64(n.order(), q) != 1)
    throw NoComplementError("schur_zassenhaus: Hall condition gcd(|N|, [H:N]) = 1 fails");
  std::optional<Bitmask> best;
  for (const auto& s : subgroups_of_order_dividing(h, q)) {
    if (s.order() != q) continue;
    if (!best || s.mask.lex_less(*best)) best = s.mask;
  }
  if (!best) throw NoComplementError("schur_zassenhaus: no complement found by search");
  return Subgroup::from_mask(h, std::move(*best), false);
}

/// Complement of a normal Hall subgroup. Dispatches to the constructive
/// cocycle path when N is abelian (every use in the quotient constructions
/// has abelian N) and to subgroup search otherwise.
inline Subgroup schur_zassenhaus(GroupPtr h, const Subgroup& n) {
  if (n.parent.get() != h.get())
    throw PreconditionError("schur_zassenhaus: subgroup does not live in the given group");
  if (!is_normal(n)) throw PreconditionError("schur_zassenhaus: subgroup is not normal");
  if (gcd_u64(n.order(), h->order() / n.order()) != 1)
    throw NoComplementError("schur_zassenhaus: Hall condition gcd(|N|, [H:N]) = 1 fails");
  if (is_abelian_mask(*h, n.mask)) return schur_zassenhaus_cocycle(std::move(h), n);
  return schur_zassenhaus_search(std::move(h), n);
}

/// An exact sequence 1 -> K -> H -> Gamma -> 1 with every piece explicit.
struct ExtensionInstance {
  GroupPtr total;       // H
  Subgroup kernel;      // K, normal in H
  QuotientGroup quot;   // Gamma = H/K with projection
};

inline ExtensionInstance make_extension(GroupPtr total, const Subgroup& kernel,
                                        uint64_t seed = kDefaultSeed) {
  QuotientGroup q = quotient(total, kernel, seed);
  return ExtensionInstance{std::move(total), kernel, std::move(q)};
}

/// |H_(p)| = |K_(p)| * |Gamma_(p)|, checked through the structurally computed
/// Sylow orders rather than arithmetic on the group orders.
inline bool p_part_multiplicative(const ExtensionInstance& ext, uint32_t p) {
  ExtractedGroup k = subgroup_as_group(ext.kernel);
  uint64_t hp = sylow(ext.total, p).subgroup.order();
  uint64_t kp = sylow(k.group, p).subgroup.order();
  uint64_t gp = sylow(ext.quot.group, p).subgroup.order();
  return hp == kp * gp;
}

/// Lemma-style quotient witness for p'-quotients: when Gamma = H/K is a
/// p'-group and K has a normal Sylow p-subgroup, K_(p) is the normal Sylow
/// p-subgroup of all of H; splitting it off by Schur-Zassenhaus leaves a
/// p'-complement H_C that surjects onto Gamma, and the witness is the image
/// of the best normal abelian subgroup of H_C. The chain
/// [Gamma : A] <= [H_C : A_{H_C}] <= base_bound is recorded and checked.
inline WitnessReport quotient_witness_pprime(const ExtensionInstance& ext, uint32_t p,
                                             uint64_t base_bound,
                                             size_t oracle_limit = kEnumerationLimit) {
  if (p == 0 || !is_prime_u64(p)) throw PreconditionError("quotient_witness_pprime: p must be prime");
  const FiniteGroup& gamma = *ext.quot.group;
  if (!is_p_prime(gamma, p))
    throw PreconditionError("quotient_witness_pprime: quotient is not a p'-group");

  ExtractedGroup kg = subgroup_as_group(ext.kernel);
  SylowWitness kp = sylow(kg.group, p);
  if (!kp.is_normal)
    throw PreconditionError("quotient_witness_pprime: K has no normal Sylow p-subgroup");

  // K_(p) lifted to H must be the (normal) Sylow p-subgroup of H
  Subgroup kp_in_h = Subgroup::from_mask(ext.total, kg.lift_mask(kp.subgroup.mask), false);
  if (kp_in_h.order() != p_part(ext.total->order(), p))
    throw PreconditionError("quotient_witness_pprime: K_(p) is not the full p-part of H");
  if (!is_normal(kp_in_h))
    throw PreconditionError("quotient_witness_pprime: K_(p) is not normal in H");

  Subgroup complement = schur_zassenhaus(ext.total, kp_in_h);
  ExtractedGroup hc = subgroup_as_group(complement);
  OracleResult inner = minimal_index_normal_abelian(hc.group, 0, oracle_limit);

  // push A_{H_C} through the projection H -> Gamma
  Subgroup a_in_h = Subgroup::from_mask(ext.total, hc.lift_mask(inner.subgroup.mask), false);
  Subgroup a = ext.quot.projection.image_subgroup(a_in_h);

  WitnessReport r;
  r.construction = "quotient_pprime";
  r.p = p;
  r.subgroup = a;
  r.index = gamma.order() / a.order();
  r.bound = BigUint(base_bound);
  r.certificates = detail::certify(gamma, a.mask, p);
  uint64_t inner_index = hc.group->order() / inner.subgroup.order();
  // full chain [Gamma:A] <= [H_C:A_{H_C}] <= base_bound, link by link
  r.chain["case"] = ext.kernel.order() % p != 0 ? "i (p'-kernel, reconstructed route)"
                                                : "ii (normal Sylow kernel)";
  r.chain["complement_order"] = std::to_string(complement.order());
  r.chain["inner_index"] = std::to_string(inner_index);
  r.chain["kp_order"] = std::to_string(kp_in_h.order());
  r.chain["index_le_inner"] = r.index <= inner_index ? "true" : "false";
  r.chain["inner_within_bound"] = BigUint(inner_index) <= r.bound ? "true" : "false";
  r.bound_satisfied = BigUint(r.index) <= r.bound;
  return r;
}

/// General quotient witness: the image in Gamma of a normal abelian
/// p'-subgroup of H, with [Gamma : A] <= [H : A_H]. When the caller supplies
/// (J', e), the report also records the bound decomposition
/// J' * |K_(p)|^e * |Gamma_(p)|^e and checks the index against it.
inline WitnessReport quotient_witness_general(
    const ExtensionInstance& ext, uint32_t p, const Subgroup& a_h,
    std::optional<std::pair<BigUint, uint64_t>> jprime_e = std::nullopt) {
  if (a_h.parent.get() != ext.total.get())
    throw PreconditionError("quotient_witness_general: A_H does not live in H");
  if (!is_normal(a_h)) throw PreconditionError("quotient_witness_general: A_H is not normal in H");
  if (!is_abelian_mask(*ext.total, a_h.mask))
    throw PreconditionError("quotient_witness_general: A_H is not abelian");
  if (p != 0 && a_h.order() % p == 0)
    throw PreconditionError("quotient_witness_general: A_H is not a p'-subgroup");

  const FiniteGroup& gamma = *ext.quot.group;
  Subgroup a = ext.quot.projection.image_subgroup(a_h);
  uint64_t index_h_ah = ext.total->order() / a_h.order();

  WitnessReport r;
  r.construction = "quotient_general";
  r.p = p;
  r.subgroup = a;
  r.index = gamma.order() / a.order();
  r.certificates = detail::certify(gamma, a.mask, p);
  r.chain["index_h_ah"] = std::to_string(index_h_ah);
  if (jprime_e) {
    ExtractedGroup kg = subgroup_as_group(ext.kernel);
    uint64_t kp_order = sylow(kg.group, p).subgroup.order();
    uint64_t gp_order = sylow(ext.quot.group, p).subgroup.order();
    r.bound = jprime_e->first * BigUint::pow(BigUint(kp_order), jprime_e->second) *
              BigUint::pow(BigUint(gp_order), jprime_e->second);
    r.chain["kp_order"] = std::to_string(kp_order);
    r.chain["gamma_p_order"] = std::to_string(gp_order);
    r.chain["e"] = std::to_string(jprime_e->second);
  } else {
    r.bound = BigUint(index_h_ah);
  }
  r.chain["index_le_h_index"] = r.index <= index_h_ah ? "true" : "false";
  r.bound_satisfied = BigUint(r.index) <= r.bound;
  return r;
}

/// The torsion-lifting divisibility check: in 1 -> S -> F -> Gamma -> 1 with
/// S playing the n-torsion role of a rank-r torus (n = |Gamma|), the order of
/// S must divide n^r and the exponent of S must divide n.
struct LiftingReport {
  bool ok = false;
  bool order_divides = false;
  bool exponent_divides = false;
  uint64_t s_order = 0;
  uint64_t s_exponent = 0;
  uint64_t gamma_order = 0;
  uint64_t rank = 0;
};

inline LiftingReport lifting_divisibility_check(const ExtensionInstance& ext, uint64_t r) {
  const Subgroup& s = ext.kernel;
  if (!is_abelian_mask(*ext.total, s.mask))
    throw ModelViolationError("lifting_divisibility_check: S must be abelian (torus model)");
  LiftingReport rep;
  rep.rank = r;
  rep.s_order = s.order();
  rep.gamma_order = ext.quot.group->order();
  rep.s_exponent = 1;
  for (int k : s.positions())
    rep.s_exponent = lcm_u64(rep.s_exponent, ext.total->element_order_at(k));
  // |S| divides n^r iff n^r vanishes mod |S|; reduce as we multiply
  uint64_t mod = 1 % rep.s_order;
  for (uint64_t i = 0; i < r; ++i)
    mod = static_cast<uint64_t>((static_cast<unsigned __int128>(mod) * rep.gamma_order) % rep.s_order);
  rep.order_divides = (mod == 0) || rep.s_order == 1;
  rep.exponent_divides = rep.gamma_order % rep.s_exponent == 0;
  rep.ok = rep.order_divides && rep.exponent_divides;
  return rep;
}

/// Theorem-1.7-style witness: intersect the conjugates of a normal abelian
/// subgroup of a normal subgroup Gamma0 over coset representatives of
/// Gamma/Gamma0. The result is normal in all of Gamma and abelian, with
/// [Gamma : A] <= l * [Gamma0 : a0]^l where l = [Gamma : Gamma0].
inline WitnessReport conjugate_intersection_witness(GroupPtr gamma, const Subgroup& gamma0,
                                                    const Subgroup& a0, uint32_t p = 0) {
  if (gamma0.parent.get() != gamma.get() || a0.parent.get() != gamma.get())
    throw PreconditionError("conjugate_intersection_witness: subgroups must live in gamma");
  if (!is_normal(gamma0))
    throw PreconditionError("conjugate_intersection_witness: gamma0 is not normal in gamma");
  if (!a0.mask.is_subset_of(gamma0.mask))
    throw PreconditionError("conjugate_intersection_witness: a0 is not contained in gamma0");
  // a0 normal in gamma0: conjugation by gamma0 members only
  for (int x : gamma0.positions())
    for (int h : a0.positions())
      if (!a0.mask.test(static_cast<size_t>(gamma->conj(h, x))))
        throw PreconditionError("conjugate_intersection_witness: a0 is not normal in gamma0");
  if (!is_abelian_mask(*gamma, a0.mask))
    throw PreconditionError("conjugate_intersection_witness: a0 is not abelian");

  const uint64_t ell = gamma->order() / gamma0.order();

  // one representative per coset of gamma0
  std::vector<int> reps;
  Bitmask covered(gamma->order());
  for (size_t g = 0; g < gamma->order(); ++g) {
    if (covered.test(g)) continue;
    reps.push_back(static_cast<int>(g));
    for (int k : gamma0.positions()) covered.set(static_cast<size_t>(gamma->mul(static_cast<int>(g), k)));
  }

  Bitmask inter = a0.mask;
  for (int g : reps) inter = inter & conjugate_mask(*gamma, a0.mask, g);
  Subgroup a = Subgroup::from_mask(gamma, std::move(inter), false);

  WitnessReport r;
  r.construction = "conjugate_intersection";
  r.p = p;
  r.subgroup = a;
  r.index = gamma->order() / a.order();
  uint64_t index0 = gamma0.order() / a0.order();
  r.bound = BigUint(ell) * BigUint::pow(BigUint(index0), ell);
  r.bound_satisfied = BigUint(r.index) <= r.bound;
  r.certificates = detail::certify(*gamma, a.mask, p);
  r.chain["ell"] = std::to_string(ell);
  r.chain["index_gamma0_a0"] = std::to_string(index0);
  return r;
}

}  // namespace jordankit
