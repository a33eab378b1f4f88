#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "util.hpp"

namespace jordankit {

inline constexpr size_t kEnumerationLimit = 400;
// Safety valve; subgroup lattices of desk-scale groups stay far below this.
inline constexpr size_t kMaxSubgroupCount = 200000;

inline bool is_p_prime(const FiniteGroup& g, uint32_t p) {
  if (p == 0) return true;
  return g.order() % p != 0;
}

/// A Sylow p-subgroup together with the exhaustively-checked normality flag.
struct SylowWitness {
  uint32_t prime;
  Subgroup subgroup;
  bool is_normal;
};

namespace detail {

// Dedup store for subgroup masks.
struct MaskSet {
  std::unordered_map<uint64_t, std::vector<Bitmask>> buckets;
  size_t count = 0;

  bool insert(const Bitmask& m) {
    auto& b = buckets[m.hash()];
    for (const auto& other : b)
      if (other == m) return false;
    b.push_back(m);
    ++count;
    return true;
  }
};

}  // namespace detail

/// Every subgroup of g, each exactly once, sorted by canonical mask order.
/// Cyclic-extension method: grow each known subgroup by adjoining one new
/// generator, trying one candidate per coset of the current subgroup.
inline std::vector<Subgroup> enumerate_subgroups(GroupPtr g, size_t limit = kEnumerationLimit) {
  if (g->order() > limit)
    throw OverLimitError("enumerate_subgroups: group order " + std::to_string(g->order()) +
                         " exceeds limit " + std::to_string(limit));
  detail::MaskSet seen;
  std::vector<std::pair<Bitmask, std::vector<int>>> work;  // mask + generating chain

  Bitmask triv(g->order());
  triv.set(static_cast<size_t>(g->identity_pos()));
  seen.insert(triv);
  work.emplace_back(triv, std::vector<int>{});

  for (size_t i = 0; i < work.size(); ++i) {
    const Bitmask current = work[i].first;
    const std::vector<int> chain = work[i].second;
    Bitmask tried = current;  // coset-marked candidates
    for (size_t cand = 0; cand < g->order(); ++cand) {
      if (tried.test(cand)) continue;
      std::vector<int> next_chain = chain;
      next_chain.push_back(static_cast<int>(cand));
      Bitmask bigger = closure_mask(*g, next_chain);
      // mark the whole coset: <H, hg> = <H, g> for h in H
      for (int h : current.positions())
        tried.set(static_cast<size_t>(g->mul(h, static_cast<int>(cand))));
      if (seen.insert(bigger)) {
        if (seen.count > kMaxSubgroupCount)
          throw OverLimitError("enumerate_subgroups: subgroup count exceeds safety cap");
        work.emplace_back(std::move(bigger), std::move(next_chain));
      }
    }
  }

  std::vector<Bitmask> masks;
  masks.reserve(work.size());
  for (auto& [m, _] : work) masks.push_back(std::move(m));
  std::sort(masks.begin(), masks.end(), [](const Bitmask& a, const Bitmask& b) { return a.lex_less(b); });
  std::vector<Subgroup> out;
  out.reserve(masks.size());
  for (auto& m : masks) out.push_back(Subgroup::from_mask(g, std::move(m), false));
  return out;
}

/// Subgroups whose order divides q (every subgroup of such a subgroup also
/// qualifies, so the cyclic-extension search prunes cleanly). Used by the
/// Schur-Zassenhaus search path, where complements have order coprime to the
/// kernel.
inline std::vector<Subgroup> subgroups_of_order_dividing(GroupPtr g, uint64_t q) {
  detail::MaskSet seen;
  std::vector<std::pair<Bitmask, std::vector<int>>> work;
  Bitmask triv(g->order());
  triv.set(static_cast<size_t>(g->identity_pos()));
  seen.insert(triv);
  work.emplace_back(triv, std::vector<int>{});

  for (size_t i = 0; i < work.size(); ++i) {
    const Bitmask current = work[i].first;
    const std::vector<int> chain = work[i].second;
    Bitmask tried = current;
    for (size_t cand = 0; cand < g->order(); ++cand) {
      if (tried.test(cand)) continue;
      if (q % g->element_order_at(static_cast<int>(cand)) != 0) {
        tried.set(cand);
        continue;
      }
      std::vector<int> next_chain = chain;
      next_chain.push_back(static_cast<int>(cand));
      Bitmask bigger = closure_mask(*g, next_chain);
      for (int h : current.positions())
        tried.set(static_cast<size_t>(g->mul(h, static_cast<int>(cand))));
      if (q % bigger.count() != 0) continue;
      if (seen.insert(bigger)) {
        if (seen.count > kMaxSubgroupCount)
          throw OverLimitError("subgroups_of_order_dividing: subgroup count exceeds safety cap");
        work.emplace_back(std::move(bigger), std::move(next_chain));
      }
    }
  }

  std::vector<Subgroup> out;
  out.reserve(work.size());
  std::vector<Bitmask> masks;
  for (auto& [m, _] : work) masks.push_back(std::move(m));
  std::sort(masks.begin(), masks.end(), [](const Bitmask& a, const Bitmask& b) { return a.lex_less(b); });
  for (auto& m : masks) out.push_back(Subgroup::from_mask(g, std::move(m), false));
  return out;
}

/// All normal subgroups, by saturation with normal closures: every normal
/// subgroup is reached from a smaller one by adjoining a single element and
/// closing under conjugation.
inline std::vector<Subgroup> normal_subgroups(GroupPtr g) {
  detail::MaskSet seen;
  std::vector<Bitmask> work;
  Bitmask triv(g->order());
  triv.set(static_cast<size_t>(g->identity_pos()));
  seen.insert(triv);
  work.push_back(triv);

  for (size_t i = 0; i < work.size(); ++i) {
    const Bitmask current = work[i];
    Bitmask tried = current;
    for (size_t cand = 0; cand < g->order(); ++cand) {
      if (tried.test(cand)) continue;
      std::vector<int> seed = current.positions();
      seed.push_back(static_cast<int>(cand));
      Bitmask bigger = normal_closure_mask(*g, seed);
      for (int h : current.positions())
        tried.set(static_cast<size_t>(g->mul(h, static_cast<int>(cand))));
      if (seen.insert(bigger)) work.push_back(std::move(bigger));
    }
  }

  std::sort(work.begin(), work.end(), [](const Bitmask& a, const Bitmask& b) { return a.lex_less(b); });
  std::vector<Subgroup> out;
  out.reserve(work.size());
  for (auto& m : work) out.push_back(Subgroup::from_mask(g, std::move(m), false));
  return out;
}

/// Sylow p-subgroup: grow a p-subgroup greedily from p-elements, then verify
/// the order is the exact p-part; fall back to divisor-pruned enumeration if
/// the greedy pass ever stalls. If p does not divide |g|, the trivial
/// subgroup is returned with is_normal = true.
inline SylowWitness sylow(GroupPtr g, uint32_t p) {
  if (p != 0 && !is_prime_u64(p)) throw PreconditionError("sylow: p must be prime (or 0)");
  const uint64_t target = p_part(g->order(), p);
  if (target == 1) return SylowWitness{p, Subgroup::trivial(g), true};

  std::vector<int> p_elements;
  for (size_t i = 0; i < g->order(); ++i) {
    uint64_t o = g->element_order_at(static_cast<int>(i));
    uint64_t q = o;
    while (q % p == 0) q /= p;
    if (q == 1 && o > 1) p_elements.push_back(static_cast<int>(i));
  }

  std::vector<int> chain;
  Bitmask current(g->order());
  current.set(static_cast<size_t>(g->identity_pos()));
  bool grew = true;
  while (current.count() < target && grew) {
    grew = false;
    for (int x : p_elements) {
      if (current.test(static_cast<size_t>(x))) continue;
      std::vector<int> next = chain;
      next.push_back(x);
      Bitmask bigger = closure_mask(*g, next);
      if (p_part(bigger.count(), p) == bigger.count() && bigger.count() <= target) {
        chain = std::move(next);
        current = std::move(bigger);
        grew = true;
        if (current.count() == target) break;
      }
    }
  }

  if (current.count() != target) {
    // greedy stall: exact but slower fallback
    uint64_t best = 0;
    Bitmask best_mask(g->order());
    for (const auto& s : subgroups_of_order_dividing(g, target)) {
      if (s.order() > best || (s.order() == best && s.mask.lex_less(best_mask))) {
        best = s.order();
        best_mask = s.mask;
      }
    }
    if (best != target) throw Error("sylow: failed to locate a subgroup of the full p-part order");
    current = best_mask;
  }

  Subgroup syl = Subgroup::from_mask(g, std::move(current), false);
  bool normal = is_normal(syl);
  return SylowWitness{p, std::move(syl), normal};
}

/// Result of the brute-force search for the maximum-order normal abelian
/// p'-subgroup. This is the ground truth all witness constructions are
/// measured against.
struct OracleResult {
  Subgroup subgroup;
  uint64_t index;
  uint64_t search_space;  // qualifying candidates examined
};

/// Maximum-order subgroup that is simultaneously normal, abelian and of order
/// coprime to p (p = 0 drops the coprimality constraint). Ties broken by the
/// lexicographically smallest membership mask. Scans the normal subgroup
/// lattice; soundness of each certificate is re-checked exhaustively.
inline OracleResult minimal_index_normal_abelian(GroupPtr g, uint32_t p,
                                                 size_t limit = kEnumerationLimit) {
  if (g->order() > limit)
    throw OverLimitError("minimal_index_normal_abelian: group order " + std::to_string(g->order()) +
                         " exceeds limit " + std::to_string(limit));
  uint64_t search_space = 0;
  const Bitmask* best = nullptr;
  std::vector<Subgroup> normals = normal_subgroups(g);
  for (const auto& s : normals) {
    if (p != 0 && s.order() % p == 0) continue;
    if (!is_abelian_mask(*g, s.mask)) continue;
    ++search_space;
    if (best == nullptr || s.order() > best->count() ||
        (s.order() == best->count() && s.mask.lex_less(*best)))
      best = &s.mask;
  }
  if (best == nullptr) throw Error("oracle: no candidate found (trivial subgroup always qualifies)");
  Subgroup winner = Subgroup::from_mask(g, *best, false);
  if (!is_normal(winner) || !is_abelian_mask(*g, winner.mask) ||
      (p != 0 && winner.order() % p == 0))
    throw Error("oracle: certificate re-check failed");
  uint64_t index = g->order() / winner.order();
  return OracleResult{std::move(winner), index, search_space};
}

inline uint64_t cd_measure(const FiniteGroup& g, const Bitmask& mask) {
  return static_cast<uint64_t>(mask.count()) * centralizer_mask(g, mask).count();
}

/// The Chermak-Delgado subgroup: the unique minimal member of the lattice of
/// subgroups maximizing |H| * |C_G(H)|. It is characteristic, abelian, and
/// contains the center; all three are verified before returning.
inline Subgroup chermak_delgado(GroupPtr g, size_t limit = kEnumerationLimit) {
  std::vector<Subgroup> subs = enumerate_subgroups(g, limit);
  std::vector<uint64_t> measures;
  measures.reserve(subs.size());
  uint64_t best = 0;
  for (const auto& s : subs) {
    measures.push_back(cd_measure(*g, s.mask));
    best = std::max(best, measures.back());
  }

  Bitmask meet(g->order());
  for (size_t i = 0; i < meet.size(); ++i) meet.set(i);
  for (size_t i = 0; i < subs.size(); ++i) {
    if (measures[i] == best) meet = meet & subs[i].mask;
  }
  Subgroup m = Subgroup::from_mask(g, std::move(meet));
  if (cd_measure(*g, m.mask) != best)
    throw Error("chermak_delgado: lattice meet lost the maximal measure");
  if (!is_abelian_mask(*g, m.mask)) throw Error("chermak_delgado: result is not abelian");
  if (!is_normal(m)) throw Error("chermak_delgado: result is not normal");
  if (!center(g).mask.is_subset_of(m.mask))
    throw Error("chermak_delgado: result does not contain the center");
  return m;
}

}  // namespace jordankit
