#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "homomorphism.hpp"
#include "io.hpp"
#include "witness.hpp"

namespace jordankit {

/// One named group in a survey catalog: a family tag with parameters, plus an
/// optional structure profile and an optional expected order to check the
/// build against.
struct CatalogEntry {
  std::string name;
  std::string family;
  json params;
  std::optional<StructureProfile> profile;
  std::optional<uint64_t> expected_order;
};

/// A built entry keeps the structural byproducts so the survey can run the
/// matching witness constructions.
struct BuiltEntry {
  GroupPtr group;
  std::optional<DirectProduct> product;
  std::optional<ExtensionInstance> extension;
};

namespace families {

inline uint32_t primitive_root(uint32_t p) {
  PrimeField f(p);
  for (uint32_t g = 1; g < p; ++g) {
    uint64_t ord = 1;
    uint32_t acc = g;
    while (acc != 1) {
      acc = f.mul(acc, g);
      ++ord;
    }
    if (ord == p - 1) return g;
  }
  throw Error("primitive_root: none found (p not prime?)");
}

inline GroupElement transvection(uint32_t n, PrimeField f, uint32_t i, uint32_t j) {
  std::vector<uint32_t> e(static_cast<size_t>(n) * n, 0);
  for (uint32_t d = 0; d < n; ++d) e[static_cast<size_t>(d) * n + d] = 1;
  e[static_cast<size_t>(i) * n + j] = 1;
  return GroupElement(MatrixElement(n, f, std::move(e)));
}

inline GroupElement diag_with(uint32_t n, PrimeField f, uint32_t slot, uint32_t value) {
  std::vector<uint32_t> e(static_cast<size_t>(n) * n, 0);
  for (uint32_t d = 0; d < n; ++d) e[static_cast<size_t>(d) * n + d] = 1;
  e[static_cast<size_t>(slot) * n + slot] = value % f.p;
  return GroupElement(MatrixElement(n, f, std::move(e)));
}

inline GroupElement perm_matrix(uint32_t n, PrimeField f, const std::vector<uint16_t>& images) {
  std::vector<uint32_t> e(static_cast<size_t>(n) * n, 0);
  for (uint32_t c = 0; c < n; ++c) e[static_cast<size_t>(images[c]) * n + c] = 1;
  return GroupElement(MatrixElement(n, f, std::move(e)));
}

inline std::vector<GroupElement> gl_generators(uint32_t n, uint32_t p) {
  if (n == 0 || n > kMaxUserDim) throw CatalogError("GL: dimension out of range");
  PrimeField f(p);
  std::vector<GroupElement> gens;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      if (i != j) gens.push_back(transvection(n, f, i, j));
  if (p > 2) gens.push_back(diag_with(n, f, 0, primitive_root(p)));
  if (gens.empty()) gens.push_back(GroupElement(MatrixElement::identity(n, f)));
  return gens;
}

inline std::vector<GroupElement> sl_generators(uint32_t n, uint32_t p) {
  if (n == 0 || n > kMaxUserDim) throw CatalogError("SL: dimension out of range");
  PrimeField f(p);
  std::vector<GroupElement> gens;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      if (i != j) gens.push_back(transvection(n, f, i, j));
  if (gens.empty()) gens.push_back(GroupElement(MatrixElement::identity(n, f)));
  return gens;
}

inline std::vector<GroupElement> borel_generators(uint32_t n, uint32_t p) {
  if (n == 0 || n > kMaxUserDim) throw CatalogError("borel: dimension out of range");
  PrimeField f(p);
  std::vector<GroupElement> gens;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = i + 1; j < n; ++j) gens.push_back(transvection(n, f, i, j));
  if (p > 2) {
    uint32_t g = primitive_root(p);
    for (uint32_t i = 0; i < n; ++i) gens.push_back(diag_with(n, f, i, g));
  }
  if (gens.empty()) gens.push_back(GroupElement(MatrixElement::identity(n, f)));
  return gens;
}

inline std::vector<GroupElement> diagonal_generators(uint32_t n, uint32_t p) {
  if (n == 0 || n > kMaxUserDim) throw CatalogError("diagonal: dimension out of range");
  PrimeField f(p);
  std::vector<GroupElement> gens;
  if (p > 2) {
    uint32_t g = primitive_root(p);
    for (uint32_t i = 0; i < n; ++i) gens.push_back(diag_with(n, f, i, g));
  }
  if (gens.empty()) gens.push_back(GroupElement(MatrixElement::identity(n, f)));
  return gens;
}

inline std::vector<GroupElement> monomial_generators(uint32_t n, uint32_t p) {
  if (n == 0 || n > kMaxUserDim) throw CatalogError("monomial: dimension out of range");
  PrimeField f(p);
  std::vector<GroupElement> gens = diagonal_generators(n, p);
  if (n >= 2) {
    std::vector<uint16_t> swap01(n), cyc(n);
    for (uint32_t i = 0; i < n; ++i) {
      swap01[i] = static_cast<uint16_t>(i);
      cyc[i] = static_cast<uint16_t>((i + 1) % n);
    }
    swap01[0] = 1;
    swap01[1] = 0;
    gens.push_back(perm_matrix(n, f, swap01));
    gens.push_back(perm_matrix(n, f, cyc));
  }
  return gens;
}

inline std::vector<GroupElement> symmetric_generators(uint32_t d) {
  if (d == 0 || d > kMaxUserDegree) throw CatalogError("symmetric: degree out of range");
  if (d == 1) return {GroupElement(PermElement::identity(1))};
  std::vector<uint16_t> swap01(d), cyc(d);
  for (uint32_t i = 0; i < d; ++i) {
    swap01[i] = static_cast<uint16_t>(i);
    cyc[i] = static_cast<uint16_t>((i + 1) % d);
  }
  swap01[0] = 1;
  swap01[1] = 0;
  if (d == 2) return {GroupElement(PermElement(swap01))};
  return {GroupElement(PermElement(swap01)), GroupElement(PermElement(cyc))};
}

inline std::vector<GroupElement> alternating_generators(uint32_t d) {
  if (d == 0 || d > kMaxUserDegree) throw CatalogError("alternating: degree out of range");
  if (d <= 2) return {GroupElement(PermElement::identity(d))};
  std::vector<uint16_t> tri(d);
  for (uint32_t i = 0; i < d; ++i) tri[i] = static_cast<uint16_t>(i);
  tri[0] = 1;
  tri[1] = 2;
  tri[2] = 0;
  if (d == 3) return {GroupElement(PermElement(tri))};
  std::vector<uint16_t> cyc(d);
  if (d % 2 == 1) {
    for (uint32_t i = 0; i < d; ++i) cyc[i] = static_cast<uint16_t>((i + 1) % d);
  } else {
    // even degree: (d-1)-cycle on {1,...,d-1}, an even permutation
    cyc[0] = 0;
    for (uint32_t i = 1; i < d; ++i) cyc[i] = static_cast<uint16_t>(i == d - 1 ? 1 : i + 1);
  }
  return {GroupElement(PermElement(tri)), GroupElement(PermElement(cyc))};
}

inline std::vector<GroupElement> cyclic_generators(uint32_t m) {
  if (m == 0 || m > kMaxUserDegree) throw CatalogError("cyclic: order out of range");
  std::vector<uint16_t> cyc(m);
  for (uint32_t i = 0; i < m; ++i) cyc[i] = static_cast<uint16_t>((i + 1) % m);
  return {GroupElement(PermElement(cyc))};
}

inline std::vector<GroupElement> dihedral_generators(uint32_t m) {
  if (m < 3 || m > kMaxUserDegree) throw CatalogError("dihedral: need 3 <= m <= 64");
  std::vector<uint16_t> rot(m), refl(m);
  for (uint32_t i = 0; i < m; ++i) {
    rot[i] = static_cast<uint16_t>((i + 1) % m);
    refl[i] = static_cast<uint16_t>(m - 1 - i);
  }
  return {GroupElement(PermElement(rot)), GroupElement(PermElement(refl))};
}

inline std::vector<GroupElement> quaternion_generators() {
  PrimeField f3(3);
  return {GroupElement(MatrixElement(2, f3, {0, 2, 1, 0})),
          GroupElement(MatrixElement(2, f3, {1, 1, 1, 2}))};
}

// C_m x| C_k with the generator of C_k acting as x -> s*x on Z/m. Faithful on
// m + k points: an m-cycle on the first block, and (multiplication by s on the
// first block) * (k-cycle on the second block).
inline std::vector<GroupElement> semidirect_generators(uint32_t m, uint32_t k, uint32_t s) {
  if (m == 0 || k == 0) throw CatalogError("semidirect: m, k must be positive");
  if (m + k > kMaxUserDegree) throw CatalogError("semidirect: degree m+k exceeds cap");
  s %= m;
  if (gcd_u64(s, m) != 1) throw CatalogError("semidirect: s must be invertible mod m");
  uint64_t sk = 1;
  for (uint32_t i = 0; i < k; ++i) sk = (sk * s) % m;
  if (sk != 1 % m) throw CatalogError("semidirect: s^k != 1 mod m, action is not well-defined");

  const uint32_t d = m + k;
  std::vector<uint16_t> a(d), t(d);
  for (uint32_t i = 0; i < d; ++i) {
    a[i] = static_cast<uint16_t>(i);
    t[i] = static_cast<uint16_t>(i);
  }
  for (uint32_t i = 0; i < m; ++i) a[i] = static_cast<uint16_t>((i + 1) % m);
  for (uint32_t i = 0; i < m; ++i) t[i] = static_cast<uint16_t>((static_cast<uint64_t>(s) * i) % m);
  for (uint32_t i = 0; i < k; ++i) t[m + i] = static_cast<uint16_t>(m + (i + 1) % k);
  return {GroupElement(PermElement(a)), GroupElement(PermElement(t))};
}

}  // namespace families

inline std::vector<CatalogEntry> parse_catalog(const json& j) {
  if (!j.is_array()) throw CatalogError("catalog: top level must be an array of entries");
  std::vector<CatalogEntry> out;
  for (const auto& e : j) {
    CatalogEntry entry;
    entry.name = e.value("name", std::string("entry_") + std::to_string(out.size()));
    if (!e.contains("family")) throw CatalogError("catalog entry '" + entry.name + "': missing family");
    entry.family = e.at("family").get<std::string>();
    entry.params = e.value("params", json::object());
    if (e.contains("profile")) entry.profile = profile_from_json(e.at("profile"));
    if (e.contains("expected_order")) entry.expected_order = e.at("expected_order").get<uint64_t>();
    out.push_back(std::move(entry));
  }
  return out;
}

inline Subgroup subgroup_from_kernel_spec(GroupPtr g, const json& spec) {
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    if (s == "center") return center(g);
    if (s == "derived") return derived_subgroup(g);
    if (s.rfind("sylow:", 0) == 0) {
      uint32_t p = static_cast<uint32_t>(std::stoul(s.substr(6)));
      SylowWitness w = sylow(g, p);
      if (!w.is_normal) throw CatalogError("kernel spec: Sylow " + std::to_string(p) + "-subgroup is not normal");
      return w.subgroup;
    }
    throw CatalogError("kernel spec: unknown tag '" + s + "'");
  }
  if (spec.is_object() && spec.contains("generators")) {
    std::vector<int> seed;
    for (const auto& lit : spec.at("generators")) {
      int pos = g->index_of(element_from_json(lit));
      if (pos < 0) throw CatalogError("kernel spec: generator is not an element of the base group");
      seed.push_back(pos);
    }
    Subgroup s = Subgroup::generated(g, seed);
    if (!is_normal(s)) throw CatalogError("kernel spec: generated subgroup is not normal");
    return s;
  }
  throw CatalogError("kernel spec: expected a tag string or {generators:[...]}");
}

inline BuiltEntry build_entry(const CatalogEntry& entry, size_t cap = kDefaultOrderCap,
                              uint64_t seed = kDefaultSeed);

namespace detail {

inline CatalogEntry inline_entry(const json& j, const std::string& name) {
  CatalogEntry e;
  e.name = name;
  if (!j.contains("family")) throw CatalogError("inline entry '" + name + "': missing family");
  e.family = j.at("family").get<std::string>();
  e.params = j.value("params", json::object());
  return e;
}

}  // namespace detail

inline BuiltEntry build_entry(const CatalogEntry& entry, size_t cap, uint64_t seed) {
  const auto& p = entry.params;
  auto closure_of = [&](std::vector<GroupElement> gens) {
    for (const auto& g : gens) validate_user_carrier(g);
    return FiniteGroup::closure(gens, cap);
  };

  BuiltEntry built;
  try {
    if (entry.family == "GL") {
      built.group = closure_of(families::gl_generators(p.at("n").get<uint32_t>(), p.at("p").get<uint32_t>()));
    } else if (entry.family == "SL") {
      built.group = closure_of(families::sl_generators(p.at("n").get<uint32_t>(), p.at("p").get<uint32_t>()));
    } else if (entry.family == "borel") {
      built.group = closure_of(families::borel_generators(p.at("n").get<uint32_t>(), p.at("p").get<uint32_t>()));
    } else if (entry.family == "diagonal") {
      built.group = closure_of(families::diagonal_generators(p.at("n").get<uint32_t>(), p.at("p").get<uint32_t>()));
    } else if (entry.family == "monomial") {
      built.group = closure_of(families::monomial_generators(p.at("n").get<uint32_t>(), p.at("p").get<uint32_t>()));
    } else if (entry.family == "symmetric") {
      built.group = closure_of(families::symmetric_generators(p.at("degree").get<uint32_t>()));
    } else if (entry.family == "alternating") {
      built.group = closure_of(families::alternating_generators(p.at("degree").get<uint32_t>()));
    } else if (entry.family == "cyclic") {
      built.group = closure_of(families::cyclic_generators(p.at("n").get<uint32_t>()));
    } else if (entry.family == "dihedral") {
      built.group = closure_of(families::dihedral_generators(p.at("n").get<uint32_t>()));
    } else if (entry.family == "quaternion") {
      built.group = closure_of(families::quaternion_generators());
    } else if (entry.family == "semidirect") {
      built.group = closure_of(families::semidirect_generators(
          p.at("m").get<uint32_t>(), p.at("k").get<uint32_t>(), p.at("s").get<uint32_t>()));
    } else if (entry.family == "generators") {
      GroupDef def;
      def.name = entry.name;
      for (const auto& lit : p.at("generators")) {
        GroupElement e = element_from_json(lit);
        validate_user_carrier(e);
        def.generators.push_back(std::move(e));
      }
      def.cap = p.value("cap", cap);
      built.group = build_group(def);
    } else if (entry.family == "product") {
      BuiltEntry left = build_entry(detail::inline_entry(p.at("left"), entry.name + ".left"), cap, seed);
      BuiltEntry right = build_entry(detail::inline_entry(p.at("right"), entry.name + ".right"), cap, seed);
      built.product = direct_product(left.group, right.group, cap, seed);
      built.group = built.product->group;
    } else if (entry.family == "quotient") {
      BuiltEntry base = build_entry(detail::inline_entry(p.at("base"), entry.name + ".base"), cap, seed);
      Subgroup kernel = subgroup_from_kernel_spec(base.group, p.at("kernel"));
      built.extension = make_extension(base.group, kernel, seed);
      built.group = built.extension->quot.group;
    } else {
      throw CatalogError("unknown family '" + entry.family + "'");
    }
  } catch (const json::exception& e) {
    throw CatalogError("entry '" + entry.name + "': bad parameters: " + e.what());
  }

  if (entry.expected_order && built.group->order() != *entry.expected_order)
    throw CatalogError("entry '" + entry.name + "': built order " + std::to_string(built.group->order()) +
                       " != expected " + std::to_string(*entry.expected_order));
  return built;
}

}  // namespace jordankit
