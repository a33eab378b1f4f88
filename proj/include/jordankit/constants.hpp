#pragma once

#include <cstdint>
#include <optional>

#include "bigint.hpp"
#include "errors.hpp"

namespace jordankit {

/// Numeric invariants of an ambient algebraic group, standing in for its
/// structure theory: c_G connected components, r_G the rank of the affine
/// part of the anti-affine part, n the least faithful representation
/// dimension, |K_(p)| the p-part of the finite isogeny kernel, and optionally
/// the component bound l_X and dim X for automorphism-group profiles.
struct StructureProfile {
  uint64_t c_G = 1;
  uint64_t r_G = 0;
  uint64_t n = 1;
  uint64_t kp_order = 1;
  std::optional<uint64_t> ell_X;
  std::optional<uint64_t> dim_X;

  void validate() const {
    if (c_G < 1) throw ProfileError("StructureProfile: c_G must be >= 1");
    if (n < 1) throw ProfileError("StructureProfile: n must be >= 1");
    if (kp_order < 1) throw ProfileError("StructureProfile: kp_order must be >= 1");
    if (ell_X && *ell_X < 1) throw ProfileError("StructureProfile: ell_X must be >= 1");
    if (dim_X && r_G > *dim_X)
      throw ProfileError("StructureProfile: r_G exceeds dim_X (rank chain violated)");
  }
};

/// J(G) = c_G * J(n)^{c_G}.
inline BigUint jordan_constant(const StructureProfile& profile, uint64_t j_n) {
  profile.validate();
  if (j_n < 1) throw ProfileError("jordan_constant: J(n) must be >= 1");
  return BigUint(profile.c_G) * BigUint::pow(BigUint(j_n), profile.c_G);
}

struct LpConstants {
  BigUint jp_G;   // J'(G)
  uint64_t e_G;   // e(G)
};

/// e(G) = 3(r_G + 1) c_G and J'(G) = c_G * J'(n)^{c_G} * |K_(p)|^{e(G)}.
inline LpConstants lp_constants(const StructureProfile& profile, uint64_t jp_n) {
  profile.validate();
  if (jp_n < 1) throw ProfileError("lp_constants: J'(n) must be >= 1");
  uint64_t e_G = 3 * (profile.r_G + 1) * profile.c_G;
  BigUint jp = BigUint(profile.c_G) * BigUint::pow(BigUint(jp_n), profile.c_G) *
               BigUint::pow(BigUint(profile.kp_order), e_G);
  return LpConstants{std::move(jp), e_G};
}

struct AutConstants {
  BigUint j_X;    // J_X
  BigUint jp_X;   // J'_X
  uint64_t e_X;
};

/// J_X = l_X * J(n)^{l_X}, J'_X = l_X * J'(G)^{l_X}, e_X = 3(r_G + 1) l_X.
inline AutConstants aut_constants(const StructureProfile& profile, uint64_t j_n,
                                  const BigUint& jp_G) {
  profile.validate();
  if (!profile.ell_X)
    throw ProfileError("aut_constants: profile has no ell_X (profile incomplete)");
  const uint64_t ell = *profile.ell_X;
  AutConstants out;
  out.j_X = BigUint(ell) * BigUint::pow(BigUint(j_n), ell);
  out.jp_X = BigUint(ell) * BigUint::pow(jp_G, ell);
  out.e_X = 3 * (profile.r_G + 1) * ell;
  return out;
}

/// All constants derivable from one profile and the base inputs J(n), J'(n).
struct ConstantsReport {
  BigUint j_G;
  BigUint jp_G;
  uint64_t e_G = 0;
  std::optional<BigUint> j_X;
  std::optional<BigUint> jp_X;
  std::optional<uint64_t> e_X;
};

inline ConstantsReport build_constants_report(const StructureProfile& profile, uint64_t j_n,
                                              uint64_t jp_n) {
  ConstantsReport r;
  r.j_G = jordan_constant(profile, j_n);
  LpConstants lp = lp_constants(profile, jp_n);
  r.jp_G = lp.jp_G;
  r.e_G = lp.e_G;
  if (profile.ell_X) {
    AutConstants ac = aut_constants(profile, j_n, r.jp_G);
    r.j_X = ac.j_X;
    r.jp_X = ac.jp_X;
    r.e_X = ac.e_X;
  }
  return r;
}

}  // namespace jordankit
