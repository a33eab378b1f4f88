#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <jordankit/constants.hpp>
#include <jordankit/io.hpp>

using namespace jordankit;

namespace {

StructureProfile profile(uint64_t c, uint64_t r, uint64_t n, uint64_t kp,
                         std::optional<uint64_t> ell = std::nullopt) {
  StructureProfile p;
  p.c_G = c;
  p.r_G = r;
  p.n = n;
  p.kp_order = kp;
  p.ell_X = ell;
  return p;
}

}  // namespace

TEST_CASE("jordan_constant") {
  CHECK(jordan_constant(profile(1, 0, 2, 1), 60) == BigUint(60));
  CHECK(jordan_constant(profile(2, 0, 2, 1), 60) == BigUint(7200));
  CHECK(jordan_constant(profile(1, 0, 1, 1), 1) == BigUint(1));
}

TEST_CASE("lp_constants collapse at c_G = 1, r_G = 0, kp = 1") {
  for (uint64_t jpn : {1ull, 7ull, 360ull}) {
    auto lp = lp_constants(profile(1, 0, 2, 1), jpn);
    CHECK(lp.e_G == 3);
    CHECK(lp.jp_G == BigUint(jpn));
  }
}

TEST_CASE("lp_constants examples") {
  CHECK(lp_constants(profile(2, 1, 2, 1), 5).e_G == 12);
  auto lp = lp_constants(profile(1, 1, 2, 2), 1);
  CHECK(lp.e_G == 6);
  CHECK(lp.jp_G == BigUint(64));  // 1 * 1^1 * 2^6
}

TEST_CASE("aut_constants") {
  auto one = aut_constants(profile(1, 0, 2, 1, 1), 60, BigUint(7));
  CHECK(one.j_X == BigUint(60));
  CHECK(one.e_X == 3);

  auto two = aut_constants(profile(1, 1, 2, 1, 2), 60, BigUint(7));
  CHECK(two.j_X == BigUint(7200));
  CHECK(two.jp_X == BigUint(98));  // 2 * 7^2
  CHECK(two.e_X == 12);

  CHECK_THROWS_AS(aut_constants(profile(1, 0, 2, 1), 60, BigUint(7)), ProfileError);
}

TEST_CASE("profile validation") {
  StructureProfile p = profile(1, 4, 2, 1);
  p.dim_X = 3;  // r_G = 4 > dim_X = 3 violates the rank chain
  CHECK_THROWS_AS(p.validate(), ProfileError);
  p.r_G = 3;
  CHECK_NOTHROW(p.validate());

  CHECK_THROWS_AS(jordan_constant(profile(0, 0, 2, 1), 60), ProfileError);
}

TEST_CASE("profile JSON round-trip") {
  StructureProfile p = profile(2, 1, 3, 2, 2);
  p.dim_X = 3;
  StructureProfile q = profile_from_json(profile_to_json(p));
  CHECK(q.c_G == 2);
  CHECK(q.r_G == 1);
  CHECK(q.n == 3);
  CHECK(q.kp_order == 2);
  CHECK(q.ell_X == 2);
  CHECK(q.dim_X == 3);
}

TEST_CASE("constants are exact beyond 64 bits") {
  // 5 * (10^6)^5 = 5 * 10^30
  CHECK(jordan_constant(profile(5, 0, 2, 1), 1000000).to_string() ==
        "5000000000000000000000000000000");
  // e_G = 3 * 3 * 4 = 36; 4 * 7^4 * 3^36
  auto lp = lp_constants(profile(4, 2, 2, 3), 7);
  CHECK(lp.e_G == 36);
  CHECK(lp.jp_G == BigUint(4) * BigUint::pow(BigUint(7), 4) * BigUint::pow(BigUint(3), 36));
  CHECK(lp.jp_G.to_string() == "1441508877392379558084");
}

TEST_CASE("monotonicity of the formulas in every profile field") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    uint64_t c = 1 + rng() % 4, r = rng() % 4, kp = 1 + rng() % 5, ell = 1 + rng() % 3;
    uint64_t jn = 1 + rng() % 100, jpn = 1 + rng() % 100;
    auto base = profile(c, r, 2, kp, ell);
    auto j0 = jordan_constant(base, jn);
    auto lp0 = lp_constants(base, jpn);
    auto au0 = aut_constants(base, jn, lp0.jp_G);

    CHECK(j0 <= jordan_constant(profile(c + 1, r, 2, kp, ell), jn));
    CHECK(j0 <= jordan_constant(base, jn + 1));
    auto lp_c = lp_constants(profile(c + 1, r, 2, kp, ell), jpn);
    auto lp_r = lp_constants(profile(c, r + 1, 2, kp, ell), jpn);
    auto lp_k = lp_constants(profile(c, r, 2, kp + 1, ell), jpn);
    CHECK(lp0.jp_G <= lp_c.jp_G);
    CHECK(lp0.jp_G <= lp_r.jp_G);
    CHECK(lp0.jp_G <= lp_k.jp_G);
    CHECK(lp0.e_G <= lp_c.e_G);
    CHECK(lp0.e_G <= lp_r.e_G);
    auto au_ell = aut_constants(profile(c, r, 2, kp, ell + 1), jn, lp0.jp_G);
    CHECK(au0.j_X <= au_ell.j_X);
    CHECK(au0.jp_X <= au_ell.jp_X);
    CHECK(au0.e_X <= au_ell.e_X);
  }
}

TEST_CASE("full constants report") {
  auto rep = build_constants_report(profile(2, 1, 3, 2, 2), 60, 7);
  CHECK(rep.j_G == BigUint(7200));
  CHECK(rep.e_G == 12);
  CHECK(rep.jp_G == BigUint(2) * BigUint(49) * BigUint::pow(BigUint(2), 12));
  REQUIRE(rep.j_X.has_value());
  CHECK(*rep.j_X == BigUint(7200));
  CHECK(*rep.e_X == 12);
  CHECK(*rep.jp_X == BigUint(2) * rep.jp_G * rep.jp_G);

  json j = constants_report_to_json(profile(2, 1, 3, 2, 2), 60, 7, rep);
  CHECK(j.at("J_G").get<std::string>() == "7200");
  CHECK(j.at("e_G").get<uint64_t>() == 12);
}
