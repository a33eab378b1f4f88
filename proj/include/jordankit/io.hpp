#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "constants.hpp"
#include "element.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "witness.hpp"

namespace jordankit {

using json = nlohmann::json;

// --- element literals ------------------------------------------------------
// {"kind":"perm","images":[...]} | {"kind":"mat","p":5,"rows":[[...],...]}
// | {"kind":"pair","left":...,"right":...}

inline json element_to_json(const GroupElement& e) {
  json j;
  switch (e.kind()) {
    case GroupElement::Kind::perm: {
      j["kind"] = "perm";
      std::vector<int> imgs(e.perm().images.begin(), e.perm().images.end());
      j["images"] = imgs;
      break;
    }
    case GroupElement::Kind::mat: {
      j["kind"] = "mat";
      j["p"] = e.mat().field.p;
      std::vector<std::vector<uint32_t>> rows(e.mat().dim);
      for (uint32_t r = 0; r < e.mat().dim; ++r)
        for (uint32_t c = 0; c < e.mat().dim; ++c) rows[r].push_back(e.mat().at(r, c));
      j["rows"] = rows;
      break;
    }
    case GroupElement::Kind::pair: {
      j["kind"] = "pair";
      j["left"] = element_to_json(*e.pair().left);
      j["right"] = element_to_json(*e.pair().right);
      break;
    }
  }
  return j;
}

inline GroupElement element_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw IoError("element literal: missing 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "perm") {
    std::vector<uint16_t> imgs;
    for (const auto& v : j.at("images")) {
      int64_t x = v.get<int64_t>();
      if (x < 0 || x > 0xffff) throw IoError("element literal: permutation image out of range");
      imgs.push_back(static_cast<uint16_t>(x));
    }
    return GroupElement(PermElement(std::move(imgs)));
  }
  if (kind == "mat") {
    uint32_t p = j.at("p").get<uint32_t>();
    PrimeField field(p);
    const auto& rows = j.at("rows");
    uint32_t dim = static_cast<uint32_t>(rows.size());
    std::vector<uint32_t> entries;
    for (const auto& row : rows) {
      if (row.size() != dim) throw IoError("element literal: matrix is not square");
      for (const auto& v : row) entries.push_back(field.reduce(v.get<int64_t>()));
    }
    return GroupElement(MatrixElement(dim, field, std::move(entries)));
  }
  if (kind == "pair") {
    return make_pair(element_from_json(j.at("left")), element_from_json(j.at("right")));
  }
  throw IoError("element literal: unknown kind '" + kind + "'");
}

// --- group definition files --------------------------------------------------
// {"name":..., "generators":[element literals], "cap":...}

struct GroupDef {
  std::string name;
  std::vector<GroupElement> generators;
  size_t cap = kDefaultOrderCap;
};

inline GroupDef group_def_from_json(const json& j) {
  GroupDef d;
  if (j.contains("name")) d.name = j.at("name").get<std::string>();
  if (!j.contains("generators") || j.at("generators").empty())
    throw IoError("group definition: missing generators");
  for (const auto& lit : j.at("generators")) {
    GroupElement e = element_from_json(lit);
    validate_user_carrier(e);
    d.generators.push_back(std::move(e));
  }
  if (j.contains("cap")) d.cap = j.at("cap").get<size_t>();
  return d;
}

inline GroupPtr build_group(const GroupDef& def) { return FiniteGroup::closure(def.generators, def.cap); }

// --- reports ----------------------------------------------------------------

inline json oracle_report_to_json(const FiniteGroup& g, uint32_t p, uint64_t sylow_order,
                                  const OracleResult& oracle) {
  json j;
  j["group_digest"] = g.digest_hex();
  j["p"] = p;
  j["order"] = g.order();
  j["sylow_order"] = sylow_order;
  j["min_index"] = oracle.index;
  j["search_space"] = oracle.search_space;
  json gens = json::array();
  for (const auto& e : oracle.subgroup.generator_elements()) gens.push_back(element_to_json(e));
  j["abelian_subgroup_generators"] = gens;
  return j;
}

inline json witness_report_to_json(const WitnessReport& r) {
  json j;
  j["construction"] = r.construction;
  j["group_digest"] = r.subgroup.parent->digest_hex();
  j["p"] = r.p;
  j["index"] = r.index;
  j["bound"] = r.bound.to_string();
  j["bound_satisfied"] = r.bound_satisfied;
  j["certificates"] = {{"normal", r.certificates.normal},
                       {"abelian", r.certificates.abelian},
                       {"p_prime", r.certificates.p_prime}};
  j["chain_values"] = r.chain;
  json gens = json::array();
  for (const auto& e : r.subgroup.generator_elements()) gens.push_back(element_to_json(e));
  j["subgroup_generators"] = gens;
  return j;
}

// --- profiles ----------------------------------------------------------------
// {"c_G":..., "r_G":..., "n":..., "kp_order":..., "ell_X"?, "dim_X"?}

inline StructureProfile profile_from_json(const json& j) {
  StructureProfile p;
  p.c_G = j.at("c_G").get<uint64_t>();
  p.r_G = j.at("r_G").get<uint64_t>();
  p.n = j.at("n").get<uint64_t>();
  p.kp_order = j.value("kp_order", 1ULL);
  if (j.contains("ell_X")) p.ell_X = j.at("ell_X").get<uint64_t>();
  if (j.contains("dim_X")) p.dim_X = j.at("dim_X").get<uint64_t>();
  p.validate();
  return p;
}

inline json profile_to_json(const StructureProfile& p) {
  json j;
  j["c_G"] = p.c_G;
  j["r_G"] = p.r_G;
  j["n"] = p.n;
  j["kp_order"] = p.kp_order;
  if (p.ell_X) j["ell_X"] = *p.ell_X;
  if (p.dim_X) j["dim_X"] = *p.dim_X;
  return j;
}

inline json constants_report_to_json(const StructureProfile& profile, uint64_t j_n, uint64_t jp_n,
                                     const ConstantsReport& r) {
  json j;
  j["profile"] = profile_to_json(profile);
  j["inputs"] = {{"J_n", j_n}, {"Jp_n", jp_n}};
  j["J_G"] = r.j_G.to_string();
  j["Jp_G"] = r.jp_G.to_string();
  j["e_G"] = r.e_G;
  j["formulas"] = {{"J_G", "c_G * J_n^c_G"},
                   {"Jp_G", "c_G * Jp_n^c_G * kp_order^e_G"},
                   {"e_G", "3*(r_G+1)*c_G"}};
  if (r.j_X) {
    j["J_X"] = r.j_X->to_string();
    j["Jp_X"] = r.jp_X->to_string();
    j["e_X"] = *r.e_X;
    j["formulas"]["J_X"] = "ell_X * J_n^ell_X";
    j["formulas"]["Jp_X"] = "ell_X * Jp_G^ell_X";
    j["formulas"]["e_X"] = "3*(r_G+1)*ell_X";
  }
  return j;
}

// --- files --------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write failed for '" + path + "'");
}

inline json parse_json(const std::string& text, const std::string& context) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw IoError("invalid JSON in " + context);
  return j;
}

}  // namespace jordankit
