#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "analysis.hpp"
#include "catalog.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "rational.hpp"
#include "witness.hpp"

namespace jordankit {

/// One (group, p) measurement: the oracle's optimal index, the indices of the
/// witness constructions that applied, and the Theorem-1.4-shaped ratio
/// oracle_index / sylow_order^3 as an exact rational.
struct SurveyRecord {
  std::string name;
  std::string family;
  std::string group_digest;
  uint64_t order = 0;
  uint32_t p = 0;
  uint64_t sylow_order = 1;
  std::optional<uint64_t> oracle_index;
  std::map<std::string, uint64_t> witness_indices;
  std::optional<Rational> ratio;
  bool bounds_ok = true;
  std::string error;

  friend bool operator==(const SurveyRecord& a, const SurveyRecord& b) {
    return a.name == b.name && a.family == b.family && a.group_digest == b.group_digest &&
           a.order == b.order && a.p == b.p && a.sylow_order == b.sylow_order &&
           a.oracle_index == b.oracle_index && a.witness_indices == b.witness_indices &&
           a.ratio == b.ratio && a.bounds_ok == b.bounds_ok && a.error == b.error;
  }
};

struct SurveyOptions {
  uint32_t p = 0;
  size_t jobs = 1;
  size_t cap = kDefaultOrderCap;
  size_t oracle_limit = kEnumerationLimit;
  uint64_t seed = kDefaultSeed;
};

namespace detail {

inline SurveyRecord survey_one(const CatalogEntry& entry, const SurveyOptions& opt) {
  SurveyRecord rec;
  rec.name = entry.name;
  rec.family = entry.family;
  rec.p = opt.p;
  try {
    // per-entry seed keeps sampled homomorphism checks independent of batch order
    uint64_t seed = opt.seed ^ fnv1a64(entry.name);
    BuiltEntry built = build_entry(entry, opt.cap, seed);
    GroupPtr g = built.group;
    rec.group_digest = g->digest_hex();
    rec.order = g->order();
    rec.sylow_order = opt.p == 0 ? 1 : sylow(g, opt.p).subgroup.order();

    std::optional<OracleResult> oracle;
    if (g->order() <= opt.oracle_limit) {
      oracle = minimal_index_normal_abelian(g, opt.p, opt.oracle_limit);
      rec.oracle_index = oracle->index;
      rec.ratio = Rational(oracle->index, rec.sylow_order * rec.sylow_order * rec.sylow_order);
    }

    auto absorb = [&rec](const WitnessReport& w) {
      rec.witness_indices[w.construction] = w.index;
      if (!w.bound_satisfied || !w.certified() || !w.chain_ok()) rec.bounds_ok = false;
    };

    // Chermak-Delgado is a p = 0 style witness; its subgroup need not be a
    // p'-group, so it only enters when every subgroup is one.
    if ((opt.p == 0 || is_p_prime(*g, opt.p)) && g->order() <= opt.oracle_limit) {
      Subgroup m = chermak_delgado(g, opt.oracle_limit);
      WitnessReport w;
      w.construction = "chermak_delgado";
      w.p = opt.p;
      w.subgroup = m;
      w.index = g->order() / m.order();
      w.bound = BigUint(g->order());  // always within the trivial bound
      w.bound_satisfied = true;
      w.certificates = certify(*g, m.mask, opt.p);
      absorb(w);
    }

    // conjugate-intersection witness through the derived subgroup, when
    // proper; only the derived subgroup itself must be within oracle reach
    {
      Subgroup der = derived_subgroup(g);
      if (!der.is_full() && !der.is_trivial() && der.order() <= opt.oracle_limit) {
        ExtractedGroup dg = subgroup_as_group(der);
        OracleResult inner = minimal_index_normal_abelian(dg.group, opt.p, opt.oracle_limit);
        Subgroup a0 = Subgroup::from_mask(g, dg.lift_mask(inner.subgroup.mask), false);
        absorb(conjugate_intersection_witness(g, der, a0, opt.p));
      }
    }

    if (built.product && built.product->left->order() <= opt.oracle_limit &&
        built.product->right->order() <= opt.oracle_limit) {
      ProductContext ctx = make_product_context(*built.product, Subgroup::full(g), seed);
      OracleResult o1 = minimal_index_normal_abelian(ctx.image1, opt.p, opt.oracle_limit);
      OracleResult o2 = minimal_index_normal_abelian(ctx.image2, opt.p, opt.oracle_limit);
      WitnessReport w = product_witness(ctx, o1.subgroup, o2.subgroup, opt.p);
      // the context group is an isomorphic repackaging of g; indices transfer
      absorb(w);
    }

    if (built.extension && built.extension->total->order() <= opt.oracle_limit) {
      OracleResult oh = minimal_index_normal_abelian(built.extension->total, opt.p, opt.oracle_limit);
      absorb(quotient_witness_general(*built.extension, opt.p, oh.subgroup));
    }

    if (oracle) {
      for (const auto& [name, idx] : rec.witness_indices) {
        (void)name;
        if (*rec.oracle_index > idx) rec.bounds_ok = false;  // oracle must dominate
      }
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
    for (auto& c : rec.error)
      if (c == ',' || c == '\n') c = ';';
  }
  return rec;
}

}  // namespace detail

/// Batch driver: one record per catalog entry at the given p. Entries run in
/// parallel when jobs > 1, but results land in catalog order and every
/// computation is deterministic, so the emitted bytes are identical for any
/// thread count. Per-entry failures are recorded, never thrown.
inline std::vector<SurveyRecord> run_survey(const std::vector<CatalogEntry>& catalog,
                                            const SurveyOptions& opt) {
  std::vector<SurveyRecord> records(catalog.size());
  if (opt.jobs <= 1 || catalog.size() <= 1) {
    for (size_t i = 0; i < catalog.size(); ++i) records[i] = detail::survey_one(catalog[i], opt);
    return records;
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= catalog.size()) return;
      records[i] = detail::survey_one(catalog[i], opt);
    }
  };
  std::vector<std::thread> pool;
  for (size_t t = 0; t < opt.jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return records;
}

// --- persistence ---------------------------------------------------------

inline json record_to_json(const SurveyRecord& r) {
  json j;
  j["name"] = r.name;
  j["family"] = r.family;
  j["group_digest"] = r.group_digest;
  j["order"] = r.order;
  j["p"] = r.p;
  j["sylow_order"] = r.sylow_order;
  if (r.oracle_index) j["oracle_index"] = *r.oracle_index;
  j["witness_indices"] = r.witness_indices;
  if (r.ratio) j["ratio"] = r.ratio->to_string();
  j["bounds_ok"] = r.bounds_ok;
  j["error"] = r.error;
  return j;
}

inline SurveyRecord record_from_json(const json& j) {
  SurveyRecord r;
  r.name = j.at("name").get<std::string>();
  r.family = j.at("family").get<std::string>();
  r.group_digest = j.at("group_digest").get<std::string>();
  r.order = j.at("order").get<uint64_t>();
  r.p = j.at("p").get<uint32_t>();
  r.sylow_order = j.at("sylow_order").get<uint64_t>();
  if (j.contains("oracle_index")) r.oracle_index = j.at("oracle_index").get<uint64_t>();
  for (const auto& [k, v] : j.at("witness_indices").items())
    r.witness_indices[k] = v.get<uint64_t>();
  if (j.contains("ratio")) r.ratio = Rational::parse(j.at("ratio").get<std::string>());
  r.bounds_ok = j.at("bounds_ok").get<bool>();
  r.error = j.at("error").get<std::string>();
  return r;
}

/// JSONL: one record per line, keys sorted, no floating point anywhere.
inline std::string emit_jsonl(const std::vector<SurveyRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

inline std::vector<SurveyRecord> parse_jsonl(const std::string& text) {
  std::vector<SurveyRecord> out;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    out.push_back(record_from_json(parse_json(line, "JSONL line " + std::to_string(lineno))));
  }
  return out;
}

inline const char* kCsvHeader =
    "name,family,group_digest,order,p,sylow_order,oracle_index,witness_indices,ratio,bounds_ok,error";

inline std::string emit_csv(const std::vector<SurveyRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += r.name + ',' + r.family + ',' + r.group_digest + ',';
    out += std::to_string(r.order) + ',' + std::to_string(r.p) + ',' + std::to_string(r.sylow_order) + ',';
    if (r.oracle_index) out += std::to_string(*r.oracle_index);
    out += ',';
    bool first = true;
    for (const auto& [k, v] : r.witness_indices) {
      if (!first) out += ';';
      out += k + '=' + std::to_string(v);
      first = false;
    }
    out += ',';
    if (r.ratio) out += r.ratio->to_string();
    out += ',';
    out += r.bounds_ok ? "true" : "false";
    out += ',';
    out += r.error;
    out += '\n';
  }
  return out;
}

inline std::vector<SurveyRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("CSV: missing header");
  if (line != kCsvHeader) throw IoError("CSV: unexpected header");
  std::vector<SurveyRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        f.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    f.push_back(cur);
    if (f.size() != 11) throw IoError("CSV: wrong field count on line '" + line + "'");
    SurveyRecord r;
    r.name = f[0];
    r.family = f[1];
    r.group_digest = f[2];
    r.order = std::stoull(f[3]);
    r.p = static_cast<uint32_t>(std::stoul(f[4]));
    r.sylow_order = std::stoull(f[5]);
    if (!f[6].empty()) r.oracle_index = std::stoull(f[6]);
    if (!f[7].empty()) {
      std::istringstream ws(f[7]);
      std::string pair;
      while (std::getline(ws, pair, ';')) {
        auto eq = pair.find('=');
        if (eq == std::string::npos) throw IoError("CSV: bad witness pair '" + pair + "'");
        r.witness_indices[pair.substr(0, eq)] = std::stoull(pair.substr(eq + 1));
      }
    }
    if (!f[8].empty()) r.ratio = Rational::parse(f[8]);
    r.bounds_ok = f[9] == "true";
    r.error = f[10];
    out.push_back(std::move(r));
  }
  return out;
}

// --- family constants -----------------------------------------------------

struct FitResult {
  std::string family;
  uint32_t p = 0;
  Rational fitted;
  std::string argmax_name;
  size_t records_used = 0;
};

/// Fitted J' over one family: the maximum observed oracle_index/sylow^3 ratio.
/// Records without an oracle value are excluded; fitted constants must rest
/// on exact optima. Records may carry different primes (a family sampled at
/// each defining prime); the result's p is 0 in that case.
inline FitResult fit_family_constant(const std::vector<SurveyRecord>& records) {
  FitResult fit;
  bool first = true, uniform_p = true;
  for (const auto& r : records) {
    if (!r.ratio || !r.oracle_index) continue;
    if (first) {
      fit.family = r.family;
      fit.p = r.p;
      fit.fitted = *r.ratio;
      fit.argmax_name = r.name;
      first = false;
    } else {
      if (r.family != fit.family)
        throw PreconditionError("fit_family_constant: records mix families");
      if (r.p != fit.p) uniform_p = false;
      if (fit.fitted < *r.ratio) {
        fit.fitted = *r.ratio;
        fit.argmax_name = r.name;
      }
    }
    ++fit.records_used;
  }
  if (first) throw PreconditionError("fit_family_constant: empty family (no oracle-backed records)");
  if (!uniform_p) fit.p = 0;
  return fit;
}

/// Group records by family and fit each separately.
inline std::vector<FitResult> fit_all(const std::vector<SurveyRecord>& records) {
  std::map<std::string, std::vector<SurveyRecord>> buckets;
  for (const auto& r : records) {
    if (!r.ratio || !r.oracle_index) continue;
    buckets[r.family].push_back(r);
  }
  std::vector<FitResult> out;
  for (auto& [key, recs] : buckets) out.push_back(fit_family_constant(recs));
  return out;
}

/// p-Jordan predicate over a family: every fully-measured record satisfies
/// oracle_index <= J' * sylow_order^e. Returns the violating names.
inline std::vector<std::string> check_p_jordan_bound(const std::vector<SurveyRecord>& records,
                                                     const Rational& jprime, uint64_t e) {
  std::vector<std::string> violations;
  for (const auto& r : records) {
    if (!r.oracle_index) continue;
    // oracle_index <= (num/den) * sylow^e  <=>  oracle_index * den <= num * sylow^e
    BigUint lhs = BigUint(*r.oracle_index) * BigUint(jprime.den);
    BigUint rhs = BigUint(jprime.num) * BigUint::pow(BigUint(r.sylow_order), e);
    if (!(lhs <= rhs)) violations.push_back(r.name);
  }
  return violations;
}

/// Generalized p-Jordan predicate: over the records whose group is a
/// p'-group, the oracle index must stay below one constant J.
inline std::vector<std::string> check_generalized_jordan_bound(
    const std::vector<SurveyRecord>& records, uint64_t j) {
  std::vector<std::string> violations;
  for (const auto& r : records) {
    if (!r.oracle_index) continue;
    if (r.p != 0 && r.order % r.p == 0) continue;  // only p'-subgroups quantified
    if (*r.oracle_index > j) violations.push_back(r.name);
  }
  return violations;
}

/// 0 iff no bound violations and no entry errors; 1 on operational error;
/// 2 on bound falsification.
inline int survey_exit_code(const std::vector<SurveyRecord>& records) {
  bool any_error = false, any_violation = false;
  for (const auto& r : records) {
    if (!r.error.empty()) any_error = true;
    if (!r.bounds_ok) any_violation = true;
  }
  if (any_error) return 1;
  if (any_violation) return 2;
  return 0;
}

}  // namespace jordankit
