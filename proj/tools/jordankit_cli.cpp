// jordankit command line: closure, analyze, witness, constants, survey, fit.
// All inputs are JSON files; see README for the schemas.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include <jordankit/jordankit.hpp>

namespace jk = jordankit;
using jk::json;

namespace {

void emit_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    jk::write_file(out_path, text);
  }
}

jk::GroupPtr load_group(const std::string& path, size_t cap_override) {
  json j = jk::parse_json(jk::read_file(path), path);
  jk::GroupDef def = jk::group_def_from_json(j);
  if (cap_override) def.cap = cap_override;
  return jk::build_group(def);
}

jk::Subgroup subgroup_from_spec(jk::GroupPtr g, const json& spec, bool require_normal) {
  if (require_normal) return jk::subgroup_from_kernel_spec(g, spec);
  if (spec.is_string()) return jk::subgroup_from_kernel_spec(g, spec);
  if (spec.is_object() && spec.contains("generators")) {
    std::vector<int> seed;
    for (const auto& lit : spec.at("generators")) {
      int pos = g->index_of(jk::element_from_json(lit));
      if (pos < 0) throw jk::CatalogError("subgroup spec: generator is not in the group");
      seed.push_back(pos);
    }
    return jk::Subgroup::generated(g, seed);
  }
  throw jk::CatalogError("subgroup spec: expected tag string or {generators:[...]}");
}

int witness_exit(const jk::WitnessReport& r) {
  if (!r.certified()) return 1;
  return r.bound_satisfied ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jordan-kit: finite-group witnesses, constants and index-bound surveys"};
  app.require_subcommand(1);

  std::string in_path, out_path, catalog_path, profile_path, records_path, format = "jsonl";
  size_t cap = 0, limit = jk::kEnumerationLimit, jobs = 1;
  uint32_t p = 0;
  uint64_t seed = jk::kDefaultSeed;
  uint64_t jn = 1, jpn = 1, base_bound = 0;
  std::string mode = "general", witness_kind;

  auto* c_closure = app.add_subcommand("closure", "close a generator set into an explicit group");
  c_closure->add_option("--in", in_path, "group definition JSON")->required();
  c_closure->add_option("--cap", cap, "order cap override");
  c_closure->add_option("--out", out_path, "output path (stdout if omitted)");

  auto* c_analyze = app.add_subcommand("analyze", "oracle + Chermak-Delgado on one group");
  c_analyze->add_option("--in", in_path, "group definition JSON")->required();
  c_analyze->add_option("--p", p, "prime (0 = no coprimality constraint)");
  c_analyze->add_option("--cap", cap, "order cap override");
  c_analyze->add_option("--limit", limit, "oracle enumeration limit");
  c_analyze->add_option("--out", out_path, "output path");

  auto* c_witness = app.add_subcommand("witness", "run one witness construction from a job file");
  c_witness->add_option("kind", witness_kind, "product | quotient | sz | conj-intersect")->required();
  c_witness->add_option("--in", in_path, "witness job JSON")->required();
  c_witness->add_option("--cap", cap, "order cap override");
  c_witness->add_option("--seed", seed, "seed for sampled homomorphism checks");
  c_witness->add_option("--out", out_path, "output path");

  auto* c_constants = app.add_subcommand("constants", "evaluate the constant formulas on a profile");
  c_constants->add_option("--profile", profile_path, "StructureProfile JSON")->required();
  c_constants->add_option("--jn", jn, "base constant J(n)")->required();
  c_constants->add_option("--jpn", jpn, "base constant J'(n)");
  c_constants->add_option("--out", out_path, "output path");

  auto* c_survey = app.add_subcommand("survey", "oracle + witnesses across a catalog");
  c_survey->add_option("--catalog", catalog_path, "catalog JSON")->required();
  c_survey->add_option("--p", p, "prime (0 = no coprimality constraint)");
  c_survey->add_option("--format", format, "jsonl | csv")->check(CLI::IsMember({"jsonl", "csv"}));
  c_survey->add_option("--out", out_path, "output path");
  c_survey->add_option("--jobs", jobs, "worker threads");
  c_survey->add_option("--cap", cap, "order cap override");
  c_survey->add_option("--limit", limit, "oracle enumeration limit");
  c_survey->add_option("--seed", seed, "seed for sampled homomorphism checks");

  auto* c_fit = app.add_subcommand("fit", "fit family constants from survey records");
  c_fit->add_option("--records", records_path, "records file (jsonl or csv)")->required();
  c_fit->add_option("--format", format, "jsonl | csv")->check(CLI::IsMember({"jsonl", "csv"}));
  c_fit->add_option("--out", out_path, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_closure) {
      jk::GroupPtr g = load_group(in_path, cap);
      json j;
      j["order"] = g->order();
      j["group_digest"] = g->digest_hex();
      j["generator_count"] = g->generator_positions().size();
      emit_output(j.dump(2), out_path);
      return 0;
    }

    if (*c_analyze) {
      jk::GroupPtr g = load_group(in_path, cap);
      jk::SylowWitness syl = jk::sylow(g, p);
      jk::OracleResult oracle = jk::minimal_index_normal_abelian(g, p, limit);
      json j = jk::oracle_report_to_json(*g, p, syl.subgroup.order(), oracle);
      j["sylow_normal"] = syl.is_normal;
      jk::Subgroup m = jk::chermak_delgado(g, limit);
      j["chermak_delgado"] = {{"order", m.order()},
                              {"index", g->order() / m.order()},
                              {"contains_center", jk::center(g).mask.is_subset_of(m.mask)}};
      emit_output(j.dump(2), out_path);
      return 0;
    }

    if (*c_witness) {
      json job = jk::parse_json(jk::read_file(in_path), in_path);
      uint32_t wp = job.value("p", 0u);

      if (witness_kind == "product") {
        jk::GroupDef d1 = jk::group_def_from_json(job.at("g1"));
        jk::GroupDef d2 = jk::group_def_from_json(job.at("g2"));
        if (cap) d1.cap = d2.cap = cap;
        jk::DirectProduct prod =
            jk::direct_product(jk::build_group(d1), jk::build_group(d2), cap ? cap : jk::kDefaultOrderCap, seed);
        jk::Subgroup gamma = jk::Subgroup::full(prod.group);
        if (job.contains("gamma_generators")) {
          std::vector<int> seed_pos;
          for (const auto& lit : job.at("gamma_generators")) {
            int pos = prod.group->index_of(jk::element_from_json(lit));
            if (pos < 0) throw jk::PreconditionError("gamma generator is not in the product");
            seed_pos.push_back(pos);
          }
          gamma = jk::Subgroup::generated(prod.group, seed_pos);
        }
        jk::ProductContext ctx = jk::make_product_context(prod, gamma, seed);
        jk::OracleResult o1 = jk::minimal_index_normal_abelian(ctx.image1, wp, limit);
        jk::OracleResult o2 = jk::minimal_index_normal_abelian(ctx.image2, wp, limit);
        jk::WitnessReport r = jk::product_witness(ctx, o1.subgroup, o2.subgroup, wp);
        emit_output(jk::witness_report_to_json(r).dump(2), out_path);
        return witness_exit(r);
      }

      if (witness_kind == "quotient") {
        jk::GroupDef dh = jk::group_def_from_json(job.at("h"));
        if (cap) dh.cap = cap;
        jk::GroupPtr h = jk::build_group(dh);
        jk::Subgroup kernel = jk::subgroup_from_kernel_spec(h, job.at("kernel"));
        jk::ExtensionInstance ext = jk::make_extension(h, kernel, seed);
        std::string m = job.value("mode", mode);
        jk::WitnessReport r;
        if (m == "pprime") {
          // base_bound stands in for the abstract J(G); |H| is always valid
          uint64_t bb = job.value("base_bound", base_bound);
          if (bb == 0) bb = h->order();
          r = jk::quotient_witness_pprime(ext, wp, bb, limit);
        } else {
          jk::Subgroup a_h = job.contains("a_h")
                                 ? subgroup_from_spec(h, job.at("a_h"), false)
                                 : jk::minimal_index_normal_abelian(h, wp, limit).subgroup;
          std::optional<std::pair<jk::BigUint, uint64_t>> je;
          if (job.contains("jprime") && job.contains("e"))
            je = {jk::BigUint(job.at("jprime").get<uint64_t>()), job.at("e").get<uint64_t>()};
          r = jk::quotient_witness_general(ext, wp, a_h, je);
        }
        emit_output(jk::witness_report_to_json(r).dump(2), out_path);
        return witness_exit(r);
      }

      if (witness_kind == "sz") {
        jk::GroupDef dh = jk::group_def_from_json(job.at("h"));
        if (cap) dh.cap = cap;
        jk::GroupPtr h = jk::build_group(dh);
        jk::Subgroup n = jk::subgroup_from_kernel_spec(h, job.at("kernel"));
        jk::Subgroup c = jk::schur_zassenhaus(h, n);
        json j;
        j["group_digest"] = h->digest_hex();
        j["kernel_order"] = n.order();
        j["complement_order"] = c.order();
        j["intersection_trivial"] = jk::intersect(c, n).order() == 1;
        json gens = json::array();
        for (const auto& e : c.generator_elements()) gens.push_back(jk::element_to_json(e));
        j["complement_generators"] = gens;
        emit_output(j.dump(2), out_path);
        return 0;
      }

      if (witness_kind == "conj-intersect") {
        jk::GroupDef dg = jk::group_def_from_json(job.at("gamma"));
        if (cap) dg.cap = cap;
        jk::GroupPtr gamma = jk::build_group(dg);
        jk::Subgroup gamma0 = jk::subgroup_from_kernel_spec(gamma, job.at("gamma0"));
        jk::Subgroup a0 = [&]() {
          if (job.contains("a0")) return subgroup_from_spec(gamma, job.at("a0"), false);
          jk::ExtractedGroup eg = jk::subgroup_as_group(gamma0);
          jk::OracleResult o = jk::minimal_index_normal_abelian(eg.group, wp, limit);
          return jk::Subgroup::from_mask(gamma, eg.lift_mask(o.subgroup.mask), false);
        }();
        jk::WitnessReport r = jk::conjugate_intersection_witness(gamma, gamma0, a0, wp);
        emit_output(jk::witness_report_to_json(r).dump(2), out_path);
        return witness_exit(r);
      }

      throw jk::Error("unknown witness kind '" + witness_kind + "'");
    }

    if (*c_constants) {
      json pj = jk::parse_json(jk::read_file(profile_path), profile_path);
      jk::StructureProfile profile = jk::profile_from_json(pj);
      jk::ConstantsReport rep = jk::build_constants_report(profile, jn, jpn);
      emit_output(jk::constants_report_to_json(profile, jn, jpn, rep).dump(2), out_path);
      return 0;
    }

    if (*c_survey) {
      json cj = jk::parse_json(jk::read_file(catalog_path), catalog_path);
      std::vector<jk::CatalogEntry> catalog = jk::parse_catalog(cj);
      jk::SurveyOptions opt;
      opt.p = p;
      opt.jobs = jobs;
      if (cap) opt.cap = cap;
      opt.oracle_limit = limit;
      opt.seed = seed;
      std::vector<jk::SurveyRecord> records = jk::run_survey(catalog, opt);
      emit_output(format == "csv" ? jk::emit_csv(records) : jk::emit_jsonl(records), out_path);
      return jk::survey_exit_code(records);
    }

    if (*c_fit) {
      std::string text = jk::read_file(records_path);
      bool csv = format == "csv" || records_path.ends_with(".csv");
      std::vector<jk::SurveyRecord> records = csv ? jk::parse_csv(text) : jk::parse_jsonl(text);
      json out = json::array();
      for (const auto& fit : jk::fit_all(records)) {
        out.push_back({{"family", fit.family},
                       {"p", fit.p},
                       {"fitted_jprime", fit.fitted.to_string()},
                       {"argmax", fit.argmax_name},
                       {"records_used", fit.records_used}});
      }
      emit_output(out.dump(2), out_path);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
