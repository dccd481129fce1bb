#include "lorentz/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "lorentz/comparison.hpp"
#include "lorentz/json_io.hpp"
#include "lorentz/quotient.hpp"
#include "lorentz/scenarios.hpp"

namespace lorentz {

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LORENTZ_GLUE_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
    }
  }
  return 20240917ull;
}

std::string dump(const Json& j, bool pretty) { return pretty ? j.dump(2) + "\n" : j.dump() + "\n"; }

void emit(const std::string& text, const std::string& out_path, std::string& out) {
  out += text;
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    f << text;
  }
}

// point reference inside a gluing spec: "1:id", "2:id", or a bare id that is
// unique across both spaces
int resolve_point(const ResolvedGluing& g, const GluingSpec& spec, const std::string& ref) {
  if (ref.rfind("1:", 0) == 0) {
    int i = spec.x1.index_of(ref.substr(2));
    if (i < 0) throw Error(Err::BadInput, "unknown point " + ref);
    return i;
  }
  if (ref.rfind("2:", 0) == 0) {
    int i = spec.x2.index_of(ref.substr(2));
    if (i < 0) throw Error(Err::BadInput, "unknown point " + ref);
    return g.n1 + i;
  }
  int i1 = spec.x1.index_of(ref), i2 = spec.x2.index_of(ref);
  if (i1 >= 0 && i2 >= 0)
    throw Error(Err::BadInput, "ambiguous point " + ref + "; use 1: or 2: prefix");
  if (i1 >= 0) return i1;
  if (i2 >= 0) return g.n1 + i2;
  throw Error(Err::BadInput, "unknown point " + ref);
}

int cmd_validate(const std::string& file, bool pretty, const std::string& out_path,
                 std::string& out) {
  Json j;
  try {
    j = load_json_file(file);
  } catch (const Error&) {
    emit(dump(Json{{"error", "parse failure"}, {"file", file}}, pretty), out_path, out);
    return 1;
  }
  FiniteLorentzSpace X;
  try {
    X = parse_space(j);
  } catch (const Error& e) {
    emit(dump(Json{{"error", e.what()}, {"file", file}}, pretty), out_path, out);
    return 1;
  }
  auto v = validate_space(X);
  emit(dump(violations_report(X, v), pretty), out_path, out);
  return v.empty() ? 0 : 2;
}

int cmd_glue(const std::string& file, bool pretty, const std::string& out_path,
             std::string& out) {
  GluingSpec spec = parse_gluing_spec(load_json_file(file));
  ResolvedGluing g;
  try {
    g = resolve_gluing(spec);
  } catch (const Error& e) {
    emit(dump(Json{{"error", e.what()}}, pretty), out_path, out);
    return 1;
  }
  MapPropertyReport props = check_map_properties(spec, 0.5);
  QuotientSpace Q = build_quotient(g.space, g.ident);
  Json rep = quotient_report(Q);
  rep["map_properties"] = map_properties_report(props, spec.x1);
  Json warnings = Json::array();
  auto warn_if = [&](bool declared, const PropertyCheck& pc, const char* name) {
    if (declared && pc.checked && !pc.holds)
      warnings.push_back(std::string("declared property fails: ") + name);
  };
  warn_if(spec.declared.tau_preserving, props.tau_preserving, "tau_preserving");
  warn_if(spec.declared.ll_preserving, props.ll_preserving, "ll_preserving");
  warn_if(spec.declared.leq_preserving, props.leq_preserving, "leq_preserving");
  warn_if(spec.declared.signed_distance_preserving, props.signed_dist,
          "signed_distance_preserving");
  rep["warnings"] = warnings;
  emit(dump(rep, pretty), out_path, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::string& out) {
  CLI::App app{"synthetic Lorentzian gluing toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent JSON output");

  std::string file, out_path, ref1, ref2, bound = "upper", name;
  std::string glue_file;
  double K = 0.0, tol = kMetricTol;
  int triangles = 100, pairs = 18, jobs = 1, scale = 1;
  std::uint64_t seed = default_seed();
  std::vector<double> bm, bp, xq;

  auto* validate = app.add_subcommand("validate", "check the pre-length axioms of a space file");
  validate->add_option("file", file)->required();
  validate->add_option("--out", out_path);

  auto* glue = app.add_subcommand("glue", "amalgamate a gluing spec and report the quotient");
  glue->add_option("file", file)->required();
  glue->add_option("--out", out_path);

  auto* tau = app.add_subcommand("tau", "quotient (or plain) time separation between two points");
  tau->add_option("--space", file);
  tau->add_option("--glue", glue_file);
  tau->add_option("p", ref1)->required();
  tau->add_option("q", ref2)->required();
  tau->add_option("--out", out_path);

  auto* diamond = app.add_subcommand("diamond", "causal diamond and its decomposition");
  diamond->add_option("--glue", glue_file)->required();
  diamond->add_option("p", ref1)->required();
  diamond->add_option("q", ref2)->required();
  diamond->add_option("--out", out_path);

  auto* curvature = app.add_subcommand("curvature", "triangle comparison verdict on a space file");
  curvature->add_option("file", file)->required();
  curvature->add_option("--K", K);
  curvature->add_option("--bound", bound)->check(CLI::IsMember({"upper", "lower"}));
  curvature->add_option("--triangles", triangles);
  curvature->add_option("--pairs", pairs);
  curvature->add_option("--seed", seed);
  curvature->add_option("--tol", tol);
  curvature->add_option("--out", out_path);

  auto* scenario = app.add_subcommand("scenario", "run a named desk-scale experiment");
  scenario->add_option("name", name)->required();
  scenario->add_option("--seed", seed);
  scenario->add_option("--jobs", jobs);
  scenario->add_option("--scale", scale);
  scenario->add_option("--out", out_path);

  auto* lens = app.add_subcommand("lens", "wide-lens membership in the eta+ chart");
  lens->add_option("--bminus", bm)->required()->expected(2, 16);
  lens->add_option("--bplus", bp)->required()->expected(2, 16);
  lens->add_option("--x", xq)->required()->expected(2, 16);
  lens->add_option("--out", out_path);

  for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; })) sc->fallthrough();

  std::vector<std::string> argv = args;
  std::vector<const char*> cargv;
  cargv.push_back("lorentz");
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    int code = app.exit(e, os, os);
    out += os.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(file, pretty, out_path, out);
    if (app.got_subcommand(glue)) return cmd_glue(file, pretty, out_path, out);
    if (app.got_subcommand(tau)) {
      Json rep;
      if (!glue_file.empty()) {
        GluingSpec spec = parse_gluing_spec(load_json_file(glue_file));
        ResolvedGluing g = resolve_gluing(spec);
        QuotientSpace Q = build_quotient(g.space, g.ident);
        int p = resolve_point(g, spec, ref1), q = resolve_point(g, spec, ref2);
        double v = Q.tilde_tau(Q.class_of[p], Q.class_of[q]);
        rep["tilde_tau"] = is_inf(v) ? Json("inf") : Json(v);
        rep["causal"] = static_cast<bool>(Q.tilde_causal(Q.class_of[p], Q.class_of[q]));
        rep["chron"] = static_cast<bool>(Q.tilde_chron(Q.class_of[p], Q.class_of[q]));
        if (Q.tilde_chron(Q.class_of[p], Q.class_of[q]) && !is_inf(v)) {
          Chain ch = Q.witness_chain(Q.class_of[p], Q.class_of[q]);
          Json steps = Json::array();
          for (auto [u, w] : ch.steps)
            steps.push_back(Json::array({g.space.ids[u], g.space.ids[w]}));
          rep["witness"] = steps;
        }
      } else {
        FiniteLorentzSpace X = parse_space(load_json_file(file));
        int p = X.index_of(ref1), q = X.index_of(ref2);
        if (p < 0 || q < 0) throw Error(Err::BadInput, "unknown point id");
        double v = X.tau(p, q);
        rep["tau"] = is_inf(v) ? Json("inf") : Json(v);
        rep["causal"] = static_cast<bool>(X.causal(p, q));
        rep["chron"] = static_cast<bool>(X.chron(p, q));
      }
      emit(dump(rep, pretty), out_path, out);
      return 0;
    }
    if (app.got_subcommand(diamond)) {
      GluingSpec spec = parse_gluing_spec(load_json_file(glue_file));
      ResolvedGluing g = resolve_gluing(spec);
      QuotientSpace Q = build_quotient(g.space, g.ident);
      int p = resolve_point(g, spec, ref1), q = resolve_point(g, spec, ref2);
      DiamondReport rep = causal_diamond(g, Q, Q.class_of[p], Q.class_of[q]);
      Json j;
      Json cls = Json::array();
      for (int c : rep.diamond) cls.push_back(Q.class_id(c));
      j["diamond"] = cls;
      j["case"] = rep.which == DiamondReport::Case::SeamToSeam          ? "seam-to-seam"
                  : rep.which == DiamondReport::Case::InteriorAvoidingSeam ? "interior-avoiding-seam"
                                                                           : "other";
      j["decomposition_checked"] = rep.checked;
      if (rep.checked) j["decomposition_holds"] = rep.decomposition_holds;
      if (!rep.detail.empty()) j["detail"] = rep.detail;
      emit(dump(j, pretty), out_path, out);
      return 0;
    }
    if (app.got_subcommand(curvature)) {
      Json cj = load_json_file(file);
      FiniteLorentzSpace X;
      if (cj.contains("x1") && cj.contains("x2")) {
        // a gluing spec: run the comparison on the quotient, where realizing
        // chains may cross the seam
        GluingSpec gspec = parse_gluing_spec(cj);
        X = quotient_to_space(build_quotient(gspec));
      } else {
        X = parse_space(cj);
      }
      DiscreteHost host(X);
      std::vector<std::pair<int, int>> chron_pairs;
      for (int i = 0; i < X.n(); ++i)
        for (int j2 = 0; j2 < X.n(); ++j2)
          if (X.chron(i, j2)) chron_pairs.push_back({i, j2});
      TriangleSampler sampler = [&](Rng& r) -> std::optional<std::array<int, 3>> {
        if (chron_pairs.empty()) return std::nullopt;
        auto [x, y] = chron_pairs[r.below(chron_pairs.size())];
        int z = static_cast<int>(r.below(static_cast<std::uint64_t>(X.n())));
        if (!X.chron(y, z)) return std::nullopt;
        return std::array<int, 3>{x, y, z};
      };
      CurvatureReport rep = curvature_verdict(host, sampler, K,
                                              bound == "upper" ? Bound::Upper : Bound::Lower,
                                              triangles, pairs, seed, tol);
      Json j;
      j["K"] = K;
      j["bound"] = bound;
      j["seed"] = seed;
      j["triangles"] = rep.triangles;
      j["pairs"] = rep.pairs;
      j["pass"] = rep.pass;
      j["worst_violation"] = rep.worst_violation == -kInf ? Json("none") : Json(rep.worst_violation);
      j["max_abs_defect"] = rep.max_abs_defect;
      if (rep.pairs > 0) {
        j["worst_pair"] = Json{{"triangle", rep.worst.triangle},
                               {"side_p", rep.worst.side_p},
                               {"side_q", rep.worst.side_q},
                               {"s_p", rep.worst.sp},
                               {"s_q", rep.worst.sq},
                               {"tau_space", rep.worst.tau_space},
                               {"tau_model", rep.worst.tau_model},
                               {"defect", rep.worst.defect}};
      }
      if (!rep.note.empty()) j["note"] = rep.note;
      emit(dump(j, pretty), out_path, out);
      return rep.pass ? 0 : 2;
    }
    if (app.got_subcommand(scenario)) {
      ScenarioResult res = run_scenario(name, seed, jobs, scale);
      Json j;
      j["scenario"] = res.name;
      j["seed"] = res.seed;
      j["expected_outcome"] = res.expected_outcome;
      j["report"] = res.report;
      emit(dump(j, pretty), out_path, out);
      return res.expected_outcome ? 0 : 2;
    }
    if (app.got_subcommand(lens)) {
      bool member = lens_membership(bm, bp, xq);
      Json j;
      j["member"] = member;
      j["R"] = tau_eta_plus(bm, bp);
      emit(dump(j, pretty), out_path, out);
      return 0;
    }
  } catch (const Error& e) {
    out += dump(Json{{"error", e.what()}}, pretty);
    return e.code == Err::BadInput ? 1 : 2;
  } catch (const std::exception& e) {
    out += dump(Json{{"error", e.what()}}, pretty);
    return 1;
  }
  return 1;
}

}  // namespace lorentz
