#include "lorentz/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace lorentz {

namespace {

Json num_or_inf(double v) {
  if (is_inf(v)) return "inf";
  return v;
}

double parse_num(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw Error(Err::BadInput, "numeric field holds an unknown string");
  }
  return j.get<double>();
}

}  // namespace

FiniteLorentzSpace parse_space(const Json& j) {
  FiniteLorentzSpace X;
  if (!j.contains("points") || !j["points"].is_array())
    throw Error(Err::BadInput, "space file needs a points array");
  bool any_coords = false;
  std::set<std::string> seen;
  for (const auto& p : j["points"]) {
    std::string id = p.at("id").get<std::string>();
    if (!seen.insert(id).second) throw Error(Err::BadInput, "duplicate point id " + id);
    X.ids.push_back(id);
    if (p.contains("coords")) any_coords = true;
  }
  int n = X.n();
  double K = 0.0;
  bool has_model = j.contains("model");
  if (has_model) K = j["model"].at("K").get<double>();
  if (any_coords) {
    X.model_K = K;
    for (const auto& p : j["points"]) {
      ModelPoint mp;
      mp.K = K;
      if (!p.contains("coords"))
        throw Error(Err::BadInput, "either all points carry coords or none");
      auto c = p["coords"];
      for (std::size_t k = 0; k < c.size() && k < 3; ++k) mp.x[k] = c[k].get<double>();
      X.coords.push_back(mp);
    }
  }
  X.tau = Mat(n, 0.0);
  X.chron = BoolMat(n, 0);
  X.causal = BoolMat(n, 0);
  for (int i = 0; i < n; ++i) X.causal(i, i) = 1;
  if (j.contains("tau"))
    for (const auto& e : j["tau"]) {
      int a = e.at(0).get<int>(), b = e.at(1).get<int>();
      if (a < 0 || a >= n || b < 0 || b >= n) throw Error(Err::BadInput, "tau index out of range");
      X.tau(a, b) = parse_num(e.at(2));
    }
  if (j.contains("causal"))
    for (const auto& e : j["causal"]) {
      int a = e.at(0).get<int>(), b = e.at(1).get<int>();
      if (a < 0 || a >= n || b < 0 || b >= n)
        throw Error(Err::BadInput, "causal index out of range");
      X.causal(a, b) = 1;
    }
  if (j.contains("chron")) {
    for (const auto& e : j["chron"]) {
      int a = e.at(0).get<int>(), b = e.at(1).get<int>();
      if (a < 0 || a >= n || b < 0 || b >= n) throw Error(Err::BadInput, "chron index out of range");
      X.chron(a, b) = 1;
    }
  } else {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) X.chron(i, k) = X.tau(i, k) > 0;
  }
  X.d = Mat(n, 0.0);
  if (j.contains("d")) {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) X.d(i, k) = i == k ? 0.0 : kInf;
    for (const auto& e : j["d"]) {
      int a = e.at(0).get<int>(), b = e.at(1).get<int>();
      if (a < 0 || a >= n || b < 0 || b >= n) throw Error(Err::BadInput, "d index out of range");
      double v = parse_num(e.at(2));
      X.d(a, b) = v;
      X.d(b, a) = v;
    }
  } else if (any_coords) {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int c = 0; c < 3; ++c) {
          double dd = X.coords[i].x[c] - X.coords[k].x[c];
          s += dd * dd;
        }
        X.d(i, k) = std::sqrt(s);
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) X.d(i, k) = i == k ? 0.0 : 1.0;
  }
  return X;
}

Json serialize_space(const FiniteLorentzSpace& X) {
  Json j;
  j["points"] = Json::array();
  int n = X.n();
  for (int i = 0; i < n; ++i) {
    Json p;
    p["id"] = X.ids[i];
    if (X.has_coords()) {
      Json c = Json::array();
      int dim = X.model_K && *X.model_K != 0.0 ? 3 : 2;
      for (int k = 0; k < dim; ++k) c.push_back(X.coords[i].x[k]);
      p["coords"] = c;
    }
    j["points"].push_back(p);
  }
  if (X.model_K) j["model"] = Json{{"K", *X.model_K}};
  Json tau = Json::array();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (X.tau(i, k) != 0.0) tau.push_back(Json::array({i, k, num_or_inf(X.tau(i, k))}));
  j["tau"] = tau;
  Json causal = Json::array();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (i != k && X.causal(i, k)) causal.push_back(Json::array({i, k}));
  j["causal"] = causal;
  bool chron_is_derived = true;
  for (int i = 0; i < n && chron_is_derived; ++i)
    for (int k = 0; k < n; ++k)
      if (static_cast<bool>(X.chron(i, k)) != (X.tau(i, k) > 0)) {
        chron_is_derived = false;
        break;
      }
  if (!chron_is_derived) {
    Json chron = Json::array();
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (X.chron(i, k)) chron.push_back(Json::array({i, k}));
    j["chron"] = chron;
  }
  Json d = Json::array();
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) d.push_back(Json::array({i, k, num_or_inf(X.d(i, k))}));
  j["d"] = d;
  return j;
}

GluingSpec parse_gluing_spec(const Json& j) {
  GluingSpec spec;
  spec.x1 = parse_space(j.at("x1"));
  spec.x2 = parse_space(j.at("x2"));
  if (j.contains("pairs"))
    for (const auto& e : j["pairs"])
      spec.pairs.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>()});
  if (j.contains("declared")) {
    const auto& d = j["declared"];
    spec.declared.tau_preserving = d.value("tau_preserving", false);
    spec.declared.ll_preserving = d.value("ll_preserving", false);
    spec.declared.leq_preserving = d.value("leq_preserving", false);
    spec.declared.signed_distance_preserving = d.value("signed_distance_preserving", false);
  }
  return spec;
}

Json serialize_gluing_spec(const GluingSpec& spec) {
  Json j;
  j["x1"] = serialize_space(spec.x1);
  j["x2"] = serialize_space(spec.x2);
  Json pairs = Json::array();
  for (const auto& [a, b] : spec.pairs) pairs.push_back(Json::array({a, b}));
  j["pairs"] = pairs;
  j["declared"] = Json{{"tau_preserving", spec.declared.tau_preserving},
                       {"ll_preserving", spec.declared.ll_preserving},
                       {"leq_preserving", spec.declared.leq_preserving},
                       {"signed_distance_preserving", spec.declared.signed_distance_preserving}};
  return j;
}

Json violations_report(const FiniteLorentzSpace& X, const std::vector<Violation>& v) {
  Json j;
  j["valid"] = v.empty();
  j["violations"] = Json::array();
  for (const auto& viol : v) {
    Json e;
    e["axiom"] = viol.axiom;
    Json w = Json::array();
    for (int i : viol.witness) w.push_back(X.ids[i]);
    e["witness"] = w;
    e["lhs"] = num_or_inf(viol.lhs);
    e["rhs"] = num_or_inf(viol.rhs);
    j["violations"].push_back(e);
  }
  return j;
}

Json quotient_report(const QuotientSpace& Q, int max_witnesses) {
  Json j;
  int C = Q.n_classes();
  j["classes"] = Json::array();
  for (int c = 0; c < C; ++c) {
    Json cl = Json::array();
    for (int p : Q.classes[c]) cl.push_back(Q.base.ids[p]);
    j["classes"].push_back(cl);
  }
  Json tau = Json::array(), dmat = Json::array();
  for (int a = 0; a < C; ++a)
    for (int b = 0; b < C; ++b) {
      if (Q.tilde_tau(a, b) != 0.0) tau.push_back(Json::array({a, b, num_or_inf(Q.tilde_tau(a, b))}));
      if (a < b) dmat.push_back(Json::array({a, b, num_or_inf(Q.tilde_d(a, b))}));
    }
  j["tilde_tau"] = tau;
  j["tilde_d"] = dmat;
  Json causal = Json::array();
  for (int a = 0; a < C; ++a)
    for (int b = 0; b < C; ++b)
      if (a != b && Q.tilde_causal(a, b)) causal.push_back(Json::array({a, b}));
  j["tilde_causal"] = causal;
  if (Q.cycle) {
    Json cert;
    cert["weight"] = Q.cycle->weight;
    Json steps = Json::array();
    for (auto [u, v] : Q.cycle->steps)
      steps.push_back(Json::array({Q.base.ids[u], Q.base.ids[v]}));
    cert["steps"] = steps;
    j["positive_cycle"] = cert;
  }
  Json wit = Json::array();
  int count = 0;
  for (int a = 0; a < C && count < max_witnesses; ++a)
    for (int b = 0; b < C && count < max_witnesses; ++b) {
      if (a == b || !Q.tilde_chron(a, b) || is_inf(Q.tilde_tau(a, b))) continue;
      Chain ch = Q.witness_chain(a, b);
      Json w;
      w["from"] = a;
      w["to"] = b;
      w["length"] = ch.length;
      Json steps = Json::array();
      for (auto [u, v] : ch.steps) steps.push_back(Json::array({Q.base.ids[u], Q.base.ids[v]}));
      w["steps"] = steps;
      wit.push_back(w);
      ++count;
    }
  j["witnesses"] = wit;
  return j;
}

Json map_properties_report(const MapPropertyReport& rep, const FiniteLorentzSpace& base) {
  auto one = [&](const PropertyCheck& pc) {
    Json e;
    e["checked"] = pc.checked;
    e["holds"] = pc.holds;
    if (!pc.witness.empty()) {
      Json w = Json::array();
      for (int i : pc.witness) w.push_back(base.ids[i]);
      e["witness"] = w;
    }
    if (!pc.detail.empty()) e["detail"] = pc.detail;
    return e;
  };
  Json j;
  j["tau_preserving"] = one(rep.tau_preserving);
  j["ll_preserving"] = one(rep.ll_preserving);
  j["leq_preserving"] = one(rep.leq_preserving);
  j["causal_compatibility"] = one(rep.causal_compat);
  j["signed_distance_preserving"] = one(rep.signed_dist);
  j["inverse_tau_preserving"] = one(rep.inv_tau);
  j["inverse_ll_preserving"] = one(rep.inv_ll);
  j["inverse_leq_preserving"] = one(rep.inv_leq);
  j["bilipschitz"] = Json{{"scale", rep.bilip_scale},
                          {"constant", rep.bilip_constant},
                          {"finite", rep.bilip_finite}};
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Err::BadInput, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(Err::BadInput, std::string("json parse failure: ") + e.what());
  }
  return j;
}

}  // namespace lorentz
