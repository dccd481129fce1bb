#include "lorentz/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "lorentz/comparison.hpp"
#include "lorentz/quotient.hpp"

namespace lorentz {

double tau_eta_plus(const std::vector<double>& u, const std::vector<double>& w) {
  if (u.size() != w.size() || u.size() < 2)
    throw Error(Err::BadInput, "eta+ needs matching coordinates of dimension >= 2");
  double dt = w[0] - u[0];
  double space2 = 0.0;
  for (std::size_t i = 1; i < u.size(); ++i) {
    double d = w[i] - u[i];
    space2 += d * d;
  }
  double s2 = 4.0 * dt * dt - space2;
  return (dt > 0 && s2 > 0) ? std::sqrt(s2) : 0.0;
}

bool lens_membership(const std::vector<double>& b_minus, const std::vector<double>& b_plus,
                     const std::vector<double>& x) {
  double R = tau_eta_plus(b_minus, b_plus);
  if (!(R > 0)) throw Error(Err::NotChronological, "b- must precede b+ in eta+");
  return tau_eta_plus(b_minus, x) > R / 3.0 && tau_eta_plus(x, b_plus) > R / 3.0;
}

namespace {

int grid_index(int nx, int i, int j) { return i * nx + j; }

Json jnum(double v) { return is_inf(v) ? Json("inf") : Json(v); }

ScenarioResult scenario_lsc_failure(std::uint64_t seed, int scale) {
  ScenarioResult res;
  res.name = "lsc-failure-point-gluing";
  res.seed = seed;
  // rectangle sample containing the glued points a=(0,1), b=(0,2), the
  // boundary point p=(-0.5,0.5) in dJ^-(a)\J^-(b) and q=(0.7,2.2) in
  // I^+(b)\J^+(a); tau(b,q) is large against the cone's sqrt-modulus
  const double t0 = -0.75, t1 = 1.05, x0 = 0.3, x1 = 2.5;
  const int nt = 36 * scale + 1, nx = 22 * scale + 1;  // anchors stay on-grid
  FiniteLorentzSpace X = sample_minkowski_grid(t0, t1, x0, x1, nt, nx);
  auto at = [&](double t, double x) {
    int i = static_cast<int>(std::lround((t - t0) / (t1 - t0) * (nt - 1)));
    int j = static_cast<int>(std::lround((x - x0) / (x1 - x0) * (nx - 1)));
    int idx = grid_index(nx, i, j);
    if (std::abs(X.coords[idx].x[0] - t) > 1e-9 || std::abs(X.coords[idx].x[1] - x) > 1e-9)
      throw Error(Err::BadInput, "anchor point is off the sampling grid");
    return idx;
  };
  int a = at(0.0, 1.0), b = at(0.0, 2.0), p = at(-0.5, 0.5), q = at(0.7, 2.2);
  QuotientSpace Q = build_quotient(X, {{a, b}}, /*full_matrices=*/false);
  double modulus = grid_modulus(t0, t1, x0, x1, nt, nx);
  double eps = 1.2 * modulus;
  // targeted lsc defect: quotient tau over the eps-balls around [p] and [q]
  int cp = Q.class_of[p], cq = Q.class_of[q];
  auto dp_ball = quotient_d_from(Q, cp);
  auto dq_ball = quotient_d_from(Q, cq);
  std::vector<int> near_q;
  for (int c = 0; c < Q.n_classes(); ++c)
    if (dq_ball[c] <= eps) near_q.push_back(c);
  double tau_pq = 0.0, nearby_min = kInf;
  for (int c = 0; c < Q.n_classes(); ++c) {
    if (dp_ball[c] > eps) continue;
    auto row = quotient_tau_from(Q, c);
    for (int t : near_q) {
      double v = row[t] == -kInf ? 0.0 : row[t];
      nearby_min = std::min(nearby_min, v);
      if (c == cp && t == cq) tau_pq = v;
    }
  }
  double defect = tau_pq - nearby_min;
  res.report["glued"] = Json::array({X.ids[a], X.ids[b]});
  res.report["pair"] = Json::array({X.ids[p], X.ids[q]});
  res.report["tilde_tau"] = tau_pq;
  res.report["lsc_defect"] = defect;
  res.report["sampling_modulus"] = modulus;
  res.report["threshold"] = 3.0 * modulus;
  res.report["verdict"] = defect > 3.0 * modulus ? "lsc fails" : "no failure detected";
  res.expected_outcome = defect > 3.0 * modulus;
  return res;
}

ScenarioResult scenario_vertical_line(std::uint64_t seed, int scale) {
  ScenarioResult res;
  res.name = "vertical-line-gluing";
  res.seed = seed;
  // identify (1, t) ~ (2, t) on matched t-grids inside one plane sample
  const double t0 = -1.0, t1 = 1.0, x0 = 0.0, x1 = 3.0;
  const int nt = 20 * scale + 1, nx = 30 * scale + 1;
  FiniteLorentzSpace X = sample_minkowski_grid(t0, t1, x0, x1, nt, nx);
  std::vector<std::pair<int, int>> ident;
  int j1 = 10 * scale, j2 = 20 * scale;  // columns x = 1 and x = 2
  for (int i = 0; i < nt; ++i) ident.push_back({grid_index(nx, i, j1), grid_index(nx, i, j2)});
  QuotientSpace Q = build_quotient(X, ident);
  FiniteLorentzSpace QX = quotient_to_space(Q);
  auto viols = validate_space(QX);
  bool monotone = true;
  for (int u = 0; u < X.n() && monotone; ++u)
    for (int w = 0; w < X.n(); ++w) {
      if (Q.tilde_tau(Q.class_of[u], Q.class_of[w]) < X.tau(u, w) - 1e-12) monotone = false;
      if (X.causal(u, w) && !Q.tilde_causal(Q.class_of[u], Q.class_of[w])) monotone = false;
      if (X.chron(u, w) && !Q.tilde_chron(Q.class_of[u], Q.class_of[w])) monotone = false;
    }
  bool d_positive = true;
  for (int c1 = 0; c1 < Q.n_classes() && d_positive; ++c1)
    for (int c2 = 0; c2 < Q.n_classes(); ++c2)
      if (c1 != c2 && !(Q.tilde_d(c1, c2) > 0)) d_positive = false;
  res.report["points"] = X.n();
  res.report["classes"] = Q.n_classes();
  res.report["axiom_violations"] = static_cast<int>(viols.size());
  res.report["tau_monotone_under_projection"] = monotone;
  res.report["tilde_d_positive_definite"] = d_positive;
  res.report["has_positive_cycle"] = Q.cycle.has_value();
  res.expected_outcome = viols.empty() && monotone && d_positive && !Q.cycle;
  res.report["verdict"] = res.expected_outcome ? "pre-length space" : "unexpected failure";
  return res;
}

ScenarioResult scenario_orientation_reversal(std::uint64_t seed) {
  ScenarioResult res;
  res.name = "orientation-reversal";
  res.seed = seed;

  // closed-square variant: two unit squares, the second time reversed,
  // identified along the full vertical segment x = 0.5
  {
    const int nt = 11, nx = 11;
    FiniteLorentzSpace S1 = sample_minkowski_grid(0.0, 1.0, 0.0, 1.0, nt, nx);
    FiniteLorentzSpace S2 = reverse_orientation(S1);
    GluingSpec spec;
    spec.x1 = S1;
    spec.x2 = S2;
    int jseam = 5;
    for (int i = 0; i < nt; ++i) {
      std::string id = S1.ids[grid_index(nx, i, jseam)];
      spec.pairs.push_back({id, id});
    }
    MapPropertyReport props = check_map_properties(spec, 0.25);
    ResolvedGluing g = resolve_gluing(spec);
    QuotientSpace Q = build_quotient(g.space, g.ident);
    // lsc check at the seam's future endpoint against a point in the image
    // square's future, exactly as in the one-point example
    int a1 = grid_index(nx, nt - 1, jseam);          // (1, 0.5) in square one
    int q2 = g.n1 + grid_index(nx, 8, 6);            // (0.8, 0.6) in square two
    int pn = grid_index(nx, nt - 1, jseam + 1);      // (1, 0.6): near a1, no future
    FiniteLorentzSpace QX = quotient_to_space(Q);
    double eps = 1.2 * grid_modulus(0, 1, 0, 1, nt, nx);
    double defect = lsc_defect_pair(QX, Q.class_of[a1], Q.class_of[q2], eps);
    Json sq;
    sq["causal_compatibility_holds"] = props.causal_compat.holds;
    if (!props.causal_compat.witness.empty())
      sq["compatibility_witness"] = S1.ids[props.causal_compat.witness[0]];
    sq["tilde_tau_seam_pair"] = jnum(Q.tilde_tau(Q.class_of[a1], Q.class_of[q2]));
    sq["tilde_tau_nearby"] = Q.tilde_tau(Q.class_of[pn], Q.class_of[q2]);
    sq["lsc_defect"] = jnum(defect);
    double modulus = grid_modulus(0, 1, 0, 1, nt, nx);
    sq["lsc_fails"] = defect > 3.0 * modulus || is_inf(defect);
    res.report["closed_square"] = sq;
    res.expected_outcome = !props.causal_compat.holds && (defect > 3.0 * modulus || is_inf(defect));
  }

  // full-plane variant: every pair through the seam has infinite quotient
  // time separation, certified by a positive cycle
  {
    const int nt = 21, nx = 21;
    FiniteLorentzSpace S1 = sample_minkowski_grid(-1.0, 1.0, -1.0, 1.0, nt, nx);
    FiniteLorentzSpace S2 = reverse_orientation(S1);
    GluingSpec spec;
    spec.x1 = S1;
    spec.x2 = S2;
    int jseam = 10;
    for (int i = 0; i < nt; ++i) {
      std::string id = S1.ids[grid_index(nx, i, jseam)];
      spec.pairs.push_back({id, id});
    }
    ResolvedGluing g = resolve_gluing(spec);
    QuotientSpace Q = build_quotient(g.space, g.ident);
    bool cert_ok = Q.cycle && verify_cycle_certificate(g.space, g.ident, *Q.cycle);
    // every pair that can route through the seam must be infinite
    std::vector<char> to_seam(g.space.n(), 0), from_seam(g.space.n(), 0);
    for (int u = 0; u < g.space.n(); ++u)
      for (auto [s1p, s2p] : g.ident) {
        if (g.space.causal(u, s1p) || g.space.causal(u, s2p)) to_seam[u] = 1;
        if (g.space.causal(s1p, u) || g.space.causal(s2p, u)) from_seam[u] = 1;
      }
    int checked = 0, infinite = 0;
    for (int u = 0; u < g.space.n(); ++u) {
      if (!to_seam[u]) continue;
      for (int w = 0; w < g.space.n(); ++w) {
        if (!from_seam[w]) continue;
        ++checked;
        if (is_inf(Q.tilde_tau(Q.class_of[u], Q.class_of[w]))) ++infinite;
      }
    }
    Json fp;
    fp["has_positive_cycle"] = Q.cycle.has_value();
    fp["certificate_verifies"] = cert_ok;
    if (Q.cycle) fp["cycle_weight"] = Q.cycle->weight;
    fp["seam_routed_pairs"] = checked;
    fp["infinite_pairs"] = infinite;
    res.report["full_plane"] = fp;
    res.expected_outcome = res.expected_outcome && cert_ok && checked > 0 && infinite == checked;
  }
  res.report["verdict"] = res.expected_outcome ? "counterexamples reproduced" : "unexpected";
  return res;
}

CurvatureReport merge_reports(const std::vector<CurvatureReport>& parts) {
  CurvatureReport out;
  out.worst_violation = -kInf;
  for (const auto& r : parts) {
    out.triangles += r.triangles;
    out.pairs += r.pairs;
    out.max_abs_defect = std::max(out.max_abs_defect, r.max_abs_defect);
    if (r.worst_violation > out.worst_violation) {
      out.worst_violation = r.worst_violation;
      out.worst = r.worst;
    }
    if (!r.note.empty()) out.note = r.note;
  }
  out.pass = out.pairs > 0;
  for (const auto& r : parts) out.pass = out.pass && r.pass;
  return out;
}

ScenarioResult scenario_reshetnyak(std::uint64_t seed, int jobs) {
  ScenarioResult res;
  res.name = "reshetnyak-flat";
  res.seed = seed;

  // discrete seam gluing: matched half-plane samples sharing the column x=0
  const int nt = 17, nxh = 9;
  FiniteLorentzSpace L = sample_minkowski_grid(-1.0, 1.0, -1.0, 0.0, nt, nxh);
  FiniteLorentzSpace R = sample_minkowski_grid(-1.0, 1.0, 0.0, 1.0, nt, nxh);
  GluingSpec spec;
  spec.x1 = L;
  spec.x2 = R;
  spec.declared = {true, true, true, true};
  for (int i = 0; i < nt; ++i)
    spec.pairs.push_back({"r" + std::to_string(i) + "c" + std::to_string(nxh - 1),
                          "r" + std::to_string(i) + "c0"});
  MapPropertyReport props = check_map_properties(spec, 0.3);
  std::vector<int> seam1;
  for (int i = 0; i < nt; ++i) seam1.push_back(L.index_of(spec.pairs[i].first));
  IsolationReport iso = isolation_report(L, seam1, {0.13, 0.3});
  ResolvedGluing g = resolve_gluing(spec);
  QuotientSpace Q = build_quotient(g.space, g.ident);
  auto viols = validate_space(quotient_to_space(Q));

  res.report["map_properties_pass"] =
      props.tau_preserving.holds && props.ll_preserving.holds && props.leq_preserving.holds &&
      props.causal_compat.holds && props.signed_dist.holds;
  res.report["isolation_passes"] = iso.passes_all();
  res.report["quotient_axiom_violations"] = static_cast<int>(viols.size());

  // analytic seam crossing against the closed-form plane tau
  GluedPlaneHost host({0.0, 0.0}, {1.0, 0.0});
  Rng rng(seed);
  double max_tau_err = 0.0;
  const int n_cross = 10000;
  for (int k = 0; k < n_cross; ++k) {
    std::array<double, 2> pa{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, -1e-6)};
    std::array<double, 2> qa{rng.uniform(-1.0, 1.0), rng.uniform(1e-6, 1.0)};
    int hp = host.add_point(pa[0], pa[1]);
    int hq = host.add_point(qa[0], qa[1]);
    double err = std::abs(host.tau(hp, hq) - minkowski_tau(pa, qa));
    max_tau_err = std::max(max_tau_err, err);
  }
  res.report["cross_pairs"] = n_cross;
  res.report["max_tau_error_vs_plane"] = max_tau_err;

  // strip variant: two-term crossing through the strip A = [-w, w]
  double max_strip_err = 0.0;
  {
    const double w = 0.25;
    for (int k = 0; k < 2000; ++k) {
      std::array<double, 2> pa{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, -w - 1e-6)};
      std::array<double, 2> qa{rng.uniform(-1.0, 1.0), rng.uniform(w + 1e-6, 1.0)};
      double direct = minkowski_tau(pa, qa);
      if (direct <= 0) continue;
      // any point of the straight segment inside the strip is a one-hop chain
      double f = (0.0 - pa[1]) / (qa[1] - pa[1]);  // crossing of x = 0, inside the strip
      std::array<double, 2> mid{pa[0] + f * (qa[0] - pa[0]), 0.0};
      double two_leg = minkowski_tau(pa, mid) + minkowski_tau(mid, qa);
      max_strip_err = std::max(max_strip_err, std::abs(two_leg - direct));
    }
    res.report["strip_max_tau_error"] = max_strip_err;
  }

  // curvature verdict, K = 0 upper, seeded triangles including seam crossers
  const int n_triangles = 500, n_pairs = 18;
  jobs = std::max(1, jobs);
  std::vector<CurvatureReport> parts(static_cast<std::size_t>(jobs));
  auto run_chunk = [&](int chunk) {
    GluedPlaneHost h({0.0, 0.0}, {1.0, 0.0});
    TriangleSampler sampler = [&h](Rng& r) -> std::optional<std::array<int, 3>> {
      auto pt = [&] {
        return std::array<double, 2>{r.uniform(-2.0, 2.0), r.uniform(-1.0, 1.0)};
      };
      auto a = pt(), b = pt(), c = pt();
      if (!(minkowski_tau(a, b) > 0.05 && minkowski_tau(b, c) > 0.05)) return std::nullopt;
      return std::array<int, 3>{h.add_point(a[0], a[1]), h.add_point(b[0], b[1]),
                                h.add_point(c[0], c[1])};
    };
    int lo = chunk * n_triangles / jobs, hi = (chunk + 1) * n_triangles / jobs;
    // per-triangle substreams keyed globally, so the partition is invisible
    CurvatureReport chunk_rep;
    chunk_rep.worst_violation = -kInf;
    for (int ti = lo; ti < hi; ++ti) {
      CurvatureReport one = curvature_verdict(h, sampler, 0.0, Bound::Upper, 1, n_pairs,
                                              seed + static_cast<std::uint64_t>(ti) * 1000003ull,
                                              kPipelineTol);
      chunk_rep = merge_reports({chunk_rep, one});
    }
    parts[static_cast<std::size_t>(chunk)] = chunk_rep;
  };
  if (jobs == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> threads;
    for (int c = 0; c < jobs; ++c) threads.emplace_back(run_chunk, c);
    for (auto& t : threads) t.join();
  }
  CurvatureReport curv = merge_reports(parts);
  res.report["curvature_triangles"] = curv.triangles;
  res.report["curvature_pairs"] = curv.pairs;
  res.report["curvature_max_abs_defect"] = curv.max_abs_defect;
  res.report["curvature_pass"] = curv.pass;

  res.expected_outcome = res.report["map_properties_pass"].get<bool>() && iso.passes_all() &&
                         viols.empty() && max_tau_err <= 1e-9 && max_strip_err <= 1e-9 &&
                         curv.pass && curv.max_abs_defect <= kPipelineTol;
  res.report["verdict"] = res.expected_outcome ? "gluing theorem instance verified" : "unexpected";
  return res;
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"lsc-failure-point-gluing", "vertical-line-gluing", "orientation-reversal",
          "reshetnyak-flat"};
}

ScenarioResult run_scenario(const std::string& name, std::uint64_t seed, int jobs, int scale) {
  scale = std::clamp(scale, 1, 4);
  if (name == "lsc-failure-point-gluing") return scenario_lsc_failure(seed, scale);
  if (name == "vertical-line-gluing") return scenario_vertical_line(seed, scale);
  if (name == "orientation-reversal") return scenario_orientation_reversal(seed);
  if (name == "reshetnyak-flat") return scenario_reshetnyak(seed, jobs);
  throw Error(Err::BadInput, "unknown scenario " + name);
}

}  // namespace lorentz
