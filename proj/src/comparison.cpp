#include "lorentz/comparison.hpp"

#include <algorithm>
#include <cmath>

namespace lorentz {

double minkowski_tau(const std::array<double, 2>& p, const std::array<double, 2>& q) {
  double dt = q[0] - p[0], dx = q[1] - p[1];
  double s2 = dt * dt - dx * dx;
  return (dt > 0 && s2 > 0) ? std::sqrt(s2) : 0.0;
}

double minkowski_signed(const std::array<double, 2>& p, const std::array<double, 2>& q) {
  double dt = q[0] - p[0], dx = q[1] - p[1];
  double s = -dt * dt + dx * dx;
  return s < 0 ? -std::sqrt(-s) : std::sqrt(s);
}

namespace {

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 scale(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double enorm(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

// leg at hyperbolic angle `boost` from the time direction, tilted toward
// side*S; time_sign -1 points into the past
Vec3 frame_leg(double boost, int time_sign, int side, const Vec3& T, const Vec3& S) {
  return add(scale(time_sign * std::cosh(boost), T), scale(side * std::sinh(boost), S));
}

// ---- geodesic line intersection machinery (unit models for K != 0) ----

Vec3 unit_coords(double K, const ModelPoint& p) {
  double s = std::sqrt(std::abs(K));
  return scale(s, p.x);
}

// arc parameter of Q along the full geodesic line through A, B (unit model);
// nullopt when Q is off the line
std::optional<double> param_on_geodesic_unit(double Ksgn, const Vec3& A, const Vec3& B,
                                             const Vec3& Q) {
  double ip = Ksgn > 0 ? -A[0] * B[0] + A[1] * B[1] + A[2] * B[2]
                       : -A[0] * B[0] - A[1] * B[1] + A[2] * B[2];
  auto form = [&](const Vec3& u, const Vec3& v) {
    return Ksgn > 0 ? -u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
                    : -u[0] * v[0] - u[1] * v[1] + u[2] * v[2];
  };
  Vec3 vh;
  bool trig;  // true: cos/sin parametrization
  if (Ksgn > 0) {
    if (ip > 1.0) {
      double t = std::acosh(ip);
      vh = scale(1.0 / std::sinh(t), sub(B, scale(std::cosh(t), A)));
      trig = false;
    } else if (std::abs(ip) < 1.0) {
      double t = std::acos(ip);
      vh = scale(1.0 / std::sin(t), sub(B, scale(std::cos(t), A)));
      trig = true;
    } else {
      return std::nullopt;
    }
  } else {
    double m = -ip;
    if (std::abs(m) < 1.0) {
      double t = std::acos(m);
      vh = scale(1.0 / std::sin(t), sub(B, scale(std::cos(t), A)));
      trig = true;
    } else if (m > 1.0) {
      double t = std::acosh(m);
      vh = scale(1.0 / std::sinh(t), sub(B, scale(std::cosh(t), A)));
      trig = false;
    } else {
      return std::nullopt;
    }
  }
  double alpha, beta;
  if (Ksgn > 0) {
    // dS: <A,A> = 1, timelike vh has <vh,vh> = -1, spacelike +1
    alpha = form(Q, A);
    double vv = form(vh, vh);
    beta = form(Q, vh) / vv;
  } else {
    // AdS: <A,A> = -1
    alpha = -form(Q, A);
    double vv = form(vh, vh);
    beta = form(Q, vh) / vv;
  }
  double t;
  if (trig) {
    t = std::atan2(beta, alpha);  // circle-type parametrization
  } else {
    t = std::asinh(beta);  // hyperbola-type; alpha must be the cosh branch
    if (alpha < 0) return std::nullopt;
  }
  // reconstruction residual
  double c = trig ? std::cos(t) : std::cosh(t);
  double s = trig ? std::sin(t) : std::sinh(t);
  Vec3 R = add(scale(c, A), scale(s, vh));
  if (enorm(sub(R, Q)) > 1e-7 * std::max(1.0, enorm(Q))) return std::nullopt;
  return t;
}

// intersection of the full geodesic line through (a,b) with the geodesic
// segment [c,d]; optionally also restrict to the segment [a,b]
std::optional<ModelPoint> line_segment_intersection(double K, const ModelPoint& a,
                                                    const ModelPoint& b, const ModelPoint& c,
                                                    const ModelPoint& d, double tol,
                                                    bool restrict_ab) {
  if (K == 0.0) {
    double r0 = b.x[0] - a.x[0], r1 = b.x[1] - a.x[1];
    double q0 = d.x[0] - c.x[0], q1 = d.x[1] - c.x[1];
    double det = r0 * q1 - r1 * q0;
    if (std::abs(det) < 1e-14) return std::nullopt;
    double e0 = c.x[0] - a.x[0], e1 = c.x[1] - a.x[1];
    double s = (e0 * q1 - e1 * q0) / det;  // along (a,b)
    double t = (e0 * r1 - e1 * r0) / det;  // along (c,d)
    if (t < -tol || t > 1 + tol) return std::nullopt;
    if (restrict_ab && (s < -tol || s > 1 + tol)) return std::nullopt;
    return ModelPoint{0.0, {a.x[0] + s * r0, a.x[1] + s * r1, 0.0}};
  }
  double Ksgn = K > 0 ? 1.0 : -1.0;
  Vec3 A = unit_coords(K, a), B = unit_coords(K, b);
  Vec3 C = unit_coords(K, c), D = unit_coords(K, d);
  Vec3 n1 = cross(A, B), n2 = cross(C, D);
  Vec3 w = cross(n1, n2);
  if (enorm(w) < 1e-13) return std::nullopt;
  double val = Ksgn > 0 ? -w[0] * w[0] + w[1] * w[1] + w[2] * w[2]
                        : -w[0] * w[0] - w[1] * w[1] + w[2] * w[2];
  if (val * Ksgn <= 0) return std::nullopt;  // no real point on the quadric
  Vec3 q0 = scale(1.0 / std::sqrt(std::abs(val)), w);
  for (int sign = 0; sign < 2; ++sign) {
    Vec3 Q = sign ? scale(-1.0, q0) : q0;
    auto t2 = param_on_geodesic_unit(Ksgn, C, D, Q);
    if (!t2) continue;
    auto l2 = param_on_geodesic_unit(Ksgn, C, D, D);
    if (!l2 || *t2 < -tol || *t2 > *l2 + tol) continue;
    auto t1 = param_on_geodesic_unit(Ksgn, A, B, Q);
    if (!t1) continue;
    if (restrict_ab) {
      auto l1 = param_on_geodesic_unit(Ksgn, A, B, B);
      if (!l1 || *t1 < -tol || *t1 > *l1 + tol) continue;
    }
    double s = std::sqrt(std::abs(K));
    return ModelPoint{K, scale(1.0 / s, Q)};
  }
  return std::nullopt;
}

std::optional<ModelPoint> segment_intersection(double K, const ModelPoint& a,
                                               const ModelPoint& b, const ModelPoint& c,
                                               const ModelPoint& d, double tol) {
  return line_segment_intersection(K, a, b, c, d, tol, /*restrict_ab=*/true);
}

double euclid_pts(const ModelPoint& p, const ModelPoint& q) { return enorm(sub(p.x, q.x)); }

}  // namespace

// ---------- hosts ----------

int MinkowskiPlaneHost::add_point(double t, double x) {
  pts_.push_back({t, x});
  return static_cast<int>(pts_.size()) - 1;
}

double MinkowskiPlaneHost::tau(int a, int b) const { return minkowski_tau(pts_[a], pts_[b]); }

ComparisonHost::SidePoint MinkowskiPlaneHost::point_on_segment(int a, int b, double s) {
  double len = tau(a, b);
  if (len <= 0) throw Error(Err::NoRealizingCurve, "segment is not timelike");
  double f = std::clamp(s / len, 0.0, 1.0);
  int h = add_point(pts_[a][0] + f * (pts_[b][0] - pts_[a][0]),
                    pts_[a][1] + f * (pts_[b][1] - pts_[a][1]));
  return {h, f * len};
}

GluedPlaneHost::GluedPlaneHost(std::array<double, 2> p0, std::array<double, 2> dir)
    : p0_(p0), dir_(dir) {}

int GluedPlaneHost::add_point(double t, double x) {
  pts_.push_back({t, x});
  return static_cast<int>(pts_.size()) - 1;
}

int GluedPlaneHost::side_of(int h) const {
  double c = (pts_[h][0] - p0_[0]) * dir_[1] - (pts_[h][1] - p0_[1]) * dir_[0];
  if (std::abs(c) < 1e-13) return 0;
  return c > 0 ? 1 : -1;
}

std::optional<std::array<double, 2>> GluedPlaneHost::seam_crossing(int a, int b) const {
  double ca = (pts_[a][0] - p0_[0]) * dir_[1] - (pts_[a][1] - p0_[1]) * dir_[0];
  double cb = (pts_[b][0] - p0_[0]) * dir_[1] - (pts_[b][1] - p0_[1]) * dir_[0];
  if (ca * cb > 0) return std::nullopt;
  double f = ca == cb ? 0.0 : ca / (ca - cb);
  return std::array<double, 2>{pts_[a][0] + f * (pts_[b][0] - pts_[a][0]),
                               pts_[a][1] + f * (pts_[b][1] - pts_[a][1])};
}

double GluedPlaneHost::tau(int a, int b) const {
  int sa = side_of(a), sb = side_of(b);
  if (sa * sb >= 0) return minkowski_tau(pts_[a], pts_[b]);
  // strictly across the seam: two-leg form of the quotient time separation,
  // maximized at the straight crossing
  if (minkowski_tau(pts_[a], pts_[b]) == 0.0) return 0.0;
  auto cr = seam_crossing(a, b);
  return minkowski_tau(pts_[a], *cr) + minkowski_tau(*cr, pts_[b]);
}

ComparisonHost::SidePoint GluedPlaneHost::point_on_segment(int a, int b, double s) {
  double len = tau(a, b);
  if (len <= 0) throw Error(Err::NoRealizingCurve, "segment is not timelike");
  double f = std::clamp(s / len, 0.0, 1.0);
  int h = add_point(pts_[a][0] + f * (pts_[b][0] - pts_[a][0]),
                    pts_[a][1] + f * (pts_[b][1] - pts_[a][1]));
  return {h, f * len};
}

int ModelHost::add_point(const ModelPoint& p) {
  pts_.push_back(p);
  return static_cast<int>(pts_.size()) - 1;
}

double ModelHost::tau(int a, int b) const { return tau_K(K0_, pts_[a], pts_[b]); }

ComparisonHost::SidePoint ModelHost::point_on_segment(int a, int b, double s) {
  double len = tau(a, b);
  if (len <= 0) throw Error(Err::NoRealizingCurve, "segment is not timelike");
  double f = std::clamp(s / len, 0.0, 1.0);
  return {add_point(geodesic_point(K0_, pts_[a], pts_[b], f)), f * len};
}

DiscreteHost::DiscreteHost(const FiniteLorentzSpace& X) : X_(X) {}

double DiscreteHost::tau(int a, int b) const { return X_.tau(a, b); }

const std::vector<int>& DiscreteHost::realizing_chain(int a, int b) {
  auto key = std::pair(a, b);
  auto it = chains_.find(key);
  if (it != chains_.end()) return it->second;
  if (is_inf(X_.tau(a, b)))
    throw Error(Err::NoRealizingCurve, "infinite time separation has no realizing chain");
  // longest tau-chain inside the causal diamond, preferring more interior
  // points among equals
  std::vector<int> nodes;
  for (int k = 0; k < X_.n(); ++k)
    if (X_.causal(a, k) && X_.causal(k, b)) nodes.push_back(k);
  // topological order by causal predecessors (strict edges)
  std::vector<int> order;
  {
    std::vector<int> indeg(nodes.size(), 0);
    auto strict = [&](int u, int v) { return u != v && X_.causal(u, v) && !X_.causal(v, u); };
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = 0; j < nodes.size(); ++j)
        if (strict(nodes[j], nodes[i])) indeg[i]++;
    std::vector<std::size_t> ready;
    std::vector<char> done(nodes.size(), 0);
    for (std::size_t pass = 0; pass < nodes.size(); ++pass) {
      int pick = -1;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        if (!done[i] && indeg[i] == 0) {
          pick = static_cast<int>(i);
          break;
        }
      if (pick < 0) throw Error(Err::NoRealizingCurve, "causal cycle in the diamond");
      done[pick] = 1;
      order.push_back(nodes[pick]);
      for (std::size_t i = 0; i < nodes.size(); ++i)
        if (!done[i] && strict(nodes[pick], nodes[i])) indeg[i]--;
    }
  }
  std::vector<double> best(X_.n(), -kInf);
  std::vector<int> steps(X_.n(), 0), pred(X_.n(), -1);
  best[a] = 0.0;
  for (int u : order) {
    if (best[u] == -kInf) continue;
    for (int v : order) {
      if (u == v || !X_.causal(u, v)) continue;
      double cand = best[u] + X_.tau(u, v);
      if (cand > best[v] + 1e-15 ||
          (std::abs(cand - best[v]) <= 1e-15 && steps[u] + 1 > steps[v])) {
        best[v] = cand;
        steps[v] = steps[u] + 1;
        pred[v] = u;
      }
    }
  }
  if (best[b] == -kInf || best[b] < X_.tau(a, b) - kMetricTol * std::max(1.0, X_.tau(a, b)))
    throw Error(Err::NoRealizingCurve, "no tau-realizing chain between the endpoints");
  std::vector<int> chain;
  for (int v = b; v != -1; v = pred[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  return chains_.emplace(key, std::move(chain)).first->second;
}

ComparisonHost::SidePoint DiscreteHost::point_on_segment(int a, int b, double s) {
  const auto& chain = realizing_chain(a, b);
  double cum = 0.0, bestd = kInf;
  int besth = a;
  double bests = 0.0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) cum += X_.tau(chain[i - 1], chain[i]);
    if (std::abs(cum - s) < bestd) {
      bestd = std::abs(cum - s);
      besth = chain[i];
      bests = cum;
    }
  }
  return {besth, bests};
}

// ---------- curvature verdict ----------

Triangle comparison_triangle(double K, const SideLengths& sides) {
  return realize_triangle(K, sides);
}

ModelPoint comparison_point(double K, const Triangle& tri, int side, double s) {
  const ModelPoint* from = nullptr;
  const ModelPoint* to = nullptr;
  if (side == 0) {
    from = &tri.x;
    to = &tri.y;
  } else if (side == 1) {
    from = &tri.y;
    to = &tri.z;
  } else if (side == 2) {
    from = &tri.x;
    to = &tri.z;
  } else {
    throw Error(Err::BadInput, "side index must be 0, 1 or 2");
  }
  double len = tau_K(K, *from, *to);
  if (s < -kMetricTol || s > len + kMetricTol)
    throw Error(Err::OffSide, "parameter exceeds the side length");
  return geodesic_point(K, *from, *to, std::clamp(s / len, 0.0, 1.0));
}

CurvatureReport curvature_verdict(ComparisonHost& host, const TriangleSampler& sample,
                                  double K, Bound bound, int n_triangles, int n_pairs,
                                  std::uint64_t seed, double tol) {
  CurvatureReport rep;
  for (int ti = 0; ti < n_triangles; ++ti) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(ti));
    std::optional<std::array<int, 3>> tri;
    SideLengths sides{};
    for (int attempt = 0; attempt < 400 && !tri; ++attempt) {
      auto cand = sample(rng);
      if (!cand) continue;
      auto [x, y, z] = *cand;
      sides = {host.tau(x, y), host.tau(y, z), host.tau(x, z)};
      if (sides.a <= 0 || sides.b <= 0 || sides.c <= 0) continue;
      if (!size_bounds_check(K, sides)) continue;
      tri = cand;
    }
    if (!tri) {
      rep.note = "sampler exhausted";
      continue;
    }
    Triangle cmp = realize_triangle(K, sides);
    auto [x, y, z] = *tri;
    const std::array<std::pair<int, int>, 3> host_sides{{{x, y}, {y, z}, {x, z}}};
    const std::array<std::pair<const ModelPoint*, const ModelPoint*>, 3> cmp_sides{
        {{&cmp.x, &cmp.y}, {&cmp.y, &cmp.z}, {&cmp.x, &cmp.z}}};
    const std::array<double, 3> lens{sides.a, sides.b, sides.c};
    rep.triangles++;
    int per = std::max(1, (n_pairs + 8) / 9);
    for (int sp = 0; sp < 3; ++sp)
      for (int sq = 0; sq < 3; ++sq)
        for (int k = 0; k < per; ++k) {
          double s1 = rng.uniform(0.0, lens[sp]);
          double s2 = rng.uniform(0.0, lens[sq]);
          auto hp = host.point_on_segment(host_sides[sp].first, host_sides[sp].second, s1);
          auto hq = host.point_on_segment(host_sides[sq].first, host_sides[sq].second, s2);
          ModelPoint mp = geodesic_point(K, *cmp_sides[sp].first, *cmp_sides[sp].second,
                                         std::clamp(hp.s / lens[sp], 0.0, 1.0));
          ModelPoint mq = geodesic_point(K, *cmp_sides[sq].first, *cmp_sides[sq].second,
                                         std::clamp(hq.s / lens[sq], 0.0, 1.0));
          double ts = host.tau(hp.handle, hq.handle);
          double tm = tau_K(K, mp, mq);
          double defect = ts - tm;
          double viol = bound == Bound::Upper ? defect : -defect;
          rep.pairs++;
          rep.max_abs_defect = std::max(rep.max_abs_defect, std::abs(defect));
          if (viol > rep.worst_violation) {
            rep.worst_violation = viol;
            rep.worst = {ti, sp, sq, hp.s, hq.s, ts, tm, defect};
          }
        }
  }
  rep.pass = rep.pairs > 0 && rep.worst_violation <= tol;
  return rep;
}

// ---------- Alexandrov ----------

namespace {

struct Placed {
  ModelPoint at;
  Vec3 T, S;
};

Placed axis_frame(double K, double s) {
  return {axis_point(K, s), axis_time_dir(K, s), base_space_dir(K)};
}

Intersection classify_intersection(double K, const ModelPoint& a, const ModelPoint& b,
                                   const ModelPoint& c, const ModelPoint& d,
                                   const ModelPoint& p, double tol, double* dist_out) {
  auto q = segment_intersection(K, a, b, c, d, 1e-9);
  if (!q) {
    if (dist_out) *dist_out = kInf;
    return Intersection::Empty;
  }
  double dist = euclid_pts(*q, p);
  if (dist_out) *dist_out = dist;
  return dist <= tol ? Intersection::AtP : Intersection::OtherPoint;
}

}  // namespace

AlexandrovConfig make_alexandrov1(double K, double t_py, double t_xp, double boost_x,
                                  double t_yz, double boost_z) {
  AlexandrovConfig cfg;
  cfg.K = K;
  Placed base = axis_frame(K, 0.0);
  cfg.p = base.at;
  cfg.y = axis_point(K, t_py);
  cfg.x = exp_map(cfg.p, scale(t_xp, frame_leg(boost_x, -1, -1, base.T, base.S)));
  Placed fy = axis_frame(K, t_py);
  cfg.z = exp_map(cfg.y, scale(t_yz, frame_leg(boost_z, +1, +1, fy.T, fy.S)));
  double txy = tau_K(K, cfg.x, cfg.y), tyz = tau_K(K, cfg.y, cfg.z);
  double txp = tau_K(K, cfg.x, cfg.p), tpz = tau_K(K, cfg.p, cfg.z);
  if (txy <= 0 || tyz <= 0 || txp <= 0 || tpz <= 0)
    throw Error(Err::ConfigInfeasible, "configuration loses a timelike relation");
  if (!(txy + tyz < txp + tpz))
    throw Error(Err::ConfigInfeasible, "straightening hypothesis fails");
  if (!size_bounds_check(K, {txy, tyz, txp + tpz}))
    throw Error(Err::ConfigInfeasible, "straightened triangle violates size bounds");
  return cfg;
}

AlexandrovConfig make_alexandrov1_aligned(double K, double t_xz, double frac_p,
                                          double boost_y, double len_y) {
  AlexandrovConfig cfg;
  cfg.K = K;
  cfg.x = model_base(K);
  cfg.z = axis_point(K, t_xz);
  double tp = frac_p * t_xz;
  cfg.p = axis_point(K, tp);
  Placed fp = axis_frame(K, tp);
  cfg.y = exp_map(cfg.p, scale(len_y, frame_leg(boost_y, +1, +1, fp.T, fp.S)));
  if (tau_K(K, cfg.p, cfg.y) <= 0 || tau_K(K, cfg.y, cfg.z) <= 0 || tau_K(K, cfg.x, cfg.y) <= 0)
    throw Error(Err::ConfigInfeasible, "aligned configuration loses a timelike relation");
  return cfg;
}

AlexandrovReport alexandrov_check(const AlexandrovConfig& cfg, double tol) {
  double K = cfg.K;
  double txy = tau_K(K, cfg.x, cfg.y), tyz = tau_K(K, cfg.y, cfg.z);
  double txp = tau_K(K, cfg.x, cfg.p), tpz = tau_K(K, cfg.p, cfg.z);
  if (txy + tyz > txp + tpz + kMetricTol)
    throw Error(Err::ConfigInfeasible, "straightening hypothesis fails");
  Triangle st = realize_triangle(K, {txy, tyz, txp + tpz});
  ModelPoint ps = geodesic_point(K, st.x, st.z, txp / (txp + tpz));

  AlexandrovReport rep;
  rep.intersection =
      classify_intersection(K, cfg.x, cfg.z, cfg.p, cfg.y, cfg.p, 1e-7, &rep.crossing_dist_to_p);
  rep.ang_xyz = {nonnormalized_angle(K, cfg.y, cfg.x, cfg.z),
                 nonnormalized_angle(K, st.y, st.x, st.z)};
  rep.ang_pzy = {nonnormalized_angle(K, cfg.z, cfg.p, cfg.y),
                 nonnormalized_angle(K, st.z, ps, st.y)};
  rep.ang_pxy = {nonnormalized_angle(K, cfg.x, cfg.p, cfg.y),
                 nonnormalized_angle(K, st.x, ps, st.y)};
  rep.py_signed = {signed_distance(K, cfg.p, cfg.y).value, signed_distance(K, ps, st.y).value};

  rep.ok_xyz = rep.ang_xyz.diff() >= -tol;  // bent angle at y dominates
  switch (rep.intersection) {
    case Intersection::Empty:
      rep.ok_pzy = rep.ang_pzy.diff() >= -tol;
      rep.ok_pxy = rep.ang_pxy.diff() >= -tol;
      rep.ok_py = rep.py_signed.diff() <= tol;
      break;
    case Intersection::OtherPoint:
      rep.ok_pzy = rep.ang_pzy.diff() <= tol;
      rep.ok_pxy = rep.ang_pxy.diff() <= tol;
      rep.ok_py = rep.py_signed.diff() >= -tol;
      break;
    case Intersection::AtP:
      rep.max_equality_dev =
          std::max({std::abs(rep.ang_xyz.diff()), std::abs(rep.ang_pzy.diff()),
                    std::abs(rep.ang_pxy.diff()), std::abs(rep.py_signed.diff())});
      rep.ok_pzy = rep.ok_pxy = rep.ok_py = rep.max_equality_dev <= tol;
      break;
  }
  rep.all_ok = rep.ok_xyz && rep.ok_pzy && rep.ok_pxy && rep.ok_py;
  return rep;
}

Alexandrov2Config make_alexandrov2(double K, double t_pz, double t_xp, double boost_x,
                                   double t_py, double boost_y) {
  Alexandrov2Config cfg;
  cfg.K = K;
  Placed base = axis_frame(K, 0.0);
  cfg.p = base.at;
  cfg.z = axis_point(K, t_pz);
  cfg.x = exp_map(cfg.p, scale(t_xp, frame_leg(boost_x, -1, -1, base.T, base.S)));
  cfg.y = exp_map(cfg.p, scale(t_py, frame_leg(boost_y, +1, +1, base.T, base.S)));
  double txz = tau_K(K, cfg.x, cfg.z), tyz = tau_K(K, cfg.y, cfg.z);
  double txp = tau_K(K, cfg.x, cfg.p), tpy = tau_K(K, cfg.p, cfg.y);
  double txy = tau_K(K, cfg.x, cfg.y);
  if (txz <= 0 || tyz <= 0 || txp <= 0 || tpy <= 0 || txy <= 0)
    throw Error(Err::ConfigInfeasible, "configuration loses a timelike relation");
  if (!size_bounds_check(K, {txp + tpy, tyz, txz}))
    throw Error(Err::ConfigInfeasible, "straightened triangle violates size bounds");
  return cfg;
}

Alexandrov2Config make_alexandrov2_aligned(double K, double t_xy, double frac_p,
                                           double boost_z, double len_z) {
  Alexandrov2Config cfg;
  cfg.K = K;
  cfg.x = model_base(K);
  cfg.y = axis_point(K, t_xy);
  double tp = frac_p * t_xy;
  cfg.p = axis_point(K, tp);
  Placed fp = axis_frame(K, tp);
  cfg.z = exp_map(cfg.p, scale(len_z, frame_leg(boost_z, +1, +1, fp.T, fp.S)));
  if (tau_K(K, cfg.p, cfg.z) <= 0 || tau_K(K, cfg.y, cfg.z) <= 0 || tau_K(K, cfg.x, cfg.z) <= 0)
    throw Error(Err::ConfigInfeasible, "aligned configuration loses a timelike relation");
  return cfg;
}

Alexandrov2Report alexandrov_check_other(const Alexandrov2Config& cfg, double tol) {
  double K = cfg.K;
  double txz = tau_K(K, cfg.x, cfg.z), tyz = tau_K(K, cfg.y, cfg.z);
  double txp = tau_K(K, cfg.x, cfg.p), tpy = tau_K(K, cfg.p, cfg.y);
  Triangle st;
  try {
    st = realize_triangle(K, {txp + tpy, tyz, txz});
  } catch (const Error& e) {
    throw Error(Err::ConfigInfeasible, e.what());
  }
  ModelPoint ps = geodesic_point(K, st.x, st.y, txp / (txp + tpy));

  Alexandrov2Report rep;
  rep.intersection =
      classify_intersection(K, cfg.x, cfg.y, cfg.p, cfg.z, cfg.p, 1e-7, &rep.crossing_dist_to_p);
  rep.ang_xzy = {nonnormalized_angle(K, cfg.z, cfg.x, cfg.y),
                 nonnormalized_angle(K, st.z, st.x, st.y)};
  rep.ang_pxy = {nonnormalized_angle(K, cfg.x, cfg.p, cfg.y),
                 nonnormalized_angle(K, st.x, ps, st.y)};
  rep.ang_pxz = {nonnormalized_angle(K, cfg.x, cfg.p, cfg.z),
                 nonnormalized_angle(K, st.x, ps, st.z)};
  rep.ang_pyz = {nonnormalized_angle(K, cfg.y, cfg.p, cfg.z),
                 nonnormalized_angle(K, st.y, ps, st.z)};
  rep.pz_signed = {signed_distance(K, cfg.p, cfg.z).value, signed_distance(K, ps, st.z).value};

  rep.ok_xzy = rep.ang_xzy.diff() >= -tol;
  rep.ok_pxy = rep.ang_pxy.diff() <= tol;
  switch (rep.intersection) {
    case Intersection::Empty:
      rep.ok_pxz = rep.ang_pxz.diff() >= -tol;
      rep.ok_pyz = rep.ang_pyz.diff() >= -tol;
      rep.ok_pz = rep.pz_signed.diff() <= tol;
      break;
    case Intersection::OtherPoint:
      rep.ok_pxz = rep.ang_pxz.diff() <= tol;
      rep.ok_pyz = rep.ang_pyz.diff() <= tol;
      rep.ok_pz = rep.pz_signed.diff() >= -tol;
      break;
    case Intersection::AtP:
      rep.max_equality_dev =
          std::max({std::abs(rep.ang_xzy.diff()), std::abs(rep.ang_pxz.diff()),
                    std::abs(rep.ang_pyz.diff()), std::abs(rep.pz_signed.diff())});
      rep.ok_pxz = rep.ok_pyz = rep.ok_pz = rep.max_equality_dev <= tol;
      break;
  }
  rep.all_ok = rep.ok_xzy && rep.ok_pxy && rep.ok_pxz && rep.ok_pyz && rep.ok_pz;
  return rep;
}

// ---------- detour configuration and gluing lemma ----------

DetourConfig make_detour_config(double K, double c1, double c2, double e, double a3,
                                double b3) {
  if (c1 <= 0 || c2 <= 0 || e <= 0) throw Error(Err::ConfigInfeasible, "lengths must be positive");
  if (a3 < c1 + e || c2 < e + b3)
    throw Error(Err::ConfigInfeasible, "subtriangle reverse triangle inequalities fail");
  DetourConfig cfg;
  cfg.K = K;
  cfg.c1 = c1;
  cfg.c2 = c2;
  cfg.a3 = a3;
  cfg.b3 = b3;
  double u = K == 0.0 ? 1.0 : std::sqrt(std::abs(K));
  // hinge angles at pbar: toward xbar (past-left) and zbar (future-right)
  double cwx, cwz;
  if (K == 0.0) {
    cwx = (a3 * a3 - c1 * c1 - e * e) / (2 * c1 * e);
    cwz = (e * e + c2 * c2 - b3 * b3) / (2 * e * c2);
  } else if (K > 0) {
    cwx = (std::cosh(a3 * u) - std::cosh(c1 * u) * std::cosh(e * u)) /
          (std::sinh(c1 * u) * std::sinh(e * u));
    cwz = (std::cosh(e * u) * std::cosh(c2 * u) - std::cosh(b3 * u)) /
          (std::sinh(e * u) * std::sinh(c2 * u));
  } else {
    cwx = (std::cos(c1 * u) * std::cos(e * u) - std::cos(a3 * u)) /
          (std::sin(c1 * u) * std::sin(e * u));
    cwz = (std::cos(b3 * u) - std::cos(e * u) * std::cos(c2 * u)) /
          (std::sin(e * u) * std::sin(c2 * u));
  }
  if (cwx < 1.0 - 1e-12 || cwz < 1.0 - 1e-12)
    throw Error(Err::ConfigInfeasible, "hinge angles are not realizable");
  double wx = std::acosh(std::max(cwx, 1.0)), wz = std::acosh(std::max(cwz, 1.0));
  Placed base = axis_frame(K, 0.0);
  cfg.p = base.at;
  cfg.y = axis_point(K, e);
  cfg.x = exp_map(cfg.p, scale(c1, frame_leg(wx, -1, -1, base.T, base.S)));
  cfg.z = exp_map(cfg.p, scale(c2, frame_leg(wz, +1, +1, base.T, base.S)));
  if (!size_bounds_check(K, {a3, b3, c1 + c2}))
    throw Error(Err::ConfigInfeasible, "straightened triangle violates size bounds");
  Triangle st = realize_triangle(K, {a3, b3, c1 + c2});
  cfg.xs = st.x;
  cfg.ys = st.y;
  cfg.zs = st.z;
  // degenerate: the bent pieces already form the comparison triangle
  double txz = tau_K(K, cfg.x, cfg.z);
  if (std::abs(txz - (c1 + c2)) <= kMetricTol * std::max(1.0, txz)) {
    cfg.degenerate = true;
    cfg.m = 0.0;
    return cfg;
  }
  // qbar: the geodesic line through z and p, extended beyond pbar, meets the
  // side [xbar, ybar]
  auto q = line_segment_intersection(K, cfg.z, cfg.p, cfg.x, cfg.y, kMetricTol,
                                     /*restrict_ab=*/false);
  if (!q) throw Error(Err::ConfigInfeasible, "no detour pivot on the side [x,y]");
  double tq = tau_K(K, cfg.x, *q);
  if (!(tq > 0) || !(tau_K(K, *q, cfg.p) > 0))
    throw Error(Err::ConfigInfeasible, "detour pivot is not chronologically placed");
  cfg.m = K == 0.0 ? tq / a3 : tq;  // affine for flat, arc length otherwise
  return cfg;
}

double detour_function(const DetourConfig& cfg, double t) {
  double m = cfg.m;
  if (t < -1e-12 || t > m + 1e-12)
    throw Error(Err::ParameterOutOfRange, "detour parameter outside [0, m]");
  if (t == 0.0) return 0.0;  // construction identity
  double K = cfg.K;
  double frac = K == 0.0 ? t : t / cfg.a3;
  ModelPoint a = geodesic_point(K, cfg.x, cfg.y, frac);
  ModelPoint as = geodesic_point(K, cfg.xs, cfg.ys, frac);
  double detour = tau_K(K, a, cfg.p) + cfg.c2;
  double direct = tau_K(K, as, cfg.zs);
  if (K == 0.0) return detour * detour - direct * direct;
  double u = std::sqrt(std::abs(K));
  if (K > 0) return std::cosh(detour * u) - std::cosh(direct * u);
  // anti-de Sitter: cos is decreasing, so the sign is normalized to keep
  // f >= 0 meaning "detour at least as long as the straightened separation"
  return std::cos(direct * u) - std::cos(detour * u);
}

namespace {

struct ReversedHost : ComparisonHost {
  ComparisonHost& inner;
  explicit ReversedHost(ComparisonHost& h) : inner(h) {}
  double tau(int a, int b) const override { return inner.tau(b, a); }
  SidePoint point_on_segment(int a, int b, double s) override {
    double len = tau(a, b);
    auto sp = inner.point_on_segment(b, a, std::max(0.0, len - s));
    return {sp.handle, len - sp.s};
  }
};

}  // namespace

GluingLemmaReport gluing_lemma_check(ComparisonHost& host, double K, int x, int y, int z,
                                     int p, int n_pairs, std::uint64_t seed, double tol) {
  double tpy = host.tau(p, y), typ = host.tau(y, p);
  if (!(tpy > 0) && typ > 0) {
    // y << p: run the time reversed configuration
    ReversedHost rev(host);
    return gluing_lemma_check(rev, K, z, y, x, p, n_pairs, seed, tol);
  }
  if (!(tpy > 0)) throw Error(Err::SubtriangleDegenerate, "p and y are not chronologically related");
  double txp = host.tau(x, p), tpz = host.tau(p, z);
  double txy = host.tau(x, y), tyz = host.tau(y, z), txz = host.tau(x, z);
  if (!(txp > 0) || !(tpz > 0))
    throw Error(Err::SubtriangleDegenerate, "subdivision point is an endpoint");
  if (std::abs(txp + tpz - txz) > kComposedTol * std::max(1.0, txz))
    throw Error(Err::BadInput, "subdivision point is not on the side [x,z]");

  GluingLemmaReport rep;
  auto fixed = [](int a, int b, int c) -> TriangleSampler {
    std::array<int, 3> t{a, b, c};
    return [t](Rng&) { return std::optional<std::array<int, 3>>(t); };
  };
  rep.hyp_t1 = curvature_verdict(host, fixed(x, p, y), K, Bound::Upper, 1, n_pairs, seed ^ 1, tol);
  rep.hyp_t2 = curvature_verdict(host, fixed(p, y, z), K, Bound::Upper, 1, n_pairs, seed ^ 2, tol);

  // comparison configuration for the case classification; when the bent
  // quadrilateral crosses itself (which the curvature hypothesis forbids in
  // the lemma), the pivots do not exist and the B2/C2 subdivision is moot
  double m_tau = -1.0, n_tau = -1.0;
  try {
    DetourConfig cfg = make_detour_config(K, txp, tpz, tpy, txy, tyz);
    rep.degenerate_config = cfg.degenerate;
    if (!cfg.degenerate) {
      m_tau = K == 0.0 ? cfg.m * txy : cfg.m;
      // mirrored pivot for the C cases: extension of [x,p] beyond p onto [y,z]
      auto qc = line_segment_intersection(K, cfg.x, cfg.p, cfg.y, cfg.z, kMetricTol,
                                          /*restrict_ab=*/false);
      if (qc && tau_K(K, cfg.p, *qc) > 0) n_tau = tau_K(K, cfg.y, *qc);
    } else {
      // collinear comparison pieces: the pivots sit at the far vertices
      m_tau = 0.0;
      n_tau = tyz;
    }
  } catch (const Error&) {
  }

  rep.conclusion =
      curvature_verdict(host, fixed(x, y, z), K, Bound::Upper, 1, n_pairs, seed ^ 3, tol);

  // replay the conclusion's sampling to collect the per-case counts
  {
    Rng rng = Rng::substream(seed ^ 3, 0);
    auto tri = fixed(x, y, z)(rng);
    SideLengths sides{host.tau(x, y), host.tau(y, z), host.tau(x, z)};
    (void)tri;
    const std::array<double, 3> lens{sides.a, sides.b, sides.c};
    int per = std::max(1, (n_pairs + 8) / 9);
    double btol = 1e-7 * std::max(1.0, txz);
    for (int sp = 0; sp < 3; ++sp)
      for (int sq = 0; sq < 3; ++sq)
        for (int k = 0; k < per; ++k) {
          double s1 = rng.uniform(0.0, lens[sp]);
          double s2 = rng.uniform(0.0, lens[sq]);
          int lo = std::min(sp, sq), hi = std::max(sp, sq);
          double s_lo = sp < sq ? s1 : s2;  // parameter on the lower-indexed side
          double s_hi = sp < sq ? s2 : s1;
          if (sp == sq) {
            rep.cases.same_side++;
          } else if (lo == 0 && hi == 1) {
            rep.cases.A++;
          } else if (lo == 0 && hi == 2) {
            bool b1 = s_hi <= txp + btol, b2 = s_hi >= txp - btol;
            if (b1) rep.cases.B1++;
            if (b2) {
              bool leaves = m_tau >= 0 && s_lo <= m_tau + btol;
              bool stays = m_tau < 0 || s_lo >= m_tau - btol;
              if (leaves) rep.cases.B2ii++;
              if (stays) rep.cases.B2i++;
            }
          } else {
            bool c1 = s_hi >= txp - btol, c2 = s_hi <= txp + btol;
            if (c1) rep.cases.C1++;
            if (c2) {
              bool leaves = n_tau >= 0 && s_lo >= n_tau - btol;
              bool stays = n_tau < 0 || s_lo <= n_tau + btol;
              if (leaves) rep.cases.C2ii++;
              if (stays) rep.cases.C2i++;
            }
          }
        }
  }
  rep.pass = rep.hyp_t1.pass && rep.hyp_t2.pass && rep.conclusion.pass;
  return rep;
}

ManifoldGluingReport gluing_lemma_manifold_check(const ManifoldTriangle& t1,
                                                 const std::array<double, 2>& p2,
                                                 const std::array<double, 2>& y2,
                                                 const std::array<double, 2>& z2, double K,
                                                 int n_pairs, std::uint64_t seed, double tol) {
  using V2 = std::array<double, 2>;
  auto eta = [](const V2& a, const V2& b) { return -a[0] * b[0] + a[1] * b[1]; };
  ManifoldGluingReport rep;
  V2 u1{t1.y[0] - t1.p[0], t1.y[1] - t1.p[1]};
  V2 u2{y2[0] - p2[0], y2[1] - p2[1]};
  double s1sq = eta(u1, u1), s2sq = eta(u2, u2);
  double sd1 = minkowski_signed(t1.p, t1.y), sd2 = minkowski_signed(p2, y2);
  if (std::abs(sd1 - sd2) > kMetricTol * std::max(1.0, std::abs(sd1)))
    throw Error(Err::SideMismatch, "shared segment signed lengths differ");
  rep.seam_signed_length = sd1;

  // isometry of the plane taking u2 to u1 (and p2 to p1); for non-null seams
  // the reflection across the seam is available to place z opposite x
  V2 w2{z2[0] - p2[0], z2[1] - p2[1]};
  auto side = [&](const V2& q) {
    double c = (q[0] - t1.p[0]) * u1[1] - (q[1] - t1.p[1]) * u1[0];
    return c > 0 ? 1 : (c < 0 ? -1 : 0);
  };
  V2 z1;
  double norm2u = u1[0] * u1[0] + u1[1] * u1[1];
  if (std::abs(s1sq) > 1e-12 * std::max(1.0, norm2u)) {
    // frame (u, swap u) is eta-orthogonal with opposite norms
    V2 n1{u1[1], u1[0]}, n2{u2[1], u2[0]};
    double alpha = eta(w2, u2) / s2sq;
    double beta = eta(w2, n2) / eta(n2, n2);
    V2 za{t1.p[0] + alpha * u1[0] + beta * n1[0], t1.p[1] + alpha * u1[1] + beta * n1[1]};
    V2 zb{t1.p[0] + alpha * u1[0] - beta * n1[0], t1.p[1] + alpha * u1[1] - beta * n1[1]};
    z1 = side(za) != side(t1.x) ? za : zb;
  } else {
    // null seam chord u = a*(1,+-1); only boosts (plus the spatial flip
    // between the two null rays) fix it, and they preserve sides
    auto ray = [](const V2& u) { return u[0] * u[1] >= 0 ? 1 : -1; };
    V2 u2m = ray(u2) == ray(u1) ? u2 : V2{u2[0], -u2[1]};
    V2 w2m = ray(u2) == ray(u1) ? w2 : V2{w2[0], -w2[1]};
    double a2 = u2m[0], a1 = u1[0];
    if (a1 * a2 <= 0) throw Error(Err::ConfigInfeasible, "null seam chords have opposite time sense");
    double lam = std::log(a1 / a2) * (ray(u1) > 0 ? 1.0 : -1.0);
    double ch = std::cosh(lam), sh = std::sinh(lam);
    V2 Lw{ch * w2m[0] + sh * w2m[1], sh * w2m[0] + ch * w2m[1]};
    z1 = {t1.p[0] + Lw[0], t1.p[1] + Lw[1]};
    if (side(z1) == side(t1.x))
      throw Error(Err::ConfigInfeasible, "triangles lie on one side of the null seam");
  }

  GluedPlaneHost host(t1.p, u1);
  int hx = host.add_point(t1.x[0], t1.x[1]);
  int hy = host.add_point(t1.y[0], t1.y[1]);
  int hz = host.add_point(z1[0], z1[1]);
  int hp = host.add_point(t1.p[0], t1.p[1]);
  double txp = host.tau(hx, hp), tpz = host.tau(hp, hz), txz = host.tau(hx, hz);
  if (!(txp > 0) || !(tpz > 0) ||
      std::abs(txp + tpz - txz) > kComposedTol * std::max(1.0, txz))
    throw Error(Err::BadInput, "glued configuration is not a subdivided timelike triangle");
  auto fixed = [&](int a, int b, int c) -> TriangleSampler {
    std::array<int, 3> t{a, b, c};
    return [t](Rng&) { return std::optional<std::array<int, 3>>(t); };
  };
  rep.conclusion = curvature_verdict(host, fixed(hx, hy, hz), K, Bound::Upper, 1, n_pairs, seed, tol);
  rep.pass = rep.conclusion.pass;
  return rep;
}

}  // namespace lorentz
