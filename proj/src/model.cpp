#include "lorentz/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace lorentz {

const char* err_name(Err e) {
  switch (e) {
    case Err::CoordinateOffModel: return "CoordinateOffModel";
    case Err::NoUniqueGeodesic: return "NoUniqueGeodesic";
    case Err::LegNotTimelike: return "LegNotTimelike";
    case Err::SizeBoundViolated: return "SizeBoundViolated";
    case Err::ReverseTriangleViolated: return "ReverseTriangleViolated";
    case Err::UnrealizableTriple: return "UnrealizableTriple";
    case Err::GridTooCoarse: return "GridTooCoarse";
    case Err::SturmNotApplicable: return "SturmNotApplicable";
    case Err::NotCausal: return "NotCausal";
    case Err::NotABijection: return "NotABijection";
    case Err::TooLarge: return "TooLarge";
    case Err::InvalidChain: return "InvalidChain";
    case Err::NotChronological: return "NotChronological";
    case Err::HypothesesNotMet: return "HypothesesNotMet";
    case Err::OffSide: return "OffSide";
    case Err::ParameterOutOfRange: return "ParameterOutOfRange";
    case Err::ConfigInfeasible: return "ConfigInfeasible";
    case Err::SubtriangleDegenerate: return "SubtriangleDegenerate";
    case Err::SideMismatch: return "SideMismatch";
    case Err::NoRealizingCurve: return "NoRealizingCurve";
    case Err::BadInput: return "BadInput";
  }
  return "UnknownError";
}

namespace {

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 scale(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

double clamp_cosh_arg(double v) { return v < 1.0 ? 1.0 : v; }

// rescaling between M_K and the unit model M_{sgn K}: coordinates scale by
// sqrt(|K|), tau-lengths by sqrt(|K|) as well
double unit_scale(double K) { return std::sqrt(std::abs(K)); }

ModelPoint to_unit(const ModelPoint& p) {
  if (p.K == 0.0) return p;
  double s = unit_scale(p.K);
  return ModelPoint{p.K > 0 ? 1.0 : -1.0, scale(s, p.x)};
}

}  // namespace

double ambient_ip(double K, const Vec3& u, const Vec3& v) {
  if (K > 0) return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  if (K < 0) return -u[0] * v[0] - u[1] * v[1] + u[2] * v[2];
  return -u[0] * v[0] + u[1] * v[1];  // Minkowski plane, (t, x)
}

void check_on_model(const ModelPoint& p) {
  if (p.K == 0.0) return;
  double q = ambient_ip(p.K, p.x, p.x);
  double norm2 = p.x[0] * p.x[0] + p.x[1] * p.x[1] + p.x[2] * p.x[2];
  if (std::abs(q - 1.0 / p.K) > kModelTol * std::max(1.0, norm2))
    throw Error(Err::CoordinateOffModel, "hyperquadric constraint violated");
}

ModelPoint model_base(double K) {
  if (K == 0.0) return ModelPoint{0.0, {0.0, 0.0, 0.0}};
  return ModelPoint{K, {0.0, 1.0 / unit_scale(K), 0.0}};
}

Vec3 base_time_dir(double K) { return K == 0.0 ? Vec3{1.0, 0.0, 0.0} : Vec3{1.0, 0.0, 0.0}; }
Vec3 base_space_dir(double K) { return K == 0.0 ? Vec3{0.0, 1.0, 0.0} : Vec3{0.0, 0.0, 1.0}; }

ModelPoint exp_map(const ModelPoint& p, const Vec3& u) {
  double K = p.K;
  if (K == 0.0) return ModelPoint{0.0, add(p.x, u)};
  double s = unit_scale(K);
  // unit-model computation: X = s*p.x on the unit quadric, U = s*u
  Vec3 X = scale(s, p.x), U = scale(s, u);
  double Ksgn = K > 0 ? 1.0 : -1.0;
  double q = ambient_ip(Ksgn, U, U);
  Vec3 R;
  if (q < -1e-30) {
    double m = std::sqrt(-q);
    double ch, sh;
    if (Ksgn > 0) { ch = std::cosh(m); sh = std::sinh(m); }  // dS timelike: cosh/sinh
    else { ch = std::cos(m); sh = std::sin(m); }             // AdS timelike: cos/sin
    R = add(scale(ch, X), scale(sh / m, U));
  } else if (q > 1e-30) {
    double m = std::sqrt(q);
    double ch, sh;
    if (Ksgn > 0) { ch = std::cos(m); sh = std::sin(m); }    // dS spacelike: circle
    else { ch = std::cosh(m); sh = std::sinh(m); }           // AdS spacelike: hyperbola
    R = add(scale(ch, X), scale(sh / m, U));
  } else {
    R = add(X, U);  // null: straight chord stays on the quadric
  }
  return ModelPoint{K, scale(1.0 / s, R)};
}

ModelPoint axis_point(double K, double s) {
  return exp_map(model_base(K), scale(s, base_time_dir(K)));
}

Vec3 axis_time_dir(double K, double s) {
  if (K == 0.0) return base_time_dir(K);
  double u = unit_scale(K);
  Vec3 P = scale(u, model_base(K).x);
  Vec3 T = base_time_dir(K);
  double m = s * u;
  // derivative of the unit-model axis geodesic, unit-normalized
  if (K > 0) return add(scale(std::sinh(m), P), scale(std::cosh(m), T));
  return add(scale(-std::sin(m), P), scale(std::cos(m), T));
}

namespace {

// future orientation test for a timelike tangent v at unit-model point P
bool future_directed(double Ksgn, const Vec3& P, const Vec3& v) {
  if (Ksgn > 0) return v[0] > 0;          // dS: ambient time coordinate
  return P[1] * v[0] - P[0] * v[1] > 0;   // AdS: angular direction in (x0,x1)
}

}  // namespace

double tau_K(double K, const ModelPoint& p, const ModelPoint& q) {
  check_on_model(p);
  check_on_model(q);
  if (K == 0.0) {
    double dt = q.x[0] - p.x[0], dx = q.x[1] - p.x[1];
    double s2 = dt * dt - dx * dx;
    return (dt > 0 && s2 > 0) ? std::sqrt(s2) : 0.0;
  }
  ModelPoint P = to_unit(p), Q = to_unit(q);
  double Ksgn = K > 0 ? 1.0 : -1.0;
  double ip = ambient_ip(Ksgn, P.x, Q.x);
  double t;
  Vec3 v;
  if (K > 0) {
    if (ip <= 1.0) return 0.0;
    t = std::acosh(ip);
    v = sub(Q.x, scale(std::cosh(t), P.x));
  } else {
    double m = -ip;
    if (m <= -1.0 || m >= 1.0) return 0.0;
    t = std::acos(m);
    v = sub(Q.x, scale(std::cos(t), P.x));
  }
  return future_directed(Ksgn, P.x, v) ? t / unit_scale(K) : 0.0;
}

SignedValue signed_distance(double K, const ModelPoint& p, const ModelPoint& q) {
  check_on_model(p);
  check_on_model(q);
  if (K == 0.0) {
    Vec3 d = sub(q.x, p.x);
    double s2 = ambient_ip(0.0, d, d);
    if (s2 < 0) return {-std::sqrt(-s2)};
    return {std::sqrt(s2)};
  }
  ModelPoint P = to_unit(p), Q = to_unit(q);
  double Ksgn = K > 0 ? 1.0 : -1.0;
  double ip = ambient_ip(Ksgn, P.x, Q.x);
  double u = unit_scale(K);
  if (K > 0) {
    if (ip >= 1.0) {
      double t = std::acosh(clamp_cosh_arg(ip));
      return {t == 0.0 ? 0.0 : -t / u};
    }
    if (ip > -1.0) return {std::acos(std::clamp(ip, -1.0, 1.0)) / u};
    throw Error(Err::NoUniqueGeodesic, "pair beyond the normal region of de Sitter");
  }
  double m = -ip;
  if (m >= 1.0) {
    double t = std::acosh(clamp_cosh_arg(m));
    return {t / u};
  }
  if (m > -1.0) return {-std::acos(std::clamp(m, -1.0, 1.0)) / u};
  throw Error(Err::NoUniqueGeodesic, "pair beyond the normal region of anti-de Sitter");
}

Vec3 geodesic_velocity(double K, const ModelPoint& p, const ModelPoint& q) {
  check_on_model(p);
  check_on_model(q);
  if (K == 0.0) return sub(q.x, p.x);
  ModelPoint P = to_unit(p), Q = to_unit(q);
  double Ksgn = K > 0 ? 1.0 : -1.0;
  double ip = ambient_ip(Ksgn, P.x, Q.x);
  double u = unit_scale(K);
  double t;      // unit-model arc parameter
  Vec3 vh;       // unit tangent
  if (K > 0) {
    if (ip > 1.0) {
      t = std::acosh(ip);
      vh = scale(1.0 / std::sinh(t), sub(Q.x, scale(std::cosh(t), P.x)));
    } else if (ip > -1.0 && ip < 1.0) {
      t = std::acos(ip);
      vh = scale(1.0 / std::sin(t), sub(Q.x, scale(std::cos(t), P.x)));
    } else if (ip == 1.0) {
      return scale(1.0 / u, sub(Q.x, P.x));  // null chord (or p == q)
    } else {
      throw Error(Err::NoUniqueGeodesic, "no unique geodesic in de Sitter");
    }
  } else {
    double m = -ip;
    if (m > -1.0 && m < 1.0) {
      t = std::acos(m);
      vh = scale(1.0 / std::sin(t), sub(Q.x, scale(std::cos(t), P.x)));
    } else if (m > 1.0) {
      t = std::acosh(m);
      vh = scale(1.0 / std::sinh(t), sub(Q.x, scale(std::cosh(t), P.x)));
    } else if (m == 1.0) {
      return scale(1.0 / u, sub(Q.x, P.x));
    } else {
      throw Error(Err::NoUniqueGeodesic, "no unique geodesic in anti-de Sitter");
    }
  }
  // velocity of the [0,1] parametrization in original units: length t/u
  return scale(t / u, vh);
}

double nonnormalized_angle(double K, const ModelPoint& p, const ModelPoint& q,
                           const ModelPoint& r) {
  Vec3 v = geodesic_velocity(K, p, q);
  Vec3 w = geodesic_velocity(K, p, r);
  return ambient_ip(K, v, w);
}

double hyperbolic_angle(double K, const ModelPoint& p, const ModelPoint& q,
                        const ModelPoint& r) {
  Vec3 v = geodesic_velocity(K, p, q);
  Vec3 w = geodesic_velocity(K, p, r);
  double vv = ambient_ip(K, v, v), ww = ambient_ip(K, w, w);
  if (vv >= 0 || ww >= 0) throw Error(Err::LegNotTimelike, "hyperbolic angle needs timelike legs");
  double g = ambient_ip(K, v, w);
  return std::acosh(clamp_cosh_arg(std::abs(g) / std::sqrt(vv * ww)));
}

ModelPoint geodesic_point(double K, const ModelPoint& p, const ModelPoint& q, double s) {
  Vec3 v = geodesic_velocity(K, p, q);
  if (s == 0.0) return p;
  if (s == 1.0) return q;
  return exp_map(p, scale(s, v));
}

double law_of_cosines_third_side(double K, double a, double b, double omega) {
  if (a <= 0 || b <= 0 || omega < 0)
    throw Error(Err::BadInput, "hinge needs positive legs and nonnegative angle");
  if (K == 0.0) return std::sqrt(a * a + b * b + 2 * a * b * std::cosh(omega));
  double u = unit_scale(K);
  double A = a * u, B = b * u;
  if (K > 0) {
    double c = std::acosh(std::cosh(A) * std::cosh(B) + std::sinh(A) * std::sinh(B) * std::cosh(omega)) / u;
    if (!size_bounds_check(K, {a, b, c})) throw Error(Err::SizeBoundViolated, "law of cosines result violates size bounds");
    return c;
  }
  double arg = std::cos(A) * std::cos(B) - std::sin(A) * std::sin(B) * std::cosh(omega);
  if (arg <= -1.0)
    throw Error(Err::SizeBoundViolated, "third side reaches the anti-de Sitter branch limit");
  return std::acos(arg) / u;
}

bool size_bounds_check(double K, const SideLengths& s) {
  if (s.a < 0 || s.b < 0 || s.c < 0) return false;
  if (s.c < s.a + s.b) return false;  // reverse triangle inequality
  if (K != 0.0) {
    double bound = M_PI / unit_scale(K);
    if (s.c >= bound) return false;
  }
  return true;
}

Triangle realize_triangle(double K, const SideLengths& s) {
  if (s.c < s.a + s.b - kModelTol * std::max(1.0, s.c))
    throw Error(Err::ReverseTriangleViolated, "c < a + b");
  if (!size_bounds_check(K, s)) throw Error(Err::SizeBoundViolated, "sides violate M_K size bounds");
  double a = s.a, b = s.b, c = s.c;
  ModelPoint x = model_base(K);
  ModelPoint z = axis_point(K, c);
  if (a == 0.0) return {x, x, z};
  if (b == 0.0) return {x, z, z};
  // hyperbolic angle at x between [x,y] and [x,z], from the hinge form of the
  // law of cosines with both legs future directed
  double cw;
  if (K == 0.0) {
    cw = (a * a + c * c - b * b) / (2 * a * c);
  } else if (K > 0) {
    double u = unit_scale(K), A = a * u, B = b * u, C = c * u;
    cw = (std::cosh(A) * std::cosh(C) - std::cosh(B)) / (std::sinh(A) * std::sinh(C));
  } else {
    double u = unit_scale(K), A = a * u, B = b * u, C = c * u;
    cw = (std::cos(B) - std::cos(A) * std::cos(C)) / (std::sin(A) * std::sin(C));
  }
  double w = std::acosh(clamp_cosh_arg(cw));
  Vec3 dir = add(scale(std::cosh(w), base_time_dir(K)), scale(std::sinh(w), base_space_dir(K)));
  ModelPoint y = exp_map(x, scale(a, dir));
  return {x, y, z};
}

HingeProbeReport hinge_monotonicity_probe(double K, SignedValue pq, SignedValue qr,
                                          const std::vector<SignedValue>& pr_grid) {
  if (pq.value >= 0 || qr.value >= 0)
    throw Error(Err::UnrealizableTriple, "probe expects timelike fixed sides (negative signed lengths)");
  double a = -pq.value, b = -qr.value;
  HingeProbeReport rep;
  for (const auto& g : pr_grid) {
    HingeProbeEntry e;
    e.pr_signed = g.value;
    double c = -g.value;
    if (g.value < 0 && size_bounds_check(K, {a, b, c}) && c >= a + b) {
      Triangle t = realize_triangle(K, {a, b, c});  // x=p, y=q, z=r
      e.realizable = true;
      e.ang_mid = nonnormalized_angle(K, t.y, t.x, t.z);
      e.ang_past = nonnormalized_angle(K, t.x, t.y, t.z);
      e.ang_future = nonnormalized_angle(K, t.z, t.y, t.x);
    }
    rep.entries.push_back(e);
  }
  // monotonicity versus increasing |pr|_pm over realizable entries
  std::vector<const HingeProbeEntry*> ok;
  for (const auto& e : rep.entries)
    if (e.realizable) ok.push_back(&e);
  std::sort(ok.begin(), ok.end(), [](auto* l, auto* r) { return l->pr_signed < r->pr_signed; });
  for (std::size_t i = 1; i < ok.size(); ++i) {
    if (ok[i]->pr_signed == ok[i - 1]->pr_signed) continue;
    if (ok[i]->ang_mid > ok[i - 1]->ang_mid + kMetricTol) rep.mid_decreasing = false;
    if (ok[i]->ang_past < ok[i - 1]->ang_past - kMetricTol) rep.past_increasing = false;
    if (ok[i]->ang_future < ok[i - 1]->ang_future - kMetricTol) rep.future_increasing = false;
  }
  return rep;
}

bool sturm_check(double k, const std::vector<std::pair<double, double>>& samples, double tol) {
  if (samples.size() < 8) throw Error(Err::GridTooCoarse, "need at least 8 samples");
  double L = samples.back().first - samples.front().first;
  if (L <= 0) throw Error(Err::BadInput, "grid must be increasing");
  double h = samples[1].first - samples[0].first;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    double hi = samples[i].first - samples[i - 1].first;
    if (std::abs(hi - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw Error(Err::BadInput, "grid must be uniform");
  }
  if (k > 0 && L >= M_PI / std::sqrt(k))
    throw Error(Err::SturmNotApplicable, "k > 0 requires L < pi/sqrt(k)");
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    double fpp = (samples[i + 1].second - 2 * samples[i].second + samples[i - 1].second) / (h * h);
    if (fpp + k * samples[i].second > tol)
      throw Error(Err::SturmNotApplicable, "discrete hypothesis f'' + k f <= tol fails");
  }
  for (const auto& [t, f] : samples)
    if (f < -tol) return false;
  return true;
}

}  // namespace lorentz
