#include "lorentz/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace lorentz {

int FiniteLorentzSpace::index_of(const std::string& id) const {
  for (int i = 0; i < n(); ++i)
    if (ids[i] == id) return i;
  return -1;
}

std::string Violation::describe(const FiniteLorentzSpace& X) const {
  std::ostringstream os;
  os << axiom << " at (";
  for (std::size_t k = 0; k < witness.size(); ++k)
    os << (k ? "," : "") << X.ids[witness[k]];
  os << "): " << lhs << " vs " << rhs;
  return os.str();
}

std::vector<Violation> validate_space(const FiniteLorentzSpace& X) {
  std::vector<Violation> out;
  int n = X.n();
  auto flag = [&](const char* ax, std::vector<int> w, double l, double r) {
    out.push_back({ax, std::move(w), l, r});
  };
  for (int i = 0; i < n; ++i) {
    if (X.d(i, i) != 0.0) flag("metric-zero-diagonal", {i}, X.d(i, i), 0.0);
    if (!X.causal(i, i)) flag("causal-reflexive", {i}, 0.0, 1.0);
    if (X.tau(i, i) < 0) flag("tau-nonnegative", {i, i}, X.tau(i, i), 0.0);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (X.d(i, j) < 0.0) flag("metric-nonnegative", {i, j}, X.d(i, j), 0.0);
      if (X.d(i, j) != X.d(j, i)) flag("metric-symmetric", {i, j}, X.d(i, j), X.d(j, i));
      if (X.tau(i, j) < 0) flag("tau-nonnegative", {i, j}, X.tau(i, j), 0.0);
      bool pos = X.tau(i, j) > 0;
      if (pos != static_cast<bool>(X.chron(i, j)))
        flag("tau-chron-compatible", {i, j}, X.tau(i, j), X.chron(i, j) ? 1.0 : 0.0);
      if (X.chron(i, j) && !X.causal(i, j)) flag("chron-in-causal", {i, j}, 1.0, 0.0);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (is_inf(X.d(i, j))) continue;  // inf absorbs the triangle inequality
      for (int k = 0; k < n; ++k)
        if (X.d(i, j) > X.d(i, k) + X.d(k, j) + 1e-12 * std::max(1.0, X.d(i, j)))
          flag("metric-triangle", {i, k, j}, X.d(i, j), X.d(i, k) + X.d(k, j));
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (X.causal(i, j))
        for (int k = 0; k < n; ++k)
          if (X.causal(j, k) && !X.causal(i, k)) flag("causal-transitive", {i, j, k}, 1.0, 0.0);
      if (X.chron(i, j))
        for (int k = 0; k < n; ++k)
          if (X.chron(j, k) && !X.chron(i, k)) flag("chron-transitive", {i, j, k}, 1.0, 0.0);
    }
  // reverse triangle inequality over <=-related triples
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!X.causal(i, j)) continue;
      for (int k = 0; k < n; ++k) {
        if (!X.causal(j, k)) continue;
        double sum = X.tau(i, j) + X.tau(j, k);
        if (X.tau(i, k) < sum - 1e-12 * std::max(1.0, sum))
          flag("reverse-triangle", {i, j, k}, X.tau(i, k), sum);
      }
    }
  return out;
}

bool curve_is_timelike(const FiniteLorentzSpace& X, const DiscreteCausalCurve& c) {
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
    int a = c.points[i], b = c.points[i + 1];
    if (!c.future_directed) std::swap(a, b);
    if (!X.chron(a, b)) return false;
  }
  return !c.points.empty();
}

double tau_length(const FiniteLorentzSpace& X, const DiscreteCausalCurve& c) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
    int a = c.points[i], b = c.points[i + 1];
    if (!c.future_directed) std::swap(a, b);
    if (!X.causal(a, b))
      throw Error(Err::NotCausal, "consecutive curve points are not causally related");
    sum += X.tau(a, b);
  }
  return sum;
}

double lsc_defect_pair(const FiniteLorentzSpace& X, int x, int y, double eps) {
  double best = kInf;
  for (int i = 0; i < X.n(); ++i) {
    if (X.d(x, i) > eps) continue;
    for (int j = 0; j < X.n(); ++j) {
      if (X.d(y, j) > eps) continue;
      best = std::min(best, X.tau(i, j));
    }
  }
  return X.tau(x, y) - best;  // the pair itself always qualifies, so best <= tau(x,y)
}

std::vector<LscDefect> lsc_defect(const FiniteLorentzSpace& X, double eps, double threshold) {
  int n = X.n();
  std::vector<std::vector<int>> ball(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (X.d(i, j) <= eps) ball[i].push_back(j);
  std::vector<LscDefect> out;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      double best = kInf;
      for (int i : ball[x])
        for (int j : ball[y]) best = std::min(best, X.tau(i, j));
      double def = X.tau(x, y) - best;
      if (def > threshold) out.push_back({x, y, def});
    }
  std::sort(out.begin(), out.end(), [](const LscDefect& a, const LscDefect& b) {
    if (a.defect != b.defect) return a.defect > b.defect;
    return std::pair(a.x, a.y) < std::pair(b.x, b.y);
  });
  return out;
}

bool IsolationReport::passes_all() const {
  for (char c : passes)
    if (!c) return false;
  return !passes.empty();
}

IsolationReport isolation_report(const FiniteLorentzSpace& X, const std::vector<int>& A,
                                 const std::vector<double>& scales) {
  IsolationReport rep;
  rep.scales = scales;
  rep.passes.assign(scales.size(), 1);
  for (int a : A) {
    IsolationVerdict v;
    v.point = a;
    for (int i = 0; i < X.n(); ++i) {
      if (X.chron(a, i)) v.has_future = true;
      if (X.chron(i, a)) v.has_past = true;
    }
    for (std::size_t s = 0; s < scales.size(); ++s) {
      int fw = -1, pw = -1;
      for (int b : A) {
        if (X.d(a, b) > scales[s]) continue;
        if (fw < 0 && X.chron(a, b)) fw = b;
        if (pw < 0 && X.chron(b, a)) pw = b;
      }
      v.future_witness.push_back(fw);
      v.past_witness.push_back(pw);
      if ((v.has_future && fw < 0) || (v.has_past && pw < 0)) rep.passes[s] = 0;
    }
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

FiniteLorentzSpace restrict_space(const FiniteLorentzSpace& X, const std::vector<int>& S) {
  FiniteLorentzSpace Y;
  int m = static_cast<int>(S.size());
  Y.d = Mat(m, 0.0);
  Y.tau = Mat(m, 0.0);
  Y.chron = BoolMat(m, 0);
  Y.causal = BoolMat(m, 0);
  Y.model_K = X.model_K;
  for (int i = 0; i < m; ++i) {
    Y.ids.push_back(X.ids[S[i]]);
    if (X.has_coords()) Y.coords.push_back(X.coords[S[i]]);
    for (int j = 0; j < m; ++j) {
      Y.d(i, j) = X.d(S[i], S[j]);
      Y.tau(i, j) = X.tau(S[i], S[j]);
      Y.chron(i, j) = X.chron(S[i], S[j]);
      Y.causal(i, j) = X.causal(S[i], S[j]);
    }
  }
  return Y;
}

FiniteLorentzSpace disjoint_union(const FiniteLorentzSpace& X1, const FiniteLorentzSpace& X2) {
  FiniteLorentzSpace U;
  int n1 = X1.n(), n2 = X2.n(), n = n1 + n2;
  std::set<std::string> seen(X1.ids.begin(), X1.ids.end());
  bool collide = false;
  for (const auto& id : X2.ids)
    if (seen.count(id)) collide = true;
  U.ids = X1.ids;
  for (const auto& id : X2.ids) U.ids.push_back(collide ? "2:" + id : id);
  U.d = Mat(n, kInf);
  U.tau = Mat(n, 0.0);
  U.chron = BoolMat(n, 0);
  U.causal = BoolMat(n, 0);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) {
      U.d(i, j) = X1.d(i, j);
      U.tau(i, j) = X1.tau(i, j);
      U.chron(i, j) = X1.chron(i, j);
      U.causal(i, j) = X1.causal(i, j);
    }
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n2; ++j) {
      U.d(n1 + i, n1 + j) = X2.d(i, j);
      U.tau(n1 + i, n1 + j) = X2.tau(i, j);
      U.chron(n1 + i, n1 + j) = X2.chron(i, j);
      U.causal(n1 + i, n1 + j) = X2.causal(i, j);
    }
  if (X1.has_coords() && X2.has_coords() && X1.model_K && X2.model_K &&
      *X1.model_K == *X2.model_K) {
    U.model_K = X1.model_K;
    U.coords = X1.coords;
    U.coords.insert(U.coords.end(), X2.coords.begin(), X2.coords.end());
  }
  return U;
}

FiniteLorentzSpace reverse_orientation(const FiniteLorentzSpace& X) {
  FiniteLorentzSpace Y = X;
  for (int i = 0; i < X.n(); ++i)
    for (int j = 0; j < X.n(); ++j) {
      Y.tau(i, j) = X.tau(j, i);
      Y.chron(i, j) = X.chron(j, i);
      Y.causal(i, j) = X.causal(j, i);
    }
  return Y;
}

namespace {

int grid_row_major(int nx, int i, int j) { return i * nx + j; }

double euclid(const ModelPoint& p, const ModelPoint& q) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    double d = p.x[k] - q.x[k];
    s += d * d;
  }
  return std::sqrt(s);
}

bool model_causal(double K, const ModelPoint& p, const ModelPoint& q) {
  if (K == 0.0) {
    double dt = q.x[0] - p.x[0], dx = q.x[1] - p.x[1];
    return dt >= std::abs(dx);  // includes null boundary and the point itself
  }
  if (euclid(p, q) == 0.0) return true;
  if (tau_K(K, p, q) > 0) return true;
  double sd;
  try {
    sd = signed_distance(K, p, q).value;
  } catch (const Error&) {
    return false;  // beyond the normal region
  }
  if (std::abs(sd) > 1e-12) return false;
  // exactly null pair; orient it
  double s = std::sqrt(std::abs(K));
  Vec3 P{p.x[0] * s, p.x[1] * s, p.x[2] * s}, Q{q.x[0] * s, q.x[1] * s, q.x[2] * s};
  if (K > 0) return Q[0] > P[0];
  return P[1] * Q[0] - P[0] * Q[1] > 0;
}

}  // namespace

FiniteLorentzSpace space_from_model_points(double K, const std::vector<ModelPoint>& pts,
                                           std::vector<std::string> ids) {
  int n = static_cast<int>(pts.size());
  FiniteLorentzSpace X;
  X.model_K = K;
  X.coords = pts;
  if (ids.empty())
    for (int i = 0; i < n; ++i) X.ids.push_back("p" + std::to_string(i));
  else
    X.ids = std::move(ids);
  X.d = Mat(n, 0.0);
  X.tau = Mat(n, 0.0);
  X.chron = BoolMat(n, 0);
  X.causal = BoolMat(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      X.d(i, j) = euclid(pts[i], pts[j]);
      X.tau(i, j) = tau_K(K, pts[i], pts[j]);
      X.chron(i, j) = X.tau(i, j) > 0;
      X.causal(i, j) = (i == j) || model_causal(K, pts[i], pts[j]);
    }
  return X;
}

FiniteLorentzSpace sample_minkowski_grid(double t0, double t1, double x0, double x1,
                                         int nt, int nx) {
  std::vector<ModelPoint> pts;
  std::vector<std::string> ids;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nx; ++j) {
      double t = nt == 1 ? t0 : t0 + (t1 - t0) * i / (nt - 1);
      double x = nx == 1 ? x0 : x0 + (x1 - x0) * j / (nx - 1);
      pts.push_back({0.0, {t, x, 0.0}});
      ids.push_back("r" + std::to_string(i) + "c" + std::to_string(j));
    }
  FiniteLorentzSpace X = space_from_model_points(0.0, pts, std::move(ids));
  // exact lattice causality: rounding noise in the coordinates must not break
  // ties on the null cone (the relations have to be exactly transitive)
  long long sT = std::llround((t1 - t0) * 1e6), sX = std::llround((x1 - x0) * 1e6);
  long long mT = nt > 1 ? nt - 1 : 1, mX = nx > 1 ? nx - 1 : 1;
  double ht = nt > 1 ? (t1 - t0) / (nt - 1) : 0.0;
  double hx = nx > 1 ? (x1 - x0) / (nx - 1) : 0.0;
  for (int i1 = 0; i1 < nt; ++i1)
    for (int j1 = 0; j1 < nx; ++j1)
      for (int i2 = 0; i2 < nt; ++i2)
        for (int j2 = 0; j2 < nx; ++j2) {
          int a = grid_row_major(nx, i1, j1), b = grid_row_major(nx, i2, j2);
          long long di = i2 - i1, dj = std::llabs(static_cast<long long>(j2 - j1));
          long long A = di * sT * mX, B = dj * sX * mT;
          bool causal = (di == 0 && dj == 0) || (di > 0 && A >= B);
          bool chron = di > 0 && A > B;
          X.causal(a, b) = causal;
          X.chron(a, b) = chron;
          if (chron) {
            double dt = static_cast<double>(di) * ht, dxa = static_cast<double>(dj) * hx;
            X.tau(a, b) = std::sqrt(std::max((dt - dxa) * (dt + dxa), 0.0));
          } else {
            X.tau(a, b) = 0.0;
          }
        }
  return X;
}

double grid_modulus(double t0, double t1, double x0, double x1, int nt, int nx) {
  double ht = nt > 1 ? (t1 - t0) / (nt - 1) : 0.0;
  double hx = nx > 1 ? (x1 - x0) / (nx - 1) : 0.0;
  return std::sqrt(ht * ht + hx * hx);
}

}  // namespace lorentz
