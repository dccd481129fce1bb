#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lorentz/mat.hpp"
#include "lorentz/model.hpp"

namespace lorentz {

// Finite carrier of the (X, d, <<, <=, tau) data. Matrices are dense; +inf is
// a first-class value in d and tau.
struct FiniteLorentzSpace {
  std::vector<std::string> ids;
  Mat d, tau;
  BoolMat chron, causal;
  std::optional<double> model_K;    // set when the points carry model coordinates
  std::vector<ModelPoint> coords;   // empty, or one per point

  int n() const { return static_cast<int>(ids.size()); }
  int index_of(const std::string& id) const;  // -1 if absent
  bool has_coords() const { return !coords.empty(); }
};

struct Violation {
  std::string axiom;
  std::vector<int> witness;
  double lhs = 0.0, rhs = 0.0;
  std::string describe(const FiniteLorentzSpace& X) const;
};

// empty result iff all pre-length axiom families hold (violations are data)
std::vector<Violation> validate_space(const FiniteLorentzSpace& X);

struct DiscreteCausalCurve {
  std::vector<int> points;
  bool future_directed = true;
};

bool curve_is_timelike(const FiniteLorentzSpace& X, const DiscreteCausalCurve& c);
double tau_length(const FiniteLorentzSpace& X, const DiscreteCausalCurve& c);

// tau(x,y) minus the minimum of tau over pairs within metric distance eps of
// (x,y); a positive value is a discrete lower-semicontinuity deficit
double lsc_defect_pair(const FiniteLorentzSpace& X, int x, int y, double eps);

struct LscDefect {
  int x, y;
  double defect;
};

// all ordered pairs with defect > threshold, largest defect first
std::vector<LscDefect> lsc_defect(const FiniteLorentzSpace& X, double eps,
                                  double threshold = 0.0);

struct IsolationVerdict {
  int point;
  bool has_future = false, has_past = false;
  // per requested scale: witness index in A, or -1
  std::vector<int> future_witness, past_witness;
};

struct IsolationReport {
  std::vector<double> scales;
  std::vector<IsolationVerdict> verdicts;
  // passes at scale k iff every member with nonempty future (past) has a
  // witness at that scale
  std::vector<char> passes;
  bool passes_all() const;
};

IsolationReport isolation_report(const FiniteLorentzSpace& X, const std::vector<int>& A,
                                 const std::vector<double>& scales);

FiniteLorentzSpace restrict_space(const FiniteLorentzSpace& X, const std::vector<int>& S);

// block construction: d = +inf across, tau = 0 across, no cross relations.
// Ids are kept; on a collision every id of the second space gets a "2:" prefix.
FiniteLorentzSpace disjoint_union(const FiniteLorentzSpace& X1, const FiniteLorentzSpace& X2);

// reverse the time orientation: transposes tau, chron, causal
FiniteLorentzSpace reverse_orientation(const FiniteLorentzSpace& X);

// exact manifold-backed sample: tau/chron/causal from the model formulas, d
// Euclidean on the (chart resp. ambient) coordinates
FiniteLorentzSpace space_from_model_points(double K, const std::vector<ModelPoint>& pts,
                                           std::vector<std::string> ids = {});

// axis-aligned grid sample of the Minkowski plane, ids "r<i>c<j>"
FiniteLorentzSpace sample_minkowski_grid(double t0, double t1, double x0, double x1,
                                         int nt, int nx);

// largest Euclidean distance between grid-adjacent sample points; the
// sampling modulus used by the counterexample scenarios
double grid_modulus(double t0, double t1, double x0, double x1, int nt, int nx);

}  // namespace lorentz
