#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "lorentz/error.hpp"

namespace lorentz {

// tolerance ladder: model membership / single solve / composed / full pipeline
constexpr double kModelTol = 1e-12;
constexpr double kMetricTol = 1e-9;
constexpr double kComposedTol = 1e-8;
constexpr double kPipelineTol = 1e-7;

using Vec3 = std::array<double, 3>;

// Point of the model space M_K.
//   K = 0 : Minkowski plane, coords (t, x), third component unused (0).
//   K > 0 : de Sitter, ambient R^{1,2} with form diag(-,+,+), <x,x> = 1/K.
//   K < 0 : anti-de Sitter, ambient R^{2,1} with form diag(-,-,+), <x,x> = 1/K.
struct ModelPoint {
  double K = 0.0;
  Vec3 x{0.0, 0.0, 0.0};
};

struct SignedValue {
  double value = 0.0;  // < 0 timelike, > 0 spacelike, 0 null/coincident
};

struct SideLengths {
  double a = 0.0, b = 0.0, c = 0.0;  // tau(x,y), tau(y,z), tau(x,z)
};

struct Triangle {
  ModelPoint x, y, z;
};

// ambient bilinear form of the K-model (K's sign selects the signature)
double ambient_ip(double K, const Vec3& u, const Vec3& v);

// throws CoordinateOffModel if p violates the hyperquadric constraint
void check_on_model(const ModelPoint& p);

ModelPoint model_base(double K);
Vec3 base_time_dir(double K);   // future unit timelike tangent at the base point
Vec3 base_space_dir(double K);  // unit spacelike tangent at the base point

// exponential map; u is a tangent vector at p (ambient components)
ModelPoint exp_map(const ModelPoint& p, const Vec3& u);

// point s of the way along the axis geodesic from the base point, plus the
// parallel-transported frame there
ModelPoint axis_point(double K, double s);
Vec3 axis_time_dir(double K, double s);

double tau_K(double K, const ModelPoint& p, const ModelPoint& q);
SignedValue signed_distance(double K, const ModelPoint& p, const ModelPoint& q);

// initial velocity of the unique [0,1]-parametrized geodesic p -> q
Vec3 geodesic_velocity(double K, const ModelPoint& p, const ModelPoint& q);

double nonnormalized_angle(double K, const ModelPoint& p, const ModelPoint& q,
                           const ModelPoint& r);
double hyperbolic_angle(double K, const ModelPoint& p, const ModelPoint& q,
                        const ModelPoint& r);
ModelPoint geodesic_point(double K, const ModelPoint& p, const ModelPoint& q, double s);

double law_of_cosines_third_side(double K, double a, double b, double omega);
bool size_bounds_check(double K, const SideLengths& s);

// canonical placement: x at the base point, z on the time axis at tau-distance
// c, y in the right half plane
Triangle realize_triangle(double K, const SideLengths& s);

struct HingeProbeEntry {
  double pr_signed = 0.0;
  bool realizable = false;
  double ang_mid = 0.0;     // angle pqr, at the hinge vertex q
  double ang_past = 0.0;    // angle qpr, at p
  double ang_future = 0.0;  // angle qrp, at r
};

struct HingeProbeReport {
  std::vector<HingeProbeEntry> entries;
  // monotonicity with respect to increasing signed length |pr|_pm, over the
  // realizable entries; slack 1e-9
  bool mid_decreasing = true;
  bool past_increasing = true;
  bool future_increasing = true;
};

// p << q << r with |pq|_pm, |qr|_pm fixed (timelike, negative), third side
// swept over the grid of signed lengths
HingeProbeReport hinge_monotonicity_probe(double K, SignedValue pq, SignedValue qr,
                                          const std::vector<SignedValue>& pr_grid);

// samples (t_i, f_i) on a uniform grid over [0, L]; true iff the discrete
// hypothesis f'' + k f <= tol holds and the conclusion f >= -tol does too.
// Throws GridTooCoarse (< 8 samples) and SturmNotApplicable when the
// hypothesis (or the k > 0 length bound L < pi/sqrt(k)) fails.
bool sturm_check(double k, const std::vector<std::pair<double, double>>& samples,
                 double tol = 1e-6);

}  // namespace lorentz
