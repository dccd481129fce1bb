#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lorentz/model.hpp"
#include "lorentz/rng.hpp"
#include "lorentz/space.hpp"

namespace lorentz {

// A region of some space in which tau is computable between opaque point
// handles and timelike related points carry realizing curves. Hosts may
// allocate new handles for interior curve points; discrete hosts snap the
// requested parameter to the realizing chain.
class ComparisonHost {
 public:
  virtual ~ComparisonHost() = default;
  virtual double tau(int a, int b) const = 0;
  struct SidePoint {
    int handle;
    double s;  // actual tau-offset from `a` after snapping
  };
  virtual SidePoint point_on_segment(int a, int b, double s) = 0;
};

// closed forms on the Minkowski plane, (t, x) coordinates
double minkowski_tau(const std::array<double, 2>& p, const std::array<double, 2>& q);
double minkowski_signed(const std::array<double, 2>& p, const std::array<double, 2>& q);

// the Minkowski plane itself
class MinkowskiPlaneHost : public ComparisonHost {
 public:
  int add_point(double t, double x);
  std::array<double, 2> coords(int h) const { return pts_[h]; }
  double tau(int a, int b) const override;
  SidePoint point_on_segment(int a, int b, double s) override;

 private:
  std::vector<std::array<double, 2>> pts_;
};

// two Minkowski half planes glued along the line p0 + span(dir), computed
// through the two-leg seam form of the quotient time separation
class GluedPlaneHost : public ComparisonHost {
 public:
  GluedPlaneHost(std::array<double, 2> p0, std::array<double, 2> dir);
  int add_point(double t, double x);
  std::array<double, 2> coords(int h) const { return pts_[h]; }
  int side_of(int h) const;  // -1 / 0 (on seam) / +1
  double tau(int a, int b) const override;
  SidePoint point_on_segment(int a, int b, double s) override;
  // seam crossing of the straight segment, when it exists
  std::optional<std::array<double, 2>> seam_crossing(int a, int b) const;

 private:
  std::array<double, 2> p0_, dir_;
  std::vector<std::array<double, 2>> pts_;
};

// the model space M_K0 as a host
class ModelHost : public ComparisonHost {
 public:
  explicit ModelHost(double K0) : K0_(K0) {}
  int add_point(const ModelPoint& p);
  const ModelPoint& point(int h) const { return pts_[h]; }
  double tau(int a, int b) const override;
  SidePoint point_on_segment(int a, int b, double s) override;

 private:
  double K0_;
  std::vector<ModelPoint> pts_;
};

// a finite space (or a quotient viewed as one); realizing curves are maximal
// discrete chains, so interior side points snap to chain points
class DiscreteHost : public ComparisonHost {
 public:
  explicit DiscreteHost(const FiniteLorentzSpace& X);
  double tau(int a, int b) const override;
  SidePoint point_on_segment(int a, int b, double s) override;
  const std::vector<int>& realizing_chain(int a, int b);  // NoRealizingCurve on failure

 private:
  const FiniteLorentzSpace& X_;
  std::map<std::pair<int, int>, std::vector<int>> chains_;
};

enum class Bound { Upper, Lower };

struct PairDefect {
  int triangle = -1;
  int side_p = 0, side_q = 0;
  double sp = 0.0, sq = 0.0;
  double tau_space = 0.0, tau_model = 0.0;
  double defect = 0.0;  // tau_space - tau_model
};

struct CurvatureReport {
  bool pass = true;
  int triangles = 0, pairs = 0;
  double worst_violation = -kInf;  // signed; <= tol when passing
  double max_abs_defect = 0.0;
  PairDefect worst;
  std::string note;
};

using TriangleSampler = std::function<std::optional<std::array<int, 3>>(Rng&)>;

// the triangle comparison condition over sampled triangles and stratified
// side pairs; the verdict is PASS iff every defect respects the bound
CurvatureReport curvature_verdict(ComparisonHost& host, const TriangleSampler& sample,
                                  double K, Bound bound, int n_triangles, int n_pairs,
                                  std::uint64_t seed, double tol);

// comparison triangle and comparison points in M_K
Triangle comparison_triangle(double K, const SideLengths& sides);
ModelPoint comparison_point(double K, const Triangle& tri, int side, double s);

// ----- Alexandrov's lemma -----

// constellation 1: triangles (x,p,y) and (p,y,z) share the timelike side
// [p,y]; x and z on opposite sides of its extension; x << p << y << z and
// tau(x,y)+tau(y,z) < tau(x,p)+tau(p,z)
struct AlexandrovConfig {
  double K = 0.0;
  ModelPoint x, p, y, z;  // canonical: [p,y] on the model's time axis, x left, z right
};

AlexandrovConfig make_alexandrov1(double K, double t_py, double t_xp, double boost_x,
                                  double t_yz, double boost_z);
// p placed exactly on [x,z]; the equality case
AlexandrovConfig make_alexandrov1_aligned(double K, double t_xz, double frac_p,
                                          double boost_y, double len_y);

enum class Intersection { Empty, AtP, OtherPoint };

struct Quantity {
  double bent = 0.0, straight = 0.0;
  double diff() const { return bent - straight; }
};

struct AlexandrovReport {
  Intersection intersection = Intersection::Empty;
  double crossing_dist_to_p = kInf;  // Euclidean, when the segments intersect
  Quantity ang_xyz, ang_pzy, ang_pxy, py_signed;
  bool ok_xyz = false, ok_pzy = false, ok_pxy = false, ok_py = false;
  bool all_ok = false;
  double max_equality_dev = 0.0;  // only meaningful in the AtP case
};

AlexandrovReport alexandrov_check(const AlexandrovConfig& cfg, double tol = kComposedTol);

// other constellation: triangles (x,p,z) and (p,y,z) share the timelike side
// [p,z]; x and y on opposite sides; straightened triangle glues [x,p]+[p,y]
struct Alexandrov2Config {
  double K = 0.0;
  ModelPoint x, p, y, z;  // canonical: [p,z] on the axis, x left past, y right
};

Alexandrov2Config make_alexandrov2(double K, double t_pz, double t_xp, double boost_x,
                                   double t_py, double boost_y);
Alexandrov2Config make_alexandrov2_aligned(double K, double t_xy, double frac_p,
                                           double boost_z, double len_z);

struct Alexandrov2Report {
  Intersection intersection = Intersection::Empty;  // of [x,y] with [p,z]
  double crossing_dist_to_p = kInf;
  Quantity ang_xzy, ang_pxy, ang_pxz, ang_pyz, pz_signed;
  bool ok_xzy = false, ok_pxy = false, ok_pxz = false, ok_pyz = false, ok_pz = false;
  bool all_ok = false;
  double max_equality_dev = 0.0;
};

Alexandrov2Report alexandrov_check_other(const Alexandrov2Config& cfg, double tol = kComposedTol);

// ----- gluing lemma -----

// bent comparison configuration for a subdivided timelike triangle plus its
// straightened comparison triangle; the stage for the detour functions
struct DetourConfig {
  double K = 0.0;
  ModelPoint x, p, y, z;     // T1bar = (x,p,y), T2bar = (p,y,z) sharing [p,y]
  ModelPoint xs, ys, zs;     // straightened comparison triangle
  double c1 = 0.0, c2 = 0.0; // tau(x,p), tau(p,z)
  double a3 = 0.0, b3 = 0.0; // tau(x,y), tau(y,z)
  double m = 0.0;            // parameter of qbar on [x,y]: affine for K=0, arc length otherwise
  bool degenerate = false;   // [p,y] meets [x,z] exactly at p: already a comparison triangle
};

DetourConfig make_detour_config(double K, double c1, double c2, double e, double a3, double b3);

// the per-curvature detour comparison f(t) on [0, m]; f(0) = 0 by
// construction and f >= 0 throughout on feasible configurations
double detour_function(const DetourConfig& cfg, double t);

struct GluingCaseCounts {
  int A = 0, B1 = 0, B2i = 0, B2ii = 0, C1 = 0, C2i = 0, C2ii = 0, same_side = 0;
};

struct GluingLemmaReport {
  CurvatureReport hyp_t1, hyp_t2, conclusion;
  GluingCaseCounts cases;
  bool degenerate_config = false;
  bool pass = false;
};

// subdivision point p lies on [x,z] with p << y or y << p; hypothesis and
// conclusion are checked by sampling, cross pairs are classified into the
// proof's case list
GluingLemmaReport gluing_lemma_check(ComparisonHost& host, double K, int x, int y, int z,
                                     int p, int n_pairs, std::uint64_t seed,
                                     double tol = kPipelineTol);

struct ManifoldTriangle {
  std::array<double, 2> x, p, y;  // plane chart coordinates in its own space
};

struct ManifoldGluingReport {
  CurvatureReport conclusion;
  double seam_signed_length = 0.0;
  bool pass = false;
};

// flat instance of the manifold gluing lemma: T1 = (x1,p1,y1) in space one,
// T2 = (p2,y2,z2) in space two, shared segment [p,y] of any causal character;
// side data must match (SideMismatch beyond 1e-9)
ManifoldGluingReport gluing_lemma_manifold_check(const ManifoldTriangle& t1,
                                                 const std::array<double, 2>& p2,
                                                 const std::array<double, 2>& y2,
                                                 const std::array<double, 2>& z2, double K,
                                                 int n_pairs, std::uint64_t seed,
                                                 double tol = kPipelineTol);

}  // namespace lorentz
