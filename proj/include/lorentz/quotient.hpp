#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lorentz/space.hpp"

namespace lorentz {

// alternating chain x ~ x1 <= y1 ~ x2 <= ... <= yn ~ y; steps are the causal
// legs (x_i, y_i), identifications are implicit between consecutive steps
struct Chain {
  int from = -1, to = -1;
  std::vector<std::pair<int, int>> steps;
  double length = 0.0;
};

struct CycleCertificate {
  std::vector<std::pair<int, int>> steps;  // closed chain: last step's y ~ first step's x
  double weight = 0.0;                     // strictly positive
};

struct DeclaredProps {
  bool tau_preserving = false;
  bool ll_preserving = false;
  bool leq_preserving = false;
  bool signed_distance_preserving = false;
};

struct GluingSpec {
  FiniteLorentzSpace x1, x2;
  std::vector<std::pair<std::string, std::string>> pairs;  // (id in x1, id in x2)
  DeclaredProps declared;
};

// gluing data resolved onto the disjoint union; points < n1 come from x1
struct ResolvedGluing {
  FiniteLorentzSpace space;
  std::vector<std::pair<int, int>> ident;
  int n1 = 0;
};

ResolvedGluing resolve_gluing(const GluingSpec& spec);  // NotABijection / BadInput

class QuotientSpace {
 public:
  FiniteLorentzSpace base;
  std::vector<int> class_of;
  std::vector<std::vector<int>> classes;
  Mat tilde_tau, tilde_d;
  BoolMat tilde_chron, tilde_causal;
  std::optional<CycleCertificate> cycle;  // present iff tilde_tau hits infinity via a cycle

  int n_classes() const { return static_cast<int>(classes.size()); }
  int cls_of_point(int p) const { return class_of[p]; }
  std::string class_id(int c) const;

  // maximizing chain for a finite tilde_tau value (also valid when 0 and
  // causally related); throws BadInput for infinite or unrelated pairs
  Chain witness_chain(int ci, int cj) const;

  // internal class graph, exposed for witnesses and downstream checks
  struct Edge {
    int from_class, to_class;
    double w;
    int u, v;  // realizing point pair, u <= v in base
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> out_edges;  // per class, indices into edges
  std::vector<int> scc_of;                  // class -> scc
  std::vector<std::vector<int>> sccs;       // topological order
  std::vector<char> scc_bad;                // contains a positive-weight internal edge
};

// quotient of a single space by the equivalence generated by `ident`;
// full_matrices=false skips the all-pairs tilde matrices (use the
// single-source queries below), which large samples need
QuotientSpace build_quotient(const FiniteLorentzSpace& X,
                             const std::vector<std::pair<int, int>>& ident,
                             bool full_matrices = true);

// two-space amalgamation front door
QuotientSpace build_quotient(const GluingSpec& spec);

// view the quotient as a finite space again (d = tilde_d and so on)
FiniteLorentzSpace quotient_to_space(const QuotientSpace& Q);

// single-source longest-chain values, one entry per class
std::vector<double> quotient_tau_from(const QuotientSpace& Q, int ci);

// single-source quotient semi-metric values, one entry per class
std::vector<double> quotient_d_from(const QuotientSpace& Q, int ci);

struct BruteResult {
  Mat tau, d;
  BoolMat causal;
  BoolMat growth;  // tau still improving at the hop bound (unbounded suspicion)
};

// literal hop-bounded chain evaluation straight from the definition; the
// independent oracle for build_quotient on tiny instances (TooLarge above 12)
BruteResult brute_force_quotient(const FiniteLorentzSpace& X,
                                 const std::vector<std::pair<int, int>>& ident,
                                 int max_chain_hops);

struct PropertyCheck {
  bool checked = false;
  bool holds = false;
  std::vector<int> witness;  // base-space point indices
  std::string detail;
};

struct MapPropertyReport {
  PropertyCheck tau_preserving, ll_preserving, leq_preserving;
  PropertyCheck causal_compat;       // I+- nonemptiness agrees across the seam
  PropertyCheck signed_dist;         // only when both spaces carry coordinates
  PropertyCheck inv_tau, inv_ll, inv_leq;  // inverse map inherits
  double bilip_constant = 1.0;
  double bilip_scale = 0.0;
  bool bilip_finite = true;
  bool preserving_hypotheses() const {  // short-form prerequisites
    return tau_preserving.holds && ll_preserving.holds && leq_preserving.holds;
  }
};

MapPropertyReport check_map_properties(const GluingSpec& spec, double bilip_eps);

// endpoint-pinning and trivial-link merging; result never shorter
Chain normalize_chain(const FiniteLorentzSpace& X,
                      const std::vector<std::pair<int, int>>& ident, const Chain& c);

struct TimelikeWitness {
  Chain chain;
  bool found = false;  // a fully timelike chain exists
  double gap = 0.0;    // tilde_tau minus best timelike chain length
};

TimelikeWitness timelike_chain_witness(const QuotientSpace& Q, int ci, int cj);

struct ShortFormResult {
  double value = 0.0;
  int argmax_class = -1;  // -1: empty seam intersection, sup over empty set
};

// two-term form over seam classes inside the causal diamond; requires the
// preservation hypotheses from check_map_properties
ShortFormResult short_form_tau(const ResolvedGluing& g, const QuotientSpace& Q,
                               const MapPropertyReport& props, int x_point, int y_point);

struct DiamondReport {
  std::vector<int> diamond;  // classes k with ci <= k <= cj in the quotient
  enum class Case { SeamToSeam, InteriorAvoidingSeam, Other } which = Case::Other;
  bool checked = false;
  bool decomposition_holds = false;
  std::string detail;
};

DiamondReport causal_diamond(const ResolvedGluing& g, const QuotientSpace& Q, int ci, int cj);

// replay a certificate against the base space; true iff every step is causal,
// consecutive steps are linked by ~, the walk closes, and the weight matches
bool verify_cycle_certificate(const FiniteLorentzSpace& X,
                              const std::vector<std::pair<int, int>>& ident,
                              const CycleCertificate& cert);

}  // namespace lorentz
