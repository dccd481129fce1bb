#include <doctest.h>

#include <cmath>

#include "lorentz/quotient.hpp"
#include "lorentz/rng.hpp"

using namespace lorentz;

namespace {

// x <= a with tau 1 in space one; a <= y with tau 2 in space two
GluingSpec four_point_spec() {
  GluingSpec spec;
  auto mk = [](const std::string& lo, const std::string& hi, double t) {
    FiniteLorentzSpace X;
    X.ids = {lo, hi};
    X.d = Mat(2, 1.0);
    X.d(0, 0) = X.d(1, 1) = 0.0;
    X.tau = Mat(2, 0.0);
    X.chron = BoolMat(2, 0);
    X.causal = BoolMat(2, 0);
    X.causal(0, 0) = X.causal(1, 1) = 1;
    X.causal(0, 1) = 1;
    X.tau(0, 1) = t;
    X.chron(0, 1) = 1;
    return X;
  };
  spec.x1 = mk("x", "a1", 1.0);
  spec.x2 = mk("a2", "y", 2.0);
  spec.pairs = {{"a1", "a2"}};
  return spec;
}

// random valid finite space: tau as longest path over a random weighted DAG
FiniteLorentzSpace random_space(Rng& rng, int n, bool allow_null_edges) {
  FiniteLorentzSpace X;
  for (int i = 0; i < n; ++i) X.ids.push_back("p" + std::to_string(i));
  X.tau = Mat(n, 0.0);
  X.chron = BoolMat(n, 0);
  X.causal = BoolMat(n, 0);
  Mat best(n, -kInf);
  for (int i = 0; i < n; ++i) {
    best(i, i) = 0.0;
    X.causal(i, i) = 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < 0.45) {
        double w = allow_null_edges && rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.1, 2.0);
        best(i, j) = std::max(best(i, j), w);
        X.causal(i, j) = 1;
      }
  // longest-path closure gives a tau satisfying the reverse triangle
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (best(i, k) > -kInf && best(k, j) > -kInf)
          best(i, j) = std::max(best(i, j), best(i, k) + best(k, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && best(i, j) > -kInf) {
        X.causal(i, j) = 1;
        X.tau(i, j) = best(i, j);
        X.chron(i, j) = best(i, j) > 0;
      }
    }
  std::vector<std::array<double, 2>> emb(n);
  for (auto& e : emb) e = {rng.uniform(0, 4), rng.uniform(0, 4)};
  X.d = Mat(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      X.d(i, j) = std::hypot(emb[i][0] - emb[j][0], emb[i][1] - emb[j][1]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && X.d(i, j) == 0.0) X.d(i, j) = 1e-6;
  return X;
}

GluingSpec random_gluing(Rng& rng, int n1, int n2, bool reversed, bool allow_null) {
  GluingSpec spec;
  spec.x1 = random_space(rng, n1, allow_null);
  spec.x2 = random_space(rng, n2, allow_null);
  if (reversed) spec.x2 = reverse_orientation(spec.x2);
  int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(n1, n2))));
  std::vector<int> left(n1), right(n2);
  for (int i = 0; i < n1; ++i) left[i] = i;
  for (int i = 0; i < n2; ++i) right[i] = i;
  for (int k = 0; k < m; ++k) {
    int a = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(n1 - k)));
    int b = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(n2 - k)));
    std::swap(left[k], left[a]);
    std::swap(right[k], right[b]);
    spec.pairs.push_back({spec.x1.ids[left[k]], spec.x2.ids[right[k]]});
  }
  return spec;
}

void check_quotient_axioms(const QuotientSpace& Q) {
  int C = Q.n_classes();
  for (int a = 0; a < C; ++a) {
    REQUIRE(static_cast<bool>(Q.tilde_causal(a, a)));
    for (int b = 0; b < C; ++b) {
      REQUIRE((Q.tilde_tau(a, b) > 0) == static_cast<bool>(Q.tilde_chron(a, b)));
      if (Q.tilde_chron(a, b)) REQUIRE(static_cast<bool>(Q.tilde_causal(a, b)));
    }
  }
  for (int a = 0; a < C; ++a)
    for (int b = 0; b < C; ++b) {
      if (!Q.tilde_causal(a, b)) continue;
      for (int c = 0; c < C; ++c) {
        if (!Q.tilde_causal(b, c)) continue;
        REQUIRE(static_cast<bool>(Q.tilde_causal(a, c)));
        if (Q.tilde_chron(a, b) && Q.tilde_chron(b, c))
          REQUIRE(static_cast<bool>(Q.tilde_chron(a, c)));
        double sum = Q.tilde_tau(a, b) + Q.tilde_tau(b, c);
        if (is_inf(sum)) {
          REQUIRE(is_inf(Q.tilde_tau(a, c)));
        } else {
          REQUIRE(Q.tilde_tau(a, c) >= sum - 1e-9 * std::max(1.0, sum));
        }
      }
    }
  for (int u = 0; u < Q.base.n(); ++u)
    for (int v = 0; v < Q.base.n(); ++v) {
      REQUIRE(Q.tilde_tau(Q.class_of[u], Q.class_of[v]) >= Q.base.tau(u, v) - 1e-12);
      if (Q.base.causal(u, v))
        REQUIRE(static_cast<bool>(Q.tilde_causal(Q.class_of[u], Q.class_of[v])));
      if (Q.base.chron(u, v))
        REQUIRE(static_cast<bool>(Q.tilde_chron(Q.class_of[u], Q.class_of[v])));
    }
}

}  // namespace

TEST_CASE("no identifications reproduces the disjoint union") {
  GluingSpec spec = four_point_spec();
  spec.pairs.clear();
  QuotientSpace Q = build_quotient(spec);
  CHECK(Q.n_classes() == 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(Q.tilde_tau(a, b) == Q.base.tau(a, b));
}

TEST_CASE("the four point cross-seam chain") {
  GluingSpec spec = four_point_spec();
  ResolvedGluing g = resolve_gluing(spec);
  QuotientSpace Q = build_quotient(g.space, g.ident);
  CHECK(Q.n_classes() == 3);
  int cx = Q.class_of[g.space.index_of("x")];
  int cy = Q.class_of[g.space.index_of("y")];
  CHECK(Q.tilde_tau(cx, cy) == doctest::Approx(3.0));
  Chain w = Q.witness_chain(cx, cy);
  CHECK(w.length == doctest::Approx(3.0));
  REQUIRE(w.steps.size() == 2);
  CHECK(g.space.ids[w.steps[0].first] == "x");
  CHECK(g.space.ids[w.steps[0].second] == "a1");
  CHECK(g.space.ids[w.steps[1].first] == "a2");
  CHECK(g.space.ids[w.steps[1].second] == "y");
  BruteResult br = brute_force_quotient(g.space, g.ident, 6);
  CHECK(br.tau(cx, cy) == doctest::Approx(3.0));
  TimelikeWitness tw = timelike_chain_witness(Q, cx, cy);
  CHECK(tw.found);
  CHECK(tw.gap == doctest::Approx(0.0));
  MapPropertyReport props = check_map_properties(spec, 10.0);
  ShortFormResult sf = short_form_tau(g, Q, props, g.space.index_of("x"), g.space.index_of("y"));
  CHECK(sf.value == doctest::Approx(3.0));
  CHECK(sf.argmax_class == Q.class_of[g.space.index_of("a1")]);
}

TEST_CASE("orientation-reversed two-point gluing pumps to infinity") {
  GluingSpec spec;
  auto mk = [](double t) {
    FiniteLorentzSpace X;
    X.ids = {"a", "b"};
    X.d = Mat(2, 1.0);
    X.d(0, 0) = X.d(1, 1) = 0.0;
    X.tau = Mat(2, 0.0);
    X.chron = BoolMat(2, 0);
    X.causal = BoolMat(2, 0);
    X.causal(0, 0) = X.causal(1, 1) = 1;
    X.causal(0, 1) = 1;
    X.tau(0, 1) = t;
    X.chron(0, 1) = 1;
    return X;
  };
  spec.x1 = mk(1.0);
  spec.x2 = reverse_orientation(mk(1.0));
  spec.pairs = {{"a", "a"}, {"b", "b"}};
  ResolvedGluing g = resolve_gluing(spec);
  QuotientSpace Q = build_quotient(g.space, g.ident);
  REQUIRE(Q.cycle.has_value());
  CHECK(Q.cycle->weight > 0);
  CHECK(verify_cycle_certificate(g.space, g.ident, *Q.cycle));
  for (int a = 0; a < Q.n_classes(); ++a)
    for (int b = 0; b < Q.n_classes(); ++b) CHECK(is_inf(Q.tilde_tau(a, b)));
  BruteResult br = brute_force_quotient(g.space, g.ident, 8);
  bool any_growth = false;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) any_growth = any_growth || br.growth(a, b);
  CHECK(any_growth);
}

TEST_CASE("oracle equivalence on seeded small gluings") {
  Rng rng(2024);
  int acyclic = 0, cyclic = 0;
  for (int trial = 0; trial < 250; ++trial) {
    int n1 = 2 + static_cast<int>(rng.below(5));
    int n2 = 2 + static_cast<int>(rng.below(5));
    bool reversed = trial % 5 == 4;
    GluingSpec spec = random_gluing(rng, n1, n2, reversed, trial % 3 == 0);
    ResolvedGluing g = resolve_gluing(spec);
    QuotientSpace Q = build_quotient(g.space, g.ident);
    int C = Q.n_classes();
    BruteResult br = brute_force_quotient(g.space, g.ident, 2 * C + 2);
    bool has_inf = false;
    for (int a = 0; a < C; ++a)
      for (int b = 0; b < C; ++b) {
        CHECK(static_cast<bool>(Q.tilde_causal(a, b)) == static_cast<bool>(br.causal(a, b)));
        if (is_inf(Q.tilde_tau(a, b))) {
          has_inf = true;
          CHECK((static_cast<bool>(br.growth(a, b)) || is_inf(br.tau(a, b))));
        } else {
          CHECK(Q.tilde_tau(a, b) == doctest::Approx(br.tau(a, b)).epsilon(1e-12));
          CHECK_FALSE(static_cast<bool>(br.growth(a, b)));
        }
        CHECK(Q.tilde_d(a, b) == doctest::Approx(br.d(a, b)).epsilon(1e-12));
      }
    if (has_inf) {
      ++cyclic;
      REQUIRE(Q.cycle.has_value());
      CHECK(verify_cycle_certificate(g.space, g.ident, *Q.cycle));
    } else {
      ++acyclic;
    }
    check_quotient_axioms(Q);
  }
  CHECK(acyclic > 100);
  CHECK(cyclic > 10);
}

TEST_CASE("normalize_chain") {
  GluingSpec spec = four_point_spec();
  ResolvedGluing g = resolve_gluing(spec);
  int x = g.space.index_of("x"), a1 = g.space.index_of("a1");
  int a2 = g.space.index_of("a2"), y = g.space.index_of("y");
  SUBCASE("already normal is unchanged") {
    Chain c{x, y, {{x, a1}, {a2, y}}, 3.0};
    Chain n = normalize_chain(g.space, g.ident, c);
    CHECK(n.steps == c.steps);
    CHECK(n.length == doctest::Approx(3.0));
  }
  SUBCASE("endpoints get pinned") {
    Chain c{x, y, {{a2, y}}, 0.0};
    CHECK_THROWS_AS((void)normalize_chain(g.space, g.ident, c), Error);
    Chain c2{a1, y, {{a2, y}}, 0.0};
    Chain n = normalize_chain(g.space, g.ident, c2);
    REQUIRE(n.steps.size() == 2);
    CHECK(n.steps[0] == std::pair(a1, a1));
    CHECK(n.length == doctest::Approx(2.0));
  }
  SUBCASE("trivial links are merged and never shorten") {
    FiniteLorentzSpace X;
    X.ids = {"u", "v", "w"};
    X.d = Mat(3, 1.0);
    for (int i = 0; i < 3; ++i) X.d(i, i) = 0.0;
    X.tau = Mat(3, 0.0);
    X.chron = BoolMat(3, 0);
    X.causal = BoolMat(3, 0);
    for (int i = 0; i < 3; ++i) X.causal(i, i) = 1;
    X.causal(0, 1) = X.causal(1, 2) = X.causal(0, 2) = 1;
    X.tau(0, 1) = 1.0;
    X.tau(1, 2) = 1.0;
    X.tau(0, 2) = 2.5;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) X.chron(i, j) = X.tau(i, j) > 0;
    Chain c{0, 2, {{0, 1}, {1, 2}}, 2.0};
    Chain n = normalize_chain(X, {}, c);
    REQUIRE(n.steps.size() == 1);
    CHECK(n.length == doctest::Approx(2.5));
    CHECK(n.length >= c.length);
    Chain n2 = normalize_chain(X, {}, n);
    CHECK(n2.steps == n.steps);
  }
}

TEST_CASE("timelike chain witness and the NotChronological guard") {
  FiniteLorentzSpace X;
  X.ids = {"x", "a", "b", "y"};
  X.d = Mat(4, 1.0);
  for (int i = 0; i < 4; ++i) X.d(i, i) = 0.0;
  X.tau = Mat(4, 0.0);
  X.chron = BoolMat(4, 0);
  X.causal = BoolMat(4, 0);
  for (int i = 0; i < 4; ++i) X.causal(i, i) = 1;
  auto rel = [&](int i, int j, double t) {
    X.causal(i, j) = 1;
    X.tau(i, j) = t;
    X.chron(i, j) = t > 0;
  };
  rel(0, 1, 1.0);
  rel(1, 2, 0.0);
  rel(2, 3, 1.0);
  rel(0, 2, 1.0);
  rel(1, 3, 1.0);
  rel(0, 3, 2.0);
  QuotientSpace Q = build_quotient(X, {});
  TimelikeWitness tw = timelike_chain_witness(Q, Q.class_of[0], Q.class_of[3]);
  CHECK(tw.found);
  CHECK(tw.chain.length == doctest::Approx(2.0));
  CHECK(tw.gap == doctest::Approx(0.0));
  CHECK_THROWS_AS((void)timelike_chain_witness(Q, Q.class_of[3], Q.class_of[0]), Error);
}

TEST_CASE("map property checks classify the null-to-spacelike example") {
  const int n = 9;
  std::vector<ModelPoint> nullseg, spaceseg;
  for (int i = 0; i < n; ++i) {
    double s = i / static_cast<double>(n - 1);
    nullseg.push_back({0.0, {s, s, 0.0}});
    spaceseg.push_back({0.0, {0.0, s, 0.0}});
  }
  GluingSpec spec;
  spec.x1 = space_from_model_points(0.0, nullseg);
  spec.x2 = space_from_model_points(0.0, spaceseg);
  for (int i = 0; i < n; ++i) spec.pairs.push_back({spec.x1.ids[i], spec.x2.ids[i]});
  MapPropertyReport rep = check_map_properties(spec, 0.5);
  CHECK(rep.tau_preserving.holds);
  CHECK(rep.ll_preserving.holds);
  CHECK_FALSE(rep.leq_preserving.holds);
  REQUIRE(rep.leq_preserving.witness.size() == 2);
  CHECK(rep.inv_tau.holds == rep.tau_preserving.holds);
  CHECK(rep.inv_leq.holds == rep.leq_preserving.holds);
}

TEST_CASE("inverse inherits each property on bijective random maps") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    GluingSpec spec = random_gluing(rng, 5, 5, trial % 2 == 1, true);
    MapPropertyReport rep = check_map_properties(spec, 2.0);
    CHECK(rep.tau_preserving.holds == rep.inv_tau.holds);
    CHECK(rep.ll_preserving.holds == rep.inv_ll.holds);
    CHECK(rep.leq_preserving.holds == rep.inv_leq.holds);
  }
}

TEST_CASE("identity self-gluing passes every property") {
  FiniteLorentzSpace X = sample_minkowski_grid(0, 1, 0, 1, 5, 5);
  GluingSpec spec;
  spec.x1 = X;
  spec.x2 = X;
  for (const auto& id : X.ids) spec.pairs.push_back({id, id});
  MapPropertyReport rep = check_map_properties(spec, 0.5);
  CHECK(rep.tau_preserving.holds);
  CHECK(rep.ll_preserving.holds);
  CHECK(rep.leq_preserving.holds);
  CHECK(rep.causal_compat.holds);
  CHECK(rep.signed_dist.holds);
  CHECK(rep.bilip_constant == doctest::Approx(1.0));
}

TEST_CASE("non-bijective pair lists are rejected") {
  GluingSpec spec = four_point_spec();
  spec.pairs.push_back({"x", "y"});
  spec.pairs.push_back({"x", "a2"});
  CHECK_THROWS_AS((void)resolve_gluing(spec), Error);
}

TEST_CASE("causal diamond decomposition") {
  FiniteLorentzSpace L = sample_minkowski_grid(-1, 1, -1, 0, 9, 5);
  FiniteLorentzSpace R = sample_minkowski_grid(-1, 1, 0, 1, 9, 5);
  GluingSpec spec;
  spec.x1 = L;
  spec.x2 = R;
  for (int i = 0; i < 9; ++i)
    spec.pairs.push_back({"r" + std::to_string(i) + "c4", "r" + std::to_string(i) + "c0"});
  ResolvedGluing g = resolve_gluing(spec);
  QuotientSpace Q = build_quotient(g.space, g.ident);
  SUBCASE("seam-to-seam uses both diamonds") {
    int lo = g.space.index_of("r1c4"), hi = g.space.index_of("r7c4");
    auto rep = causal_diamond(g, Q, Q.class_of[lo], Q.class_of[hi]);
    CHECK(rep.which == DiamondReport::Case::SeamToSeam);
    CHECK(rep.checked);
    CHECK(rep.decomposition_holds);
  }
  SUBCASE("reflexive seam diamond is the class itself") {
    int lo = g.space.index_of("r4c4");
    auto rep = causal_diamond(g, Q, Q.class_of[lo], Q.class_of[lo]);
    CHECK(rep.which == DiamondReport::Case::SeamToSeam);
    CHECK(rep.decomposition_holds);
    CHECK(rep.diamond == std::vector<int>{Q.class_of[lo]});
  }
  SUBCASE("interior diamond avoiding the seam projects from one space") {
    int lo = g.space.index_of("r3c1"), hi = g.space.index_of("r5c1");
    auto rep = causal_diamond(g, Q, Q.class_of[lo], Q.class_of[hi]);
    CHECK(rep.which == DiamondReport::Case::InteriorAvoidingSeam);
    CHECK(rep.checked);
    CHECK(rep.decomposition_holds);
  }
}

TEST_CASE("short form equals the quotient on cross pairs whenever hypotheses hold") {
  Rng rng(77);
  int used = 0;
  for (int trial = 0; trial < 200 && used < 40; ++trial) {
    GluingSpec spec = random_gluing(rng, 5, 5, false, false);
    MapPropertyReport props = check_map_properties(spec, 100.0);
    if (!props.preserving_hypotheses()) continue;
    ResolvedGluing g = resolve_gluing(spec);
    QuotientSpace Q = build_quotient(g.space, g.ident);
    for (int u = 0; u < g.n1; ++u)
      for (int v = g.n1; v < g.space.n(); ++v) {
        if (Q.classes[Q.class_of[u]].size() != 1 || Q.classes[Q.class_of[v]].size() != 1)
          continue;
        if (is_inf(Q.tilde_tau(Q.class_of[u], Q.class_of[v]))) continue;
        auto sf = short_form_tau(g, Q, props, u, v);
        double qt = Q.tilde_tau(Q.class_of[u], Q.class_of[v]);
        if (!Q.tilde_chron(Q.class_of[u], Q.class_of[v])) {
          CHECK(sf.value <= qt + 1e-12);
        } else {
          CHECK(sf.value == doctest::Approx(qt).epsilon(1e-12));
        }
      }
    ++used;
  }
  CHECK(used >= 30);
}

TEST_CASE("quotient of a valid space by nothing is itself") {
  Rng rng(5);
  FiniteLorentzSpace X = random_space(rng, 7, true);
  QuotientSpace Q = build_quotient(X, {});
  CHECK(Q.n_classes() == 7);
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      CHECK(Q.tilde_tau(a, b) == doctest::Approx(X.tau(a, b)));
      CHECK(static_cast<bool>(Q.tilde_causal(a, b)) == static_cast<bool>(X.causal(a, b)));
    }
}

TEST_CASE("brute force refuses oversized inputs") {
  Rng rng(1);
  FiniteLorentzSpace big = random_space(rng, 13, false);
  CHECK_THROWS_AS((void)brute_force_quotient(big, {}, 10), Error);
}


TEST_CASE("infinite input tau propagates through chains without a cycle") {
  FiniteLorentzSpace X;
  X.ids = {"u", "v", "w"};
  X.d = Mat(3, 1.0);
  for (int i = 0; i < 3; ++i) X.d(i, i) = 0.0;
  X.tau = Mat(3, 0.0);
  X.chron = BoolMat(3, 0);
  X.causal = BoolMat(3, 0);
  for (int i = 0; i < 3; ++i) X.causal(i, i) = 1;
  X.causal(0, 1) = X.causal(1, 2) = X.causal(0, 2) = 1;
  X.tau(0, 1) = kInf;
  X.tau(1, 2) = 1.0;
  X.tau(0, 2) = kInf;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) X.chron(i, j) = X.tau(i, j) > 0;
  QuotientSpace Q = build_quotient(X, {});
  CHECK(is_inf(Q.tilde_tau(0, 2)));
  CHECK_FALSE(Q.cycle.has_value());
  BruteResult br = brute_force_quotient(X, {}, 8);
  CHECK(is_inf(br.tau(0, 2)));
}
