// Seed mutation against the matching expansions. Polygons realize every
// catalog chord through an explicit flip path found by search over labeled
// triangulations; the annuli pair mutation-path variables with catalog arcs
// through their leading exponents and then demand full polynomial equality.
// Plus periodicity, involution, random-path Laurentness, the separation
// formula in both published forms, and the leading-term certificates.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "scl/cluster.hpp"
#include "scl/expansion.hpp"
#include "scl/families.hpp"

namespace {

scl::VarContextPtr pctx(int n) { return scl::VarContext::principal(n); }

scl::Seed principal_seed(const scl::Triangulation& T) {
  return scl::initial_seed(pctx(T.num_arcs()),
                           scl::extend_principal(T.signed_adjacency()));
}

scl::Laurent mono(const scl::VarContextPtr& ctx, std::vector<int> e, long long c = 1) {
  return scl::Laurent::monomial(ctx, std::move(e), scl::BigInt(c));
}

using Chord = std::array<int, 2>;

bool polygon_edge(const std::set<Chord>& chords, int a, int b, int n) {
  if (a > b) std::swap(a, b);
  if (b - a == 1 || (a == 1 && b == n)) return true;
  return chords.count({a, b}) > 0;
}

// The two triangles on either side of a chord have apexes p, q; the flip
// replaces the chord by (p, q). In convex position a triangle is a face as
// soon as its three sides are edges.
Chord flip_chord(const std::set<Chord>& chords, Chord c, int n) {
  std::vector<int> apex;
  for (int p = 1; p <= n; ++p) {
    if (p == c[0] || p == c[1]) continue;
    if (polygon_edge(chords, c[0], p, n) && polygon_edge(chords, p, c[1], n))
      apex.push_back(p);
  }
  REQUIRE(apex.size() == 2);
  Chord d{apex[0], apex[1]};
  if (d[0] > d[1]) std::swap(d[0], d[1]);
  return d;
}

struct PathHit {
  std::vector<int> path;
  int slot = -1;
};

// Flip paths from the fan triangulation realizing every chord of the n-gon,
// found breadth-first over slot-labeled triangulations. Falling short of
// full coverage within the depth cap is a failure, not a skip.
std::map<Chord, PathHit> realize_chords(int n) {
  using State = std::vector<Chord>;
  State init;
  for (int k = 0; k + 4 <= n; ++k) init.push_back({1, k + 3});
  std::map<Chord, PathHit> found;
  auto note = [&](const State& s, const std::vector<int>& path) {
    for (int k = 0; k < static_cast<int>(s.size()); ++k)
      if (!found.count(s[k])) found[s[k]] = {path, k};
  };
  std::set<State> seen{init};
  std::vector<std::pair<State, std::vector<int>>> frontier{{init, {}}};
  note(init, {});
  const int total = n * (n - 3) / 2;
  for (int depth = 0; depth < 12 && static_cast<int>(found.size()) < total; ++depth) {
    std::vector<std::pair<State, std::vector<int>>> next;
    for (const auto& [s, path] : frontier) {
      std::set<Chord> cset(s.begin(), s.end());
      for (int k = 0; k < static_cast<int>(s.size()); ++k) {
        State t = s;
        t[k] = flip_chord(cset, s[k], n);
        if (!seen.insert(t).second) continue;
        std::vector<int> p2 = path;
        p2.push_back(k);
        note(t, p2);
        next.push_back({std::move(t), std::move(p2)});
      }
    }
    frontier = std::move(next);
  }
  REQUIRE(static_cast<int>(found.size()) == total);
  return found;
}

scl::GVector leading_of(const scl::Laurent& v, int n) {
  auto sole = v.sole_coefficient_free_term();
  REQUIRE(sole);
  scl::GVector g(n);
  for (int i = 0; i < n; ++i) g[i] = sole->first[i];
  return g;
}

// Every variable reachable within the given number of mutations, keyed by
// leading exponent. Reaching the same key twice with different polynomials
// would be a real inconsistency, so it is asserted away.
void collect_variables(const scl::Seed& s, int depth, int avoid,
                       std::map<scl::GVector, scl::Laurent>& vars) {
  const int n = s.ctx->n_cluster;
  for (const auto& v : s.cluster) {
    scl::GVector g = leading_of(v, n);
    auto it = vars.find(g);
    if (it == vars.end())
      vars.emplace(std::move(g), v);
    else
      REQUIRE(it->second == v);
  }
  if (depth == 0) return;
  for (int k = 0; k < n; ++k) {
    if (k == avoid) continue;
    collect_variables(scl::mutate_seed(s, k), depth - 1, k, vars);
  }
}

}  // namespace

TEST_CASE("seed basics and single mutations") {
  scl::PolygonModel sq(4);
  scl::Seed s = principal_seed(sq.T());
  REQUIRE(s.cluster.size() == 1);
  REQUIRE(scl::variable_by_mutation_path(s, {}, 0) ==
          scl::Laurent::variable(s.ctx, 0));

  scl::Seed m = scl::mutate_seed(s, 0);
  REQUIRE(m.cluster[0] == mono(s.ctx, {-1, 0}) + mono(s.ctx, {-1, 1}));
  REQUIRE(scl::mutate_seed(m, 0) == s);

  scl::AnnulusModel ann(1, 1);
  scl::Seed a = principal_seed(ann.T());
  scl::Seed am = scl::mutate_seed(a, 0);
  REQUIRE(am.cluster[0] == mono(a.ctx, {-1, 2, 0, 0}) + mono(a.ctx, {-1, 0, 1, 0}));

  REQUIRE_THROWS_AS(scl::mutate_seed(s, 1), scl::Error);
  REQUIRE_THROWS_AS(scl::mutate_seed(s, -1), scl::Error);
}

TEST_CASE("mutation is an involution on every test surface") {
  std::vector<const scl::Triangulation*> keep;
  scl::PolygonModel p5(5), p6(6);
  scl::AnnulusModel a11(1, 1), a22(2, 2);
  for (const scl::Triangulation* T :
       {&p5.T(), &p6.T(), &a11.T(), &a22.T()}) {
    scl::Seed s = principal_seed(*T);
    for (int k = 0; k < T->num_arcs(); ++k)
      REQUIRE(scl::mutate_seed(scl::mutate_seed(s, k), k) == s);
    // and one step in, where the cluster is no longer the initial one
    scl::Seed t = scl::mutate_seed(s, 0);
    for (int k = 0; k < T->num_arcs(); ++k)
      REQUIRE(scl::mutate_seed(scl::mutate_seed(t, k), k) == t);
  }
}

TEST_CASE("pentagon alternating mutation has period ten") {
  scl::PolygonModel pent(5);
  scl::Seed s0 = principal_seed(pent.T());
  scl::Seed s = s0;
  for (int step = 0; step < 10; ++step) {
    s = scl::mutate_seed(s, step % 2);
    if (step < 9) REQUIRE_FALSE(s == s0);
  }
  REQUIRE(s == s0);
}

TEST_CASE("random mutation paths stay Laurent with positive coefficients") {
  std::mt19937 rng(20260822u);
  std::vector<std::unique_ptr<scl::PolygonModel>> polys;
  std::vector<const scl::Triangulation*> surfaces;
  for (int n = 5; n <= 8; ++n) {
    polys.push_back(std::make_unique<scl::PolygonModel>(n));
    surfaces.push_back(&polys.back()->T());
  }
  scl::AnnulusModel a22(2, 2);
  surfaces.push_back(&a22.T());

  for (const scl::Triangulation* T : surfaces) {
    const int n = T->num_arcs();
    for (int trial = 0; trial < 4; ++trial) {
      scl::Seed s = principal_seed(*T);
      int prev = -1;
      for (int step = 0; step < 8; ++step) {
        int k = static_cast<int>(rng() % n);
        if (k == prev) k = (k + 1) % n;
        s = scl::mutate_seed(s, k);  // throws if any division has a remainder
        REQUIRE(s.cluster[k].coefficients_all_positive());
        prev = k;
      }
      for (const auto& v : s.cluster) REQUIRE(v.coefficients_all_positive());
    }
  }
}

TEST_CASE("polygon chords: mutation paths match matching expansions") {
  for (int n = 5; n <= 8; ++n) {
    scl::PolygonModel poly(n);
    const scl::Triangulation& T = poly.T();
    auto ctx = pctx(T.num_arcs());
    scl::Seed s0 = principal_seed(T);
    auto found = realize_chords(n);
    int checked = 0;
    for (const auto& e : poly.catalog(n)) {
      const PathHit& hit = found.at(e.chord);
      scl::Laurent via_mutation = scl::variable_by_mutation_path(s0, hit.path, hit.slot);
      scl::Laurent via_matchings = scl::expand_arc(T, ctx, e.word).laurent;
      REQUIRE(via_mutation == via_matchings);
      ++checked;
    }
    REQUIRE(checked == n * (n - 3) / 2);
  }
}

TEST_CASE("annulus arcs: mutation-reachable variables match matching expansions") {
  struct Job {
    int p, q, bound, depth;
  };
  for (Job job : {Job{1, 1, 3, 5}, Job{2, 2, 4, 6}}) {
    scl::AnnulusModel ann(job.p, job.q);
    const scl::Triangulation& T = ann.T();
    const int n = T.num_arcs();
    auto ctx = pctx(n);
    std::map<scl::GVector, scl::Laurent> vars;
    collect_variables(principal_seed(T), job.depth, -1, vars);

    int matched = 0;
    for (const auto& e : ann.catalog(job.bound, false)) {
      if (e.word.closed) continue;
      auto r = scl::expand_arc(T, ctx, e.word);
      auto it = vars.find(r.g);
      REQUIRE(it != vars.end());
      REQUIRE(it->second == r.laurent);
      ++matched;
    }
    REQUIRE(matched >= (job.p == 1 ? 6 : 10));
  }
}

TEST_CASE("separation formula: principal and coefficient-free specializations") {
  scl::PolygonModel sq(4), pent(5);
  auto c1 = pctx(1);

  auto rsq = scl::expand_arc(sq.T(), c1, sq.chord_word(2, 4));
  scl::IntMat Bp = scl::extend_principal(sq.T().signed_adjacency());
  for (auto mode : {scl::SeparationMode::y_substitution, scl::SeparationMode::f_hat})
    REQUIRE(scl::separation_specialize(rsq.laurent, rsq.f_poly, rsq.g, Bp, mode,
                                       c1) == rsq.laurent);

  auto c2 = pctx(2);
  auto r25 = scl::expand_arc(pent.T(), c2, pent.chord_word(2, 5));
  scl::IntMat Bp2 = scl::extend_principal(pent.T().signed_adjacency());
  for (auto mode : {scl::SeparationMode::y_substitution, scl::SeparationMode::f_hat})
    REQUIRE(scl::separation_specialize(r25.laurent, r25.f_poly, r25.g, Bp2, mode,
                                       c2) == r25.laurent);

  // coefficient-free: empty bottom block, every y sent to one
  auto free2 = scl::VarContext::make({"x1", "x2"}, 2);
  scl::IntMat B2 = pent.T().signed_adjacency();
  scl::Laurent want = mono(free2, {0, -1}) + mono(free2, {-1, -1}) +
                      mono(free2, {-1, 0});
  for (auto mode : {scl::SeparationMode::y_substitution, scl::SeparationMode::f_hat})
    REQUIRE(scl::separation_specialize(r25.laurent, r25.f_poly, r25.g, B2, mode,
                                       free2) == want);

  // rank-deficient coefficient pattern is refused
  scl::IntMat Bbad(2, 1);
  REQUIRE_THROWS_AS(
      scl::separation_specialize(rsq.laurent, rsq.f_poly, rsq.g, Bbad,
                                 scl::SeparationMode::y_substitution, c1),
      scl::Error);
}

TEST_CASE("separation formula: random full-rank coefficient pattern") {
  scl::AnnulusModel ann(1, 1);
  const scl::Triangulation& T = ann.T();
  auto ctx = pctx(2);
  auto target = scl::VarContext::make({"x1", "x2", "u1", "u2"}, 2);

  std::mt19937 rng(4415u);
  scl::IntMat Bf(4, 2);
  scl::IntMat B = T.signed_adjacency();
  do {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Bf.at(i, j) = B.at(i, j);
        Bf.at(2 + i, j) = static_cast<int>(rng() % 7) - 3;
      }
  } while (scl::exact_rank(Bf) != 2);

  int checked = 0;
  for (const auto& e : ann.catalog(3, false)) {
    if (e.word.closed) continue;
    auto r = scl::expand_arc(T, ctx, e.word);
    scl::Laurent a = scl::separation_specialize(
        r.laurent, r.f_poly, r.g, Bf, scl::SeparationMode::y_substitution, target);
    scl::Laurent b = scl::separation_specialize(
        r.laurent, r.f_poly, r.g, Bf, scl::SeparationMode::f_hat, target);
    REQUIRE(a == b);
    ++checked;
  }
  REQUIRE(checked >= 6);
}

TEST_CASE("leading-term certificates") {
  auto c2 = pctx(2);
  scl::PolygonModel pent(5);
  scl::IntMat Bt = scl::extend_principal(pent.T().signed_adjacency());

  auto rep = scl::assert_distinct_leading_terms(
      {scl::Laurent::variable(c2, 0), scl::Laurent::variable(c2, 1)}, Bt);
  REQUIRE(rep.ok);
  REQUIRE(rep.leaders[0] == scl::Expo{1, 0, 0, 0});
  REQUIRE(rep.leaders[1] == scl::Expo{0, 1, 0, 0});

  auto c1 = pctx(1);
  scl::PolygonModel sq(4);
  scl::IntMat Bsq = scl::extend_principal(sq.T().signed_adjacency());
  auto rep2 = scl::assert_distinct_leading_terms(
      {mono(c1, {-1, 0}) + mono(c1, {-1, 1})}, Bsq);
  REQUIRE(rep2.ok);
  REQUIRE(rep2.leaders[0] == scl::Expo{-1, 0});

  auto dup = scl::assert_distinct_leading_terms(
      {scl::Laurent::variable(c2, 0), scl::Laurent::variable(c2, 0)}, Bt);
  REQUIRE_FALSE(dup.ok);
  REQUIRE(dup.failures.size() == 1);

  auto negoff = scl::assert_distinct_leading_terms(
      {mono(c1, {0, 0}) + mono(c1, {0, -1})}, Bsq);
  REQUIRE_FALSE(negoff.ok);

  auto twofree = scl::assert_distinct_leading_terms(
      {scl::Laurent::variable(c2, 0) + scl::Laurent::variable(c2, 1)}, Bt);
  REQUIRE_FALSE(twofree.ok);
}
