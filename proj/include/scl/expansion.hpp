#pragma once
// Laurent expansions of curves. Every perfect matching of the snake graph
// contributes the product of its edge weights (interior arcs become cluster
// variables, boundary segments weigh 1) times the height monomial of its
// distance from the minimal matching; the sum divides exactly by the crossing
// monomial. Closed curves sum over the good matchings of the band graph and
// shed one copy of the cut-side weight. F-polynomials and g-vectors are read
// off the result.

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "scl/laurent.hpp"
#include "scl/matrix.hpp"
#include "scl/snake.hpp"

namespace scl {

struct ExpansionResult {
  Laurent laurent;  // in x1..xn, y1..yn
  Laurent f_poly;   // the same with every x set to one
  GVector g;        // exponent of the unique coefficient-free term
  std::string surface_digest;
  CurveWord word;
  int kinks = 0;
};

inline void require_principal(const Triangulation& T, const VarContextPtr& ctx) {
  if (!ctx || ctx->n_cluster != T.num_arcs() || ctx->size() != 2 * T.num_arcs())
    throw Error("bad_context", "expansions live in the surface's principal context");
}

inline Laurent crossing_monomial(const Triangulation& T, const VarContextPtr& ctx,
                                 const CurveWord& w) {
  require_principal(T, ctx);
  Expo e(ctx->size(), 0);
  for (int a : w.crossings) {
    if (!T.is_arc(a))
      throw Error("bad_curve", "crossings must be interior arcs");
    e[a] += 1;
  }
  return Laurent::monomial(ctx, std::move(e));
}

// One matching's term: edge weights times the height monomial.
inline Laurent matching_term(const Triangulation& T, const VarContextPtr& ctx,
                             const SnakeGraph& g, uint64_t pmin, uint64_t m) {
  const int n = T.num_arcs();
  Expo e(2 * n, 0);
  for (int ed = 0; ed < g.num_edges(); ++ed)
    if ((m >> ed) & 1) {
      int l = g.edge(ed).label;
      if (T.is_arc(l)) e[l] += 1;
    }
  uint64_t h = g.height_set_from(pmin, m);
  for (int j = 0; j < g.tiles(); ++j)
    if ((h >> j) & 1) e[n + g.tile(j).diagonal] += 1;
  return Laurent::monomial(ctx, std::move(e));
}

inline Laurent snake_matching_sum(const Triangulation& T, const VarContextPtr& ctx,
                                  const SnakeGraph& g) {
  Laurent sum(ctx);
  uint64_t pmin = g.minimal_matching();
  for (uint64_t m : g.all_matchings())
    sum = sum + matching_term(T, ctx, g, pmin, m);
  return sum;
}

// Good-matching sum of a band graph; the identified cut edge appears in the
// weights once, not twice, so one copy of its weight divides out.
inline Laurent loop_matching_sum(const Triangulation& T, const VarContextPtr& ctx,
                                 const BandGraph& b) {
  const SnakeGraph& g = b.lift();
  Laurent sum(ctx);
  uint64_t pmin = g.minimal_matching();
  for (uint64_t m : b.good_matchings())
    sum = sum + matching_term(T, ctx, g, pmin, m);
  if (T.is_arc(b.cut_label())) {
    Expo e(ctx->size(), 0);
    e[b.cut_label()] = 1;
    sum = sum.divided_by_monomial(e);
  }
  return sum;
}

inline Laurent coefficient_specialization(const Laurent& p) {
  const VarContextPtr& ctx = p.context();
  std::vector<Laurent> images;
  for (int i = 0; i < ctx->size(); ++i)
    images.push_back(i < ctx->n_cluster ? Laurent::constant(ctx, BigInt(1))
                                        : Laurent::variable(ctx, i));
  return p.substituted(images);
}

inline GVector leading_exponent(const Laurent& p) {
  auto sole = p.sole_coefficient_free_term();
  if (!sole)
    throw Error("bad_expansion", "expected exactly one coefficient-free term");
  const int n = p.context()->n_cluster;
  GVector g(n);
  for (int i = 0; i < n; ++i) g[i] = sole->first[i];
  return g;
}

inline std::map<std::tuple<std::string, std::string, int>, ExpansionResult>&
expansion_cache() {
  static std::map<std::tuple<std::string, std::string, int>, ExpansionResult> c;
  return c;
}
inline std::mutex& expansion_cache_mutex() {
  static std::mutex m;
  return m;
}

inline std::string word_cache_key(const CurveWord& w) {
  std::string s = w.closed ? "loop" : "arc";
  for (int c : w.crossings) s += ":" + std::to_string(c);
  if (w.base_arc) s += ":base" + std::to_string(*w.base_arc);
  return s;
}

// Laurent expansion of an open curve. A zero-crossing word stands for an arc
// of T itself (x variable) or a boundary segment (1); a curve known to cut
// off a contractible monogon is zero by convention, flagged by the caller.
inline ExpansionResult expand_arc(const Triangulation& T, const VarContextPtr& ctx,
                                  const CurveWord& w, int kinks = 0,
                                  bool contractible_monogon = false) {
  require_principal(T, ctx);
  if (w.closed) throw Error("bad_curve", "expand_arc takes open words");
  if (kinks < 0) throw Error("bad_curve", "kink count cannot be negative");
  if (contractible_monogon)
    return {Laurent(ctx), Laurent(ctx), GVector{}, T.digest(), w, kinks};
  validate_word(T, w);
  CurveWord cw = canonical_word(w);

  auto key = std::make_tuple(T.digest(), word_cache_key(cw), kinks);
  {
    std::lock_guard<std::mutex> lock(expansion_cache_mutex());
    auto it = expansion_cache().find(key);
    if (it != expansion_cache().end()) return it->second;
  }

  Laurent lau(ctx);
  if (cw.length() == 0) {
    if (!cw.base_arc)
      throw Error("bad_curve", "zero-crossing word without its underlying edge");
    lau = T.is_arc(*cw.base_arc) ? Laurent::variable(ctx, *cw.base_arc)
                                 : Laurent::constant(ctx, BigInt(1));
  } else {
    SnakeGraph g(T, cw);
    Laurent num = snake_matching_sum(T, ctx, g);
    Expo cross(ctx->size(), 0);
    for (int a : cw.crossings) cross[a] += 1;
    lau = num.divided_by_monomial(cross);
  }
  if (kinks % 2) lau = lau.neg();

  auto common = is_g_homogeneous(lau, T.signed_adjacency());
  if (!common)
    throw Error("internal", "arc expansion is not homogeneous");
  GVector g = leading_exponent(lau);
  if (g != *common)
    throw Error("internal", "leading term disagrees with the common multidegree");

  ExpansionResult r{lau, coefficient_specialization(lau), std::move(g),
                    T.digest(), cw, kinks};
  std::lock_guard<std::mutex> lock(expansion_cache_mutex());
  expansion_cache().emplace(key, r);
  return r;
}

// Laurent expansion of a closed curve; a contractible loop is the constant -2.
inline ExpansionResult expand_loop(const Triangulation& T, const VarContextPtr& ctx,
                                   const CurveWord& w, int kinks = 0,
                                   bool contractible = false) {
  require_principal(T, ctx);
  if (contractible) {
    Laurent c = Laurent::constant(ctx, BigInt(-2));
    return {c, c, GVector(T.num_arcs(), 0), T.digest(), w, kinks};
  }
  if (!w.closed) throw Error("bad_curve", "expand_loop takes closed words");
  if (kinks < 0) throw Error("bad_curve", "kink count cannot be negative");
  validate_word(T, w);
  CurveWord cw = canonical_word(w);

  auto key = std::make_tuple(T.digest(), word_cache_key(cw), kinks);
  {
    std::lock_guard<std::mutex> lock(expansion_cache_mutex());
    auto it = expansion_cache().find(key);
    if (it != expansion_cache().end()) return it->second;
  }

  BandGraph b(T, cw);
  Laurent num = loop_matching_sum(T, ctx, b);
  Expo cross(ctx->size(), 0);
  for (int a : cw.crossings) cross[a] += 1;
  Laurent lau = num.divided_by_monomial(cross);
  if (kinks % 2) lau = lau.neg();

  auto common = is_g_homogeneous(lau, T.signed_adjacency());
  if (!common)
    throw Error("internal", "loop expansion is not homogeneous");
  GVector g = leading_exponent(lau);
  if (g != *common)
    throw Error("internal", "leading term disagrees with the common multidegree");

  ExpansionResult r{lau, coefficient_specialization(lau), std::move(g),
                    T.digest(), cw, kinks};
  std::lock_guard<std::mutex> lock(expansion_cache_mutex());
  expansion_cache().emplace(key, r);
  return r;
}

// The coefficient specialization, with the arc normalization checked: an
// unkinked curve's value at the initial cluster starts at 1.
inline Laurent f_polynomial(const ExpansionResult& r) {
  if (!r.laurent.is_zero() && r.kinks % 2 == 0) {
    Expo zero(r.laurent.context()->size(), 0);
    auto it = r.f_poly.terms().find(zero);
    if (r.laurent == Laurent::constant(r.laurent.context(), BigInt(-2))) {
      // contractible loop, nothing to normalize
    } else if (it == r.f_poly.terms().end() || it->second != BigInt(1)) {
      throw Error("bad_expansion", "coefficient specialization lost its unit term");
    }
  }
  return r.f_poly;
}

inline GVector g_vector(const ExpansionResult& r, const IntMat& B) {
  if (r.laurent.is_zero())
    throw Error("bad_expansion", "the zero expansion has no multidegree");
  auto common = is_g_homogeneous(r.laurent, B);
  if (!common || *common != r.g)
    throw Error("bad_expansion", "expansion is not homogeneous of its own degree");
  return r.g;
}

struct OffsetReport {
  bool ok = true;
  std::string detail;
};

// Every non-leading exponent, measured from the coefficient-free term, must
// be a non-negative integer combination of the columns of the extended
// exchange matrix. With principal coefficients the combination is forced by
// the coefficient rows; otherwise an exact solve finds it.
inline OffsetReport verify_offsets(const Laurent& p, const IntMat& Btilde) {
  OffsetReport rep;
  const int m = Btilde.rows(), n = Btilde.cols();
  auto sole = p.sole_coefficient_free_term();
  if (!sole) {
    rep.ok = false;
    rep.detail = "no unique coefficient-free term";
    return rep;
  }
  if (static_cast<int>(sole->first.size()) != m)
    throw Error("bad_matrix", "exponent length does not match the matrix rows");

  bool principal = (m == 2 * n);
  for (int i = 0; i < n && principal; ++i)
    for (int j = 0; j < n; ++j)
      if (Btilde.at(n + i, j) != BigInt(i == j ? 1 : 0)) {
        principal = false;
        break;
      }

  for (const auto& [e, c] : p.terms()) {
    if (e == sole->first) continue;
    std::vector<BigInt> off(m);
    for (int i = 0; i < m; ++i) off[i] = BigInt(e[i]) - BigInt(sole->first[i]);
    std::vector<BigRat> comb;
    if (principal) {
      comb.reserve(n);
      for (int j = 0; j < n; ++j) comb.emplace_back(off[n + j]);
    } else {
      auto sol = solve_full_rank(Btilde, off);
      if (!sol) {
        rep.ok = false;
        rep.detail = "offset outside the column span";
        return rep;
      }
      comb = std::move(*sol);
    }
    for (int j = 0; j < n; ++j) {
      if (denominator(comb[j]) != 1 || comb[j] < 0) {
        rep.ok = false;
        rep.detail = "offset needs a negative or fractional column multiple";
        return rep;
      }
    }
    // confirm the combination reproduces the offset exactly
    for (int i = 0; i < m; ++i) {
      BigRat acc(0);
      for (int j = 0; j < n; ++j) acc += BigRat(Btilde.at(i, j)) * comb[j];
      if (acc != BigRat(off[i])) {
        rep.ok = false;
        rep.detail = "column combination misses the offset";
        return rep;
      }
    }
  }
  return rep;
}

inline OffsetReport verify_offsets(const ExpansionResult& r, const IntMat& Btilde) {
  return verify_offsets(r.laurent, Btilde);
}

}  // namespace scl
