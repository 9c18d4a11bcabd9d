#pragma once

// Chebyshev-style recurrence for bracelets, compatible collections of arcs
// and loops at small complexity, and the verification suites built on top:
// flip relations, the bracelet identity, good-matching counts, and
// distinctness of g-vectors and leading terms.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scl/cluster.hpp"
#include "scl/expansion.hpp"
#include "scl/families.hpp"

namespace scl {

// Coefficients of the normalized Chebyshev polynomial T_k, stored against the
// monomials x^(k-2i) * Y^i. T_0 = 2, T_1 = x, T_k = x*T_{k-1} - Y*T_{k-2};
// the normalization is the one that makes T_k(t + Y/t) = t^k + Y^k/t^k hold
// on the nose.
struct ChebPoly {
  int k = 0;
  std::vector<BigInt> coeff;  // coeff[i] on x^(k-2i) * Y^i

  // Substitute x := xv, Y := yv. Every x-exponent k-2i is nonnegative, so any
  // Laurent arguments are allowed.
  Laurent evaluate(const Laurent& xv, const Laurent& yv) const {
    Laurent out(xv.context());
    for (int i = 0; i < static_cast<int>(coeff.size()); ++i) {
      if (coeff[i] == 0) continue;
      out = out + (xv.pow(k - 2 * i) * yv.pow(i)).scaled(coeff[i]);
    }
    return out;
  }

  std::string str() const {
    std::string s;
    for (int i = 0; i < static_cast<int>(coeff.size()); ++i) {
      if (coeff[i] == 0) continue;
      bool neg = coeff[i] < 0;
      BigInt mag = neg ? BigInt(-coeff[i]) : coeff[i];
      int xe = k - 2 * i;
      std::string mono;
      if (xe > 0) mono = xe == 1 ? "x" : "x^" + std::to_string(xe);
      if (i > 0) {
        if (!mono.empty()) mono += "*";
        mono += i == 1 ? "Y" : "Y^" + std::to_string(i);
      }
      if (s.empty()) {
        if (neg) s += "-";
      } else {
        s += neg ? " - " : " + ";
      }
      if (mag != 1 || mono.empty()) {
        s += mag.str();
        if (!mono.empty()) s += "*";
      }
      s += mono;
    }
    return s.empty() ? "0" : s;
  }
};

inline ChebPoly chebyshev_T(int k) {
  if (k < 0) throw Error("bad_exponent", "chebyshev_T wants k >= 0");
  ChebPoly prev{0, {BigInt(2)}};
  if (k == 0) return prev;
  ChebPoly cur{1, {BigInt(1)}};
  for (int j = 2; j <= k; ++j) {
    ChebPoly next;
    next.k = j;
    next.coeff.assign(j / 2 + 1, BigInt(0));
    for (int i = 0; i <= j / 2; ++i) {
      if (i < static_cast<int>(cur.coeff.size())) next.coeff[i] += cur.coeff[i];
      if (i >= 1 && i - 1 < static_cast<int>(prev.coeff.size()))
        next.coeff[i] -= prev.coeff[i - 1];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// The identity that pins the normalization: substituting x = t + Y/t must
// give exactly t^k + Y^k/t^k. Checked in a fresh two-variable context.
inline bool chebyshev_identity_holds(const ChebPoly& p) {
  auto ctx = VarContext::make({"t", "Y"}, 2);
  Laurent arg = Laurent::monomial(ctx, {1, 0}) + Laurent::monomial(ctx, {-1, 1});
  Laurent got = p.evaluate(arg, Laurent::monomial(ctx, {0, 1}));
  Laurent want = p.k == 0 ? Laurent::constant(ctx, 2)
                          : Laurent::monomial(ctx, {p.k, 0}) +
                                Laurent::monomial(ctx, {-p.k, p.k});
  return got == want;
}

inline BigInt binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  BigInt v = 1;
  for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return v;
}

// x^k rewritten as a combination sum_i c_i * Y^(y_power_i) * T_(index_i)
// with every c_i a positive integer.
struct ChebTerm {
  int index;
  int y_power;
  BigInt coeff;
};

struct ChebCombination {
  int k = 0;
  std::vector<ChebTerm> terms;

  // Substitute the actual polynomials back in; slot 0 of the context plays x
  // and slot 1 plays Y. Must reproduce x^k exactly.
  Laurent resubstituted(const VarContextPtr& ctx) const {
    Laurent x = Laurent::monomial(ctx, {1, 0});
    Laurent y = Laurent::monomial(ctx, {0, 1});
    Laurent out(ctx);
    for (const auto& t : terms)
      out = out + (chebyshev_T(t.index).evaluate(x, y) * y.pow(t.y_power))
                      .scaled(t.coeff);
    return out;
  }

  std::string str() const {
    std::string s;
    for (const auto& t : terms) {
      if (!s.empty()) s += " + ";
      BigInt c = t.coeff;
      std::string mono;
      if (t.y_power > 0) mono = t.y_power == 1 ? "Y" : "Y^" + std::to_string(t.y_power);
      if (t.index > 0) {
        if (!mono.empty()) mono += "*";
        mono += "T_" + std::to_string(t.index);
      } else {
        c *= 2;  // T_0 = 2 folded into the constant
      }
      if (c != 1 || mono.empty()) {
        s += c.str();
        if (!mono.empty()) s += "*";
      }
      s += mono;
    }
    return s;
  }
};

// Binomial expansion of x^k = ((t + Y/t) restricted back): odd k uses
// C(k,i) Y^i T_{k-2i} for 2i < k; even k adds the central term, whose T_0
// absorbs the halved central binomial coefficient.
inline ChebCombination monomial_to_chebyshev(int k) {
  if (k < 1) throw Error("bad_exponent", "monomial_to_chebyshev wants k >= 1");
  ChebCombination out;
  out.k = k;
  for (int i = 0; 2 * i < k; ++i) out.terms.push_back({k - 2 * i, i, binomial(k, i)});
  if (k % 2 == 0) out.terms.push_back({0, k / 2, binomial(k, k / 2) / 2});
  return out;
}

// k-fold concatenation of a closed word, canonicalized. The self-crossings a
// bracelet picks up are genuine crossings, not kinks, so callers pass no kink
// count for these words.
inline CurveWord bracelet_word(const CurveWord& w, int k) {
  if (!w.closed) throw Error("bad_curve", "bracelets come from closed words");
  if (k < 1) throw Error("bad_exponent", "bracelet_word wants k >= 1");
  CurveWord out;
  out.closed = true;
  for (int j = 0; j < k; ++j)
    out.crossings.insert(out.crossings.end(), w.crossings.begin(), w.crossings.end());
  return canonical_word(out);
}

// Outcome of one verification instance, shaped like the CLI report rows:
// which check ran, on what, whether it passed, and either the certified data
// or the offending detail.
struct CheckReport {
  std::string check;
  std::string instance;
  bool ok = false;
  std::string witness;
};

// The k-th bracelet's expansion must equal T_k of the underlying loop's
// expansion, with Y sent to the product of one y per crossed arc (counted
// with multiplicity). Both sides are computed independently: the left by
// enumerating good matchings of the k-fold band, the right by the recurrence.
inline CheckReport verify_bracelet_chebyshev(const Triangulation& T,
                                             const VarContextPtr& ctx,
                                             const CurveWord& loop, int k) {
  require_principal(T, ctx);
  CheckReport rep;
  rep.check = "bracelet-chebyshev";
  rep.instance = loop.str(T) + " k=" + std::to_string(k);
  ExpansionResult base = expand_loop(T, ctx, loop);
  ExpansionResult brac = expand_loop(T, ctx, bracelet_word(loop, k));
  Expo ye(ctx->size(), 0);
  for (int a : loop.crossings) ye[T.num_arcs() + a] += 1;
  Laurent rhs = chebyshev_T(k).evaluate(base.laurent, Laurent::monomial(ctx, ye));
  if (brac.laurent == rhs) {
    rep.ok = true;
    rep.witness = "exact equality, " + std::to_string(brac.laurent.terms().size()) + " terms";
  } else {
    rep.witness = "band expansion disagrees with the Chebyshev substitution";
  }
  return rep;
}

// Good-matching counts of the iterated bands satisfy the bracelet relation
// with every variable set to 1:  G_{j+1} = G_1 * G_j - G_{j-1},  and the
// product strictly exceeds G_{j+1}. The j = 0 seed is 2, the constant T_0,
// which is what makes the j = 1 step line up.
inline CheckReport verify_good_count_inequality(const Triangulation& T,
                                                const CurveWord& loop, int k) {
  if (k < 1) throw Error("bad_exponent", "verify_good_count_inequality wants k >= 1");
  CheckReport rep;
  rep.check = "good-counts";
  rep.instance = loop.str(T) + " k=" + std::to_string(k);
  std::vector<long long> good = {2};
  for (int j = 1; j <= k + 1; ++j) {
    BandGraph B(T, bracelet_word(loop, j));
    good.push_back(static_cast<long long>(B.good_matchings().size()));
  }
  std::string cs;
  for (long long g : good) {
    if (!cs.empty()) cs += ",";
    cs += std::to_string(g);
  }
  for (int j = 1; j <= k; ++j) {
    if (good[j + 1] != good[1] * good[j] - good[j - 1]) {
      rep.witness = "recurrence fails at step " + std::to_string(j) + "; counts " + cs;
      return rep;
    }
    if (good[j + 1] >= good[1] * good[j]) {
      rep.witness = "no strict drop at step " + std::to_string(j) + "; counts " + cs;
      return rep;
    }
  }
  rep.ok = true;
  rep.witness = "counts " + cs + " (seed 2 by the T_0 convention)";
  return rep;
}

// Flip relation around one arc: with eta the arc and theta the other diagonal
// of its quadrilateral, x_eta * x_theta = Y * (one pair of opposite sides)
// + Y' * (the other pair) for monomials Y, Y' in the y-variables, exactly one
// of which is 1. Sides on the boundary contribute weight 1.
struct PtolemyReport {
  std::string check = "ptolemy";
  std::string instance;
  bool ok = false;
  std::string witness;
  std::array<int, 4> quad{};  // cyclic side order; opposite pairs (0,2), (1,3)
  Laurent Y, Yprime;

  explicit PtolemyReport(const VarContextPtr& ctx) : Y(ctx), Yprime(ctx) {}
};

inline PtolemyReport verify_ptolemy(const Triangulation& T, const VarContextPtr& ctx,
                                    int arc) {
  require_principal(T, ctx);
  PtolemyReport rep(ctx);
  rep.instance = "flip " + T.edge_name(arc);
  auto fl = T.flip(arc);
  rep.quad = fl.quadrilateral;

  CurveWord w;
  w.crossings = {arc};
  Laurent lhs = Laurent::variable(ctx, arc) * expand_arc(T, ctx, w).laurent;
  if (lhs.terms().size() != 2)
    throw Error("ptolemy_failure", "flip product is not a two-term relation");

  auto side = [&](int e) {
    return T.is_arc(e) ? Laurent::variable(ctx, e) : Laurent::constant(ctx, 1);
  };
  Laurent pairA = side(rep.quad[0]) * side(rep.quad[2]);
  Laurent pairB = side(rep.quad[1]) * side(rep.quad[3]);

  // Quotient of one relation term by one side pair, accepted only when it is
  // a clean monomial in the y-variables.
  auto y_quotient = [&](const std::pair<const Expo, BigInt>& term,
                        const Laurent& prod) -> std::optional<Laurent> {
    if (term.second != 1) return std::nullopt;
    const Expo& pe = prod.terms().begin()->first;
    Expo q(term.first.size());
    for (size_t i = 0; i < q.size(); ++i) q[i] = term.first[i] - pe[i];
    for (int i = 0; i < T.num_arcs(); ++i)
      if (q[i] != 0) return std::nullopt;
    for (size_t i = T.num_arcs(); i < q.size(); ++i)
      if (q[i] < 0) return std::nullopt;
    return Laurent::monomial(ctx, q);
  };

  auto t1 = lhs.terms().begin();
  auto t2 = std::next(t1);
  auto y_a1 = y_quotient(*t1, pairA), y_b2 = y_quotient(*t2, pairB);
  auto y_a2 = y_quotient(*t2, pairA), y_b1 = y_quotient(*t1, pairB);
  bool p1 = y_a1 && y_b2;
  bool p2 = y_a2 && y_b1;
  if (!p1 && !p2)
    throw Error("ptolemy_failure", "no exact monomial coefficients for the flip relation");
  if (p1 && p2 && !(pairA == pairB)) {
    rep.witness = "two distinct coefficient solutions";
    return rep;
  }
  // With both pairings valid the side pairs coincide and the two orderings
  // describe the same decomposition; the grlex-leading term takes the Y slot.
  rep.Y = p1 ? *y_a1 : *y_a2;
  rep.Yprime = p1 ? *y_b2 : *y_b1;

  Laurent one = Laurent::constant(ctx, 1);
  bool yfree = rep.Y == one, zfree = rep.Yprime == one;
  if (yfree == zfree) {
    rep.witness = yfree ? "both coefficients are 1" : "neither coefficient is 1";
    return rep;
  }
  rep.ok = true;
  rep.witness = "Y = " + rep.Y.str() + ", Y' = " + rep.Yprime.str();
  return rep;
}

// An arc whose expansion carries g = -e_i certifies that the i-th initial
// variable inverts inside the span of arc expansions.
inline CheckReport verify_inverted_g(const Triangulation& T, const VarContextPtr& ctx,
                                     const CurveWord& w, int arc_index) {
  CheckReport rep;
  rep.check = "inverted-g";
  rep.instance = w.str(T) + " against " + T.edge_name(arc_index);
  ExpansionResult r = expand_arc(T, ctx, w);
  GVector want(T.num_arcs(), 0);
  want[arc_index] = -1;
  if (r.g == want) {
    rep.ok = true;
    rep.witness = "g = -e_" + std::to_string(arc_index + 1);
  } else {
    std::string gs;
    for (int v : r.g) gs += (gs.empty() ? "" : ",") + std::to_string(v);
    rep.witness = "g = (" + gs + ")";
  }
  return rep;
}

// The fan-triangulated hexagon has one such arc per initial diagonal: the
// chord from vertex 2 to vertex i+3 inverts the i-th one. Shipped as fixtures
// for the inversion checks.
inline std::vector<CurveWord> hexagon_inverting_chords() {
  PolygonModel P(6);
  return {P.chord_word(2, 4), P.chord_word(2, 5), P.chord_word(2, 6)};
}

enum class BasisVariant { bangles, bracelets };

// Caps for the collection search: the word length of any single curve, the
// total strand count of the collection, and the loop multiplicity (bangle
// copies or bracelet winding).
struct BasisBound {
  int max_word_len = 3;
  int max_total_mult = 2;
  int max_k = 2;
};

// One curve of a collection. For a bracelet part, mult is the winding.
struct CollectionPart {
  enum class Kind { arc, loop, bracelet };
  Kind kind = Kind::arc;
  CurveWord word;  // the underlying simple curve
  int mult = 1;
  std::string desc;
};

struct BasisElement {
  std::vector<CollectionPart> parts;
  Laurent value;
  GVector g;              // sum of the parts' g-vectors
  int pairs_checked = 0;  // crossing tests that certified compatibility
  std::string label;

  explicit BasisElement(const VarContextPtr& ctx) : value(ctx) {}
};

namespace detail {

struct PoolCurve {
  CurveWord word;
  bool loop = false;
  std::string desc;
};

// Pairwise-compatible multisets over the pool, total multiplicity capped.
// Products and g-vectors accumulate per part; the loop part follows the
// variant rule (powers for bangles, one wound bracelet otherwise).
inline std::vector<BasisElement> collect_collections(
    const Triangulation& T, const VarContextPtr& ctx,
    const std::vector<PoolCurve>& pool,
    const std::function<bool(int, int)>& compatible, const BasisBound& bound,
    BasisVariant variant) {
  require_principal(T, ctx);
  std::vector<BasisElement> out;
  std::vector<std::pair<int, int>> chosen;  // (pool index, multiplicity)

  auto emit = [&]() {
    BasisElement el(ctx);
    el.value = Laurent::constant(ctx, 1);
    el.g.assign(T.num_arcs(), 0);
    for (const auto& [pi, m] : chosen) {
      const PoolCurve& pc = pool[pi];
      CollectionPart part;
      part.word = pc.word;
      part.mult = m;
      if (pc.loop && variant == BasisVariant::bracelets) {
        part.kind = CollectionPart::Kind::bracelet;
        part.desc = "brac" + std::to_string(m) + "(" + pc.desc + ")";
        ExpansionResult r = expand_loop(T, ctx, bracelet_word(pc.word, m));
        el.value = el.value * r.laurent;
        for (int i = 0; i < T.num_arcs(); ++i) el.g[i] += r.g[i];
      } else {
        part.kind = pc.loop ? CollectionPart::Kind::loop : CollectionPart::Kind::arc;
        part.desc = pc.desc + (m > 1 ? "^" + std::to_string(m) : "");
        ExpansionResult r = pc.loop ? expand_loop(T, ctx, pc.word)
                                    : expand_arc(T, ctx, pc.word);
        el.value = el.value * r.laurent.pow(m);
        for (int i = 0; i < T.num_arcs(); ++i) el.g[i] += m * r.g[i];
      }
      el.label += (el.label.empty() ? "" : " ") + part.desc;
      el.parts.push_back(std::move(part));
    }
    int c = static_cast<int>(chosen.size());
    el.pairs_checked = c * (c - 1) / 2;
    if (el.label.empty()) el.label = "1";
    out.push_back(std::move(el));
  };

  std::function<void(int, int)> rec = [&](int from, int budget) {
    for (int j = from; j < static_cast<int>(pool.size()); ++j) {
      bool ok = true;
      for (const auto& [pi, m] : chosen)
        if (!compatible(pi, j)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      int cap = pool[j].loop ? std::min(budget, bound.max_k) : budget;
      for (int m = 1; m <= cap; ++m) {
        chosen.emplace_back(j, m);
        emit();
        rec(j + 1, budget - m);
        chosen.pop_back();
      }
    }
  };

  emit();  // the empty collection: constant 1, g = 0
  rec(0, bound.max_total_mult);
  return out;
}

}  // namespace detail

inline std::vector<BasisElement> enumerate_basis_elements(const PolygonModel& P,
                                                          const VarContextPtr& ctx,
                                                          const BasisBound& bound,
                                                          BasisVariant variant) {
  auto cat = P.catalog(bound.max_word_len);
  std::vector<detail::PoolCurve> pool;
  for (const auto& e : cat) pool.push_back({e.word, false, e.desc});
  auto compatible = [cat, &P](int i, int j) { return P.compatible(cat[i], cat[j]); };
  return detail::collect_collections(P.T(), ctx, pool, compatible, bound, variant);
}

inline std::vector<BasisElement> enumerate_basis_elements(const AnnulusModel& A,
                                                          const VarContextPtr& ctx,
                                                          const BasisBound& bound,
                                                          BasisVariant variant) {
  auto cat = A.catalog(bound.max_word_len, false);
  auto loop = A.core_loop();
  if (loop.word.length() <= bound.max_word_len) cat.push_back(loop);
  std::vector<detail::PoolCurve> pool;
  for (const auto& e : cat) pool.push_back({e.word, e.loop, e.desc});
  auto compatible = [cat, &A](int i, int j) { return A.crossings(cat[i], cat[j]) == 0; };
  return detail::collect_collections(A.T(), ctx, pool, compatible, bound, variant);
}

// Distinctness certificate: all g-vectors pairwise distinct, every value's
// sole coefficient-free term sits at its g, and the leading terms stay
// distinct after clearing denominators (linear independence evidence).
inline CheckReport verify_g_injectivity(const std::vector<BasisElement>& elements,
                                        const IntMat& Bt) {
  CheckReport rep;
  rep.check = "g-injectivity";
  rep.instance = std::to_string(elements.size()) + " elements";
  std::map<GVector, std::string> seen;
  for (const auto& el : elements) {
    auto [it, fresh] = seen.emplace(el.g, el.label);
    if (!fresh) {
      rep.witness = "g collision between " + it->second + " and " + el.label;
      return rep;
    }
  }
  const int n = static_cast<int>(elements.empty() ? 0 : elements.front().g.size());
  std::vector<Laurent> values;
  values.reserve(elements.size());
  for (const auto& el : elements) values.push_back(el.value);
  LeadingReport lead = assert_distinct_leading_terms(values, Bt);
  if (!lead.ok) {
    std::string why;
    for (const auto& f : lead.failures) why += (why.empty() ? "" : "; ") + f;
    rep.witness = why;
    return rep;
  }
  for (size_t i = 0; i < elements.size(); ++i)
    for (int c = 0; c < n; ++c)
      if (lead.leaders[i][c] != elements[i].g[c]) {
        rep.witness = "leading term of " + elements[i].label +
                      " sits away from its summed g";
        return rep;
      }
  rep.ok = true;
  rep.witness = "all g-vectors distinct; leading terms independent";
  return rep;
}

}  // namespace scl
