#pragma once
// Labeled seeds and their mutations. A seed stores its cluster as exact
// Laurent expansions in the initial variables, so every exchange relation is
// computed by polynomial arithmetic and the division by the departing
// variable is checked for a remainder on the spot. Coefficients never live
// anywhere except the bottom rows of the extended matrix.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scl/laurent.hpp"
#include "scl/matrix.hpp"

namespace scl {

struct Seed {
  VarContextPtr ctx;             // n cluster slots, then m-n coefficient slots
  std::vector<Laurent> cluster;  // n expansions in the initial variables
  IntMat Bt;                     // m x n extended exchange matrix

  bool operator==(const Seed& o) const {
    if (Bt.rows() != o.Bt.rows() || Bt.cols() != o.Bt.cols()) return false;
    for (int i = 0; i < Bt.rows(); ++i)
      for (int j = 0; j < Bt.cols(); ++j)
        if (Bt.at(i, j) != o.Bt.at(i, j)) return false;
    return cluster == o.cluster;
  }
};

inline Seed initial_seed(VarContextPtr ctx, IntMat Bt) {
  const int n = ctx->n_cluster, m = ctx->size();
  if (Bt.rows() != m || Bt.cols() != n)
    throw Error("bad_seed", "matrix shape does not match the variable context");
  if (!Bt.top_square().is_skew_symmetric())
    throw Error("bad_seed", "exchange matrix top block is not skew-symmetric");
  Seed s{std::move(ctx), {}, std::move(Bt)};
  for (int i = 0; i < n; ++i) s.cluster.push_back(Laurent::variable(s.ctx, i));
  return s;
}

// One mutation step. The departing variable divides the two-term exchange
// binomial exactly or the seed was broken; either way we find out here.
inline Seed mutate_seed(const Seed& s, int k) {
  const int n = s.ctx->n_cluster, m = s.ctx->size();
  if (k < 0 || k >= n) throw Error("bad_direction", "mutation direction out of range");
  Laurent plus = Laurent::constant(s.ctx, BigInt(1));
  Laurent minus = plus;
  for (int i = 0; i < m; ++i) {
    int b = static_cast<int>(s.Bt.at(i, k));
    if (b == 0) continue;
    Laurent factor = i < n ? s.cluster[i] : Laurent::variable(s.ctx, i);
    if (b > 0)
      plus = plus * factor.pow(b);
    else
      minus = minus * factor.pow(-b);
  }
  Seed out{s.ctx, s.cluster, mutate_matrix(s.Bt, k)};
  out.cluster[k] = (plus + minus).exact_divided(s.cluster[k]);
  return out;
}

inline Laurent variable_by_mutation_path(const Seed& s0, const std::vector<int>& path,
                                         int slot) {
  Seed s = s0;
  for (int k : path) s = mutate_seed(s, k);
  if (slot < 0 || slot >= static_cast<int>(s.cluster.size()))
    throw Error("bad_direction", "cluster slot out of range");
  return s.cluster[slot];
}

enum class SeparationMode { y_substitution, f_hat };

// Transport a principal-coefficient expansion into the cluster algebra over
// an arbitrary full-rank coefficient pattern. Two published formulas compute
// the same element; we evaluate both and refuse to return if they differ.
inline Laurent separation_specialize(const Laurent& X, const Laurent& F,
                                     const GVector& g, const IntMat& B_full,
                                     SeparationMode mode,
                                     const VarContextPtr& target) {
  const int n = B_full.cols(), m = B_full.rows();
  const VarContextPtr& src = X.context();
  if (src->n_cluster != n || src->size() != 2 * n)
    throw Error("bad_context", "input expansion is not in principal form");
  if (!target || target->n_cluster != n || target->size() != m)
    throw Error("bad_context", "target context does not fit the matrix");
  if (exact_rank(B_full) != n)
    throw Error("rank_deficient", "coefficient pattern does not have full rank");
  if (static_cast<int>(g.size()) != n)
    throw Error("bad_expansion", "multidegree length mismatch");

  auto column_monomial = [&](int j, bool with_top) {
    Expo e(m, 0);
    for (int i = with_top ? 0 : n; i < m; ++i)
      e[i] = static_cast<int>(B_full.at(i, j));
    return Laurent::monomial(target, std::move(e));
  };

  std::vector<Laurent> y_only, y_hat, x_pass;
  for (int j = 0; j < n; ++j) {
    y_only.push_back(column_monomial(j, false));
    y_hat.push_back(column_monomial(j, true));
  }
  for (int i = 0; i < n; ++i) x_pass.push_back(Laurent::variable(target, i));
  Laurent one = Laurent::constant(target, BigInt(1));

  std::vector<Laurent> imgs_y = x_pass, imgs_hat, imgs_flat;
  imgs_y.insert(imgs_y.end(), y_only.begin(), y_only.end());
  for (int i = 0; i < n; ++i) imgs_hat.push_back(one);
  imgs_hat.insert(imgs_hat.end(), y_hat.begin(), y_hat.end());
  for (int i = 0; i < n; ++i) imgs_flat.push_back(one);
  imgs_flat.insert(imgs_flat.end(), y_only.begin(), y_only.end());

  Expo trop = F.substituted(imgs_flat).tropical_min().terms().begin()->first;

  Laurent via_y = X.substituted(imgs_y).divided_by_monomial(trop);

  Expo ge(m, 0);
  for (int i = 0; i < n; ++i) ge[i] = g[i];
  Laurent via_f =
      (F.substituted(imgs_hat) * Laurent::monomial(target, std::move(ge)))
          .divided_by_monomial(trop);

  if (via_y != via_f)
    throw Error("internal", "separation formulas disagree");
  return mode == SeparationMode::y_substitution ? via_y : via_f;
}

struct LeadingReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<Expo> leaders;
};

// Certificate that a list of expansions can be told apart by leading terms:
// each has a unique coefficient-free term, every other term sits at a
// non-negative rational combination of matrix columns away from it, and the
// leaders are pairwise distinct across the list.
inline LeadingReport assert_distinct_leading_terms(const std::vector<Laurent>& us,
                                                   const IntMat& Bt) {
  LeadingReport rep;
  const int m = Bt.rows(), n = Bt.cols();
  if (exact_rank(Bt) != n)
    throw Error("rank_deficient", "matrix columns are linearly dependent");

  for (size_t u = 0; u < us.size(); ++u) {
    auto tag = [&](const std::string& what) {
      rep.ok = false;
      rep.failures.push_back("entry " + std::to_string(u) + ": " + what);
    };
    auto sole = us[u].sole_coefficient_free_term();
    if (!sole) {
      tag("no unique coefficient-free term");
      rep.leaders.emplace_back();
      continue;
    }
    rep.leaders.push_back(sole->first);
    for (const auto& [e, c] : us[u].terms()) {
      if (e == sole->first) continue;
      std::vector<BigInt> off(m);
      for (int i = 0; i < m; ++i) off[i] = BigInt(e[i]) - BigInt(sole->first[i]);
      auto comb = solve_full_rank(Bt, off);
      if (!comb) {
        tag("a term offset leaves the column span");
        break;
      }
      bool neg = false;
      for (const auto& c2 : *comb) neg = neg || c2 < 0;
      if (neg) {
        tag("a term offset needs a negative column multiple");
        break;
      }
    }
  }
  for (size_t a = 0; a < rep.leaders.size(); ++a)
    for (size_t b = a + 1; b < rep.leaders.size(); ++b) {
      if (rep.leaders[a].empty() || rep.leaders[b].empty()) continue;
      bool same = true;
      for (int i = 0; i < n; ++i) same = same && rep.leaders[a][i] == rep.leaders[b][i];
      if (same) {
        rep.ok = false;
        rep.failures.push_back("entries " + std::to_string(a) + " and " +
                               std::to_string(b) + " share a leading term");
      }
    }
  return rep;
}

}  // namespace scl
