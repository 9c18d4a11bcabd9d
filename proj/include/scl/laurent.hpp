#pragma once
// Exact multivariate Laurent polynomials over arbitrary-precision integers.
// Terms live in a fixed variable context (x1..xn cluster variables followed by
// coefficient variables); the term map is kept in descending graded-lex order
// so that iteration order, serialization and leading-term logic all agree.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace scl {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Error with a stable machine-readable code; the CLI maps these to exit 2.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct VarContext;
using VarContextPtr = std::shared_ptr<const VarContext>;

struct VarContext {
  std::vector<std::string> names;  // size m; the first n_cluster are cluster vars
  int n_cluster = 0;

  int size() const { return static_cast<int>(names.size()); }

  static VarContextPtr make(std::vector<std::string> names, int n_cluster) {
    if (n_cluster < 0 || n_cluster > static_cast<int>(names.size()))
      throw Error("bad_context", "cluster variable count out of range");
    auto ctx = std::make_shared<VarContext>();
    ctx->names = std::move(names);
    ctx->n_cluster = n_cluster;
    return ctx;
  }

  // x1..xn, y1..yn: the principal-coefficient context of rank n.
  static VarContextPtr principal(int n) {
    std::vector<std::string> nm;
    for (int i = 1; i <= n; ++i) nm.push_back("x" + std::to_string(i));
    for (int i = 1; i <= n; ++i) nm.push_back("y" + std::to_string(i));
    return make(std::move(nm), n);
  }

  bool same(const VarContext& o) const {
    return n_cluster == o.n_cluster && names == o.names;
  }
};

inline bool same_context(const VarContextPtr& a, const VarContextPtr& b) {
  return a == b || (a && b && a->same(*b));
}

using Expo = std::vector<int>;

// Graded lexicographic order on exponent vectors. Total degree first, then
// lex; translation-invariant, which is what the leading-term division loop
// relies on.
inline int total_degree(const Expo& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

inline bool grlex_less(const Expo& a, const Expo& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct GrlexGreater {
  bool operator()(const Expo& a, const Expo& b) const { return grlex_less(b, a); }
};

class Laurent {
 public:
  using TermMap = std::map<Expo, BigInt, GrlexGreater>;

  explicit Laurent(VarContextPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw Error("bad_context", "null variable context");
  }

  static Laurent constant(VarContextPtr ctx, BigInt c) {
    Laurent p(std::move(ctx));
    if (c != 0) p.terms_[Expo(p.ctx_->size(), 0)] = std::move(c);
    return p;
  }

  static Laurent variable(VarContextPtr ctx, int i, int power = 1) {
    Laurent p(std::move(ctx));
    if (i < 0 || i >= p.ctx_->size())
      throw Error("bad_context", "variable index out of range");
    Expo e(p.ctx_->size(), 0);
    e[i] = power;
    p.terms_[std::move(e)] = 1;
    return p;
  }

  static Laurent monomial(VarContextPtr ctx, Expo e, BigInt c = BigInt(1)) {
    Laurent p(std::move(ctx));
    if (static_cast<int>(e.size()) != p.ctx_->size())
      throw Error("bad_context", "exponent vector has wrong length");
    if (c != 0) p.terms_[std::move(e)] = std::move(c);
    return p;
  }

  const VarContextPtr& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->second == 1 &&
           total_support(terms_.begin()->first) == 0;
  }
  int term_count() const { return static_cast<int>(terms_.size()); }
  bool is_monomial() const { return terms_.size() == 1; }

  bool operator==(const Laurent& o) const {
    return same_context(ctx_, o.ctx_) && terms_ == o.terms_;
  }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  Laurent operator+(const Laurent& o) const {
    check_context(o);
    Laurent r(*this);
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }

  Laurent operator-(const Laurent& o) const {
    check_context(o);
    Laurent r(*this);
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
  }

  Laurent neg() const {
    Laurent r(ctx_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  Laurent operator*(const Laurent& o) const {
    check_context(o);
    Laurent r(ctx_);
    const int m = ctx_->size();
    Expo e(m);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        for (int i = 0; i < m; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  Laurent scaled(const BigInt& c) const {
    Laurent r(ctx_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
  }

  Laurent pow(int k) const {
    if (k < 0) throw Error("bad_exponent", "pow wants a non-negative exponent");
    Laurent acc = constant(ctx_, 1);
    Laurent base(*this);
    while (k > 0) {
      if (k & 1) acc = acc * base;
      base = (k >>= 1) ? base * base : base;
    }
    return acc;
  }

  // Exact division by a single term with unit coefficient: shifts exponents.
  Laurent divided_by_monomial(const Expo& e, const BigInt& c = BigInt(1)) const {
    if (c != 1 && c != -1)
      throw Error("bad_monomial", "monomial divisor must have coefficient +-1");
    if (static_cast<int>(e.size()) != ctx_->size())
      throw Error("bad_context", "monomial divisor has wrong length");
    Laurent r(ctx_);
    const int m = ctx_->size();
    for (const auto& [ea, ca] : terms_) {
      Expo shifted(m);
      for (int i = 0; i < m; ++i) shifted[i] = ea[i] - e[i];
      r.terms_[std::move(shifted)] = (c == 1) ? ca : -ca;
    }
    return r;
  }

  // Leading-term division; throws if the quotient is not an exact Laurent
  // polynomial over the integers. This is how the Laurent phenomenon becomes a
  // runtime assertion in seed mutation. Divergence is caught two ways: a
  // coefficient that fails to divide, or a quotient term dropping below the
  // forced minimal term min(num)/min(den) (minimal terms multiply in a domain,
  // so an exact quotient can never reach below that).
  Laurent exact_divided(const Laurent& den) const {
    check_context(den);
    if (den.is_zero()) throw Error("division_by_zero", "division by zero polynomial");
    if (is_zero()) return Laurent(ctx_);
    const int m = ctx_->size();
    const auto& [de, dc] = *den.terms_.begin();
    Expo low(m);  // grlex floor for quotient exponents
    {
      const Expo& num_min = terms_.rbegin()->first;
      const Expo& den_min = den.terms_.rbegin()->first;
      for (int i = 0; i < m; ++i) low[i] = num_min[i] - den_min[i];
    }
    Laurent quotient(ctx_), rem(*this);
    Expo qe(m);
    long iterations = 0;
    while (!rem.is_zero()) {
      if (++iterations > 1000000)
        throw Error("division_remainder", "leading-term division does not terminate");
      const auto& [re, rc] = *rem.terms_.begin();
      if (rc % dc != 0)
        throw Error("division_remainder", "division leaves a remainder (coefficient)");
      for (int i = 0; i < m; ++i) qe[i] = re[i] - de[i];
      if (grlex_less(qe, low))
        throw Error("division_remainder", "division leaves a remainder");
      BigInt qc = rc / dc;
      quotient.add_term(qe, qc);
      Expo shifted(m);
      for (const auto& [e2, c2] : den.terms_) {
        for (int i = 0; i < m; ++i) shifted[i] = e2[i] + qe[i];
        rem.add_term(shifted, -qc * c2);
      }
    }
    return quotient;
  }

  // Full substitution: images[i] replaces variable i; all images share one
  // target context. A variable that occurs with a negative exponent must be
  // sent to a single unit-coefficient term, so the result stays Laurent.
  Laurent substituted(const std::vector<Laurent>& images) const {
    if (static_cast<int>(images.size()) != ctx_->size())
      throw Error("bad_substitution", "assignment must cover every variable");
    if (images.empty()) throw Error("bad_substitution", "empty context");
    VarContextPtr target = images[0].context();
    for (const auto& im : images)
      if (!same_context(target, im.context()))
        throw Error("context_mismatch", "substitution images in mixed contexts");
    Laurent result(target);
    for (const auto& [e, c] : terms_) {
      Laurent term = constant(target, c);
      for (int i = 0; i < ctx_->size(); ++i) {
        if (e[i] == 0) continue;
        if (e[i] > 0) {
          term = term * images[i].pow(e[i]);
        } else {
          const auto& im = images[i];
          if (!im.is_monomial())
            throw Error("bad_substitution",
                        "non-monomial substituted into a negative exponent");
          const auto& [me, mc] = *im.terms().begin();
          if (mc != 1 && mc != -1)
            throw Error("bad_substitution",
                        "negative power needs a unit-coefficient monomial image");
          Expo inv(me.size());
          for (size_t j = 0; j < me.size(); ++j)
            inv[j] = me[j] * e[i];  // e[i] < 0 inverts
          BigInt coeff = (mc == 1 || e[i] % 2 == 0) ? BigInt(1) : BigInt(-1);
          term = term * monomial(target, std::move(inv), coeff);
        }
      }
      result = result + term;
    }
    return result;
  }

  BigInt value_at_ones() const {
    BigInt s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  // Coordinatewise exponent minimum, as a unit monomial. Only defined for
  // polynomials in the coefficient variables (the tropical semifield side).
  Laurent tropical_min() const {
    if (is_zero()) throw Error("empty_tropical", "tropical minimum of zero polynomial");
    const int m = ctx_->size();
    for (const auto& [e, c] : terms_)
      for (int i = 0; i < ctx_->n_cluster; ++i)
        if (e[i] != 0)
          throw Error("bad_tropical", "tropical minimum over cluster variables");
    Expo mins = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
      for (int i = 0; i < m; ++i) mins[i] = std::min(mins[i], e[i]);
    return monomial(ctx_, std::move(mins));
  }

  bool coefficients_all_positive() const {
    for (const auto& [e, c] : terms_)
      if (c <= 0) return false;
    return !terms_.empty();
  }

  // The term free of every non-cluster variable, if there is exactly one.
  std::optional<std::pair<Expo, BigInt>> sole_coefficient_free_term() const {
    std::optional<std::pair<Expo, BigInt>> found;
    for (const auto& [e, c] : terms_) {
      bool free = true;
      for (int i = ctx_->n_cluster; i < ctx_->size(); ++i)
        if (e[i] != 0) { free = false; break; }
      if (!free) continue;
      if (found) return std::nullopt;
      found = {e, c};
    }
    return found;
  }

  // Canonical text form, leading term first: 3*x1^2*y2^-1 + ... - ...
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      BigInt a = c;
      if (first) {
        if (a < 0) { out << "-"; a = -a; }
      } else {
        out << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      std::string factors;
      for (int i = 0; i < ctx_->size(); ++i) {
        if (e[i] == 0) continue;
        if (!factors.empty()) factors += "*";
        factors += ctx_->names[i];
        if (e[i] != 1) factors += "^" + std::to_string(e[i]);
      }
      if (factors.empty()) {
        out << a.str();
      } else {
        if (a != 1) out << a.str() << "*";
        out << factors;
      }
    }
    return out.str();
  }

 private:
  static int total_support(const Expo& e) {
    int s = 0;
    for (int v : e) s += (v != 0);
    return s;
  }

  void check_context(const Laurent& o) const {
    if (!same_context(ctx_, o.ctx_))
      throw Error("context_mismatch", "operation mixes variable contexts");
  }

  void add_term(const Expo& e, const BigInt& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  VarContextPtr ctx_;
  TermMap terms_;
};

}  // namespace scl
