#pragma once
// Small exact integer matrices: exchange-matrix mutation, principal extension,
// fraction-free rank, exact rational solving, and the g-vector grading.

#include <optional>
#include <string>
#include <vector>

#include "scl/laurent.hpp"

namespace scl {

using GVector = std::vector<int>;

class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  BigInt& at(int i, int j) { return data_[i * cols_ + j]; }
  const BigInt& at(int i, int j) const { return data_[i * cols_ + j]; }

  bool operator==(const IntMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const IntMat& o) const { return !(*this == o); }

  IntMat top_square() const {
    if (rows_ < cols_) throw Error("bad_matrix", "fewer rows than columns");
    IntMat t(cols_, cols_);
    for (int i = 0; i < cols_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(i, j) = at(i, j);
    return t;
  }

  bool is_skew_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (at(i, j) != -at(j, i)) return false;
    return true;
  }

  std::string str() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
      s += (i == 0) ? "[" : " ";
      s += "[";
      for (int j = 0; j < cols_; ++j) {
        if (j) s += ",";
        s += at(i, j).str();
      }
      s += "]";
      if (i + 1 < rows_) s += "\n";
    }
    return s + "]";
  }

 private:
  int rows_, cols_;
  std::vector<BigInt> data_;
};

// Matrix mutation in direction k (0-based), applied to all m rows of an m x n
// exchange matrix: entries in row-or-column k flip sign, the rest gain
// sgn(b_ik) * [b_ik * b_kj]_+ .
inline IntMat mutate_matrix(const IntMat& B, int k) {
  const int m = B.rows(), n = B.cols();
  if (k < 0 || k >= n) throw Error("bad_direction", "mutation direction out of range");
  IntMat R(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k) {
        R.at(i, j) = -B.at(i, j);
      } else {
        BigInt prod = B.at(i, k) * B.at(k, j);
        if (prod < 0) prod = 0;
        int sgn = (B.at(i, k) > 0) - (B.at(i, k) < 0);
        R.at(i, j) = B.at(i, j) + sgn * prod;
      }
    }
  return R;
}

inline IntMat extend_principal(const IntMat& B) {
  if (B.rows() != B.cols())
    throw Error("bad_matrix", "principal extension wants a square matrix");
  const int n = B.rows();
  IntMat R(2 * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R.at(i, j) = B.at(i, j);
  for (int j = 0; j < n; ++j) R.at(n + j, j) = 1;
  return R;
}

// Fraction-free (Bareiss) rank over the integers.
inline int exact_rank(IntMat A) {
  const int m = A.rows(), n = A.cols();
  int rank = 0;
  BigInt prev = 1;
  for (int col = 0; col < n && rank < m; ++col) {
    int pivot = -1;
    for (int i = rank; i < m; ++i)
      if (A.at(i, col) != 0) { pivot = i; break; }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = 0; j < n; ++j) std::swap(A.at(pivot, j), A.at(rank, j));
    for (int i = rank + 1; i < m; ++i) {
      for (int j = col + 1; j < n; ++j)
        A.at(i, j) = (A.at(rank, col) * A.at(i, j) - A.at(i, col) * A.at(rank, j)) / prev;
      A.at(i, col) = 0;
    }
    prev = A.at(rank, col);
    ++rank;
  }
  return rank;
}

// Exact rational solve of A x = b for A with full column rank; returns the
// unique solution, or nothing when the system is inconsistent.
inline std::optional<std::vector<BigRat>> solve_full_rank(const IntMat& A,
                                                          const std::vector<BigInt>& b) {
  const int m = A.rows(), n = A.cols();
  if (static_cast<int>(b.size()) != m)
    throw Error("bad_matrix", "right-hand side has wrong length");
  if (exact_rank(A) != n) throw Error("rank_deficient", "matrix lacks full column rank");
  std::vector<std::vector<BigRat>> M(m, std::vector<BigRat>(n + 1));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) M[i][j] = BigRat(A.at(i, j));
    M[i][n] = BigRat(b[i]);
  }
  int row = 0;
  std::vector<int> pivot_row(n, -1);
  for (int col = 0; col < n && row < m; ++col) {
    int p = -1;
    for (int i = row; i < m; ++i)
      if (M[i][col] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(M[p], M[row]);
    BigRat inv = M[row][col];
    for (int j = col; j <= n; ++j) M[row][j] /= inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || M[i][col] == 0) continue;
      BigRat f = M[i][col];
      for (int j = col; j <= n; ++j) M[i][j] -= f * M[row][j];
    }
    pivot_row[col] = row;
    ++row;
  }
  // Full column rank means every column got a pivot; leftover rows must be 0 = 0.
  for (int i = row; i < m; ++i)
    if (M[i][n] != 0) return std::nullopt;
  std::vector<BigRat> x(n);
  for (int col = 0; col < n; ++col) x[col] = M[pivot_row[col]][n];
  return x;
}

// Multidegree of one term under deg(x_i) = e_i, deg(y_j) = -(column j of B).
// The exponent vector lives in the principal context: n cluster entries then n
// coefficient entries.
inline GVector g_degree(const Expo& e, const IntMat& B) {
  const int n = B.cols();
  if (B.rows() != n) throw Error("bad_matrix", "g-degree wants a square matrix");
  if (static_cast<int>(e.size()) != 2 * n)
    throw Error("bad_context", "g-degree wants a principal exponent vector");
  GVector g(n, 0);
  for (int i = 0; i < n; ++i) {
    BigInt v = e[i];
    for (int j = 0; j < n; ++j) v -= BigInt(e[n + j]) * B.at(i, j);
    g[i] = static_cast<int>(v);
  }
  return g;
}

inline std::optional<GVector> is_g_homogeneous(const Laurent& p, const IntMat& B) {
  if (p.is_zero()) return std::nullopt;
  std::optional<GVector> common;
  for (const auto& [e, c] : p.terms()) {
    GVector g = g_degree(e, B);
    if (!common) {
      common = std::move(g);
    } else if (*common != g) {
      return std::nullopt;
    }
  }
  return common;
}

inline std::string gvector_str(const GVector& g) {
  std::string s = "(";
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g[i]);
  }
  return s + ")";
}

}  // namespace scl
