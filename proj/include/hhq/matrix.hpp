#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <vector>

#include "hhq/scalar.hpp"

namespace hhq {

template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const T& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::vector<T> apply(const std::vector<T>& x) const {
    if (int(x.size()) != cols_) throw std::invalid_argument("Matrix::apply: size");
    std::vector<T> y(rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if (!at(r, c).is_zero()) y[r] += at(r, c) * x[c];
    return y;
  }

  Matrix& operator+=(const Matrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_)
      throw std::invalid_argument("Matrix::+=: shape");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_)
      throw std::invalid_argument("Matrix::-=: shape");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (T& v : a_) v *= s;
    return *this;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix::*: shape");
    Matrix out(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r)
      for (int k = 0; k < a.cols_; ++k) {
        const T& v = a.at(r, k);
        if (v.is_zero()) continue;
        for (int c = 0; c < b.cols_; ++c)
          if (!b.at(k, c).is_zero()) out.at(r, c) += v * b.at(k, c);
      }
    return out;
  }

 private:
  int rows_, cols_;
  std::vector<T> a_;
};

namespace detail {

// Customization point of the fraction-free forward phase: scale a row segment
// so its entries are integral.  Generic fields need nothing; rationals are
// scaled by the lcm of denominators.
template <typename T>
inline void make_row_integral(std::vector<T>&, size_t, size_t) {}

inline void make_row_integral(std::vector<Scalar>& row, size_t lo, size_t hi) {
  for (size_t k = lo; k < hi; ++k)
    if (row[k].characteristic() != 0) return;  // residues are already integral
  mpz_class l(1);
  for (size_t k = lo; k < hi; ++k)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), row[k].value().get_den().get_mpz_t());
  if (l == 1) return;
  Scalar f = Scalar::from_mpq(mpq_class(l));
  for (size_t k = lo; k < hi; ++k) row[k] *= f;
}

}  // namespace detail

// Row reduction of a matrix M with deterministic pivoting: columns are scanned
// left to right and the pivot is the first remaining row with a nonzero entry.
// The forward phase is fraction-free (Bareiss) on rows scaled to integrality;
// a final pass normalizes to reduced row echelon form E and the recorded
// transform R satisfies R * M = E.  All downstream solves, ranks, kernels and
// coordinate extractions go through this one deterministic routine.
template <typename T>
class RowReducer {
 public:
  explicit RowReducer(const Matrix<T>& m) : rows_(m.rows()), cols_(m.cols()) {
    std::vector<std::vector<T>> a(rows_, std::vector<T>(cols_ + rows_));
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) a[r][c] = m.at(r, c);
      a[r][cols_ + r] = T(1);
      detail::make_row_integral(a[r], 0, a[r].size());
    }

    // Forward, fraction-free.
    T prev(1);
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int piv = -1;
      for (int r = row; r < rows_; ++r)
        if (!a[r][col].is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(a[row], a[piv]);
      const T p = a[row][col];
      for (int r = row + 1; r < rows_; ++r) {
        const T f = a[r][col];
        for (size_t k = col; k < a[r].size(); ++k) {
          a[r][k] = (p * a[r][k] - f * a[row][k]) / prev;
        }
      }
      pivots_.push_back(col);
      prev = p;
      ++row;
    }
    rank_ = row;

    // Normalize pivots to 1, then eliminate above.
    for (int i = 0; i < rank_; ++i) {
      const T inv = a[i][pivots_[i]].inverse();
      for (size_t k = pivots_[i]; k < a[i].size(); ++k) a[i][k] *= inv;
    }
    for (int i = rank_ - 1; i >= 0; --i) {
      const int pc = pivots_[i];
      for (int j = 0; j < i; ++j) {
        if (a[j][pc].is_zero()) continue;
        const T f = a[j][pc];
        // Row i is zero left of pc, so only columns >= pc (which include the
        // whole transform block) change.
        for (size_t k = pc; k < a[j].size(); ++k) a[j][k] -= f * a[i][k];
      }
    }
    rref_ = std::move(a);
  }

  int rank() const { return rank_; }
  const std::vector<int>& pivots() const { return pivots_; }

  // One solution of M x = b (free coordinates zero), if consistent.
  std::optional<std::vector<T>> solve(const std::vector<T>& b) const {
    if (int(b.size()) != rows_) throw std::invalid_argument("solve: size");
    std::vector<T> y(rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < rows_; ++j)
        if (!rref_[i][cols_ + j].is_zero()) y[i] += rref_[i][cols_ + j] * b[j];
    for (int i = rank_; i < rows_; ++i)
      if (!y[i].is_zero()) return std::nullopt;
    std::vector<T> x(cols_);
    for (int i = 0; i < rank_; ++i) x[pivots_[i]] = y[i];
    return x;
  }

  bool consistent(const std::vector<T>& b) const { return solve(b).has_value(); }

  // Basis of the kernel of M, one vector per free column, ascending.
  std::vector<std::vector<T>> nullspace() const {
    std::vector<bool> is_pivot(cols_, false);
    for (int pc : pivots_) is_pivot[pc] = true;
    std::vector<std::vector<T>> basis;
    for (int f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<T> x(cols_);
      x[f] = T(1);
      for (int i = 0; i < rank_; ++i) x[pivots_[i]] = -rref_[i][f];
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  int rows_, cols_, rank_ = 0;
  std::vector<int> pivots_;
  std::vector<std::vector<T>> rref_;
};

template <typename T>
int rank_of(const Matrix<T>& m) {
  return RowReducer<T>(m).rank();
}

// Incremental reduced-row-echelon accumulator.  Rows are inserted one at a
// time, reduced against the current basis, and discarded when dependent, so a
// tall system costs O(rows * cols * rank) without the transform bookkeeping
// of RowReducer.  The stored rows are kept in reduced form (unit pivots,
// pivot columns eliminated everywhere else) and ordered by pivot column.
template <typename T>
class EchelonBasis {
 public:
  explicit EchelonBasis(int cols) : cols_(cols) {}

  int cols() const { return cols_; }
  int rank() const { return int(rows_.size()); }
  const std::vector<std::vector<T>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  // Reduces `row` against the basis in place; the residue's leading column is
  // returned, or -1 when the row is dependent.
  int reduce(std::vector<T>& row) const {
    if (int(row.size()) != cols_) throw std::invalid_argument("EchelonBasis: size");
    for (size_t i = 0; i < rows_.size(); ++i) {
      const T& f = row[pivots_[i]];
      if (f.is_zero()) continue;
      const T c = f;  // pivot entries are 1
      for (int k = pivots_[i]; k < cols_; ++k)
        if (!rows_[i][k].is_zero()) row[k] -= c * rows_[i][k];
    }
    for (int k = 0; k < cols_; ++k)
      if (!row[k].is_zero()) return k;
    return -1;
  }

  bool contains(std::vector<T> row) const { return reduce(row) < 0; }

  // Returns true when the row enlarges the span.
  bool insert(std::vector<T> row) {
    int lead = reduce(row);
    if (lead < 0) return false;
    const T inv = row[lead].inverse();
    for (int k = lead; k < cols_; ++k) row[k] *= inv;
    for (auto& r : rows_) {
      const T f = r[lead];
      if (f.is_zero()) continue;
      for (int k = lead; k < cols_; ++k)
        if (!row[k].is_zero()) r[k] -= f * row[k];
    }
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
    pivots_.insert(pivots_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(row));
    return true;
  }

  // Basis of {x : r . x = 0 for every stored row r}, one vector per free
  // column, ascending.
  std::vector<std::vector<T>> nullspace() const {
    std::vector<bool> is_pivot(cols_, false);
    for (int pc : pivots_) is_pivot[pc] = true;
    std::vector<std::vector<T>> basis;
    for (int f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<T> x(cols_);
      x[f] = T(1);
      for (size_t i = 0; i < rows_.size(); ++i) x[pivots_[i]] = -rows_[i][f];
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  int cols_;
  std::vector<int> pivots_;
  std::vector<std::vector<T>> rows_;
};

}  // namespace hhq
