#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hhq/scalar.hpp"

namespace hhq {

// Incremental sparse row reduction over an exact field.  Equations are added
// one at a time and the stored basis is kept fully reduced (each stored row
// has leading coefficient 1 in its pivot column and zeros in every other
// pivot column), so a particular solution of the accumulated system can be
// read off directly: free unknowns are zero, each pivot unknown equals its
// row's right-hand side.  Pivot selection is deterministic (leftmost
// surviving column of the incoming row), which keeps solver output
// reproducible; reindexing the unknowns changes which solution is picked.
class SparseSystem {
 public:
  explicit SparseSystem(int cols) : cols_(cols) {}

  // Adds the equation sum_j row[j] * x_j = rhs.  Returns false if it
  // contradicts the equations seen so far.
  bool add(std::map<int, Scalar> row, Scalar rhs) {
    auto it = row.begin();
    while (it != row.end()) {
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      const int pcol = it->first;
      const Scalar c = it->second;
      const Eq& pe = rows_[p->second];
      rhs -= c * pe.rhs;
      for (const auto& [j, v] : pe.lhs) {
        auto jt = row.find(j);
        if (jt == row.end()) {
          row.emplace(j, -(c * v));
        } else {
          jt->second -= c * v;
          if (jt->second.is_zero()) row.erase(jt);
        }
      }
      it = row.lower_bound(pcol);  // pivot entry cancelled exactly
    }
    if (row.empty()) return rhs.is_zero();
    const int pcol = row.begin()->first;
    const Scalar inv = row.begin()->second.inverse();
    for (auto& [j, v] : row) v = v * inv;
    rhs = rhs * inv;
    // Eliminate the new pivot column from every stored row.
    for (Eq& e : rows_) {
      auto jt = e.lhs.find(pcol);
      if (jt == e.lhs.end()) continue;
      const Scalar c = jt->second;
      e.rhs -= c * rhs;
      for (const auto& [j, v] : row) {
        auto kt = e.lhs.find(j);
        if (kt == e.lhs.end()) {
          e.lhs.emplace(j, -(c * v));
        } else {
          kt->second -= c * v;
          if (kt->second.is_zero()) e.lhs.erase(kt);
        }
      }
    }
    pivots_.emplace(pcol, int(rows_.size()));
    rows_.push_back(Eq{std::move(row), std::move(rhs)});
    return true;
  }

  // Particular solution with all free unknowns zero.
  std::vector<Scalar> solution() const {
    std::vector<Scalar> x(cols_, Scalar(0));
    for (const auto& [col, idx] : pivots_) x[col] = rows_[idx].rhs;
    return x;
  }

  // Value of x_col if the accumulated equations force it uniquely.  Stored
  // rows are reduced against every pivot, so any extra entry in a pivot row
  // sits in a free column and the unknown depends on that free choice.
  std::optional<Scalar> unique_value(int col) const {
    auto p = pivots_.find(col);
    if (p == pivots_.end()) return std::nullopt;
    const Eq& e = rows_[p->second];
    if (e.lhs.size() != 1) return std::nullopt;
    return e.rhs;
  }

  int rank() const { return int(rows_.size()); }

 private:
  struct Eq {
    std::map<int, Scalar> lhs;
    Scalar rhs;
  };
  int cols_;
  std::vector<Eq> rows_;
  std::map<int, int> pivots_;
};

}  // namespace hhq
