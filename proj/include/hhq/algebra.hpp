#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hhq/path.hpp"
#include "hhq/scalar.hpp"

namespace hhq {

struct Params {
  int m = 3;
  int N = 1;
  unsigned long characteristic = 0;

  void validate() const {
    if (m < 3) throw std::invalid_argument("params: m must be at least 3");
    if (N < 1) throw std::invalid_argument("params: N must be at least 1");
    if (characteristic != 0) {
      unsigned long p = characteristic;
      if (p < 2) throw std::invalid_argument("params: characteristic must be 0 or prime");
      for (unsigned long q = 2; q * q <= p; ++q)
        if (p % q == 0)
          throw std::invalid_argument("params: characteristic must be 0 or prime");
      if ((2ul * (unsigned long)m * (unsigned long)N) % p == 0)
        throw std::invalid_argument(
            "params: characteristic must not divide 2*m*N");
    }
  }
};

// Linear combination of reduced basis paths with exact coefficients.
class AlgebraElement {
 public:
  using Terms = std::map<Path, Scalar>;

  AlgebraElement() = default;

  void add(const Path& p, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(p, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    for (const auto& [p, c] : o.terms_) add(p, -c);
    return *this;
  }
  AlgebraElement& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [p, c] : terms_) c *= s;
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, const Scalar& s) { return a *= s; }
  friend AlgebraElement operator*(const Scalar& s, AlgebraElement a) { return a *= s; }
  AlgebraElement operator-() const {
    AlgebraElement r(*this);
    for (auto& [p, c] : r.terms_) c = -c;
    return r;
  }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.terms_ == b.terms_;
  }

  AlgebraElement rotated(int shift) const {
    AlgebraElement r;
    for (const auto& [p, c] : terms_) r.terms_.emplace(p.rotated(shift), c);
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [p, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += c.str() + "*(" + (p.length() ? p.word_str() : "e") + "@" +
           std::to_string(p.source()) + ")";
    }
    return s;
  }

 private:
  Terms terms_;
};

// The algebra A = kQ / I for the cyclic double quiver on m vertices, with
// relations a_i a_{i+1},  abar_{i+1} abar_i,  (a_i abar_i)^N - (abar_{i-1} a_{i-1})^N.
// Reduced basis paths are the alternating words of length < 2N from each
// vertex, plus the vertices and one socle loop (a_i abar_i)^N per vertex;
// 4mN in total.
class Algebra {
 public:
  explicit Algebra(Params params) : p_(params) {
    p_.validate();
    const int m = p_.m, N = p_.N;
    for (int i = 0; i < m; ++i) {
      basis_.push_back(Path::vertex(m, i));
      for (int len = 1; len < 2 * N; ++len)
        for (Dir lead : {Dir::A, Dir::B})
          basis_.push_back(Path(m, i, Path::alt_word(lead, len)));
      basis_.push_back(Path(m, i, Path::alt_word(Dir::A, 2 * N)));
    }
    std::sort(basis_.begin(), basis_.end());
    for (size_t k = 0; k < basis_.size(); ++k) {
      index_.emplace(basis_[k], int(k));
      auto& bucket = parallel_[{basis_[k].source(), basis_[k].target()}];
      bucket.push_back(basis_[k]);
    }
  }

  const Params& params() const { return p_; }
  int m() const { return p_.m; }
  int N() const { return p_.N; }

  Scalar scalar(long n) const { return Scalar(n, p_.characteristic); }
  Scalar scalar(long num, long den) const {
    return Scalar(num, p_.characteristic) / Scalar(den, p_.characteristic);
  }

  const std::vector<Path>& basis() const { return basis_; }
  int basis_index(const Path& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw std::logic_error("Algebra: not a basis path");
    return it->second;
  }

  // Basis paths from u to v in canonical order (empty for |u - v| > 1).
  const std::vector<Path>& parallel_paths(int u, int v) const {
    static const std::vector<Path> none;
    auto it = parallel_.find({imod(u, p_.m), imod(v, p_.m)});
    return it == parallel_.end() ? none : it->second;
  }

  // Normal form of a quiver word: zero if it leaves the basis, else the basis
  // path it reduces to.  A counterclockwise socle loop rewrites to the
  // clockwise one based at the same vertex.
  AlgebraElement reduce_path(const Path& p) const {
    AlgebraElement r;
    if (!p.alternating() || p.length() > 2 * p_.N) return r;
    if (p.length() == 2 * p_.N && p.step(0) == Dir::B)
      r.add(Path(p_.m, p.source(), Path::alt_word(Dir::A, 2 * p_.N)), scalar(1));
    else
      r.add(p, scalar(1));
    return r;
  }

  AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) const {
    AlgebraElement r;
    for (const auto& [p, cp] : x.terms()) {
      for (const auto& [q, cq] : y.terms()) {
        if (p.target() != q.source()) continue;
        AlgebraElement red = reduce_path(p.concat(q));
        if (red.is_zero()) continue;
        r.add(red.terms().begin()->first, cp * cq);
      }
    }
    return r;
  }

  AlgebraElement unit(int i) const {
    AlgebraElement r;
    r.add(Path::vertex(p_.m, i), scalar(1));
    return r;
  }
  AlgebraElement one() const {
    AlgebraElement r;
    for (int i = 0; i < p_.m; ++i) r += unit(i);
    return r;
  }
  AlgebraElement arrow(int i) const {
    AlgebraElement r;
    r.add(Path::arrow(p_.m, i), scalar(1));
    return r;
  }
  AlgebraElement arrow_bar(int i) const {
    AlgebraElement r;
    r.add(Path::arrow_bar(p_.m, i), scalar(1));
    return r;
  }

  // Socle loop eps_i = (a_i abar_i)^N.
  AlgebraElement eps(int i) const {
    AlgebraElement r;
    r.add(Path(p_.m, i, Path::alt_word(Dir::A, 2 * p_.N)), scalar(1));
    return r;
  }

  // f_i^s = (a_i abar_i)^s + (abar_i a_i)^s, 1 <= s <= N; at s = N this is
  // eps_i + eps_{i+1} by the socle rewrite.
  AlgebraElement f_power(int i, int s) const {
    if (s < 1 || s > p_.N) throw std::invalid_argument("f_power: s out of range");
    AlgebraElement r;
    r += reduce_path(Path(p_.m, i, Path::alt_word(Dir::A, 2 * s)));
    r += reduce_path(Path(p_.m, i + 1, Path::alt_word(Dir::B, 2 * s)));
    return r;
  }

  bool is_central(const AlgebraElement& x) const {
    for (int i = 0; i < p_.m; ++i) {
      if (mul(x, unit(i)) != mul(unit(i), x)) return false;
      if (mul(x, arrow(i)) != mul(arrow(i), x)) return false;
      if (mul(x, arrow_bar(i)) != mul(arrow_bar(i), x)) return false;
    }
    return true;
  }

  // Basis {1, eps_i, f_i^s (1 <= s <= N-1)} of the center, dimension mN + 1.
  std::vector<AlgebraElement> center_basis() const {
    std::vector<AlgebraElement> z;
    z.push_back(one());
    for (int i = 0; i < p_.m; ++i) z.push_back(eps(i));
    for (int i = 0; i < p_.m; ++i)
      for (int s = 1; s < p_.N; ++s) z.push_back(f_power(i, s));
    for (const auto& x : z)
      if (!is_central(x)) throw std::logic_error("center_basis: candidate not central");
    return z;
  }

 private:
  Params p_;
  std::vector<Path> basis_;
  std::map<Path, int> index_;
  std::map<std::pair<int, int>, std::vector<Path>> parallel_;
};

// A k-derivation of A, stored by its values on arrows: da[i] parallel to a_i,
// db[i] parallel to abar_i.  Construction checks parallelism and that the
// defining relations are sent to zero (so the map descends from kQ to A).
class Derivation {
 public:
  Derivation(const Algebra& a, std::vector<AlgebraElement> da,
             std::vector<AlgebraElement> db, bool check = true)
      : a_(&a), da_(std::move(da)), db_(std::move(db)) {
    const int m = a.m(), N = a.N();
    if (int(da_.size()) != m || int(db_.size()) != m)
      throw std::invalid_argument("Derivation: need one value per arrow");
    if (check) {
      for (int i = 0; i < m; ++i) {
        for (const auto& [p, c] : da_[i].terms())
          if (p.source() != i || p.target() != imod(i + 1, m))
            throw std::invalid_argument("Derivation: value not parallel to a_i");
        for (const auto& [p, c] : db_[i].terms())
          if (p.source() != imod(i + 1, m) || p.target() != i)
            throw std::invalid_argument("Derivation: value not parallel to abar_i");
      }
      for (int i = 0; i < m; ++i) {
        if (!apply_word(Path(m, i, {Dir::A, Dir::A})).is_zero() ||
            !apply_word(Path(m, i + 2, {Dir::B, Dir::B})).is_zero() ||
            !(apply_word(Path(m, i, Path::alt_word(Dir::A, 2 * N))) -
              apply_word(Path(m, i, Path::alt_word(Dir::B, 2 * N))))
                 .is_zero())
          throw std::invalid_argument("Derivation: relations not preserved");
      }
    }
  }

  const Algebra& algebra() const { return *a_; }
  const AlgebraElement& on_a(int i) const { return da_[imod(i, a_->m())]; }
  const AlgebraElement& on_abar(int i) const { return db_[imod(i, a_->m())]; }

  // Leibniz extension to a quiver word, evaluated in A.
  AlgebraElement apply_word(const Path& p) const {
    AlgebraElement r;
    for (int k = 0; k < p.length(); ++k) {
      const int idx = p.arrow_index(k);
      const AlgebraElement& dv = (p.step(k) == Dir::A) ? da_[idx] : db_[idx];
      if (dv.is_zero()) continue;
      AlgebraElement pre = a_->reduce_path(p.subpath(0, k));
      AlgebraElement suf = a_->reduce_path(p.subpath(k + 1, p.length() - k - 1));
      r += a_->mul(a_->mul(pre, dv), suf);
    }
    return r;
  }

  AlgebraElement apply(const AlgebraElement& x) const {
    AlgebraElement r;
    for (const auto& [p, c] : x.terms()) r += apply_word(p) * c;
    return r;
  }

  // Splits into bidegree-homogeneous parts: the component with offset
  // (dd, db) collects value terms u on an arrow x with
  // (d(u) - d(x), dbar(u) - dbar(x)) = (dd, db).
  std::map<std::pair<int, int>, Derivation> homogeneous_parts() const {
    const int m = a_->m();
    std::map<std::pair<int, int>, std::pair<std::vector<AlgebraElement>,
                                            std::vector<AlgebraElement>>> comp;
    auto slot = [&](std::pair<int, int> key)
        -> std::pair<std::vector<AlgebraElement>, std::vector<AlgebraElement>>& {
      auto it = comp.find(key);
      if (it == comp.end())
        it = comp.emplace(key, std::make_pair(std::vector<AlgebraElement>(m),
                                              std::vector<AlgebraElement>(m)))
                 .first;
      return it->second;
    };
    for (int i = 0; i < m; ++i) {
      for (const auto& [p, c] : da_[i].terms())
        slot({p.d() - 1, p.dbar()}).first[i].add(p, c);
      for (const auto& [p, c] : db_[i].terms())
        slot({p.d(), p.dbar() + 1}).second[i].add(p, c);
    }
    std::map<std::pair<int, int>, Derivation> parts;
    for (auto& [key, vals] : comp)
      parts.emplace(key, Derivation(*a_, std::move(vals.first),
                                    std::move(vals.second), false));
    return parts;
  }

 private:
  const Algebra* a_;
  std::vector<AlgebraElement> da_, db_;
};

// Eulerian derivation for the clockwise grading d: a_i -> a_i, abar_i -> 0.
inline Derivation euler_d(const Algebra& a) {
  std::vector<AlgebraElement> da, db(a.m());
  for (int i = 0; i < a.m(); ++i) da.push_back(a.arrow(i));
  return Derivation(a, std::move(da), std::move(db));
}

// Eulerian derivation for the counterclockwise grading dbar: abar_i -> -abar_i.
inline Derivation euler_dbar(const Algebra& a) {
  std::vector<AlgebraElement> da(a.m()), db;
  for (int i = 0; i < a.m(); ++i) db.push_back(-a.arrow_bar(i));
  return Derivation(a, std::move(da), std::move(db));
}

}  // namespace hhq
