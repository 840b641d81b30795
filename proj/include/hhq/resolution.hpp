#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hhq/algebra.hpp"

namespace hhq {

// Generator g^n_{r,i} of the n-th term of the minimal projective bimodule
// resolution P_n = A (x)_E kG^n (x)_E A.
struct GGen {
  int n = 0, r = 0, i = 0;
  int source() const { return i; }
  int target(int m) const { return imod(i + n - 2 * r, m); }
  GGen rotated(int shift, int m) const { return {n, r, imod(i + shift, m)}; }
  friend auto operator<=>(const GGen&, const GGen&) = default;
};

// Element of kQ: formal sum of unreduced quiver words.
class FreePathSum {
 public:
  using Terms = std::map<Path, Scalar>;
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
  friend bool operator==(const FreePathSum&, const FreePathSum&) = default;

 private:
  Terms terms_;
};

// Element of P_n in canonical form: sum of (left path) (x) g (x) (right path)
// with reduced basis paths on both sides.
class BimodElement {
 public:
  struct Key {
    GGen g;
    Path l, r;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  using Terms = std::map<Key, Scalar>;

  void add(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  friend bool operator==(const BimodElement&, const BimodElement&) = default;

  BimodElement& operator+=(const BimodElement& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  BimodElement& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend BimodElement operator*(BimodElement x, const Scalar& s) { return x *= s; }

  BimodElement rotated(int shift, int m) const {
    BimodElement out;
    for (const auto& [k, c] : terms_)
      out.terms_.emplace(Key{k.g.rotated(shift, m), k.l.rotated(shift),
                             k.r.rotated(shift)},
                         c);
    return out;
  }

 private:
  Terms terms_;
};

// The resolution machinery for a fixed algebra: generator expansion in kQ,
// degree formulas, differentials, and the d.d = 0 check.
class Resolution {
 public:
  explicit Resolution(const Algebra& a) : a_(&a) {}

  const Algebra& algebra() const { return *a_; }

  std::vector<GGen> generators(int n) const {
    std::vector<GGen> gs;
    for (int r = 0; r <= n; ++r)
      for (int i = 0; i < a_->m(); ++i) gs.push_back({n, r, i});
    return gs;
  }

  // Closed-form gradings of g^n_{r,i}.
  static int g_deg(const GGen& g, int N) {
    return g.n - 2 * g.r >= 0 ? g.r * N + g.n - 2 * g.r : (g.n - g.r) * N;
  }
  static int g_degbar(const GGen& g, int N) {
    return g.n - 2 * g.r >= 0 ? -g.r * N : -(g.n - g.r) * N + g.n - 2 * g.r;
  }
  int g_deg(const GGen& g) const { return g_deg(g, a_->N()); }
  int g_degbar(const GGen& g) const { return g_degbar(g, a_->N()); }

  // Unreduced expansion of g^n_{r,i} in kQ, by the three-case recursion.
  const FreePathSum& g_expand(const GGen& g) {
    auto it = gexp_.find(g);
    if (it != gexp_.end()) return it->second;
    FreePathSum res;
    const int m = a_->m(), N = a_->N();
    if (g.r >= 0 && g.r <= g.n) {
      if (g.n == 0) {
        res.add(Path::vertex(m, g.i), a_->scalar(1));
      } else {
        const Scalar sgn = a_->scalar(g.n % 2 == 0 ? 1 : -1);
        auto append = [&](const GGen& sub, Dir lead, int len, const Scalar& c) {
          if (sub.r < 0 || sub.r > sub.n) return;
          for (const auto& [p, cp] : g_expand(sub).terms())
            res.add(p.concat(Path(m, p.target(), Path::alt_word(lead, len))),
                    cp * c);
        };
        const int diff = g.n - 2 * g.r;
        if (diff > 0) {
          append({g.n - 1, g.r, g.i}, Dir::A, 1, a_->scalar(1));
          append({g.n - 1, g.r - 1, g.i}, Dir::B, 2 * N - 1, sgn);
        } else if (diff < 0) {
          append({g.n - 1, g.r, g.i}, Dir::A, 2 * N - 1, a_->scalar(1));
          append({g.n - 1, g.r - 1, g.i}, Dir::B, 1, sgn);
        } else {
          append({g.n - 1, g.r, g.i}, Dir::A, 2 * N - 1, a_->scalar(1));
          append({g.n - 1, g.r - 1, g.i}, Dir::B, 2 * N - 1, a_->scalar(1));
        }
      }
    }
    return gexp_.emplace(g, std::move(res)).first->second;
  }

  // d_n(1 (x) g^n_{r,i} (x) 1) in canonical form.
  const BimodElement& differential(const GGen& g) {
    auto it = diff_.find(g);
    if (it != diff_.end()) return it->second;
    if (g.n < 1) throw std::invalid_argument("differential: need n >= 1");
    const int m = a_->m(), N = a_->N(), n = g.n, r = g.r, i = g.i;
    BimodElement res;
    // One term: left word from vertex i, sub-generator, right word from its
    // target; words are alternating of the stated lead/length.
    auto term = [&](Dir llead, int llen, GGen h, Dir rlead, int rlen, int sgn) {
      if (h.r < 0 || h.r > h.n) return;
      h.i = imod(h.i, m);
      Path l(m, i, Path::alt_word(llead, llen));
      if (l.target() != h.source())
        throw std::logic_error("differential: left path mismatch");
      Path rp(m, h.target(m), Path::alt_word(rlead, rlen));
      res.add({h, l, rp}, a_->scalar(sgn));
    };
    const int s_n = (n % 2 == 0) ? 1 : -1;
    const int s_nr = ((n + r) % 2 == 0) ? 1 : -1;
    const int diff = n - 2 * r;
    if (diff > 0) {
      term(Dir::A, 0, {n - 1, r, i}, Dir::A, 1, 1);
      term(Dir::A, 1, {n - 1, r, i + 1}, Dir::A, 0, s_nr);
      term(Dir::B, 2 * N - 1, {n - 1, r - 1, i - 1}, Dir::A, 0, s_nr);
      term(Dir::A, 0, {n - 1, r - 1, i}, Dir::B, 2 * N - 1, s_n);
    } else if (diff < 0) {
      term(Dir::A, 0, {n - 1, r, i}, Dir::A, 2 * N - 1, 1);
      term(Dir::A, 2 * N - 1, {n - 1, r, i + 1}, Dir::A, 0, s_nr);
      term(Dir::B, 1, {n - 1, r - 1, i - 1}, Dir::A, 0, s_nr);
      term(Dir::A, 0, {n - 1, r - 1, i}, Dir::B, 1, s_n);
    } else {
      const int s_half = (r % 2 == 0) ? 1 : -1;  // (-1)^{n/2} with n = 2r
      for (int k = 0; k < N; ++k) {
        term(Dir::B, 2 * k, {n - 1, r, i}, Dir::A, 2 * (N - 1 - k) + 1, 1);
        term(Dir::A, 2 * k + 1, {n - 1, r, i + 1}, Dir::A, 2 * (N - 1 - k), s_half);
        term(Dir::B, 2 * k + 1, {n - 1, r - 1, i - 1}, Dir::B, 2 * (N - 1 - k), s_half);
        term(Dir::A, 2 * k, {n - 1, r - 1, i}, Dir::B, 2 * (N - 1 - k) + 1, 1);
      }
    }
    return diff_.emplace(g, std::move(res)).first->second;
  }

  // d applied to a general element of P_n.
  BimodElement apply_d(const BimodElement& x) {
    BimodElement out;
    for (const auto& [key, c] : x.terms()) {
      for (const auto& [dk, dc] : differential(key.g).terms()) {
        AlgebraElement l = a_->mul(a_->reduce_path(key.l), a_->reduce_path(dk.l));
        if (l.is_zero()) continue;
        AlgebraElement r = a_->mul(a_->reduce_path(dk.r), a_->reduce_path(key.r));
        if (r.is_zero()) continue;
        for (const auto& [lp, lc] : l.terms())
          for (const auto& [rp, rc] : r.terms())
            out.add({dk.g, lp, rp}, c * dc * lc * rc);
      }
    }
    return out;
  }

  // Augmentation P_0 -> A (multiplication).
  AlgebraElement augment(const BimodElement& x) const {
    AlgebraElement out;
    for (const auto& [key, c] : x.terms()) {
      if (key.g.n != 0) throw std::logic_error("augment: not in P_0");
      out += a_->mul(a_->reduce_path(key.l), a_->reduce_path(key.r)) * c;
    }
    return out;
  }

  // Checks eps.d_1 = 0 and d_{n-1}.d_n = 0 up to n_max; returns the first
  // violating generator if any.
  std::optional<GGen> verify_complex(int n_max) {
    for (const GGen& g : generators(1))
      if (!augment(differential(g)).is_zero()) return g;
    for (int n = 2; n <= n_max; ++n)
      for (const GGen& g : generators(n))
        if (!apply_d(differential(g)).is_zero()) return g;
    return std::nullopt;
  }

 private:
  const Algebra* a_;
  std::map<GGen, FreePathSum> gexp_;
  std::map<GGen, BimodElement> diff_;
};

}  // namespace hhq
