#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hhq/algebra.hpp"
#include "hhq/matrix.hpp"
#include "hhq/resolution.hpp"

namespace hhq {

// Element of Hom_{A^e}(P_n, A), identified with an E-bimodule map
// kG^n -> A: each level-n generator is sent to a combination of parallel
// basis paths (same source and target as the generator).
class Cochain {
 public:
  explicit Cochain(int n) : n_(n) {}

  int degree() const { return n_; }
  const std::map<GGen, AlgebraElement>& values() const { return vals_; }
  bool is_zero() const { return vals_.empty(); }

  void add(const GGen& g, const AlgebraElement& u) {
    if (g.n != n_) throw std::invalid_argument("cochain: generator level mismatch");
    if (u.is_zero()) return;
    auto it = vals_.find(g);
    if (it == vals_.end()) {
      vals_.emplace(g, u);
    } else {
      it->second += u;
      if (it->second.is_zero()) vals_.erase(it);
    }
  }

  AlgebraElement value(const GGen& g) const {
    auto it = vals_.find(g);
    return it == vals_.end() ? AlgebraElement{} : it->second;
  }

  Cochain& operator+=(const Cochain& o) {
    if (o.n_ != n_) throw std::invalid_argument("cochain: degree mismatch");
    for (const auto& [g, u] : o.vals_) add(g, u);
    return *this;
  }
  Cochain& operator-=(const Cochain& o) {
    Cochain neg = o;
    for (auto& [g, u] : neg.vals_) u = -u;
    return *this += neg;
  }
  Cochain& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      vals_.clear();
      return *this;
    }
    for (auto& [g, u] : vals_) u *= s;
    return *this;
  }
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(Cochain a, const Scalar& s) { return a *= s; }
  friend Cochain operator*(const Scalar& s, Cochain a) { return a *= s; }
  Cochain operator-() const {
    Cochain r(*this);
    for (auto& [g, u] : r.vals_) u = -u;
    return r;
  }
  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.n_ == b.n_ && a.vals_ == b.vals_;
  }

 private:
  int n_;
  std::map<GGen, AlgebraElement> vals_;
};

// Common bidegree of a cochain term (g || u): the pair of eigenvalues of
// the Eulerian brackets, (d(u) - d(g), dbar(u) - dbar(g)).
struct Bideg {
  int wd = 0;
  int wdbar = 0;
  auto operator<=>(const Bideg&) const = default;
};

inline Bideg bideg_of(const GGen& g, const Path& u, int N) {
  return {u.d() - Resolution::g_deg(g, N), u.dbar() - Resolution::g_degbar(g, N)};
}

// The bidegree of a bihomogeneous nonzero cochain; nullopt if mixed or zero.
inline std::optional<Bideg> cochain_bideg(const Cochain& c, int N) {
  std::optional<Bideg> b;
  for (const auto& [g, u] : c.values()) {
    for (const auto& [p, s] : u.terms()) {
      Bideg t = bideg_of(g, p, N);
      if (!b)
        b = t;
      else if (*b != t)
        return std::nullopt;
    }
  }
  return b;
}

// Labels for the distinguished cohomology classes. Degree-0 kinds are the
// central elements; the rest follow the standard naming by degree parity.
enum class Kind { One, Eps, FPow, Chi, Pi, F, Phi, Psi, E };

struct NamedElement {
  Kind kind = Kind::One;
  int n = 0;  // cohomological degree
  int a = 0;  // alpha/gamma/beta/delta/sigma/tau index; unused for F/E
  int j = 0;  // vertex index for Eps/FPow/F/E
  int s = 0;  // power index for FPow/F/E
  auto operator<=>(const NamedElement&) const = default;

  // phi with a < 0 and psi with a > 0 take the long parallel word.
  bool long_word() const {
    return (kind == Kind::Phi && a < 0) || (kind == Kind::Psi && a > 0);
  }

  std::string label() const {
    auto sub = [](int x) { return std::to_string(x); };
    switch (kind) {
      case Kind::One:
        return "1";
      case Kind::Eps:
        return "eps_" + sub(j);
      case Kind::FPow:
        return "f_" + sub(j) + "^" + sub(s);
      case Kind::Chi:
        return "chi_{" + sub(n) + "," + sub(a) + "}";
      case Kind::Pi:
        return "pi_{" + sub(n) + "," + sub(a) + "}";
      case Kind::F:
        return "F_{" + sub(n) + "," + sub(j) + "," + sub(s) + "}";
      case Kind::Phi:
        return "phi_{" + sub(n) + "," + sub(a) + "}";
      case Kind::Psi:
        return "psi_{" + sub(n) + "," + sub(a) + "}";
      case Kind::E:
        return "E_{" + sub(n) + "," + sub(j) + "," + sub(s) + "}";
    }
    return "?";
  }
};

// A cohomology class written in the named basis of its degree.
struct CohomologyClass {
  int n = 0;
  std::map<NamedElement, Scalar> coords;

  bool is_zero() const { return coords.empty(); }
  void add(const NamedElement& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = coords.find(e);
    if (it == coords.end()) {
      coords.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) coords.erase(it);
    }
  }
  CohomologyClass& operator+=(const CohomologyClass& o) {
    if (o.n != n && !o.is_zero() && !is_zero())
      throw std::invalid_argument("class: degree mismatch");
    if (is_zero() && !o.is_zero()) n = o.n;
    for (const auto& [e, c] : o.coords) add(e, c);
    return *this;
  }
  CohomologyClass& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      coords.clear();
      return *this;
    }
    for (auto& [e, c] : coords) c *= s;
    return *this;
  }
  friend bool operator==(const CohomologyClass& a, const CohomologyClass& b) {
    return a.coords == b.coords && (a.n == b.n || a.is_zero() || b.is_zero());
  }
  std::string str() const {
    if (coords.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : coords) {
      if (!out.empty()) out += " + ";
      out += c.str() + "*" + e.label();
    }
    return out;
  }
};

struct BasisReport {
  bool ok = true;
  int dimension = 0;
  int named_count = 0;
  std::string detail;  // first failure, empty when ok
};

class Cohomology {
 public:
  Cohomology(const Algebra& a, Resolution& r) : a_(&a), r_(&r) {
    if (&r.algebra() != &a)
      throw std::invalid_argument("cohomology: resolution over a different algebra");
  }

  const Algebra& algebra() const { return *a_; }
  Resolution& resolution() const { return *r_; }

  const std::vector<Path>& parallel_paths(const GGen& g) const {
    return a_->parallel_paths(g.source(), g.target(a_->m()));
  }

  // Deterministic basis of the cochain space C^n: generators in (r, i)
  // order, parallel paths in canonical path order.
  const std::vector<std::pair<GGen, Path>>& cochain_basis(int n) {
    auto it = cbasis_.find(n);
    if (it != cbasis_.end()) return it->second;
    std::vector<std::pair<GGen, Path>> basis;
    for (const GGen& g : r_->generators(n))
      for (const Path& p : parallel_paths(g)) basis.emplace_back(g, p);
    auto& slot = cbasis_[n] = std::move(basis);
    auto& index = cindex_[n];
    for (int k = 0; k < static_cast<int>(slot.size()); ++k) index[slot[k]] = k;
    return slot;
  }

  int cochain_dim(int n) { return static_cast<int>(cochain_basis(n).size()); }

  std::vector<Scalar> to_vector(const Cochain& c) {
    const int n = c.degree();
    cochain_basis(n);
    std::vector<Scalar> v(cochain_dim(n), a_->scalar(0));
    const auto& index = cindex_[n];
    for (const auto& [g, u] : c.values()) {
      for (const auto& [p, s] : u.terms()) {
        auto it = index.find({g, p});
        if (it == index.end())
          throw std::logic_error("to_vector: term outside the canonical basis");
        v[it->second] = s;
      }
    }
    return v;
  }

  Cochain from_vector(int n, const std::vector<Scalar>& v) {
    const auto& basis = cochain_basis(n);
    if (v.size() != basis.size())
      throw std::invalid_argument("from_vector: wrong length");
    Cochain c(n);
    for (size_t k = 0; k < v.size(); ++k) {
      if (v[k].is_zero()) continue;
      AlgebraElement u;
      u.add(basis[k].second, v[k]);
      c.add(basis[k].first, u);
    }
    return c;
  }

  Cochain elementary(int n, int idx) {
    const auto& basis = cochain_basis(n);
    Cochain c(n);
    AlgebraElement u;
    u.add(basis[idx].second, a_->scalar(1));
    c.add(basis[idx].first, u);
    return c;
  }

  // The transpose action of the resolution differential: (dc)(g) = c(d g).
  Cochain coboundary(const Cochain& c) {
    const int n = c.degree();
    Cochain out(n + 1);
    for (const GGen& g : r_->generators(n + 1)) {
      AlgebraElement v;
      for (const auto& [key, coeff] : r_->differential(g).terms()) {
        auto it = c.values().find(key.g);
        if (it == c.values().end()) continue;
        AlgebraElement lu = a_->mul(a_->reduce_path(key.l), it->second);
        if (lu.is_zero()) continue;
        v += a_->mul(lu, a_->reduce_path(key.r)) * coeff;
      }
      out.add(g, v);
    }
    return out;
  }

  bool is_cocycle(const Cochain& c) { return coboundary(c).is_zero(); }

  // Full matrix of the map C^{n-1} -> C^n (columns index C^{n-1}).
  Matrix<Scalar> cochain_differential(int n) {
    if (n < 1) throw std::invalid_argument("cochain_differential: need n >= 1");
    const int rows = cochain_dim(n), cols = cochain_dim(n - 1);
    Matrix<Scalar> d(rows, cols);
    for (int k = 0; k < cols; ++k) {
      std::vector<Scalar> col = to_vector(coboundary(elementary(n - 1, k)));
      for (int rr = 0; rr < rows; ++rr) d.at(rr, k) = col[rr];
    }
    return d;
  }

  // Basis indices of C^n grouped by term bidegree; the coboundary maps
  // each group into the same group one degree up.
  const std::map<Bideg, std::vector<int>>& blocks(int n) {
    auto it = blocks_.find(n);
    if (it != blocks_.end()) return it->second;
    auto& slot = blocks_[n];
    const auto& basis = cochain_basis(n);
    for (int k = 0; k < static_cast<int>(basis.size()); ++k)
      slot[bideg_of(basis[k].first, basis[k].second, a_->N())].push_back(k);
    return slot;
  }

  // Rank of C^{n-1} -> C^n, summed over bidegree blocks.
  int rank_differential(int n) {
    if (n < 1) return 0;
    auto it = rankd_.find(n);
    if (it != rankd_.end()) return it->second;
    int rank = 0;
    for (const auto& [b, cols] : blocks(n - 1)) rank += image_block(n, b).rank;
    rankd_[n] = rank;
    return rank;
  }

  int hh_dimension(int n) {
    return cochain_dim(n) - rank_differential(n + 1) - rank_differential(n);
  }

  // Degree-0 identifications with the center.
  Cochain from_central(const AlgebraElement& z) {
    Cochain c(0);
    for (int i = 0; i < a_->m(); ++i) {
      AlgebraElement v;
      for (const auto& [p, s] : z.terms())
        if (p.source() == i && p.target() == i) v.add(p, s);
      c.add(GGen{0, 0, i}, v);
    }
    return c;
  }

  AlgebraElement to_central(const Cochain& c) {
    if (c.degree() != 0) throw std::invalid_argument("to_central: degree must be 0");
    AlgebraElement z;
    for (const auto& [g, u] : c.values()) z += u;
    return z;
  }

  // ---- named basis ----

  const std::vector<NamedElement>& named_basis(int n) {
    auto it = named_.find(n);
    if (it != named_.end()) return it->second;
    std::vector<NamedElement> out;
    const int m = a_->m(), N = a_->N();
    if (n == 0) {
      out.push_back({Kind::One, 0, 0, 0, 0});
      for (int i = 0; i < m; ++i) out.push_back({Kind::Eps, 0, 0, i, 0});
      for (int i = 0; i < m; ++i)
        for (int s = 1; s <= N - 1; ++s) out.push_back({Kind::FPow, 0, 0, i, s});
      return named_[n] = std::move(out);
    }
    const int p = n / m, t = n % m;
    auto push = [&](Kind k, int a, int j = 0, int s = 0) {
      out.push_back({k, n, a, j, s});
    };
    auto push_js = [&](Kind k) {
      for (int j = 0; j < m; ++j)
        for (int s = 1; s <= N - 1; ++s) push(k, 0, j, s);
    };
    auto is_even = [](int x) { return ((x % 2) + 2) % 2 == 0; };
    if (m % 2 == 0 && n % 2 == 0) {
      for (int a = -p; a <= p; ++a) push(Kind::Chi, a);
      for (int a = -p; a <= p; ++a) push(Kind::Pi, a);
      push_js(Kind::F);
    } else if (m % 2 == 0 && n % 2 == 1) {
      const int lo = -p - (t == m - 1 ? 1 : 0);
      for (int g = lo; g <= p; ++g) push(Kind::Phi, g);
      const int hi = p + (t == m - 1 ? 1 : 0);
      for (int b = -p; b <= hi; ++b) push(Kind::Psi, b);
      push_js(Kind::E);
    } else if (m % 2 == 1 && n % 2 == 0) {
      std::vector<int> chi, pi;
      if (t % 2 == 1) {
        for (int al = 0; al < p; ++al)
          (is_even(al + (m - t) / 2) ? pi : chi).push_back(p - 2 * al - 1);
      } else {
        for (int al = 0; al <= p; ++al)
          (is_even(al + t / 2) ? chi : pi).push_back(p - 2 * al);
      }
      std::sort(chi.begin(), chi.end());
      std::sort(pi.begin(), pi.end());
      for (int d : chi) push(Kind::Chi, d);
      for (int d : pi) push(Kind::Pi, d);
      push_js(Kind::F);
      if (t == m - 1) {
        push(Kind::Phi, -(p + 1));
        push(Kind::Psi, p + 1);
      }
    } else {
      std::vector<int> phi, psi;
      if (t % 2 == 1) {
        // sigma = p - 2*gamma with gamma + (t-1)/2 even; the long word is
        // taken when p < 2*gamma, the short one when 2*gamma <= p.
        for (int g = 0; g <= p; ++g)
          if (is_even(g + (t - 1) / 2)) phi.push_back(p - 2 * g);
        for (int b = 0; b <= p; ++b)
          if (is_even(b + (t - 1) / 2)) psi.push_back(p - 2 * b);
      } else if (t != m - 1) {
        for (int g = 0; g <= p - 1; ++g)
          if (is_even(g + (m + t - 1) / 2)) phi.push_back(p - 2 * g - 1);
        for (int b = 0; b <= p - 1; ++b)
          if (is_even(b + (m + t - 1) / 2)) psi.push_back(p - 2 * b - 1);
      } else {
        // t = m-1: gamma ranges over even values up to p; beta additionally
        // admits -1 <= beta by the printed range, but must itself be even.
        for (int g = 0; g <= p; ++g)
          if (is_even(g)) phi.push_back(p - 2 * g - 1);
        for (int b = -1; b <= p - 1; ++b)
          if (is_even(b)) psi.push_back(p - 2 * b - 1);
      }
      std::sort(phi.begin(), phi.end());
      std::sort(psi.begin(), psi.end());
      for (int sg : phi) push(Kind::Phi, sg);
      for (int tu : psi) push(Kind::Psi, tu);
      push_js(Kind::E);
      if (t == 0) {
        push(Kind::Pi, -p);
        push(Kind::Pi, p);
      }
    }
    return named_[n] = std::move(out);
  }

  bool is_valid(const NamedElement& e) {
    const auto& basis = named_basis(e.n);
    return std::find(basis.begin(), basis.end(), e) != basis.end();
  }

  Cochain named_cocycle(const NamedElement& e) {
    if (!is_valid(e))
      throw std::invalid_argument("named_cocycle: invalid element " + e.label());
    const int m = a_->m(), N = a_->N(), n = e.n;
    Cochain c(n);
    auto word = [&](int src, Dir lead, int len) {
      return Path(m, src, Path::alt_word(lead, len));
    };
    auto put = [&](const GGen& g, const Path& p, int sign_exp) {
      AlgebraElement u;
      u.add(p, a_->scalar(sign_exp % 2 == 0 ? 1 : -1));
      c.add(g, u);
    };
    const bool even_m = m % 2 == 0;
    switch (e.kind) {
      case Kind::One:
        for (int i = 0; i < m; ++i) put({0, 0, i}, Path::vertex(m, i), 0);
        break;
      case Kind::Eps:
        put({0, 0, e.j}, word(e.j, Dir::A, 2 * N), 0);
        break;
      case Kind::FPow:
        put({0, 0, e.j}, word(e.j, Dir::A, 2 * e.s), 0);
        put({0, 0, imod(e.j + 1, m)}, word(e.j + 1, Dir::B, 2 * e.s), 0);
        break;
      case Kind::Chi: {
        const int r = (n - e.a * m) / 2;
        for (int i = 0; i < m; ++i)
          put({n, r, i}, Path::vertex(m, i), even_m ? r * i : 0);
        break;
      }
      case Kind::Pi: {
        const int r = (n - e.a * m) / 2;
        put({n, r, 0}, word(0, Dir::A, 2 * N), 0);
        break;
      }
      case Kind::F: {
        const int r = n / 2;
        put({n, r, e.j}, word(e.j, Dir::A, 2 * e.s), 0);
        put({n, r, imod(e.j + 1, m)}, word(e.j + 1, Dir::B, 2 * e.s), r);
        break;
      }
      case Kind::Phi: {
        const int r = (n - e.a * m - 1) / 2;
        const int len = e.long_word() ? 2 * N - 1 : 1;
        for (int i = 0; i < m; ++i)
          put({n, r, i}, word(i, Dir::A, len), even_m ? r * i : 0);
        break;
      }
      case Kind::Psi: {
        const int r = (n - e.a * m + 1) / 2;
        const int len = e.long_word() ? 2 * N - 1 : 1;
        for (int i = 0; i < m; ++i)
          put({n, r, i}, word(i, Dir::B, len), even_m ? (r - 1) * i : 0);
        break;
      }
      case Kind::E: {
        const int r = (n - 1) / 2;
        put({n, r, e.j}, word(e.j, Dir::A, 2 * e.s + 1), 0);
        break;
      }
    }
    return c;
  }

  BasisReport verify_named_basis(int n) {
    BasisReport rep;
    rep.dimension = hh_dimension(n);
    const auto& named = named_basis(n);
    rep.named_count = static_cast<int>(named.size());
    if (rep.named_count != rep.dimension) {
      rep.ok = false;
      rep.detail = "count " + std::to_string(rep.named_count) + " != dim " +
                   std::to_string(rep.dimension);
      return rep;
    }
    std::map<Bideg, int> per_block;
    for (const NamedElement& e : named) {
      Cochain c = named_cocycle(e);
      if (!is_cocycle(c)) {
        rep.ok = false;
        rep.detail = e.label() + " is not a cocycle";
        return rep;
      }
      auto b = cochain_bideg(c, a_->N());
      if (!b) {
        rep.ok = false;
        rep.detail = e.label() + " is not bihomogeneous";
        return rep;
      }
      ++per_block[*b];
    }
    for (const auto& [b, cnt] : per_block) {
      const BlockSolve& bs = block_solve(n, b);
      if (static_cast<int>(bs.named.size()) != cnt) {
        rep.ok = false;
        rep.detail = "block bookkeeping mismatch";
        return rep;
      }
      const int want = cnt + image_block(n, b).rank;
      if (bs.rank != want) {
        rep.ok = false;
        rep.detail = "block (" + std::to_string(b.wd) + "," +
                     std::to_string(b.wdbar) + "): rank " +
                     std::to_string(bs.rank) + " != named+image " +
                     std::to_string(want);
        return rep;
      }
    }
    return rep;
  }

  // Coordinates of a cocycle in the named basis, modulo coboundaries.
  CohomologyClass reduce_to_basis(const Cochain& c) {
    const int n = c.degree();
    if (!is_cocycle(c)) throw std::invalid_argument("reduce_to_basis: not a cocycle");
    CohomologyClass out;
    out.n = n;
    if (c.is_zero()) return out;
    // Split into bidegree parts; each part is itself a cocycle.
    std::map<Bideg, Cochain> parts;
    for (const auto& [g, u] : c.values()) {
      for (const auto& [p, s] : u.terms()) {
        AlgebraElement one_term;
        one_term.add(p, s);
        auto ins = parts.try_emplace(bideg_of(g, p, a_->N()), n);
        ins.first->second.add(g, one_term);
      }
    }
    for (const auto& [b, part] : parts) {
      const BlockSolve& bs = block_solve(n, b);
      std::vector<Scalar> v = block_vector(part, n, b);
      auto x = bs.red->solve(v);
      if (!x)
        throw std::logic_error("reduce_to_basis: cocycle outside basis span");
      for (size_t k = 0; k < bs.named.size(); ++k) out.add(bs.named[k], (*x)[k]);
    }
    return out;
  }

  CohomologyClass reduce_named(const NamedElement& e) {
    CohomologyClass out;
    out.n = e.n;
    out.add(e, a_->scalar(1));
    return out;
  }

 private:
  struct BlockImage {
    Matrix<Scalar> mat;
    std::unique_ptr<RowReducer<Scalar>> red;
    int rank = 0;
  };
  struct BlockSolve {
    std::vector<NamedElement> named;  // named elements living in this block
    Matrix<Scalar> mat;               // columns: [named | image generators]
    std::unique_ptr<RowReducer<Scalar>> red;
    int rank = 0;
  };

  std::vector<Scalar> block_vector(const Cochain& c, int n, const Bideg& b) {
    cochain_basis(n);
    const auto& idx = blocks(n).at(b);
    std::vector<Scalar> full = to_vector(c);
    std::vector<Scalar> v;
    v.reserve(idx.size());
    for (int k : idx) v.push_back(full[k]);
    return v;
  }

  // Image of the coboundary inside block b of C^n, as column vectors.
  BlockImage& image_block(int n, const Bideg& b) {
    auto key = std::make_pair(n, b);
    auto it = img_.find(key);
    if (it != img_.end()) return it->second;
    BlockImage bi;
    const auto& tgt_blocks = blocks(n);
    auto tgt = tgt_blocks.find(b);
    const int rows = tgt == tgt_blocks.end() ? 0 : static_cast<int>(tgt->second.size());
    std::vector<int> src;
    if (n >= 1) {
      const auto& src_blocks = blocks(n - 1);
      auto sit = src_blocks.find(b);
      if (sit != src_blocks.end()) src = sit->second;
    }
    const int cols = static_cast<int>(src.size());
    if (rows == 0 || cols == 0) {
      bi.rank = 0;
      return img_.emplace(key, std::move(bi)).first->second;
    }
    bi.mat = Matrix<Scalar>(rows, cols);
    for (int k = 0; k < cols; ++k) {
      std::vector<Scalar> col = block_vector(coboundary(elementary(n - 1, src[k])), n, b);
      for (int rr = 0; rr < rows; ++rr) bi.mat.at(rr, k) = col[rr];
    }
    bi.red = std::make_unique<RowReducer<Scalar>>(bi.mat);
    bi.rank = bi.red->rank();
    return img_.emplace(key, std::move(bi)).first->second;
  }

  const BlockSolve& block_solve(int n, const Bideg& b) {
    auto key = std::make_pair(n, b);
    auto it = solve_.find(key);
    if (it != solve_.end()) return it->second;
    BlockSolve bs;
    for (const NamedElement& e : named_basis(n)) {
      auto bd = cochain_bideg(named_cocycle(e), a_->N());
      if (bd && *bd == b) bs.named.push_back(e);
    }
    const auto& tgt = blocks(n).at(b);
    const int rows = static_cast<int>(tgt.size());
    BlockImage& img = image_block(n, b);
    const int icols = img.rank > 0 ? img.mat.cols() : 0;
    bs.mat = Matrix<Scalar>(rows, static_cast<int>(bs.named.size()) + icols);
    for (size_t k = 0; k < bs.named.size(); ++k) {
      std::vector<Scalar> col = block_vector(named_cocycle(bs.named[k]), n, b);
      for (int rr = 0; rr < rows; ++rr) bs.mat.at(rr, static_cast<int>(k)) = col[rr];
    }
    for (int k = 0; k < icols; ++k)
      for (int rr = 0; rr < rows; ++rr)
        bs.mat.at(rr, static_cast<int>(bs.named.size()) + k) = img.mat.at(rr, k);
    bs.red = std::make_unique<RowReducer<Scalar>>(bs.mat);
    bs.rank = bs.red->rank();
    return solve_.emplace(key, std::move(bs)).first->second;
  }

  const Algebra* a_;
  Resolution* r_;
  std::map<int, std::vector<std::pair<GGen, Path>>> cbasis_;
  std::map<int, std::map<std::pair<GGen, Path>, int>> cindex_;
  std::map<int, std::map<Bideg, std::vector<int>>> blocks_;
  std::map<int, int> rankd_;
  std::map<int, std::vector<NamedElement>> named_;
  std::map<std::pair<int, Bideg>, BlockImage> img_;
  std::map<std::pair<int, Bideg>, BlockSolve> solve_;
};

}  // namespace hhq
