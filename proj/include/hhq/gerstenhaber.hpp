#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hhq/cohomology.hpp"
#include "hhq/linsolve.hpp"

namespace hhq {

// x * b * y inside P_n, for x, y in A.
inline BimodElement bimod_mul(const Algebra& a, const AlgebraElement& x,
                              const BimodElement& b, const AlgebraElement& y) {
  BimodElement out;
  for (const auto& [k, c] : b.terms()) {
    AlgebraElement left = a.mul(x, a.reduce_path(k.l));
    if (left.is_zero()) continue;
    AlgebraElement right = a.mul(a.reduce_path(k.r), y);
    if (right.is_zero()) continue;
    for (const auto& [pl, cl] : left.terms())
      for (const auto& [pr, cr] : right.terms())
        out.add({k.g, pl, pr}, c * cl * cr);
  }
  return out;
}

// A^e-linear evaluation of a degree-n cochain on an element of P_n.
inline AlgebraElement apply_cochain(const Algebra& a, const Cochain& phi,
                                    const BimodElement& b) {
  AlgebraElement out;
  for (const auto& [k, c] : b.terms()) {
    if (k.g.n != phi.degree())
      throw std::invalid_argument("apply_cochain: level mismatch");
    AlgebraElement mid = phi.value(k.g);
    if (mid.is_zero()) continue;
    out += a.mul(a.mul(a.reduce_path(k.l), mid), a.reduce_path(k.r)) * c;
  }
  return out;
}

enum class EulerKind { D, Dbar };
enum class PivotOrder { Forward, Reverse };

// Solves d(X) = target for X supported on the given candidate keys, as a
// sparse exact linear system over the canonical-form coordinates of P_{k-1}.
// Returns the deterministic particular solution (in candidate order);
// throws msg if the system is inconsistent.
inline std::vector<Scalar> solve_boundary_system(
    Resolution& r, const std::vector<BimodElement::Key>& cand,
    const BimodElement& target, const char* msg) {
  const Algebra& a = r.algebra();
  std::map<BimodElement::Key, std::map<int, Scalar>> rows;
  for (size_t c = 0; c < cand.size(); ++c) {
    BimodElement unit;
    unit.add(cand[c], a.scalar(1));
    const BimodElement du = r.apply_d(unit);
    for (const auto& [key, v] : du.terms()) rows[key][int(c)] = v;
  }
  for (const auto& [key, v] : target.terms()) rows.try_emplace(key);
  SparseSystem sys(int(cand.size()));
  for (auto& [key, lhs] : rows) {
    const auto& t = target.terms();
    auto it = t.find(key);
    if (!sys.add(std::move(lhs), it == t.end() ? a.scalar(0) : it->second))
      throw std::logic_error(msg);
  }
  return sys.solution();
}

// A delta-lifting f_* of a derivation delta: values f_n(1 (x) g (x) 1) with
//   d_n(f_n(g)) = f_{n-1}(d_n(g)),
// where f_{n-1} extends as a delta^e-operator
//   f(u (x) h (x) v) = delta(u) (x) h (x) v + u * f(h) * v + u (x) h (x) delta(v)
// and f_0 vanishes on generators (so eps . f_0 = delta . eps).  Values are
// solved level by level as exact linear systems; any solution induces the
// same map on cohomology, so the deterministic first solution is kept.  The
// Eulerian derivations of the two arrow gradings admit the closed diagonal
// lifting f_n(g) = deg(g) * g, available via the `diagonal` factory.
class DeltaLifting {
 public:
  DeltaLifting(Cohomology& h, Derivation d, PivotOrder order = PivotOrder::Forward)
      : h_(&h),
        a_(&h.algebra()),
        r_(&h.resolution()),
        d_(std::move(d)),
        order_(order) {
    auto parts = d_.homogeneous_parts();
    if (parts.size() == 1)
      off_ = Bideg{parts.begin()->first.first, parts.begin()->first.second};
    else if (parts.empty())
      off_ = Bideg{0, 0};
    // mixed-degree derivations get no ansatz restriction (off_ empty)
  }

  static DeltaLifting diagonal(Cohomology& h, EulerKind which) {
    DeltaLifting l(h, which == EulerKind::D ? euler_d(h.algebra())
                                            : euler_dbar(h.algebra()));
    l.diag_ = which;
    return l;
  }

  const Derivation& derivation() const { return d_; }

  const BimodElement& value(const GGen& g) {
    auto it = vals_.find(g);
    if (it != vals_.end()) return it->second;
    BimodElement F;
    if (g.n > 0 && diag_) {
      const int deg = *diag_ == EulerKind::D ? r_->g_deg(g) : r_->g_degbar(g);
      const int m = a_->m();
      F.add({g, Path::vertex(m, g.source()), Path::vertex(m, g.target(m))},
            a_->scalar(deg));
    } else if (g.n > 0) {
      F = solve(g);
    }
    return vals_.emplace(g, std::move(F)).first->second;
  }

  // The required boundary f_{n-1}(d_n(g)) of the unknown f_n(g).
  BimodElement rhs(const GGen& g) {
    BimodElement out;
    for (const auto& [k, c] : r_->differential(g).terms()) {
      AlgebraElement dl = d_.apply(a_->reduce_path(k.l));
      for (const auto& [p, cp] : dl.terms()) out.add({k.g, p, k.r}, c * cp);
      AlgebraElement dr = d_.apply(a_->reduce_path(k.r));
      for (const auto& [p, cp] : dr.terms()) out.add({k.g, k.l, p}, c * cp);
      const BimodElement& Fh = value(k.g);
      if (!Fh.is_zero())
        out += bimod_mul(*a_, a_->reduce_path(k.l), Fh, a_->reduce_path(k.r)) * c;
    }
    return out;
  }

  // Re-checks the commuting squares up to level n_max with an independent
  // differential application.
  bool verify(int n_max) {
    for (int n = 1; n <= n_max; ++n)
      for (const GGen& g : r_->generators(n))
        if (!(r_->apply_d(value(g)) == rhs(g))) return false;
    return true;
  }

  // f^#(phi)(g) = delta(phi(g)) - phi(f_n(g)); represents [delta, phi].
  Cochain sharp(const Cochain& phi) {
    const int n = phi.degree();
    Cochain out(n);
    for (const GGen& g : r_->generators(n)) {
      AlgebraElement v = d_.apply(phi.value(g));
      v -= apply_cochain(*a_, phi, value(g));
      out.add(g, v);
    }
    return out;
  }

  // The lifting of the conjugated derivation rho^shift . delta . rho^-shift
  // under the rotation automorphism rho: vertex i -> i + shift.
  DeltaLifting rotated(int shift) const {
    const int m = a_->m();
    std::vector<AlgebraElement> da(m), db(m);
    for (int i = 0; i < m; ++i) {
      da[imod(i + shift, m)] = d_.on_a(i).rotated(shift);
      db[imod(i + shift, m)] = d_.on_abar(i).rotated(shift);
    }
    DeltaLifting out(*h_, Derivation(*a_, std::move(da), std::move(db), false),
                     order_);
    out.diag_ = diag_;
    for (const auto& [g, F] : vals_)
      out.vals_.emplace(g.rotated(shift, m), F.rotated(shift, m));
    return out;
  }

 private:
  BimodElement solve(const GGen& g) {
    const int m = a_->m();
    BimodElement target = rhs(g);
    std::vector<BimodElement::Key> cand;
    for (const GGen& h : r_->generators(g.n)) {
      for (const Path& l : a_->parallel_paths(g.source(), h.source())) {
        for (const Path& r : a_->parallel_paths(h.target(m), g.target(m))) {
          if (off_) {
            if (l.d() + r_->g_deg(h) + r.d() != r_->g_deg(g) + off_->wd) continue;
            if (l.dbar() + r_->g_degbar(h) + r.dbar() !=
                r_->g_degbar(g) + off_->wdbar)
              continue;
          }
          cand.push_back({h, l, r});
        }
      }
    }
    if (order_ == PivotOrder::Reverse) std::reverse(cand.begin(), cand.end());
    std::vector<Scalar> x = solve_boundary_system(
        *r_, cand, target, "lift_derivation: constraint system inconsistent");
    BimodElement F;
    for (size_t k = 0; k < cand.size(); ++k)
      if (!x[k].is_zero()) F.add(cand[k], x[k]);
    return F;
  }

  Cohomology* h_;
  const Algebra* a_;
  Resolution* r_;
  Derivation d_;
  PivotOrder order_;
  std::optional<Bideg> off_;
  std::optional<EulerKind> diag_;
  std::map<GGen, BimodElement> vals_;
};

// A chain map Phi_k: P_{n0+k} -> P_k lifting a degree-n0 cocycle phi through
// the resolution: eps . Phi_0 = phi and d_k . Phi_k = Phi_{k-1} . d_{n0+k}.
// Composition with another cocycle computes cup products.
class ChainMap {
 public:
  ChainMap(Cohomology& h, Cochain rep)
      : h_(&h),
        a_(&h.algebra()),
        r_(&h.resolution()),
        rep_(std::move(rep)),
        off_(cochain_bideg(rep_, h.algebra().N())) {
    if (!h.is_cocycle(rep_))
      throw std::invalid_argument("chain map: representative is not a cocycle");
  }

  int source_degree() const { return rep_.degree(); }

  // Phi_{g.n - n0}(1 (x) g (x) 1), an element of P_{g.n - n0}.
  const BimodElement& value(const GGen& g) {
    if (g.n < rep_.degree())
      throw std::invalid_argument("chain map: level below the cocycle degree");
    auto it = vals_.find(g);
    if (it != vals_.end()) return it->second;
    const int m = a_->m();
    BimodElement F;
    if (g.n == rep_.degree()) {
      const AlgebraElement u = rep_.value(g);
      for (const auto& [p, c] : u.terms())
        F.add({GGen{0, 0, p.target()}, p, Path::vertex(m, p.target())}, c);
    } else {
      F = solve(g);
    }
    return vals_.emplace(g, std::move(F)).first->second;
  }

  bool verify(int k_max) {
    const int n0 = rep_.degree();
    for (int k = 0; k <= k_max; ++k) {
      for (const GGen& g : r_->generators(n0 + k)) {
        if (k == 0) {
          if (!(r_->augment(value(g)) == rep_.value(g))) return false;
        } else if (!(r_->apply_d(value(g)) == rhs(g))) {
          return false;
        }
      }
    }
    return true;
  }

 private:
  BimodElement rhs(const GGen& g) {
    BimodElement out;
    for (const auto& [k, c] : r_->differential(g).terms())
      out += bimod_mul(*a_, a_->reduce_path(k.l), value(k.g),
                       a_->reduce_path(k.r)) *
             c;
    return out;
  }

  BimodElement solve(const GGen& g) {
    const int m = a_->m();
    const int k = g.n - rep_.degree();
    BimodElement target = rhs(g);
    std::vector<BimodElement::Key> cand;
    for (const GGen& h : r_->generators(k)) {
      for (const Path& l : a_->parallel_paths(g.source(), h.source())) {
        for (const Path& r : a_->parallel_paths(h.target(m), g.target(m))) {
          if (off_) {
            if (l.d() + r_->g_deg(h) + r.d() != r_->g_deg(g) + off_->wd) continue;
            if (l.dbar() + r_->g_degbar(h) + r.dbar() !=
                r_->g_degbar(g) + off_->wdbar)
              continue;
          }
          cand.push_back({h, l, r});
        }
      }
    }
    std::vector<Scalar> x = solve_boundary_system(
        *r_, cand, target, "yoneda_lift: constraint system inconsistent");
    BimodElement F;
    for (size_t c = 0; c < cand.size(); ++c)
      if (!x[c].is_zero()) F.add(cand[c], x[c]);
    return F;
  }

  Cohomology* h_;
  const Algebra* a_;
  Resolution* r_;
  Cochain rep_;
  std::optional<Bideg> off_;
  std::map<GGen, BimodElement> vals_;
};

// One row of the eigenvalue tables: the four diagonal eigenvalues of a named
// basis element under [phi_{1,0},-], [psi_{1,0},-], the sum, the difference.
struct EigenRow {
  NamedElement e;
  int phi = 0, psi = 0, sum = 0, diff = 0;
};

// Bracket and cup-product engine on top of the cochain-level machinery.
class Gerstenhaber {
 public:
  explicit Gerstenhaber(Cohomology& h)
      : h_(&h), a_(&h.algebra()), r_(&h.resolution()) {}

  Cohomology& cohomology() const { return *h_; }
  const Algebra& algebra() const { return *a_; }

  CohomologyClass unit_class(const NamedElement& e) const {
    CohomologyClass x;
    x.n = e.n;
    x.add(e, a_->scalar(1));
    return x;
  }

  Cochain named_rep(const CohomologyClass& x) {
    Cochain c(x.n);
    for (const auto& [e, s] : x.coords) c += h_->named_cocycle(e) * s;
    return c;
  }

  // ---- Eulerian (diagonal) brackets ----

  // Scales each term (g || u) by its weight in the chosen grading; on
  // cocycles this is [phi_{1,0}, -] (D) or [psi_{1,0}, -] (Dbar).
  Cochain euler_bracket(EulerKind which, const Cochain& c) const {
    Cochain out(c.degree());
    const int N = a_->N();
    for (const auto& [g, u] : c.values()) {
      for (const auto& [p, s] : u.terms()) {
        Bideg b = bideg_of(g, p, N);
        AlgebraElement term;
        term.add(p, s * a_->scalar(which == EulerKind::D ? b.wd : b.wdbar));
        out.add(g, term);
      }
    }
    return out;
  }

  // The four diagonal eigenvalues of a named element.
  EigenRow eigen_row(const NamedElement& e) {
    auto b = cochain_bideg(h_->named_cocycle(e), a_->N());
    if (!b) throw std::logic_error("eigen_row: named element not bihomogeneous");
    return {e, b->wd, b->wdbar, b->wd + b->wdbar, b->wd - b->wdbar};
  }

  std::vector<EigenRow> eigenvalue_table(int n) {
    std::vector<EigenRow> rows;
    for (const NamedElement& e : h_->named_basis(n)) rows.push_back(eigen_row(e));
    return rows;
  }

  // ---- derivations and degree-1 classes ----

  // The degree-1 cochain of a derivation: inner derivations land in the
  // image of the degree-0 coboundary under this dictionary.
  Cochain derivation_cochain(const Derivation& d) const {
    Cochain c(1);
    const int m = a_->m();
    for (int i = 0; i < m; ++i) {
      c.add(GGen{1, 0, i}, d.on_a(i));
      c.add(GGen{1, 1, i}, -d.on_abar(imod(i - 1, m)));
    }
    return c;
  }

  Derivation to_derivation(const Cochain& c) const {
    if (c.degree() != 1)
      throw std::invalid_argument("to_derivation: degree must be 1");
    const int m = a_->m();
    std::vector<AlgebraElement> da(m), db(m);
    for (int i = 0; i < m; ++i) {
      da[i] = c.value(GGen{1, 0, i});
      db[i] = -c.value(GGen{1, 1, imod(i + 1, m)});
    }
    return Derivation(*a_, std::move(da), std::move(db));
  }

  Derivation named_derivation(const NamedElement& e) const {
    if (e.n != 1)
      throw std::invalid_argument("named_derivation: degree must be 1");
    if (e.kind == Kind::Phi) return euler_d(*a_);
    if (e.kind == Kind::Psi) return euler_dbar(*a_);
    // E_{1,j,s}: a_j -> a_j (abar_j a_j)^s, all other arrows -> 0.
    const int m = a_->m();
    std::vector<AlgebraElement> da(m), db(m);
    da[e.j] = a_->reduce_path(Path(m, e.j, Path::alt_word(Dir::A, 2 * e.s + 1)));
    return Derivation(*a_, std::move(da), std::move(db));
  }

  DeltaLifting& lifting(const NamedElement& e, PivotOrder order = PivotOrder::Forward) {
    auto key = std::make_pair(e, order == PivotOrder::Reverse);
    auto it = lifts_.find(key);
    if (it != lifts_.end()) return it->second;
    return lifts_.emplace(key, DeltaLifting(*h_, named_derivation(e), order))
        .first->second;
  }

  // [x, y] for x of degree 1 via the lifted-derivation action
  // f^#(phi) = delta . phi - phi . f_n.
  CohomologyClass bracket_deg1(const CohomologyClass& x, const CohomologyClass& y,
                               PivotOrder order = PivotOrder::Forward) {
    if (x.is_zero() || y.is_zero()) return {};
    if (x.n != 1) throw std::invalid_argument("bracket_deg1: first argument degree");
    Cochain rep_y = named_rep(y);
    Cochain total(y.n);
    for (const auto& [e, c] : x.coords)
      total += lifting(e, order).sharp(rep_y) * c;
    return h_->reduce_to_basis(total);
  }

  // ---- cup products ----

  ChainMap& chain_map(const NamedElement& e) {
    auto it = chains_.find(e);
    if (it != chains_.end()) return it->second;
    return chains_.emplace(e, ChainMap(*h_, h_->named_cocycle(e))).first->second;
  }

  // Central element of a degree-0 named class.
  AlgebraElement central_element(const NamedElement& e) const {
    if (e.n != 0) throw std::invalid_argument("central_element: degree must be 0");
    switch (e.kind) {
      case Kind::One:
        return a_->one();
      case Kind::Eps:
        return a_->eps(e.j);
      case Kind::FPow:
        return a_->f_power(e.j, e.s);
      default:
        throw std::invalid_argument("central_element: not a degree-0 kind");
    }
  }

  CohomologyClass cup(const NamedElement& x, const NamedElement& y) {
    auto key = std::make_pair(x, y);
    auto it = cups_.find(key);
    if (it != cups_.end()) return it->second;
    CohomologyClass out = cup_uncached(x, y);
    cups_.emplace(key, out);
    return out;
  }

  CohomologyClass cup(const CohomologyClass& x, const CohomologyClass& y) {
    CohomologyClass out;
    out.n = x.n + y.n;
    for (const auto& [ex, cx] : x.coords)
      for (const auto& [ey, cy] : y.coords) {
        CohomologyClass part = cup(ex, ey);
        part *= cx * cy;
        out += part;
      }
    return out;
  }

  // ---- Method 7.1: the eigenvalue filter ----

  // Named elements of degree |x|+|y|-1 whose eigenvalues under [phi,-] and
  // [phi+psi,-] match the sums for the pair; an empty list proves [x,y] = 0.
  std::vector<NamedElement> eigen_filter(const NamedElement& x,
                                         const NamedElement& y) {
    const int n = x.n + y.n - 1;
    std::vector<NamedElement> out;
    if (n < 0) return out;
    EigenRow rx = eigen_row(x), ry = eigen_row(y);
    for (const NamedElement& e : h_->named_basis(n)) {
      EigenRow re = eigen_row(e);
      if (re.phi == rx.phi + ry.phi && re.sum == rx.sum + ry.sum)
        out.push_back(e);
    }
    return out;
  }

 private:
  CohomologyClass cup_uncached(const NamedElement& x, const NamedElement& y) {
    if (x.n == 0 || y.n == 0) {
      const NamedElement& zc = x.n == 0 ? x : y;
      const NamedElement& oc = x.n == 0 ? y : x;
      AlgebraElement z = central_element(zc);
      Cochain rep = h_->named_cocycle(oc);
      Cochain out(rep.degree());
      for (const auto& [g, u] : rep.values()) out.add(g, a_->mul(z, u));
      return h_->reduce_to_basis(out);
    }
    if (y.n > x.n) {
      CohomologyClass sw = cup(y, x);
      if ((x.n * y.n) % 2 == 1) sw *= a_->scalar(-1);
      return sw;
    }
    // Composing the second factor's representative with the chain-map lift
    // of the first yields the product in the opposite order (calibrated
    // against phi_{1,0} psi_{1,0} = mN pi_{2,0}); graded commutativity
    // supplies the correcting sign.
    ChainMap& phi = chain_map(x);
    Cochain rep_y = h_->named_cocycle(y);
    Cochain out(x.n + y.n);
    for (const GGen& g : r_->generators(x.n + y.n))
      out.add(g, apply_cochain(*a_, rep_y, phi.value(g)));
    CohomologyClass red = h_->reduce_to_basis(out);
    if ((x.n * y.n) % 2 != 0) red *= a_->scalar(-1);
    return red;
  }

  Cohomology* h_;
  const Algebra* a_;
  Resolution* r_;
  std::map<std::pair<NamedElement, bool>, DeltaLifting> lifts_;
  std::map<NamedElement, ChainMap> chains_;
  std::map<std::pair<NamedElement, NamedElement>, CohomologyClass> cups_;
};

}  // namespace hhq
