#pragma once

// Brackets among the multiplicative generators of the cohomology ring.
//
// A bracket with a degree <= 1 argument is computed directly (degree-1
// classes act through lifted derivations; two degree-0 classes bracket to
// zero for degree reasons).  Every remaining generator pair is an unknown,
// restricted by the eigenvalue filter to a finite candidate span: the
// bracket is an eigenvector for both Euler derivations, so an empty span
// already proves it zero.  The surviving unknown coefficients are pinned by
// instantiating the Poisson identity
//
//   [x y, z] = [x, z] y + (-1)^{|x|(|z|-1)} x [y, z]
//
// and the graded Jacobi identity over the generator set, collecting every
// instance into one global sparse linear system.  Cup products are computed
// honestly through Yoneda liftings, never assumed.  A coefficient is
// reported as pinned only when the accumulated equations determine it
// uniquely; an inconsistent instance throws, quoting the identity.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hhq/gerstenhaber.hpp"
#include "hhq/linsolve.hpp"

namespace hhq {

// Multiplicative generators of the cohomology ring.  The unit is omitted:
// [1, -] = 0 because the bracket is a graded biderivation of the cup
// product.
inline std::vector<NamedElement> ring_generators(const Algebra& alg) {
  const int m = alg.m(), N = alg.N();
  std::vector<NamedElement> g;
  for (int i = 0; i < m; ++i) g.push_back({Kind::Eps, 0, 0, i, 0});
  if (N > 1)
    for (int i = 0; i < m; ++i) g.push_back({Kind::FPow, 0, 0, i, 1});
  g.push_back({Kind::Phi, 1, 0, 0, 0});
  g.push_back({Kind::Psi, 1, 0, 0, 0});
  if (m % 2 == 0) {
    g.push_back({Kind::Chi, 2, 0, 0, 0});
    g.push_back({Kind::Phi, m - 1, -1, 0, 0});
    g.push_back({Kind::Psi, m - 1, 1, 0, 0});
    g.push_back({Kind::Chi, m, 1, 0, 0});
    g.push_back({Kind::Chi, m, -1, 0, 0});
  } else {
    if (N > 1)
      for (int j = 0; j < m; ++j) g.push_back({Kind::F, 2, 0, j, 1});
    g.push_back({Kind::Chi, 4, 0, 0, 0});
    g.push_back({Kind::Phi, m - 1, -1, 0, 0});
    g.push_back({Kind::Psi, m - 1, 1, 0, 0});
    g.push_back({Kind::Chi, 2 * m, 2, 0, 0});
    g.push_back({Kind::Chi, 2 * m, -2, 0, 0});
  }
  return g;
}

// How a bracket value was settled.
enum class BracketStatus {
  Known,         // direct route: a degree <= 1 argument, the unit, or [x,x]
  FilteredZero,  // empty eigenvalue-filter candidate span
  Pinned,        // candidate coefficients forced uniquely by the system
  Undetermined,  // the accumulated identities leave a free coefficient
};

struct BracketValue {
  BracketStatus status = BracketStatus::Known;
  CohomologyClass value;  // meaningless when status == Undetermined
};

class PoissonSolver {
 public:
  explicit PoissonSolver(Gerstenhaber& g, int degree_cap = 0)
      : g_(&g),
        h_(&g.cohomology()),
        a_(&g.algebra()),
        cap_(degree_cap > 0 ? degree_cap : 2 * g.algebra().m() + 2),
        sys_(0) {}

  // Enrolls every generator pair, instantiates identities to closure, and
  // accumulates the global system.  Throws on an inconsistent instance.
  void run() {
    if (ran_) return;
    ran_ = true;
    gens_ = ring_generators(*a_);
    for (size_t i = 0; i < gens_.size(); ++i)
      for (size_t k = i; k < gens_.size(); ++k) (void)bexpr(gens_[i], gens_[k]);
    build_multipliers();
    std::set<int> done;
    for (int round = 0; round < 4 && !work_.empty(); ++round) {
      std::vector<int> batch = std::move(work_);
      work_.clear();
      for (int idx : batch) {
        if (!done.insert(idx).second) continue;
        const NamedElement A = unknowns_[idx].x, B = unknowns_[idx].y;
        for (const NamedElement& w : mult_) {
          add_poisson(A, w, B);
          add_poisson(w, A, B);
          add_poisson(B, w, A);
          add_poisson(w, B, A);
        }
        if (A.n + B.n <= a_->m() + 2)
          for (const NamedElement& w : jac_) add_jacobi(w, A, B);
      }
    }
  }

  // Post-run value of [x, y].
  BracketValue bracket(const NamedElement& x, const NamedElement& y) {
    BracketValue bv;
    LinExpr e = bexpr(x, y);
    bv.value = e.c0;
    if (e.lin.empty()) {
      bv.status = BracketStatus::Known;
      if (x.n >= 2 && y.n >= 2 || (x.n == 0) != (y.n == 0)) {
        NamedElement u = x, v = y;
        if (v < u) std::swap(u, v);
        auto it = index_.find({u, v});
        if (it != index_.end() && unknowns_[it->second].cands.empty())
          bv.status = BracketStatus::FilteredZero;
      }
      return bv;
    }
    for (const auto& [var, K] : e.lin) {
      std::optional<Scalar> val = sys_.unique_value(var);
      if (!val) {
        bv.status = BracketStatus::Undetermined;
        bv.value = {};
        return bv;
      }
      CohomologyClass t = K;
      t *= *val;
      bv.value += t;
    }
    bv.status = BracketStatus::Pinned;
    return bv;
  }

  const std::vector<NamedElement>& generators() const { return gens_; }
  int variables() const { return n_vars_; }
  int rank() const { return sys_.rank(); }
  int instances() const { return n_instances_; }

  // When enabled before run(), records every emitted instance equation in
  // human-readable form (one line per basis coordinate).
  bool trace = false;
  const std::vector<std::string>& trace_log() const { return trace_log_; }
  const std::string& variable_name(int v) const { return var_names_[v]; }

  // Enrolled pairs whose value the identities failed to force.
  std::vector<std::pair<NamedElement, NamedElement>> undetermined() {
    std::vector<std::pair<NamedElement, NamedElement>> out;
    for (const Unknown& un : unknowns_)
      if (bracket(un.x, un.y).status == BracketStatus::Undetermined)
        out.push_back({un.x, un.y});
    return out;
  }

 private:
  // Affine-linear expression c0 + sum_v u_v * K_v over unknown scalars u_v.
  struct LinExpr {
    int n = 0;
    CohomologyClass c0;
    std::map<int, CohomologyClass> lin;

    void accumulate(const LinExpr& o, const Scalar& w) {
      if (w.is_zero()) return;
      CohomologyClass t = o.c0;
      t *= w;
      c0 += t;
      for (const auto& [v, K] : o.lin) {
        CohomologyClass tk = K;
        tk *= w;
        auto it = lin.find(v);
        if (it == lin.end()) {
          lin.emplace(v, std::move(tk));
        } else {
          it->second += tk;
          if (it->second.is_zero()) lin.erase(it);
        }
      }
    }
  };

  struct Unknown {
    NamedElement x, y;  // canonical order x <= y
    std::vector<NamedElement> cands;
    int base = -1;  // first variable index; -1 when cands is empty
  };

  void build_multipliers() {
    const int m = a_->m(), N = a_->N();
    mult_.push_back({Kind::Eps, 0, 0, 0, 0});
    mult_.push_back({Kind::Eps, 0, 0, 1, 0});
    if (N > 1) {
      mult_.push_back({Kind::FPow, 0, 0, 0, 1});
      mult_.push_back({Kind::FPow, 0, 0, 1, 1});
    }
    mult_.push_back({Kind::Phi, 1, 0, 0, 0});
    mult_.push_back({Kind::Psi, 1, 0, 0, 0});
    if (m % 2 == 0) {
      mult_.push_back({Kind::Chi, 2, 0, 0, 0});
    } else {
      mult_.push_back({Kind::Chi, 4, 0, 0, 0});
      if (N > 1) {
        mult_.push_back({Kind::F, 2, 0, 0, 1});
        mult_.push_back({Kind::F, 2, 0, 1, 1});
      }
    }
    jac_ = h_->named_basis(1);
  }

  // [x, K] for |x| = 1; the Euler derivations act diagonally on named
  // elements, so their brackets avoid the generic lifting solver.
  CohomologyClass deg1_bracket(const NamedElement& x, const CohomologyClass& y) {
    if (y.is_zero()) return {};
    if (x.kind == Kind::Phi || x.kind == Kind::Psi) {
      CohomologyClass out;
      out.n = y.n;
      for (const auto& [e, c] : y.coords) {
        EigenRow r = g_->eigen_row(e);
        out.add(e, c * a_->scalar(x.kind == Kind::Phi ? r.phi : r.psi));
      }
      return out;
    }
    return g_->bracket_deg1(g_->unit_class(x), y);
  }

  // Symbolic [x, y]: known classes resolve immediately, the rest enroll an
  // unknown pair whose coordinates range over the eigenvalue-filter span.
  LinExpr bexpr(const NamedElement& x, const NamedElement& y) {
    LinExpr out;
    out.n = x.n + y.n - 1;
    if (x.kind == Kind::One || y.kind == Kind::One) return out;
    if (x.n == 0 && y.n == 0) return out;  // lands in degree -1
    if (x.n == 1) {
      out.c0 = deg1_bracket(x, g_->unit_class(y));
      return out;
    }
    if (y.n == 1) {
      // [x, y] = -(-1)^{(|x|-1)(|y|-1)} [y, x] and |y| - 1 = 0.
      out.c0 = deg1_bracket(y, g_->unit_class(x));
      out.c0 *= a_->scalar(-1);
      return out;
    }
    NamedElement u = x, v = y;
    Scalar sign = a_->scalar(1);
    if (v < u) {
      std::swap(u, v);
      sign = a_->scalar(((x.n - 1) * (y.n - 1)) % 2 != 0 ? 1 : -1);
    }
    if (u == v && u.n % 2 == 1 && !a_->scalar(2).is_zero())
      return out;  // antisymmetry forces [x, x] = 0 in odd degree
    const Unknown& un = enroll(u, v);
    for (size_t t = 0; t < un.cands.size(); ++t) {
      CohomologyClass K = g_->unit_class(un.cands[t]);
      K *= sign;
      out.lin.emplace(un.base + int(t), std::move(K));
    }
    return out;
  }

  // [x, K] for a known class K, expanded coordinatewise.
  LinExpr bclass(const NamedElement& x, const CohomologyClass& K) {
    LinExpr out;
    out.n = x.n + K.n - 1;
    for (const auto& [e, c] : K.coords) out.accumulate(bexpr(x, e), c);
    return out;
  }

  LinExpr cup_expr_class(const LinExpr& L, const CohomologyClass& y) {
    LinExpr out;
    out.n = L.n + y.n;
    out.c0 = g_->cup(L.c0, y);
    for (const auto& [v, K] : L.lin) {
      CohomologyClass c = g_->cup(K, y);
      if (!c.is_zero()) out.lin.emplace(v, std::move(c));
    }
    return out;
  }

  LinExpr cup_class_expr(const CohomologyClass& x, const LinExpr& L) {
    LinExpr out;
    out.n = x.n + L.n;
    out.c0 = g_->cup(x, L.c0);
    for (const auto& [v, K] : L.lin) {
      CohomologyClass c = g_->cup(x, K);
      if (!c.is_zero()) out.lin.emplace(v, std::move(c));
    }
    return out;
  }

  const Unknown& enroll(const NamedElement& u, const NamedElement& v) {
    auto key = std::make_pair(u, v);
    auto it = index_.find(key);
    if (it != index_.end()) return unknowns_[it->second];
    Unknown un{u, v, g_->eigen_filter(u, v), -1};
    if (!un.cands.empty()) {
      un.base = n_vars_;
      n_vars_ += int(un.cands.size());
      for (const NamedElement& c : un.cands)
        var_names_.push_back("[" + u.label() + "," + v.label() + "]@" +
                             c.label());
    }
    const int idx = int(unknowns_.size());
    index_.emplace(key, idx);
    unknowns_.push_back(std::move(un));
    if (unknowns_[idx].base >= 0) work_.push_back(idx);
    return unknowns_[idx];
  }

  void add_poisson(const NamedElement& x, const NamedElement& y,
                   const NamedElement& z) {
    if (x.n + y.n + z.n - 1 > cap_) return;
    const std::string what =
        "poisson [" + x.label() + "*" + y.label() + ", " + z.label() + "]";
    try {
      // [x y, z] - [x, z] y - (-1)^{|x|(|z|-1)} x [y, z] = 0.
      LinExpr eq;
      eq.n = x.n + y.n + z.n - 1;
      CohomologyClass xy = g_->cup(g_->unit_class(x), g_->unit_class(y));
      for (const auto& [e, c] : xy.coords) eq.accumulate(bexpr(e, z), c);
      eq.accumulate(cup_expr_class(bexpr(x, z), g_->unit_class(y)),
                    a_->scalar(-1));
      eq.accumulate(cup_class_expr(g_->unit_class(x), bexpr(y, z)),
                    a_->scalar((x.n * (z.n - 1)) % 2 != 0 ? 1 : -1));
      emit(eq, what);
    } catch (const std::invalid_argument& err) {
      throw std::logic_error(what + ": " + err.what());
    }
  }

  void add_jacobi(const NamedElement& w, const NamedElement& y,
                  const NamedElement& z) {
    if (w.n != 1) throw std::logic_error("add_jacobi: first argument degree");
    if (w.n + y.n + z.n - 2 > cap_) return;
    // With |w| = 1 the cyclic Jacobi identity reads
    //   [w, [y, z]] + [y, [z, w]] + (-1)^{(|z|-1)(|y|-1)} [z, [w, y]] = 0.
    LinExpr eq;
    eq.n = w.n + y.n + z.n - 2;
    {
      LinExpr inner = bexpr(y, z);
      LinExpr t;
      t.n = eq.n;
      t.c0 = deg1_bracket(w, inner.c0);
      for (const auto& [v, K] : inner.lin) {
        CohomologyClass c = deg1_bracket(w, K);
        if (!c.is_zero()) t.lin.emplace(v, std::move(c));
      }
      eq.accumulate(t, a_->scalar(1));
    }
    eq.accumulate(bclass(y, bexpr(z, w).c0), a_->scalar(1));
    eq.accumulate(bclass(z, bexpr(w, y).c0),
                  a_->scalar(((z.n - 1) * (y.n - 1)) % 2 != 0 ? -1 : 1));
    emit(eq, "jacobi [" + w.label() + ", [" + y.label() + ", " + z.label() +
                 "]]");
  }

  void emit(const LinExpr& e, const std::string& what) {
    ++n_instances_;
    std::map<NamedElement, std::map<int, Scalar>> rows;
    std::map<NamedElement, Scalar> rhs;
    for (const auto& [el, c] : e.c0.coords) {
      rhs.emplace(el, -c);
      rows[el];
    }
    for (const auto& [v, K] : e.lin)
      for (const auto& [el, c] : K.coords) {
        auto& row = rows[el];
        auto it = row.find(v);
        if (it == row.end())
          row.emplace(v, c);
        else
          it->second += c;
      }
    for (auto& [el, row] : rows) {
      for (auto it = row.begin(); it != row.end();)
        it = it->second.is_zero() ? row.erase(it) : std::next(it);
      auto rt = rhs.find(el);
      Scalar b = rt == rhs.end() ? Scalar(0) : rt->second;
      if (trace) {
        std::string line = what + " | " + el.label() + " :";
        for (const auto& [v, c] : row)
          line += " + (" + c.str() + ")*" + var_names_[v];
        line += " = " + b.str();
        trace_log_.push_back(std::move(line));
      }
      if (!sys_.add(std::move(row), std::move(b)))
        throw std::runtime_error("poisson_solve: inconsistent instance " +
                                 what + " at coordinate " + el.label());
    }
  }

  Gerstenhaber* g_;
  Cohomology* h_;
  const Algebra* a_;
  int cap_;
  SparseSystem sys_;
  bool ran_ = false;
  int n_vars_ = 0;
  int n_instances_ = 0;
  std::vector<NamedElement> gens_, mult_, jac_;
  std::map<std::pair<NamedElement, NamedElement>, int> index_;
  std::vector<Unknown> unknowns_;
  std::vector<int> work_;
  std::vector<std::string> var_names_, trace_log_;
};

// Solves for every generator-pair bracket and returns the assignments keyed
// by ordered pair.
inline std::map<std::pair<NamedElement, NamedElement>, BracketValue>
poisson_solve(Gerstenhaber& g) {
  PoissonSolver solver(g);
  solver.run();
  std::map<std::pair<NamedElement, NamedElement>, BracketValue> out;
  const std::vector<NamedElement>& gens = solver.generators();
  for (const NamedElement& x : gens)
    for (const NamedElement& y : gens)
      out.emplace(std::make_pair(x, y), solver.bracket(x, y));
  return out;
}

}  // namespace hhq
