#include "hhq/cohomology.hpp"

#include <gtest/gtest.h>

#include <memory>
#include <vector>

#include "hhq/algebra.hpp"
#include "hhq/matrix.hpp"
#include "hhq/resolution.hpp"

namespace hhq {
namespace {

struct Ctx {
  Algebra a;
  Resolution r;
  Cohomology h;
  explicit Ctx(Params p) : a(p), r(a), h(a, r) {}
};

TEST(Cohomology, ParallelPathExamples) {
  Ctx c({3, 2});
  // g^1_{0,0} goes 0 -> 1: paths a_0 and a_0 abar_0 a_0.
  auto& arrows = c.h.parallel_paths(GGen{1, 0, 0});
  EXPECT_EQ(arrows.size(), 2u);
  for (const Path& p : arrows) {
    EXPECT_EQ(p.source(), 0);
    EXPECT_EQ(p.target(), 1);
  }
  // A loop generator admits 2N parallel basis paths.
  EXPECT_EQ(c.h.parallel_paths(GGen{2, 1, 0}).size(), 4u);
  // Vertices at cyclic distance >= 2 admit no parallel path.
  Ctx far({5, 1});
  EXPECT_EQ(far.h.parallel_paths(GGen{4, 1, 0}).size(), 0u);
  EXPECT_EQ(c.h.cochain_dim(0), 2 * 3 * 2);
}

TEST(Cohomology, CoboundarySquaresToZero) {
  for (Params prm : {Params{3, 1}, Params{4, 2}}) {
    Ctx c(prm);
    for (int n = 1; n <= 5; ++n)
      for (int k = 0; k < c.h.cochain_dim(n - 1); ++k)
        EXPECT_TRUE(c.h.coboundary(c.h.coboundary(c.h.elementary(n - 1, k))).is_zero())
            << "m=" << prm.m << " N=" << prm.N << " n=" << n << " k=" << k;
  }
}

TEST(Cohomology, DegreeZeroKernelIsCenter) {
  for (Params prm : {Params{3, 1}, Params{4, 2}, Params{5, 3}}) {
    Ctx c(prm);
    const int want = prm.m * prm.N + 1;
    for (const AlgebraElement& z : c.a.center_basis()) {
      Cochain z0 = c.h.from_central(z);
      EXPECT_TRUE(c.h.is_cocycle(z0));
      EXPECT_EQ(c.h.to_central(z0), z);
    }
    EXPECT_EQ(c.h.hh_dimension(0), want);
    // Cross-check the blocked rank against a dense full-matrix rank.
    Matrix<Scalar> d1 = c.h.cochain_differential(1);
    EXPECT_EQ(c.h.cochain_dim(0) - rank_of(d1), want);
    EXPECT_EQ(c.h.rank_differential(1), rank_of(d1));
  }
}

TEST(Cohomology, BlockRankMatchesFullRank) {
  for (Params prm : {Params{3, 2}, Params{4, 1}}) {
    Ctx c(prm);
    for (int n = 1; n <= 6; ++n)
      EXPECT_EQ(c.h.rank_differential(n), rank_of(c.h.cochain_differential(n)))
          << "m=" << prm.m << " N=" << prm.N << " n=" << n;
  }
}

TEST(Cohomology, NamedBasisAllRegimes) {
  struct Case {
    int m, N, nmax;
  };
  // Both parities of m, N = 1..3, enough degrees to hit every residue of t
  // including t = 0 and t = m-1 for multiple p.
  for (Case cs : {Case{3, 1, 12}, Case{3, 2, 10}, Case{3, 3, 8}, Case{4, 1, 12},
                  Case{4, 2, 10}, Case{5, 1, 11}, Case{5, 2, 8}, Case{6, 1, 13}}) {
    Ctx c({cs.m, cs.N});
    for (int n = 0; n <= cs.nmax; ++n) {
      BasisReport rep = c.h.verify_named_basis(n);
      EXPECT_TRUE(rep.ok) << "m=" << cs.m << " N=" << cs.N << " n=" << n << ": "
                          << rep.detail;
    }
  }
}

TEST(Cohomology, KnownDimensionValues) {
  {
    Ctx c({4, 2});
    EXPECT_EQ(c.h.hh_dimension(1), 6);  // phi, psi, and four E_{1,j,1}
    EXPECT_EQ(c.h.hh_dimension(2), 6);  // chi_{2,0}, pi_{2,0}, four F_{2,j,1}
  }
  {
    Ctx c({4, 1});
    EXPECT_EQ(c.h.hh_dimension(0), 5);
  }
  {
    Ctx c({3, 1});
    EXPECT_EQ(c.h.hh_dimension(1), 2);  // phi_{1,0}, psi_{1,0}
    EXPECT_EQ(c.h.hh_dimension(2), 3);  // pi_{2,0}, phi_{2,-1}, psi_{2,1}
  }
}

TEST(Cohomology, NamedElementsAreBihomogeneous) {
  for (Params prm : {Params{3, 2}, Params{4, 2}}) {
    Ctx c(prm);
    for (int n = 0; n <= 8; ++n)
      for (const NamedElement& e : c.h.named_basis(n)) {
        auto b = cochain_bideg(c.h.named_cocycle(e), prm.N);
        ASSERT_TRUE(b.has_value()) << e.label();
      }
  }
}

TEST(Cohomology, WeightSpotValues) {
  Ctx c({4, 2});
  const int N = 2;
  auto bideg = [&](const NamedElement& e) {
    return *cochain_bideg(c.h.named_cocycle(e), N);
  };
  EXPECT_EQ(bideg({Kind::Phi, 1, 0, 0, 0}), (Bideg{0, 0}));
  EXPECT_EQ(bideg({Kind::Psi, 1, 0, 0, 0}), (Bideg{0, 0}));
  EXPECT_EQ(bideg({Kind::Eps, 0, 0, 1, 0}), (Bideg{N, -N}));
  EXPECT_EQ(bideg({Kind::FPow, 0, 0, 1, 1}), (Bideg{1, -1}));
  EXPECT_EQ(bideg({Kind::Chi, 2, 0, 0, 0}), (Bideg{-N, N}));
  EXPECT_EQ(bideg({Kind::Pi, 2, 0, 0, 0}), (Bideg{0, 0}));
  EXPECT_EQ(bideg({Kind::E, 1, 0, 2, 1}), (Bideg{1, -1}));
  EXPECT_EQ(bideg({Kind::F, 2, 0, 2, 1}), (Bideg{1 - N, N - 1}));
}

TEST(Cohomology, ReduceToBasisIdentities) {
  for (Params prm : {Params{4, 2}, Params{3, 2}}) {
    Ctx c(prm);
    for (int n = 1; n <= 4; ++n) {
      for (const NamedElement& e : c.h.named_basis(n)) {
        CohomologyClass cls = c.h.reduce_to_basis(c.h.named_cocycle(e));
        ASSERT_EQ(cls.coords.size(), 1u) << e.label();
        EXPECT_EQ(cls.coords.begin()->first, e);
        EXPECT_EQ(cls.coords.begin()->second, c.a.scalar(1));
      }
      // Coboundary invariance: shift a named cocycle by the coboundary of a
      // dense lower cochain.
      if (c.h.named_basis(n).empty()) continue;
      Cochain shift(n - 1);
      for (int k = 0; k < c.h.cochain_dim(n - 1); ++k) {
        Cochain ek = c.h.elementary(n - 1, k);
        shift += ek * c.a.scalar(k + 1);
      }
      const NamedElement& e0 = c.h.named_basis(n).front();
      Cochain moved = c.h.named_cocycle(e0) + c.h.coboundary(shift);
      CohomologyClass cls = c.h.reduce_to_basis(moved);
      ASSERT_EQ(cls.coords.size(), 1u);
      EXPECT_EQ(cls.coords.begin()->first, e0);
      EXPECT_EQ(cls.coords.begin()->second, c.a.scalar(1));
    }
  }
}

TEST(Cohomology, InvalidIndicesRejected) {
  Ctx c3({3, 1});
  // chi_{n,0} exists for m odd only when n = 0 mod 4.
  EXPECT_THROW(c3.h.named_cocycle({Kind::Chi, 2, 0, 0, 0}), std::invalid_argument);
  EXPECT_NO_THROW(c3.h.named_cocycle({Kind::Chi, 4, 0, 0, 0}));
  EXPECT_TRUE(c3.h.is_valid({Kind::Chi, 4, 0, 0, 0}));
  EXPECT_TRUE(c3.h.is_valid({Kind::Chi, 8, 0, 0, 0}));
  EXPECT_FALSE(c3.h.is_valid({Kind::Chi, 6, 0, 0, 0}));
  // phi_{n,0}, psi_{n,0} exist for m odd only when n = 1 mod 4.
  EXPECT_TRUE(c3.h.is_valid({Kind::Phi, 1, 0, 0, 0}));
  EXPECT_FALSE(c3.h.is_valid({Kind::Phi, 3, 0, 0, 0}));
  EXPECT_TRUE(c3.h.is_valid({Kind::Phi, 5, 0, 0, 0}));
  EXPECT_TRUE(c3.h.is_valid({Kind::Psi, 5, 0, 0, 0}));
  EXPECT_FALSE(c3.h.is_valid({Kind::Psi, 7, 0, 0, 0}));
  // m even: out-of-range alpha.
  Ctx c4({4, 1});
  EXPECT_TRUE(c4.h.is_valid({Kind::Chi, 2, 0, 0, 0}));
  EXPECT_FALSE(c4.h.is_valid({Kind::Chi, 2, 1, 0, 0}));
  EXPECT_THROW(c4.h.named_cocycle({Kind::Chi, 2, 1, 0, 0}), std::invalid_argument);
}

TEST(Cohomology, RemarkIndexZeroPatterns) {
  // For m odd: chi_{n,0} valid iff n = 0 mod 4; phi/psi_{n,0} iff n = 1 mod 4.
  for (Params prm : {Params{3, 1}, Params{5, 2}}) {
    Ctx c(prm);
    for (int n = 1; n <= 13; ++n) {
      if (n % 2 == 0)
        EXPECT_EQ(c.h.is_valid({Kind::Chi, n, 0, 0, 0}), n % 4 == 0) << n;
      else {
        EXPECT_EQ(c.h.is_valid({Kind::Phi, n, 0, 0, 0}), n % 4 == 1) << n;
        EXPECT_EQ(c.h.is_valid({Kind::Psi, n, 0, 0, 0}), n % 4 == 1) << n;
      }
    }
  }
}

TEST(Cohomology, EpsilonChiReductionExample) {
  // For m even, each single-term cocycle (g^2_{1,i} || (-1)^i eps_i)
  // represents pi_{2,0}; summing over i telescopes the signs away.
  Ctx c({4, 2});
  Cochain sum(2);
  for (int i = 0; i < 4; ++i) {
    Cochain x(2);
    AlgebraElement u;
    u.add(Path(4, i, Path::alt_word(Dir::A, 2 * 2)), c.a.scalar(i % 2 == 0 ? 1 : -1));
    x.add(GGen{2, 1, i}, u);
    ASSERT_TRUE(c.h.is_cocycle(x));
    CohomologyClass cls = c.h.reduce_to_basis(x);
    ASSERT_EQ(cls.coords.size(), 1u) << "i=" << i;
    EXPECT_EQ(cls.coords.begin()->first, (NamedElement{Kind::Pi, 2, 0, 0, 0}));
    EXPECT_EQ(cls.coords.begin()->second.str(), i % 2 == 0 ? "1" : "-1");
    sum += x;
  }
  EXPECT_TRUE(c.h.reduce_to_basis(sum).is_zero());
}

TEST(Cohomology, ReduceRejectsNonCocycle) {
  Ctx c({4, 1});
  // A single short arrow value on one generator of level 1 is not a cocycle.
  Cochain x(1);
  AlgebraElement u;
  u.add(Path::arrow(4, 0), c.a.scalar(1));
  x.add(GGen{1, 0, 0}, u);
  ASSERT_FALSE(c.h.is_cocycle(x));
  EXPECT_THROW(c.h.reduce_to_basis(x), std::invalid_argument);
}

TEST(Cohomology, ModularDimensionsMatchDeskScale) {
  // In a characteristic coprime to 2mN the dimensions agree with char 0 at
  // small degrees.
  Ctx q({3, 2});
  Ctx f({3, 2, 7});
  for (int n = 0; n <= 5; ++n)
    EXPECT_EQ(q.h.hh_dimension(n), f.h.hh_dimension(n)) << n;
}

}  // namespace
}  // namespace hhq
