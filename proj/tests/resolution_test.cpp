#include "hhq/resolution.hpp"

#include <gtest/gtest.h>

using namespace hhq;

namespace {

FreePathSum word_sum(const Algebra& A, std::initializer_list<std::pair<Path, long>> terms) {
  FreePathSum s;
  for (const auto& [p, c] : terms) s.add(p, A.scalar(c));
  return s;
}

Path word(int m, int src, const char* w) {
  std::vector<Dir> steps;
  for (const char* c = w; *c; ++c) steps.push_back(*c == 'a' ? Dir::A : Dir::B);
  return Path(m, src, std::move(steps));
}

}  // namespace

TEST(Resolution, LowDegreeGenerators) {
  Algebra A({4, 2});
  Resolution R(A);
  const int m = A.m(), N = A.N();
  for (int i = 0; i < m; ++i) {
    EXPECT_EQ(R.g_expand({1, 0, i}),
              word_sum(A, {{Path::arrow(m, i), 1}}));
    EXPECT_EQ(R.g_expand({1, 1, i}),
              word_sum(A, {{Path::arrow_bar(m, i - 1), -1}}));
    EXPECT_EQ(R.g_expand({2, 0, i}),
              word_sum(A, {{word(m, i, "aa"), 1}}));
    EXPECT_EQ(R.g_expand({2, 2, i}),
              word_sum(A, {{word(m, i, "bb"), -1}}));
    // The commutativity relation (a_i abar_i)^N - (abar_{i-1} a_{i-1})^N.
    EXPECT_EQ(R.g_expand({2, 1, i}),
              word_sum(A, {{Path(m, i, Path::alt_word(Dir::A, 2 * N)), 1},
                           {Path(m, i, Path::alt_word(Dir::B, 2 * N)), -1}}));
  }
}

TEST(Resolution, SpotValueFourOneTwo) {
  // m = 8, N = 1: g^4_{1,2} = a2 a3 a4 ab4 - a2 a3 ab3 a3 + a2 ab2 a2 a3 - ab1 a1 a2 a3.
  Algebra A({8, 1});
  Resolution R(A);
  EXPECT_EQ(R.g_expand({4, 1, 2}),
            word_sum(A, {{word(8, 2, "aaab"), 1},
                         {word(8, 2, "aaba"), -1},
                         {word(8, 2, "abaa"), 1},
                         {word(8, 2, "baaa"), -1}}));
}

TEST(Resolution, SpotValueFourOneTwoHigherN) {
  // m = 8, N = 2: same pattern with one (x ybar) block inserted in each term.
  Algebra A({8, 2});
  Resolution R(A);
  EXPECT_EQ(R.g_expand({4, 1, 2}),
            word_sum(A, {{word(8, 2, "aaabab"), 1},
                         {word(8, 2, "aababa"), -1},
                         {word(8, 2, "ababaa"), 1},
                         {word(8, 2, "babaaa"), -1}}));
}

TEST(Resolution, SourceTargetFormulaOnExpansions) {
  for (Params params : {Params{3, 2}, Params{4, 1}, Params{5, 3}}) {
    Algebra A(params);
    Resolution R(A);
    for (int n = 0; n <= 6; ++n)
      for (const GGen& g : R.generators(n))
        for (const auto& [p, c] : R.g_expand(g).terms()) {
          EXPECT_EQ(p.source(), g.source());
          EXPECT_EQ(p.target(), g.target(A.m()));
        }
  }
}

TEST(Resolution, DegreeFormulasMatchExpansions) {
  for (Params params : {Params{3, 1}, Params{3, 2}, Params{4, 2}, Params{5, 3}}) {
    Algebra A(params);
    Resolution R(A);
    for (int n = 0; n <= 8; ++n)
      for (const GGen& g : R.generators(n)) {
        const auto& exp = R.g_expand(g);
        for (const auto& [p, c] : exp.terms()) {
          EXPECT_EQ(p.d(), R.g_deg(g)) << "n=" << g.n << " r=" << g.r;
          EXPECT_EQ(p.dbar(), R.g_degbar(g)) << "n=" << g.n << " r=" << g.r;
        }
        EXPECT_FALSE(exp.is_zero());
      }
  }
}

TEST(Resolution, DegreeSpotValues) {
  const int N = 3;
  EXPECT_EQ(Resolution::g_deg({1, 0, 0}, N), 1);
  EXPECT_EQ(Resolution::g_deg({2, 1, 0}, N), N);
  EXPECT_EQ(Resolution::g_degbar({3, 2, 0}, N), -N - 1);
  EXPECT_EQ(Resolution::g_degbar({1, 0, 0}, N), 0);
  EXPECT_EQ(Resolution::g_deg({2, 2, 0}, N), 0);
  EXPECT_EQ(Resolution::g_degbar({2, 2, 0}, N), -2);
}

TEST(Resolution, DifferentialDegreeOne) {
  Algebra A({5, 2});
  Resolution R(A);
  const int m = A.m();
  for (int i = 0; i < m; ++i) {
    BimodElement d0;
    d0.add({{0, 0, i}, Path::vertex(m, i), Path::arrow(m, i)}, A.scalar(1));
    d0.add({{0, 0, imod(i + 1, m)}, Path::arrow(m, i), Path::vertex(m, i + 1)},
           A.scalar(-1));
    EXPECT_EQ(R.differential({1, 0, i}), d0);

    BimodElement d1;
    d1.add({{0, 0, i}, Path::vertex(m, i), Path::arrow_bar(m, i - 1)}, A.scalar(-1));
    d1.add({{0, 0, imod(i - 1, m)}, Path::arrow_bar(m, i - 1),
            Path::vertex(m, i - 1)},
           A.scalar(1));
    EXPECT_EQ(R.differential({1, 1, i}), d1);
  }
}

TEST(Resolution, DifferentialPreservesDegrees) {
  Algebra A({4, 2});
  Resolution R(A);
  for (int n = 1; n <= 8; ++n)
    for (const GGen& g : R.generators(n))
      for (const auto& [key, c] : R.differential(g).terms()) {
        EXPECT_EQ(key.l.d() + R.g_deg(key.g) + key.r.d(), R.g_deg(g));
        EXPECT_EQ(key.l.dbar() + R.g_degbar(key.g) + key.r.dbar(), R.g_degbar(g));
        EXPECT_EQ(key.l.source(), g.source());
        EXPECT_EQ(key.r.target(), g.target(A.m()));
      }
}

TEST(Resolution, RemarkFormulaForNOne) {
  // For N = 1 the three cases collapse to one four-term formula.
  for (int m : {3, 5}) {
    Algebra A({m, 1});
    Resolution R(A);
    for (int n = 1; n <= 8; ++n)
      for (const GGen& g : R.generators(n)) {
        BimodElement expect;
        const int i = g.i, r = g.r;
        const Scalar s_nr = A.scalar((n + r) % 2 ? -1 : 1);
        const Scalar s_n = A.scalar(n % 2 ? -1 : 1);
        if (r <= n - 1) {
          GGen h{n - 1, r, i};
          expect.add({h, Path::vertex(m, i), Path::arrow(m, i + n - 2 * r - 1)},
                     A.scalar(1));
          GGen h2{n - 1, r, imod(i + 1, m)};
          expect.add({h2, Path::arrow(m, i), Path::vertex(m, h2.target(m))}, s_nr);
        }
        if (r >= 1) {
          GGen h3{n - 1, r - 1, imod(i - 1, m)};
          expect.add({h3, Path::arrow_bar(m, i - 1), Path::vertex(m, h3.target(m))},
                     s_nr);
          GGen h4{n - 1, r - 1, i};
          expect.add({h4, Path::vertex(m, i), Path::arrow_bar(m, i + n - 2 * r)}, s_n);
        }
        EXPECT_EQ(R.differential(g), expect) << "n=" << n << " r=" << r << " i=" << i;
      }
  }
}

TEST(Resolution, ComplexProperty) {
  for (Params params : {Params{3, 1}, Params{4, 2}, Params{5, 3}}) {
    Algebra A(params);
    Resolution R(A);
    const int n_max = params.m == 3 ? 8 : params.m == 4 ? 10 : 12;
    auto bad = R.verify_complex(n_max);
    EXPECT_FALSE(bad.has_value())
        << "d.d != 0 at n=" << bad->n << " r=" << bad->r << " i=" << bad->i;
  }
}

TEST(Resolution, GeneratorCount) {
  Algebra A({6, 3});
  Resolution R(A);
  for (int n = 0; n <= 5; ++n)
    EXPECT_EQ(int(R.generators(n).size()), (n + 1) * A.m());
}
