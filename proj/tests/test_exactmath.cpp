#include <gtest/gtest.h>

#include <random>

#include "toricbott/exactmath.hpp"

using namespace toricbott;

namespace {

QMatrix qm(const std::vector<std::vector<long>>& rows) {
  QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

QMatrix transpose(const QMatrix& m) {
  QMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

// Cofactor expansion, used as an independent determinant.
Integer cofactor_det(const Matrix<Integer>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix<Integer> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    total += (c % 2 == 0 ? 1 : -1) * m(0, c) * cofactor_det(minor);
  }
  return total;
}

}  // namespace

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(Rational, FloorCeilBinomial) {
  EXPECT_EQ(floor_of(Rational(-3, 2)), -2);
  EXPECT_EQ(ceil_of(Rational(-3, 2)), -1);
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(-1, 2), 0);
}

TEST(Rank, SmallCases) {
  EXPECT_EQ(rank(QMatrix::identity(3)), 3u);
  EXPECT_EQ(rank(QMatrix(2, 2)), 0u);
  EXPECT_EQ(rank(qm({{1, 2}, {2, 4}})), 1u);
}

TEST(Rank, AgreesWithTransposeAndIntegerPath) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    QMatrix q(r, c);
    IMatrix z(r, c);
    // Low-rank products make dependent rows common.
    const std::size_t k = 1 + rng() % 4;
    std::vector<std::vector<long>> a(r, std::vector<long>(k)), b(k, std::vector<long>(c));
    for (auto& row : a)
      for (auto& x : row) x = static_cast<long>(rng() % 7) - 3;
    for (auto& row : b)
      for (auto& x : row) x = static_cast<long>(rng() % 7) - 3;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        long s = 0;
        for (std::size_t t = 0; t < k; ++t) s += a[i][t] * b[t][j];
        q(i, j) = s;
        z(i, j) = s;
      }
    const auto rq = rank(q);
    EXPECT_EQ(rq, rank(transpose(q)));
    EXPECT_EQ(rq, rank(z));
    EXPECT_LE(rq, k);
  }
}

TEST(Rank, LargeEntriesFallBackExactly) {
  IMatrix z(2, 2);
  const std::int64_t big = std::int64_t{1} << 40;
  z(0, 0) = big;
  z(0, 1) = big + 1;
  z(1, 0) = big - 1;
  z(1, 1) = big;
  EXPECT_EQ(rank(z), 2u);
  z(1, 0) = big;
  z(1, 1) = big + 1;
  EXPECT_EQ(rank(z), 1u);
}

TEST(Determinant, MatchesCofactorExpansion) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    Matrix<Integer> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng() % 11) - 5;
    EXPECT_EQ(determinant(m), cofactor_det(m));
  }
}

TEST(Inverse, TimesOriginalIsIdentity) {
  const QMatrix m = qm({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  const auto inv = inverse(m);
  ASSERT_TRUE(inv);
  EXPECT_EQ(m * *inv, QMatrix::identity(3));
  EXPECT_FALSE(inverse(qm({{1, 2}, {2, 4}})));
}

TEST(ChainComplex, Examples) {
  EXPECT_EQ(cohomology_dims(ChainComplex({qm({{1}})})), (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(cohomology_dims(ChainComplex({qm({{0}})})), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(cohomology_dims(ChainComplex({qm({{1, 1}})})), (std::vector<std::size_t>{1, 0}));
}

TEST(ChainComplex, RejectsNonComposable) {
  const ChainComplex c({qm({{1}}), qm({{1}})});
  try {
    cohomology_dims(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ComplexNotExactlyComposable);
  }
  EXPECT_THROW(ChainComplex({qm({{1, 1}}), qm({{1, 1}})}), Error);
}

TEST(ChainComplex, EulerCharacteristicMatchesCohomology) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    // d1 * d0 = 0 by taking d0 with columns in the kernel of d1.
    const std::size_t a = 1 + rng() % 4, b = 2 + rng() % 4;
    QMatrix d1(1, b);
    for (std::size_t j = 0; j < b; ++j) d1(0, j) = 1;
    QMatrix d0(b, a);
    for (std::size_t j = 0; j < a; ++j) {
      const long x = static_cast<long>(rng() % 5) - 2;
      d0(0, j) = x;
      d0(1, j) = -x;
    }
    const ChainComplex c({d0, d1});
    const auto h = cohomology_dims(c);
    std::int64_t e = 0;
    for (std::size_t i = 0; i < h.size(); ++i) e += (i % 2 ? -1 : 1) * static_cast<std::int64_t>(h[i]);
    EXPECT_EQ(e, c.euler_characteristic());
  }
}

TEST(Lp, StrictExamples) {
  const std::vector<Rational> b1{1, 0};
  const auto w = lp_feasible_strict(qm({{1}, {-1}}), b1);
  ASSERT_TRUE(w);
  EXPECT_GT((*w)[0], 0);
  EXPECT_LT((*w)[0], 1);
  const std::vector<Rational> b2{0, 0};
  EXPECT_FALSE(lp_feasible_strict(qm({{1}, {-1}}), b2));
  const std::vector<Rational> b3{1, 0, 0};
  const auto w3 = lp_feasible_strict(qm({{1, 1}, {-1, 0}, {0, -1}}), b3, {true, false, false});
  ASSERT_TRUE(w3);
  EXPECT_LT((*w3)[0] + (*w3)[1], 1);
  EXPECT_GE((*w3)[0], 0);
  EXPECT_GE((*w3)[1], 0);
}

TEST(Lp, WitnessSatisfiesEveryRow) {
  std::mt19937_64 rng(5);
  int feasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 2 + rng() % 5, cols = 1 + rng() % 3;
    QMatrix a(rows, cols);
    std::vector<Rational> b(rows);
    std::vector<bool> strict(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) a(i, j) = static_cast<long>(rng() % 7) - 3;
      b[i] = static_cast<long>(rng() % 7) - 3;
      strict[i] = rng() % 2;
    }
    const auto w = lp_feasible_strict(a, b, strict);
    if (!w) continue;
    ++feasible;
    for (std::size_t i = 0; i < rows; ++i) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < cols; ++j) lhs += a(i, j) * (*w)[j];
      if (strict[i])
        EXPECT_LT(lhs, b[i]);
      else
        EXPECT_LE(lhs, b[i]);
    }
  }
  EXPECT_GT(feasible, 20);
}

TEST(Lp, InfeasibleOneDimensionalSystemsAgreeWithIntervalOracle) {
  // In one variable the feasible set is an interval computed directly.
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 4;
    QMatrix a(rows, 1);
    std::vector<Rational> b(rows);
    std::vector<bool> strict(rows);
    Rational lo = -1000, hi = 1000;
    bool lo_open = false, hi_open = false, empty = false;
    auto tighten_hi = [&](const Rational& t, bool open) {
      if (t < hi) {
        hi = t;
        hi_open = open;
      } else if (t == hi) {
        hi_open = hi_open || open;
      }
    };
    auto tighten_lo = [&](const Rational& t, bool open) {
      if (t > lo) {
        lo = t;
        lo_open = open;
      } else if (t == lo) {
        lo_open = lo_open || open;
      }
    };
    for (std::size_t i = 0; i < rows; ++i) {
      const long c = static_cast<long>(rng() % 5) - 2;
      a(i, 0) = c;
      b[i] = static_cast<long>(rng() % 9) - 4;
      strict[i] = rng() % 2;
      if (c == 0) {
        if (strict[i] ? !(0 < b[i]) : !(0 <= b[i])) empty = true;
      } else if (c > 0) {
        tighten_hi(b[i] / c, strict[i]);
      } else {
        tighten_lo(b[i] / c, strict[i]);
      }
    }
    const bool oracle = !empty && (lo < hi || (lo == hi && !lo_open && !hi_open));
    EXPECT_EQ(lp_feasible_strict(a, b, strict).has_value(), oracle);
  }
}

TEST(Polyhedron, Boundedness) {
  const std::vector<Rational> sq{1, 0, 1, 0};
  EXPECT_TRUE(polyhedron_bounded(qm({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}), sq));
  const std::vector<Rational> half{0};
  EXPECT_FALSE(polyhedron_bounded(qm({{-1, 0}}), half));
  const std::vector<Rational> simplex{0, 0, 5};
  EXPECT_TRUE(polyhedron_bounded(qm({{-1, 0}, {0, -1}, {1, 1}}), simplex));
}
