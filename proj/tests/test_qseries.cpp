#include <random>

#include <gtest/gtest.h>

#include "qmhs/qseries.hpp"

using namespace qmhs;
using namespace qmhs::ops;

namespace {

QPoly poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.push_back(make_rational(x));
  return QPoly(std::move(v));
}

QRat Q(long e) { return QRat::q_power(e); }

QSeq random_seq(std::mt19937_64& rng, std::size_t len) {
  std::vector<QRat> v;
  for (std::size_t i = 0; i < len; ++i) v.push_back(random_qrat(rng));
  return QSeq::from_values(std::move(v));
}

}  // namespace

TEST(QPartial, Examples) {
  BiSeries e = q_exp(4, 4);
  BiSeries de = q_partial(e, Axis::Y);
  EXPECT_EQ(de.valid_y(), 3u);
  EXPECT_TRUE(agree_on_common_region(de, e));

  BiSeries x2 = BiSeries::basis(2, 0, 4, 4);
  EXPECT_TRUE(agree_on_common_region(q_partial(x2, Axis::X), BiSeries::basis(1, 0, 3, 4)));
  BiSeries x = BiSeries::basis(1, 0, 3, 3);
  EXPECT_TRUE(agree_on_common_region(q_partial(x, Axis::X), BiSeries::basis(0, 0, 2, 3)));

  EXPECT_THROW(q_partial(BiSeries(0, 3), Axis::X), truncation_error);
  EXPECT_THROW(dX().apply(BiSeries(0, 3)), truncation_error);
}

TEST(LambdaScale, Examples) {
  std::mt19937_64 rng(5);
  BiSeries s = random_series(rng, 4, 4);
  EXPECT_TRUE(agree_on_common_region(lambda_scale(lambda_scale(s, Axis::X, 1), Axis::X, -1), s));
  EXPECT_TRUE(agree_on_common_region(lambda_scale(lambda_scale(s, Axis::Y, -1), Axis::Y, 1), s));

  BiSeries x = BiSeries::basis(1, 0, 3, 3);
  EXPECT_TRUE(agree_on_common_region(lambda_scale(x, Axis::X), Q(1) * x));
  BiSeries f = BiSeries::basis(2, 0, 3, 3);
  EXPECT_EQ(lambda_scale(f, Axis::X)(2, 0), Q(2));
}

TEST(MulByVar, Examples) {
  BiSeries x = BiSeries::basis(1, 0, 4, 4);
  BiSeries xx = mul_by_var(x, Axis::X);
  EXPECT_EQ(xx(2, 0), QRat(q_integer(2)));
  EXPECT_EQ(xx(1, 0), QRat());
  BiSeries y = mul_by_var(BiSeries::basis(0, 0, 3, 3), Axis::Y);
  EXPECT_TRUE(agree_on_common_region(y, BiSeries::basis(0, 1, 3, 3)));
}

TEST(MulByVar, DerivativeRelation) {
  // (1-q) X d_X = 1 - L_X, and likewise in Y
  std::mt19937_64 rng(17);
  const QRat one_minus_q(poly({1, -1}));
  for (int trial = 0; trial < 5; ++trial) {
    BiSeries s = random_series(rng, 6, 6);
    EXPECT_TRUE(agree_on_common_region(apply_op(one_minus_q * X() * dX(), s), apply_op(one() - LX(), s)));
    EXPECT_TRUE(agree_on_common_region(apply_op(one_minus_q * Y() * dY(), s), apply_op(one() - LY(), s)));
  }
}

TEST(SeriesMul, Examples) {
  std::mt19937_64 rng(23);
  BiSeries s = random_series(rng, 4, 4);
  EXPECT_TRUE(agree_on_common_region(series_mul(s, BiSeries::basis(0, 0, 4, 4)), s));
  BiSeries x = BiSeries::basis(1, 0, 3, 3);
  BiSeries xx = series_mul(x, x);
  EXPECT_EQ(xx(2, 0), QRat(q_binomial(2, 1)));
  EXPECT_EQ(xx(1, 0), QRat());
}

TEST(SeriesMul, QLeibnizRule) {
  // d_X^n (s t) = sum_k [n k]_q (d_X^k s) L_X^k (d_X^{n-k} t)
  std::mt19937_64 rng(31);
  BiSeries s = random_series(rng, 6, 3);
  BiSeries t = random_series(rng, 6, 3);
  BiSeries prod = series_mul(s, t);
  for (std::size_t n = 0; n <= 6; ++n) {
    BiSeries lhs = prod;
    for (std::size_t i = 0; i < n; ++i) lhs = q_partial(lhs, Axis::X);
    BiSeries rhs(6 - n, 3);
    for (std::size_t k = 0; k <= n; ++k) {
      BiSeries ds = s, dt = t;
      for (std::size_t i = 0; i < k; ++i) ds = q_partial(ds, Axis::X);
      for (std::size_t i = 0; i < n - k; ++i) dt = q_partial(dt, Axis::X);
      BiSeries term = series_mul(ds.truncated(6 - n, 3), lambda_scale(dt, Axis::X, static_cast<int>(k)).truncated(6 - n, 3));
      rhs = rhs + QRat(q_binomial(n, k)) * term;
    }
    EXPECT_TRUE(agree_on_common_region(lhs, rhs)) << "n = " << n;
  }
}

TEST(QExp, Examples) {
  BiSeries e = q_exp(3, 5);
  for (std::size_t k = 0; k <= 5; ++k) {
    EXPECT_EQ(e(0, k), QRat(1));
    for (std::size_t n = 1; n <= 3; ++n) EXPECT_TRUE(e(n, k).is_zero());
  }
  EXPECT_TRUE(agree_on_common_region(dY().apply(e), e));
}

TEST(ShiftedProducts, DerivativeFormulas) {
  // d_X P(m..n) = [n-m+1] P(m..n-1),  d_Y P(m..n) = -q^m [n-m+1] P(m+1..n)
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t m = 1; m <= n; ++m) {
      BiSeries p = shifted_product_series(m, n, 7, 7);
      const QRat factor(q_integer(n - m + 1));
      EXPECT_TRUE(agree_on_common_region(q_partial(p, Axis::X), factor * shifted_product_series(m, n - 1, 7, 7)));
      EXPECT_TRUE(agree_on_common_region(q_partial(p, Axis::Y),
                                         -(Q(static_cast<long>(m)) * factor) * shifted_product_series(m + 1, n, 7, 7)));
    }
  }
}

TEST(SmallF, Examples) {
  BiSeries one = f_a_series(QSeq::from_values({QRat(1)}), 4, 4);
  EXPECT_TRUE(agree_on_common_region(one, BiSeries::basis(0, 0, 4, 4)));
  BiSeries lin = f_a_series(QSeq::from_values({QRat(), QRat(1)}), 4, 4);
  EXPECT_EQ(lin(1, 0), QRat(1));
  EXPECT_EQ(lin(0, 1), -Q(1));
  lin(1, 0) = QRat();
  lin(0, 1) = QRat();
  EXPECT_TRUE(lin.is_zero());
  // d_X of (X-qY)...(X-q^n Y) is [n] times the (n-1)-term product
  for (std::size_t n = 1; n <= 5; ++n) {
    EXPECT_TRUE(agree_on_common_region(dX().apply(shifted_product_series(1, n, 6, 6)),
                                       QRat(q_integer(n)) * shifted_product_series(1, n - 1, 6, 6)));
  }
}

TEST(BigF, ColumnAndPde) {
  std::mt19937_64 rng(41);
  QSeq r = random_seq(rng, 14);
  BiSeries F = F_a_series(r, 6, 6);
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(F(n, 0), r(n));
  EXPECT_TRUE(apply_op(pde(), F).is_zero());

  QSeq ones = QSeq::constant(QRat(1));
  BiSeries F1 = F_a_series(ones, 4, 4);
  for (std::size_t k = 0; k <= 4; ++k) {
    QSeq it = delta_qk_iter(ones, k);
    QPoly expect(1);  // prod_{i=1}^{k} (1 - q^i)
    for (std::size_t i = 1; i <= k; ++i) expect *= QPoly(1) - q_power(i);
    for (std::size_t n = 0; n <= 4; ++n) {
      EXPECT_EQ(F1(n, k), it(n));
      EXPECT_EQ(F1(n, k), QRat(expect));
    }
  }
}

TEST(GSeries, Examples) {
  BiSeries g = G_series(MultiIndex{1}, MultiIndex{1}, 6, 6);
  for (std::size_t n = 0; n <= 6; ++n) {
    for (std::size_t k = 0; k <= 6; ++k) {
      EXPECT_EQ(g(n, k), qrat_normalize(q_factorial(n) * q_factorial(k), q_factorial(n + k + 1)));
    }
  }
  const MultiIndex mu{2, 1};
  BiSeries G = G_series(mu, dual(mu), 5, 5);
  QSeq a = a_sequence(mu);
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(G(n, 0), a(n));
  EXPECT_TRUE(agree_on_common_region(G, F_a_series(a, 5, 5)));
  EXPECT_THROW(G_series(MultiIndex{2}, MultiIndex{1}, 2, 2), std::invalid_argument);
}

TEST(SeriesOp, RegionTracking) {
  BiSeries s(6, 6);
  EXPECT_EQ(one().apply(s).valid_x(), 6u);
  BiSeries r = apply_op(pde(), s);
  EXPECT_EQ(r.valid_x(), 5u);
  EXPECT_EQ(r.valid_y(), 5u);
  BiSeries t = apply_op(dX() * dX() * LY(-1), s);
  EXPECT_EQ(t.valid_x(), 4u);
  EXPECT_EQ(t.valid_y(), 6u);
  EXPECT_EQ(apply_op(Y() * X(), s).valid_x(), 6u);
}

TEST(SeriesOp, PdeCoefficientIdentity) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    BiSeries s = random_series(rng, 6, 6);
    BiSeries r = apply_op(pde(), s);
    ASSERT_EQ(r.valid_x(), 5u);
    for (std::size_t n = 0; n <= 5; ++n) {
      for (std::size_t k = 0; k <= 5; ++k) {
        EXPECT_EQ(r(n, k), Q(static_cast<long>(k + 1)) * s(n + 1, k) + s(n, k + 1) - s(n, k));
      }
    }
  }
}

TEST(SeriesOp, QCommutationRelations) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 4; ++trial) {
    BiSeries s = random_series(rng, 6, 6);
    EXPECT_TRUE(apply_op(q_commutator(dX(), LX()), s).is_zero());
    EXPECT_TRUE(apply_op(q_commutator(dY(), LY()), s).is_zero());
    EXPECT_TRUE(apply_op(q_commutator(LX(), X()), s).is_zero());
    EXPECT_TRUE(apply_op(q_commutator(LY(), Y()), s).is_zero());
    EXPECT_TRUE(agree_on_common_region(apply_op(q_commutator(dX(), X()), s), s));
    EXPECT_TRUE(agree_on_common_region(apply_op(q_commutator(dY(), Y()), s), s));
    // inverse dilations move past derivatives with a factor q
    EXPECT_TRUE(agree_on_common_region(apply_op(LX(-1) * dX(), s), apply_op(Q(1) * dX() * LX(-1), s)));
  }
}

TEST(GeneratingFunctions, ProductWithExponential) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 2; ++trial) {
    QSeq r = random_seq(rng, 5);
    EXPECT_TRUE(agree_on_common_region(series_mul(f_a_series(r, 6, 6), q_exp(6, 6)), F_a_series(r, 6, 6)));
  }
  for (const auto& mu : enumerate_up_to_weight(3)) {
    QSeq a = a_sequence(mu);
    EXPECT_TRUE(agree_on_common_region(series_mul(f_a_series(a, 5, 5), q_exp(5, 5)), F_a_series(a, 5, 5))) << mu;
  }
}

TEST(PdeUniqueness, ZeroColumnForcesZero) {
  std::vector<QRat> zeros(13);
  EXPECT_TRUE(solve_pde_from_column(zeros, 6, 6).is_zero());
  std::mt19937_64 rng(67);
  QSeq r = random_seq(rng, 13);
  std::vector<QRat> col;
  for (std::size_t n = 0; n <= 12; ++n) col.push_back(r(n));
  BiSeries F = F_a_series(r, 6, 6);
  EXPECT_TRUE(agree_on_common_region(solve_pde_from_column(col, 6, 6), F));
  EXPECT_THROW(solve_pde_from_column(zeros, 7, 6), truncation_error);
}

TEST(ReductionOperators, IntertwineThePde) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    BiSeries s = random_series(rng, 6, 6);
    EXPECT_TRUE(agree_on_common_region(apply_op(pde() * reduce_first_part(1), s),
                                       apply_op(reduce_first_part(2) * pde(), s)));
    EXPECT_TRUE(agree_on_common_region(apply_op(pde() * drop_first_part(1), s),
                                       apply_op(drop_first_part(2) * pde(), s)));
  }
}

TEST(ReductionOperators, AreInjective) {
  EXPECT_TRUE(injective_on_truncation(reduce_first_part(2), 6, 6));
  EXPECT_TRUE(injective_on_truncation(drop_first_part(2), 6, 6));
  EXPECT_FALSE(injective_on_truncation(dX(), 3, 3));
  EXPECT_FALSE(injective_on_truncation(SeriesOp::scalar(QRat()), 2, 2));
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 5; ++trial) {
    BiSeries s = random_series(rng, 5, 5);
    if (s.is_zero()) continue;
    EXPECT_FALSE(apply_op(reduce_first_part(2), s).is_zero());
    EXPECT_FALSE(apply_op(drop_first_part(2), s).is_zero());
  }
  // [n+k+2] a(n,k) - q [k] a(n,k-1) = 0 only admits the zero array: solve it forward in k
  BiSeries a(6, 6);
  for (std::size_t n = 0; n <= 6; ++n) {
    for (std::size_t k = 0; k <= 6; ++k) {
      QRat prev = k == 0 ? QRat() : a(n, k - 1);
      a(n, k) = Q(1) * QRat(q_integer(k)) * prev / QRat(q_integer(n + k + 2));
    }
  }
  EXPECT_TRUE(a.is_zero());
}

TEST(MainPde, ResidualVanishesForDualPairs) {
  for (const auto& mu : enumerate_up_to_weight(4)) {
    BiSeries G = G_series(mu, dual(mu), 6, 6);
    BiSeries r = apply_op(pde(), G);
    EXPECT_EQ(r.valid_x(), 5u);
    EXPECT_TRUE(r.is_zero()) << mu;
  }
  // a non-dual pair does not satisfy it
  BiSeries G = G_series(MultiIndex{2, 1}, MultiIndex{2, 1}, 4, 4);
  EXPECT_FALSE(apply_op(pde(), G).is_zero());
}

TEST(ReductionOperators, MapGToReducedG) {
  for (std::size_t w = 2; w <= 4; ++w) {
    auto all = enumerate_by_weight(w);
    for (const auto& mu : all) {
      for (const auto& nu : all) {
        const bool first = mu.front() >= 2 && nu.front() == 1;
        if (!first && !(mu.front() == 1 && nu.front() >= 2)) continue;
        const SeriesOp op = first ? reduce_first_part(1) : drop_first_part(1);
        BiSeries lhs = apply_op(op, G_series(mu, nu, 5, 5));
        EXPECT_TRUE(agree_on_common_region(lhs, G_series(minus_reduce(mu), minus_reduce(nu), 5, 5))) << mu << nu;
      }
    }
  }
}
