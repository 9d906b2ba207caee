#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qmhs/exactq.hpp"

using namespace qmhs;

namespace {

QPoly poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.push_back(make_rational(x));
  return QPoly(std::move(v));
}

Integer binomial(unsigned n, unsigned k) {
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

QRat random_element(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  std::uniform_int_distribution<int> d(0, 3);
  auto rp = [&] {
    std::vector<Rational> v(static_cast<std::size_t>(d(rng)) + 1);
    for (auto& x : v) x = Rational(c(rng));
    return QPoly(std::move(v));
  };
  QPoly den = rp();
  while (den.is_zero()) den = rp();
  return qrat_normalize(rp(), den);
}

}  // namespace

TEST(Rational, LowestTermsAndParsing) {
  Rational r = make_rational(6, -4);
  EXPECT_EQ(boost::multiprecision::numerator(r), -3);
  EXPECT_EQ(boost::multiprecision::denominator(r), 2);
  EXPECT_EQ(parse_rational("2/3"), make_rational(2, 3));
  EXPECT_EQ(parse_rational(" -2 "), make_rational(-2));
  EXPECT_EQ(parse_rational("0/5"), Rational(0));
  EXPECT_EQ(boost::multiprecision::denominator(parse_rational("0/5")), 1);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(QPoly, ZeroHasNoDegree) {
  QPoly z;
  EXPECT_TRUE(z.is_zero());
  EXPECT_FALSE(z.degree().has_value());
  EXPECT_EQ(poly({1, 2, 0, 0}).size(), 2u);
  EXPECT_EQ(poly({0, 0}), QPoly());
  EXPECT_EQ(*poly({0, 0, 3}).degree(), 2u);
}

TEST(QPoly, DivisionAndGcd) {
  auto [quo, rem] = divmod(poly({-1, 0, 1}), poly({-1, 1}));
  EXPECT_EQ(quo, poly({1, 1}));
  EXPECT_TRUE(rem.is_zero());
  EXPECT_THROW(exact_div(poly({1, 0, 1}), poly({1, 1})), inexact_division);
  EXPECT_THROW(divmod(poly({1}), QPoly()), std::domain_error);
  // gcd((q-1)(q+2), (q-1)(q-3)) = q - 1
  EXPECT_EQ(gcd(poly({-1, 1}) * poly({2, 1}), poly({-1, 1}) * poly({-3, 1})), poly({-1, 1}));
  EXPECT_EQ(gcd(poly({2}), poly({0, 1})), poly({1}));
  EXPECT_EQ(gcd(QPoly(), poly({0, 2})), poly({0, 1}));
}

TEST(QInteger, Examples) {
  EXPECT_EQ(q_integer(0), QPoly());
  EXPECT_EQ(q_integer(1), poly({1}));
  EXPECT_EQ(q_integer(3), poly({1, 1, 1}));
}

TEST(QFactorial, Examples) {
  EXPECT_EQ(q_factorial(0), poly({1}));
  EXPECT_EQ(q_factorial(2), poly({1, 1}));
  // oracle: direct product of q-integers
  EXPECT_EQ(q_factorial(3), q_integer(1) * q_integer(2) * q_integer(3));
  EXPECT_EQ(q_factorial(3), poly({1, 2, 2, 1}));
}

TEST(QBinomial, Examples) {
  for (std::size_t n = 0; n < 6; ++n) EXPECT_EQ(q_binomial(n, 0), poly({1}));
  EXPECT_EQ(q_binomial(2, 1), poly({1, 1}));
  EXPECT_EQ(q_binomial(4, 2), oracle::gaussian_by_subsets(4, 2));
  EXPECT_EQ(q_binomial(4, 2), poly({1, 1, 2, 1, 1}));
  EXPECT_THROW(q_binomial(2, 3), std::out_of_range);
}

TEST(QBinomial, PascalRecurrenceAndNonnegativity) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::size_t k = 1; k + 1 <= n; ++k) {
      EXPECT_EQ(q_binomial(n, k), q_binomial(n - 1, k - 1) + q_binomial(n - 1, k).shifted(k)) << n << " " << k;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      const QPoly b = q_binomial(n, k);
      for (const auto& c : b.coeffs()) {
        EXPECT_TRUE(is_integer(c));
        EXPECT_GE(c, 0);
      }
    }
  }
  for (std::size_t n = 0; n <= 10; ++n) {
    for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(q_binomial(n, k), oracle::gaussian_by_subsets(n, k));
  }
}

TEST(QBinomial, SpecializesAtOne) {
  for (unsigned n = 0; n <= 12; ++n) {
    EXPECT_EQ(q_integer(n).evaluate(Rational(1)), Rational(n));
    for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(q_binomial(n, k).evaluate(Rational(1)), Rational(binomial(n, k)));
  }
}

TEST(QRat, Normalize) {
  EXPECT_EQ(qrat_normalize(poly({-1, 0, 1}), poly({-1, 1})), QRat(poly({1, 1})));
  QRat r = qrat_normalize(poly({0, 2}), poly({2}));
  EXPECT_EQ(r.num(), poly({0, 1}));
  EXPECT_EQ(r.den(), poly({1}));
  // (1 - q^3) / (1 - q)^2 = -(1 + q + q^2) / (q - 1)
  QRat s = qrat_normalize(poly({1, 0, 0, -1}), poly({1, -1}) * poly({1, -1}));
  EXPECT_EQ(s.num(), poly({-1, -1, -1}));
  EXPECT_EQ(s.den(), poly({-1, 1}));
  EXPECT_THROW(qrat_normalize(poly({1}), QPoly()), std::domain_error);
  EXPECT_EQ(qrat_normalize(QPoly(), poly({0, 3})).den(), poly({1}));
}

TEST(QRat, Evaluate) {
  EXPECT_EQ(qrat_eval(QRat(poly({0, 1})), make_rational(2, 3)), make_rational(2, 3));
  QRat inv = qrat_normalize(poly({1}), poly({1, 1}));
  EXPECT_EQ(qrat_eval(inv, Rational(1)), make_rational(1, 2));
  EXPECT_THROW(qrat_eval(inv, Rational(-1)), pole_error);
}

TEST(QRat, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    QRat a = random_element(rng), b = random_element(rng), c = random_element(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, QRat());
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), QRat(1));
    QRat again = qrat_normalize(a.num(), a.den());
    EXPECT_EQ(again, a);
    if (!a.den().is_zero()) EXPECT_EQ(a.den().leading(), 1);
  }
}

TEST(QRat, NegativeQPowers) {
  QRat r = QRat::q_power(-3) * QRat::q_power(2);
  EXPECT_EQ(r, QRat::q_power(-1));
  EXPECT_EQ(r * QRat::q_power(1), QRat(1));
}

TEST(Cyclotomic, KnownPolynomials) {
  EXPECT_EQ(cyclotomic(1), poly({-1, 1}));
  EXPECT_EQ(cyclotomic(2), poly({1, 1}));
  EXPECT_EQ(cyclotomic(4), poly({1, 0, 1}));
  EXPECT_EQ(cyclotomic(6), poly({1, -1, 1}));
  // [s]_q is the product of Phi_d over divisors d > 1
  for (std::size_t s = 1; s <= 12; ++s) {
    QPoly prod(1);
    for (std::size_t d = 2; d <= s; ++d) {
      if (s % d == 0) prod *= cyclotomic(d);
    }
    EXPECT_EQ(prod, q_integer(s));
  }
}

TEST(CyclotomicFraction, AgreesWithGenericArithmetic) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> s(1, 8), e(0, 6);
  for (int trial = 0; trial < 40; ++trial) {
    CyclotomicFraction acc;
    QRat ref;
    for (int term = 0; term < 5; ++term) {
      std::size_t ee = e(rng), ss = s(rng);
      auto f = CyclotomicFraction::q_power_over_q_integer(ee, ss, 2);
      acc += f;
      ref += qrat_normalize(q_power(ee), q_integer(ss) * q_integer(ss));
    }
    EXPECT_EQ(acc.to_qrat(), ref);
  }
  // full cancellation
  CyclotomicFraction f(q_integer(6));
  f.divide_by_q_integer(6);
  EXPECT_EQ(f.to_qrat(), QRat(1));
}

TEST(QPoly, HeuristicGcdAgreesWithEuclid) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> c(-20, 20), d(0, 6);
  auto rp = [&] {
    std::vector<Rational> v(static_cast<std::size_t>(d(rng)) + 1);
    for (auto& x : v) x = make_rational(c(rng), 1 + std::abs(c(rng)) % 4);
    return QPoly(std::move(v));
  };
  for (int trial = 0; trial < 200; ++trial) {
    QPoly common = rp(), a = rp() * common, b = rp() * common;
    EXPECT_EQ(gcd(a, b), euclid_gcd(a, b));
  }
  QPoly big = q_factorial(9) * q_factorial(7);
  EXPECT_EQ(gcd(big, q_factorial(8) * q_integer(12)), euclid_gcd(big, q_factorial(8) * q_integer(12)));
}
