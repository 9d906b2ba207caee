#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmhs/exactq/polynomial.hpp"
#include "qmhs/exactq/rational.hpp"
#include "qmhs/exactq/rational_function.hpp"

namespace qmhs {

using QPoly = Polynomial<Rational>;
using QRat = RationalFunction<Rational>;

/// Canonical reduced form of num/den.
inline QRat qrat_normalize(QPoly num, QPoly den) { return QRat::normalized(std::move(num), std::move(den)); }

/// Exact value of x at q = q0; throws pole_error at a root of the denominator.
inline Rational qrat_eval(const QRat& x, const Rational& q0) { return x.evaluate(q0); }

/// [n]_q = 1 + q + ... + q^(n-1).
inline QPoly q_integer(std::size_t n) { return QPoly(std::vector<Rational>(n, Rational(1))); }

namespace detail {

// Process-wide memo for factorials and binomials.  Values are immutable once
// inserted, so returning copies under the lock is enough.
class QCombinatoricsCache {
 public:
  static QCombinatoricsCache& instance() {
    static QCombinatoricsCache cache;
    return cache;
  }

  QPoly factorial(std::size_t n) {
    std::lock_guard lock(mutex_);
    while (factorials_.size() <= n) {
      std::size_t i = factorials_.size();
      factorials_.push_back(i == 0 ? QPoly(1) : factorials_.back() * q_integer(i));
    }
    return factorials_[n];
  }

  QPoly binomial(std::size_t n, std::size_t k) {
    {
      std::lock_guard lock(mutex_);
      auto it = binomials_.find({n, k});
      if (it != binomials_.end()) return it->second;
    }
    QPoly value = exact_div(factorial(n), factorial(k) * factorial(n - k));
    std::lock_guard lock(mutex_);
    binomials_.emplace(std::make_pair(n, k), value);
    return value;
  }

 private:
  std::mutex mutex_;
  std::vector<QPoly> factorials_;
  std::map<std::pair<std::size_t, std::size_t>, QPoly> binomials_;
};

}  // namespace detail

/// [n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1.
inline QPoly q_factorial(std::size_t n) { return detail::QCombinatoricsCache::instance().factorial(n); }

/// Gaussian binomial [n choose k]_q as a polynomial.
inline QPoly q_binomial(std::size_t n, std::size_t k) {
  if (k > n) {
    throw std::out_of_range("q_binomial: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  }
  return detail::QCombinatoricsCache::instance().binomial(n, k);
}

inline QPoly q_power(std::size_t e) { return QPoly::monomial(Rational(1), e); }

}  // namespace qmhs
