#pragma once

#include <algorithm>
#include <cstddef>
#include <mutex>
#include <utility>
#include <vector>

#include "qmhs/exactq/q_combinatorics.hpp"

namespace qmhs {

/// The d-th cyclotomic polynomial Phi_d(q), d >= 1.
inline QPoly cyclotomic(std::size_t d) {
  static std::mutex mutex;
  static std::vector<QPoly> table{QPoly()};  // index 0 unused
  std::lock_guard lock(mutex);
  while (table.size() <= d) {
    const std::size_t n = table.size();
    // q^n - 1 = prod_{e | n} Phi_e
    QPoly p = QPoly::monomial(Rational(1), n) - QPoly(1);
    for (std::size_t e = 1; e < n; ++e) {
      if (n % e == 0) p = exact_div(p, table[e]);
    }
    table.push_back(std::move(p));
  }
  return table[d];
}

/**
 * Fraction N / prod_d Phi_d^{e_d} whose denominator is kept factored over
 * cyclotomic polynomials.
 *
 * Sums only multiply numerators by the missing cyclotomic cofactors, so no
 * polynomial gcd is ever taken while accumulating.  to_qrat() cancels by
 * trial division; since each Phi_d is irreducible over Q the result is in
 * lowest terms.  Every chain sum in this library has denominators that are
 * products of q-integers [s]_q = prod_{d | s, d > 1} Phi_d, hence the use.
 */
class CyclotomicFraction {
 public:
  CyclotomicFraction() = default;
  explicit CyclotomicFraction(QPoly num) : num_(std::move(num)) {}

  /// q^e / [s]_q^power
  static CyclotomicFraction q_power_over_q_integer(std::size_t e, std::size_t s, unsigned power) {
    CyclotomicFraction f(QPoly::monomial(Rational(1), e));
    for (unsigned i = 0; i < power; ++i) f.divide_by_q_integer(s);
    return f;
  }

  bool is_zero() const { return num_.is_zero(); }
  const QPoly& num() const { return num_; }

  void divide_by_q_integer(std::size_t s) {
    if (s == 0) throw std::domain_error("division by [0]_q");
    if (is_zero()) return;
    for (std::size_t d = 2; d <= s; ++d) {
      if (s % d == 0) bump(d, 1);
    }
  }
  void multiply_by_q_integer(std::size_t s) {
    if (is_zero()) return;
    num_ *= q_integer(s);
  }
  void multiply_by(const QPoly& p) { num_ *= p; }
  void multiply_by_q_power(std::size_t e) { num_ = num_.shifted(e); }

  /// Divides by [n]_q! (i.e. by every [s]_q, s <= n).
  void divide_by_q_factorial(std::size_t n) {
    for (std::size_t s = 2; s <= n; ++s) divide_by_q_integer(s);
  }

  CyclotomicFraction& operator+=(const CyclotomicFraction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const std::size_t len = std::max(exps_.size(), o.exps_.size());
    std::vector<unsigned> target(len, 0);
    for (std::size_t d = 0; d < len; ++d) target[d] = std::max(exp(d), o.exp(d));
    num_ = lift(num_, exps_, target) + lift(o.num_, o.exps_, target);
    exps_ = std::move(target);
    if (num_.is_zero()) exps_.clear();
    return *this;
  }
  friend CyclotomicFraction operator+(CyclotomicFraction a, const CyclotomicFraction& b) { return a += b; }

  CyclotomicFraction& operator*=(const CyclotomicFraction& o) {
    if (is_zero() || o.is_zero()) return *this = CyclotomicFraction();
    num_ *= o.num_;
    for (std::size_t d = 0; d < o.exps_.size(); ++d) bump(d, o.exps_[d]);
    return *this;
  }

  /// Canonical rational function: cancel every Phi_d that divides the numerator.
  QRat to_qrat() const {
    if (is_zero()) return QRat();
    QPoly num = num_;
    QPoly den(1);
    for (std::size_t d = 1; d < exps_.size(); ++d) {
      unsigned e = exps_[d];
      if (e == 0) continue;
      const QPoly phi = cyclotomic(d);
      while (e > 0) {
        auto [quo, rem] = divmod(num, phi);
        if (!rem.is_zero()) break;
        num = std::move(quo);
        --e;
      }
      for (unsigned i = 0; i < e; ++i) den *= phi;
    }
    return QRat::from_reduced(std::move(num), std::move(den));
  }

 private:
  unsigned exp(std::size_t d) const { return d < exps_.size() ? exps_[d] : 0; }

  void bump(std::size_t d, unsigned by) {
    if (exps_.size() <= d) exps_.resize(d + 1, 0);
    exps_[d] += by;
  }

  static QPoly lift(const QPoly& num, const std::vector<unsigned>& from, const std::vector<unsigned>& to) {
    QPoly out = num;
    for (std::size_t d = 1; d < to.size(); ++d) {
      const unsigned have = d < from.size() ? from[d] : 0;
      if (to[d] == have) continue;
      const QPoly phi = cyclotomic(d);
      for (unsigned i = have; i < to[d]; ++i) out *= phi;
    }
    return out;
  }

  QPoly num_;
  std::vector<unsigned> exps_;  // exps_[d] = exponent of Phi_d in the denominator
};

}  // namespace qmhs
