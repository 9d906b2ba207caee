#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "qmhs/exactq/polynomial.hpp"

namespace qmhs {

/// Raised when a rational function is evaluated at a root of its denominator.
class pole_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/**
 * Element of the field of rational functions in q.
 *
 * Canonical form: numerator and denominator coprime, denominator monic.
 * Zero is 0/1.  Because the form is unique, operator== is structural.
 * Sums and products use Henrici's trick so that gcds are taken of the
 * smallest possible operands.
 */
template <class Coeff>
class RationalFunction {
 public:
  using poly_type = Polynomial<Coeff>;

  RationalFunction() : den_(Coeff(1)) {}
  RationalFunction(const Coeff& c) : num_(c), den_(Coeff(1)) {}
  RationalFunction(int c) : RationalFunction(Coeff(c)) {}
  RationalFunction(poly_type p) : num_(std::move(p)), den_(Coeff(1)) {}

  /// Reduces num/den to canonical form; throws on a zero denominator.
  static RationalFunction normalized(poly_type num, poly_type den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    RationalFunction r;
    if (num.is_zero()) return r;
    poly_type g = gcd(num, den);
    if (!g.is_constant()) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
    Coeff lead = den.leading();
    if (lead != 1) {
      Coeff inv = Coeff(1) / lead;
      num *= inv;
      den *= inv;
    }
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

  /// Skips the gcd: the caller guarantees num and den are coprime and den is monic.
  static RationalFunction from_reduced(poly_type num, poly_type den) {
    if (den.is_zero() || den.leading() != 1) throw std::domain_error("from_reduced: denominator must be monic");
    RationalFunction r;
    if (num.is_zero()) return r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

  /// q^e for any integer e.
  static RationalFunction q_power(long e) {
    if (e >= 0) return RationalFunction(poly_type::monomial(Coeff(1), static_cast<std::size_t>(e)));
    RationalFunction r;
    r.num_ = poly_type(Coeff(1));
    r.den_ = poly_type::monomial(Coeff(1), static_cast<std::size_t>(-e));
    return r;
  }

  const poly_type& num() const { return num_; }
  const poly_type& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational function");
    RationalFunction r;
    r.num_ = den_;
    r.den_ = num_;
    r.fix_sign();
    return r;
  }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
      return normalized(a.num_ + b.num_, a.den_);
    }
    poly_type g = gcd(a.den_, b.den_);
    if (g.is_constant()) {
      RationalFunction r;
      r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
      r.den_ = a.den_ * b.den_;
      if (r.num_.is_zero()) return {};
      return r;
    }
    poly_type bd = exact_div(b.den_, g);
    poly_type num = a.num_ * bd + b.num_ * exact_div(a.den_, g);
    if (num.is_zero()) return {};
    poly_type den = a.den_ * bd;
    poly_type h = gcd(num, g);
    RationalFunction r;
    if (h.is_constant()) {
      r.num_ = std::move(num);
      r.den_ = std::move(den);
    } else {
      r.num_ = exact_div(num, h);
      r.den_ = exact_div(den, h);
    }
    return r;
  }

  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    poly_type g1 = gcd(a.num_, b.den_);
    poly_type g2 = gcd(b.num_, a.den_);
    RationalFunction r;
    r.num_ = (g1.is_constant() ? a.num_ : exact_div(a.num_, g1)) *
             (g2.is_constant() ? b.num_ : exact_div(b.num_, g2));
    r.den_ = (g2.is_constant() ? a.den_ : exact_div(a.den_, g2)) *
             (g1.is_constant() ? b.den_ : exact_div(b.den_, g1));
    return r;
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Exact value at q = x; throws pole_error if the denominator vanishes.
  Coeff evaluate(const Coeff& x) const {
    Coeff d = den_.evaluate(x);
    if (d == 0) throw pole_error("denominator vanishes at q = " + x.str());
    return num_.evaluate(x) / d;
  }

  std::string to_string() const {
    if (den_.is_constant()) return num_.to_string();
    return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << r.to_string(); }

 private:
  void fix_sign() {
    Coeff lead = den_.leading();
    if (lead != 1) {
      Coeff inv = Coeff(1) / lead;
      num_ *= inv;
      den_ *= inv;
    }
  }

  poly_type num_;
  poly_type den_;
};

}  // namespace qmhs
