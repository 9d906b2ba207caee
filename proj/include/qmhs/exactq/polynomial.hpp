#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <type_traits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmhs/exactq/rational.hpp"

namespace qmhs {

/// Thrown when an operation that must divide exactly leaves a remainder.
class inexact_division : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/**
 * Dense univariate polynomial in the indeterminate q over a field.
 *
 * Index i of the coefficient vector holds the coefficient of q^i.  Trailing
 * zeros are never stored, so the zero polynomial is the empty vector and
 * structural equality is mathematical equality.
 */
template <class Coeff>
class Polynomial {
 public:
  using coeff_type = Coeff;

  Polynomial() = default;
  Polynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Coeff> coeffs) : coeffs_(coeffs) { trim(); }
  Polynomial(const Coeff& c) {
    if (c != 0) coeffs_.push_back(c);
  }
  Polynomial(int c) : Polynomial(Coeff(c)) {}

  /// c * q^power
  static Polynomial monomial(const Coeff& c, std::size_t power) {
    if (c == 0) return {};
    std::vector<Coeff> v(power + 1, Coeff(0));
    v[power] = c;
    return Polynomial(std::move(v));
  }
  static Polynomial q() { return monomial(Coeff(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  /// Degree, or nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }

  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Coeff>& coeffs() const { return coeffs_; }

  Coeff coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Coeff(0); }
  const Coeff& leading() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return coeffs_.back();
  }

  Coeff evaluate(const Coeff& x) const {
    Coeff acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    if (leading() == 1) return *this;
    return *this * (Coeff(1) / leading());
  }

  /// Multiplies by q^power.
  Polynomial shifted(std::size_t power) const {
    if (is_zero() || power == 0) return *this;
    std::vector<Coeff> v(power, Coeff(0));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    Polynomial r;
    r.coeffs_ = std::move(v);
    return r;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Coeff& c) {
    if (c == 0) {
      coeffs_.clear();
    } else {
      for (auto& x : coeffs_) x *= c;
    }
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Coeff& c) { return a *= c; }
  friend Polynomial operator*(const Coeff& c, Polynomial a) { return a *= c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.is_constant()) return a * b.coeffs_[0];
    if (a.is_constant()) return b * a.coeffs_[0];
    std::vector<Coeff> out(a.size() + b.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division: returns (quotient, remainder) with deg r < deg d.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& n, const Polynomial& d) {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    if (n.size() < d.size()) return {Polynomial{}, n};
    std::vector<Coeff> rem = n.coeffs_;
    std::vector<Coeff> quo(n.size() - d.size() + 1, Coeff(0));
    const Coeff inv_lead = Coeff(1) / d.leading();
    const std::size_t dd = d.size() - 1;
    for (std::size_t i = quo.size(); i-- > 0;) {
      Coeff& top = rem[i + dd];
      if (top == 0) continue;
      Coeff f = top * inv_lead;
      for (std::size_t j = 0; j < dd; ++j) {
        if (d.coeffs_[j] != 0) rem[i + j] -= f * d.coeffs_[j];
      }
      top = Coeff(0);
      quo[i] = std::move(f);
    }
    rem.resize(dd);
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
  }

  /// Quotient n / d; throws inexact_division when d does not divide n.
  friend Polynomial exact_div(const Polynomial& n, const Polynomial& d) {
    auto [quo, rem] = divmod(n, d);
    if (!rem.is_zero()) throw inexact_division("polynomial division left a nonzero remainder");
    return quo;
  }

  friend Polynomial operator%(const Polynomial& n, const Polynomial& d) { return divmod(n, d).second; }

  std::string to_string(const std::string& var = "q") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const Coeff& c = coeffs_[i];
      if (c == 0) continue;
      bool neg = c < 0;
      Coeff mag = neg ? Coeff(-c) : c;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      if (i == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

namespace detail {

using IntPoly = std::vector<Integer>;

// Clears denominators and divides out the content; leading coefficient > 0.
inline IntPoly primitive_integer_part(const Polynomial<Rational>& p) {
  Integer den = 1;
  for (const auto& c : p.coeffs()) {
    const Integer& d = boost::multiprecision::denominator(c);
    den = den / boost::multiprecision::gcd(den, d) * d;
  }
  IntPoly out;
  out.reserve(p.size());
  Integer content = 0;
  for (const auto& c : p.coeffs()) {
    out.push_back(boost::multiprecision::numerator(c) * (den / boost::multiprecision::denominator(c)));
    content = boost::multiprecision::gcd(content, out.back());
  }
  if (out.back() < 0) content = -content;
  if (content != 1) {
    for (auto& c : out) c /= content;
  }
  return out;
}

inline Integer max_norm(const IntPoly& p) {
  Integer m = 0;
  for (const auto& c : p) m = std::max(m, Integer(abs(c)));
  return m;
}

inline Integer evaluate_at(const IntPoly& p, const Integer& x) {
  Integer acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// True when g divides a in Z[q] (g primitive, nonzero).
inline bool divides_exactly(const IntPoly& g, IntPoly a) {
  if (a.size() < g.size()) return false;
  const std::size_t dg = g.size() - 1;
  for (std::size_t i = a.size() - g.size() + 1; i-- > 0;) {
    Integer& top = a[i + dg];
    if (top == 0) continue;
    Integer quo, rem;
    boost::multiprecision::divide_qr(top, g.back(), quo, rem);
    if (rem != 0) return false;
    for (std::size_t j = 0; j < dg; ++j) a[i + j] -= quo * g[j];
    top = 0;
  }
  for (std::size_t j = 0; j < dg; ++j) {
    if (a[j] != 0) return false;
  }
  return true;
}

/**
 * Heuristic gcd of Char, Geddes and Gonnet: evaluate both primitive integer
 * polynomials at a large integer xi, take the integer gcd, and read its
 * balanced xi-adic digits back as a candidate.  A candidate that divides
 * both inputs is the gcd.  Returns nullopt after a few failed points.
 */
inline std::optional<Polynomial<Rational>> heuristic_gcd(const Polynomial<Rational>& pa,
                                                        const Polynomial<Rational>& pb) {
  const IntPoly a = primitive_integer_part(pa);
  const IntPoly b = primitive_integer_part(pb);
  Integer xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Integer gamma = boost::multiprecision::gcd(evaluate_at(a, xi), evaluate_at(b, xi));
    IntPoly cand;
    const Integer half = xi / 2;
    while (gamma != 0) {
      Integer digit = gamma % xi;
      if (digit < 0) digit += xi;
      if (digit > half) digit -= xi;
      cand.push_back(digit);
      gamma = (gamma - digit) / xi;
    }
    if (!cand.empty()) {
      Integer content = 0;
      for (const auto& c : cand) content = boost::multiprecision::gcd(content, c);
      if (cand.back() < 0) content = -content;
      for (auto& c : cand) c /= content;
      if (divides_exactly(cand, a) && divides_exactly(cand, b)) {
        std::vector<Rational> coeffs;
        coeffs.reserve(cand.size());
        for (const auto& c : cand) coeffs.emplace_back(c);
        return Polynomial<Rational>(std::move(coeffs)).monic();
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

}  // namespace detail

/// Monic greatest common divisor; gcd(0, 0) = 0.
template <class Coeff>
Polynomial<Coeff> gcd(Polynomial<Coeff> a, Polynomial<Coeff> b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial<Coeff>(Coeff(1));
  if constexpr (std::is_same_v<Coeff, Rational>) {
    if (auto g = detail::heuristic_gcd(a, b)) return *g;
  }
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.is_constant()) return Polynomial<Coeff>(Coeff(1));
    Polynomial<Coeff> r = a % b;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

/// Plain Euclidean gcd over the coefficient field (monic), no heuristics.
template <class Coeff>
Polynomial<Coeff> euclid_gcd(Polynomial<Coeff> a, Polynomial<Coeff> b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.is_constant()) return Polynomial<Coeff>(Coeff(1));
    Polynomial<Coeff> r = a % b;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

}  // namespace qmhs
