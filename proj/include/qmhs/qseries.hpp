#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qmhs/exactq.hpp"
#include "qmhs/harmonic.hpp"
#include "qmhs/multiindex.hpp"

namespace qmhs {

enum class Axis { X, Y };

/// An operator needed more valid order on an axis than the series has.
class truncation_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/**
 * Truncated bivariate series  sum a(n,k) X^n Y^k / ([n]_q! [k]_q!).
 *
 * Coefficients are stored for 0 <= n <= valid_x, 0 <= k <= valid_y and are
 * exact there; nothing is known beyond.  In this divided-power basis the
 * q-derivatives are index shifts and the dilations are diagonal.
 */
class BiSeries {
 public:
  BiSeries(std::size_t valid_x, std::size_t valid_y)
      : valid_x_(valid_x), valid_y_(valid_y), coeffs_((valid_x + 1) * (valid_y + 1)) {}

  template <class F>
  static BiSeries generate(std::size_t valid_x, std::size_t valid_y, F&& f) {
    BiSeries s(valid_x, valid_y);
    for (std::size_t n = 0; n <= valid_x; ++n) {
      for (std::size_t k = 0; k <= valid_y; ++k) s.coeffs_[s.index(n, k)] = f(n, k);
    }
    return s;
  }

  /// The single basis element X^n Y^k / ([n]! [k]!).
  static BiSeries basis(std::size_t n, std::size_t k, std::size_t valid_x, std::size_t valid_y) {
    BiSeries s(valid_x, valid_y);
    if (n <= valid_x && k <= valid_y) s.coeffs_[s.index(n, k)] = QRat(1);
    return s;
  }

  std::size_t valid_x() const { return valid_x_; }
  std::size_t valid_y() const { return valid_y_; }
  std::size_t valid(Axis a) const { return a == Axis::X ? valid_x_ : valid_y_; }

  const QRat& operator()(std::size_t n, std::size_t k) const {
    if (n > valid_x_ || k > valid_y_) {
      throw std::out_of_range("coefficient (" + std::to_string(n) + "," + std::to_string(k) +
                              ") outside the valid region");
    }
    return coeffs_[index(n, k)];
  }
  QRat& operator()(std::size_t n, std::size_t k) {
    return const_cast<QRat&>(static_cast<const BiSeries&>(*this)(n, k));
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const QRat& c) { return c.is_zero(); });
  }

  /// Restriction to a smaller region.
  BiSeries truncated(std::size_t valid_x, std::size_t valid_y) const {
    if (valid_x > valid_x_ || valid_y > valid_y_) throw std::out_of_range("cannot enlarge a truncated series");
    return generate(valid_x, valid_y, [&](std::size_t n, std::size_t k) { return (*this)(n, k); });
  }

  /// Coefficientwise a - b on the intersection of the valid regions.
  friend BiSeries difference(const BiSeries& a, const BiSeries& b) {
    return generate(std::min(a.valid_x_, b.valid_x_), std::min(a.valid_y_, b.valid_y_),
                    [&](std::size_t n, std::size_t k) { return a(n, k) - b(n, k); });
  }
  friend BiSeries operator+(const BiSeries& a, const BiSeries& b) {
    return generate(std::min(a.valid_x_, b.valid_x_), std::min(a.valid_y_, b.valid_y_),
                    [&](std::size_t n, std::size_t k) { return a(n, k) + b(n, k); });
  }
  friend BiSeries operator-(const BiSeries& a, const BiSeries& b) { return difference(a, b); }
  friend BiSeries operator*(const QRat& c, const BiSeries& s) {
    return generate(s.valid_x_, s.valid_y_, [&](std::size_t n, std::size_t k) { return c * s(n, k); });
  }

  /// Equality restricted to the common valid region.
  friend bool agree_on_common_region(const BiSeries& a, const BiSeries& b) { return difference(a, b).is_zero(); }

 private:
  std::size_t index(std::size_t n, std::size_t k) const { return n * (valid_y_ + 1) + k; }

  std::size_t valid_x_;
  std::size_t valid_y_;
  std::vector<QRat> coeffs_;
};

/// Partial q-derivative: a'(n,k) = a(n+1,k) on X (index shift), one order consumed.
inline BiSeries q_partial(const BiSeries& s, Axis axis) {
  if (s.valid(axis) == 0) throw truncation_error("q_partial: valid order exhausted");
  if (axis == Axis::X) {
    return BiSeries::generate(s.valid_x() - 1, s.valid_y(), [&](std::size_t n, std::size_t k) { return s(n + 1, k); });
  }
  return BiSeries::generate(s.valid_x(), s.valid_y() - 1, [&](std::size_t n, std::size_t k) { return s(n, k + 1); });
}

/// Dilation f(q^power X, Y) (resp. Y): a'(n,k) = q^{power*n} a(n,k).  power = -1 is the inverse.
inline BiSeries lambda_scale(const BiSeries& s, Axis axis, int power = 1) {
  return BiSeries::generate(s.valid_x(), s.valid_y(), [&](std::size_t n, std::size_t k) {
    const long e = static_cast<long>(axis == Axis::X ? n : k) * power;
    return e == 0 ? s(n, k) : s(n, k) * QRat::q_power(e);
  });
}

/// Multiplication by X (resp. Y): a'(n,k) = [n]_q a(n-1,k), a'(0,k) = 0.
inline BiSeries mul_by_var(const BiSeries& s, Axis axis) {
  return BiSeries::generate(s.valid_x(), s.valid_y(), [&](std::size_t n, std::size_t k) {
    if (axis == Axis::X) return n == 0 ? QRat() : QRat(q_integer(n)) * s(n - 1, k);
    return k == 0 ? QRat() : QRat(q_integer(k)) * s(n, k - 1);
  });
}

/// a(n,k) -> [n+k+shift]_q a(n,k); this is (1 - q^shift L_X L_Y)/(1 - q) without dividing by 1-q.
inline BiSeries q_integer_diagonal(const BiSeries& s, std::size_t shift) {
  return BiSeries::generate(s.valid_x(), s.valid_y(), [&](std::size_t n, std::size_t k) {
    return QRat(q_integer(n + k + shift)) * s(n, k);
  });
}

/// Product in the divided-power basis (coefficient form of the q-Leibniz rule).
inline BiSeries series_mul(const BiSeries& s, const BiSeries& t) {
  const std::size_t vx = std::min(s.valid_x(), t.valid_x());
  const std::size_t vy = std::min(s.valid_y(), t.valid_y());
  return BiSeries::generate(vx, vy, [&](std::size_t n, std::size_t k) {
    QRat acc;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= k; ++j) {
        if (s(i, j).is_zero() || t(n - i, k - j).is_zero()) continue;
        acc += QRat(q_binomial(n, i) * q_binomial(k, j)) * s(i, j) * t(n - i, k - j);
      }
    }
    return acc;
  });
}

/// e(Y) = sum Y^k / [k]_q!  (or e(X) with axis = X).
inline BiSeries q_exp(std::size_t valid_x, std::size_t valid_y, Axis axis = Axis::Y) {
  return BiSeries::generate(valid_x, valid_y, [axis](std::size_t n, std::size_t k) {
    return (axis == Axis::Y ? n == 0 : k == 0) ? QRat(1) : QRat();
  });
}

/**
 * Expanded product (X - q^first Y)(X - q^{first+1} Y)...(X - q^last Y) in the
 * divided-power basis.  An empty range (last < first) is the constant 1.
 */
inline BiSeries shifted_product_series(std::size_t first, std::size_t last, std::size_t valid_x,
                                       std::size_t valid_y) {
  // by_y[b] = ordinary coefficient of X^{deg-b} Y^b
  std::vector<QPoly> by_y{QPoly(1)};
  for (std::size_t j = first; j <= last && last >= first; ++j) {
    std::vector<QPoly> next(by_y.size() + 1);
    for (std::size_t b = 0; b < by_y.size(); ++b) {
      next[b] += by_y[b];
      next[b + 1] -= by_y[b].shifted(j);
    }
    by_y = std::move(next);
  }
  const std::size_t deg = by_y.size() - 1;
  return BiSeries::generate(valid_x, valid_y, [&](std::size_t n, std::size_t k) {
    if (n + k != deg) return QRat();
    return QRat(by_y[k] * q_factorial(n) * q_factorial(k));
  });
}

/// f_a(X,Y) = sum_n a(n) (X - qY)(X - q^2 Y)...(X - q^n Y) / [n]_q!.
inline BiSeries f_a_series(const QSeq& seq, std::size_t valid_x, std::size_t valid_y) {
  BiSeries out(valid_x, valid_y);
  // only the n = x + y term reaches the monomial X^x Y^y
  for (std::size_t n = 0; n <= valid_x + valid_y; ++n) {
    const QRat an = seq(n);
    if (an.is_zero()) continue;
    const BiSeries prod = shifted_product_series(1, n, valid_x, valid_y);
    const QRat scale = an * QRat::from_reduced(QPoly(1), q_factorial(n));
    for (std::size_t x = 0; x <= std::min(n, valid_x); ++x) {
      const std::size_t y = n - x;
      if (y > valid_y) continue;
      out(x, y) += scale * prod(x, y);
    }
  }
  return out;
}

/// F_a(X,Y) = sum (Delta_{q,k} a)(n) X^n Y^k / ([n]! [k]!).
inline BiSeries F_a_series(const QSeq& seq, std::size_t valid_x, std::size_t valid_y) {
  return BiSeries::generate(valid_x, valid_y,
                            [&](std::size_t n, std::size_t k) { return delta_qk_closed(seq, n, k); });
}

/// G_{mu,nu}(X,Y) = sum c_{mu,nu}(n,k) X^n Y^k / ([n]! [k]!).
inline BiSeries G_series(const MultiIndex& mu, const MultiIndex& nu, std::size_t valid_x, std::size_t valid_y) {
  if (mu.weight() != nu.weight()) throw std::invalid_argument("G_series: weights differ");
  return BiSeries::generate(valid_x, valid_y,
                            [&](std::size_t n, std::size_t k) { return c_value(mu, nu, n, k); });
}

/**
 * A linear operator on BiSeries built from the atoms d_X, d_Y, L_X^{+-1},
 * L_Y^{+-1}, multiplication by X or Y, scalars and the [n+k+c]_q diagonal,
 * closed under sums and composition.  (A * B)(s) = A(B(s)).
 *
 * Valid regions are tracked through application: each d consumes one order
 * on its axis, sums keep the intersection.
 */
class SeriesOp {
 public:
  static SeriesOp identity() { return SeriesOp(Atom{Kind::Identity}); }
  static SeriesOp partial(Axis a) { return SeriesOp(Atom{Kind::Partial, a}); }
  static SeriesOp lambda(Axis a, int power = 1) { return SeriesOp(Atom{Kind::Lambda, a, power}); }
  static SeriesOp mul_var(Axis a) { return SeriesOp(Atom{Kind::MulVar, a}); }
  static SeriesOp scalar(QRat c) { return SeriesOp(Atom{Kind::Scalar, Axis::X, 0, 0, std::move(c)}); }
  /// (1 - q^shift L_X L_Y) / (1 - q), i.e. a(n,k) -> [n+k+shift]_q a(n,k)
  static SeriesOp q_integer_diagonal(std::size_t shift) {
    return SeriesOp(Atom{Kind::QIntegerDiagonal, Axis::X, 0, shift});
  }

  friend SeriesOp operator+(const SeriesOp& a, const SeriesOp& b) {
    return SeriesOp(std::make_shared<const Node>(Node{Combine{true, a.node_, b.node_}}));
  }
  friend SeriesOp operator-(const SeriesOp& a, const SeriesOp& b) { return a + scalar(QRat(-1)) * b; }
  friend SeriesOp operator*(const SeriesOp& a, const SeriesOp& b) {
    return SeriesOp(std::make_shared<const Node>(Node{Combine{false, a.node_, b.node_}}));
  }
  friend SeriesOp operator*(const QRat& c, const SeriesOp& a) { return scalar(c) * a; }

  BiSeries apply(const BiSeries& s) const { return eval(*node_, s); }

 private:
  enum class Kind { Identity, Partial, Lambda, MulVar, Scalar, QIntegerDiagonal };
  struct Atom {
    Kind kind;
    Axis axis = Axis::X;
    int power = 0;
    std::size_t shift = 0;
    QRat value{};
  };
  struct Node;
  struct Combine {
    bool is_sum;  // otherwise composition
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };
  struct Node {
    std::variant<Atom, Combine> v;
  };

  explicit SeriesOp(Atom atom) : node_(std::make_shared<const Node>(Node{std::move(atom)})) {}
  explicit SeriesOp(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static BiSeries eval(const Node& node, const BiSeries& s);

  std::shared_ptr<const Node> node_;
};

inline BiSeries SeriesOp::eval(const Node& node, const BiSeries& s) {
  if (const auto* c = std::get_if<Combine>(&node.v)) {
    if (c->is_sum) return eval(*c->lhs, s) + eval(*c->rhs, s);
    return eval(*c->lhs, eval(*c->rhs, s));
  }
  const Atom& a = std::get<Atom>(node.v);
  switch (a.kind) {
    case Kind::Identity:
      return s;
    case Kind::Partial:
      return q_partial(s, a.axis);
    case Kind::Lambda:
      return lambda_scale(s, a.axis, a.power);
    case Kind::MulVar:
      return mul_by_var(s, a.axis);
    case Kind::Scalar:
      return a.value * s;
    case Kind::QIntegerDiagonal:
      return qmhs::q_integer_diagonal(s, a.shift);
  }
  throw std::logic_error("unknown series operator");
}

inline BiSeries apply_op(const SeriesOp& op, const BiSeries& s) { return op.apply(s); }

/// [A, B]_q = AB - qBA
inline SeriesOp q_commutator(const SeriesOp& a, const SeriesOp& b) {
  return a * b - QRat(q_power(1)) * (b * a);
}

namespace ops {

inline SeriesOp dX() { return SeriesOp::partial(Axis::X); }
inline SeriesOp dY() { return SeriesOp::partial(Axis::Y); }
inline SeriesOp LX(int power = 1) { return SeriesOp::lambda(Axis::X, power); }
inline SeriesOp LY(int power = 1) { return SeriesOp::lambda(Axis::Y, power); }
inline SeriesOp X() { return SeriesOp::mul_var(Axis::X); }
inline SeriesOp Y() { return SeriesOp::mul_var(Axis::Y); }
inline SeriesOp one() { return SeriesOp::identity(); }
inline SeriesOp q_pow(long e) { return SeriesOp::scalar(QRat::q_power(e)); }

/// q d_X L_Y + d_Y - 1, the operator annihilating every F_a.
inline SeriesOp pde() { return q_pow(1) * dX() * LY() + dY() - one(); }

/// q^{-shift} L_X^{-1} L_Y^{-1} ((1 - q^shift L_X L_Y)/(1-q) - q^{shift-1} Y)
inline SeriesOp reduce_first_part(std::size_t shift) {
  const long s = static_cast<long>(shift);
  return q_pow(-s) * LX(-1) * LY(-1) * (SeriesOp::q_integer_diagonal(shift) - q_pow(s - 1) * Y());
}

/// (1 - q^shift L_X L_Y)/(1-q) - X
inline SeriesOp drop_first_part(std::size_t shift) { return SeriesOp::q_integer_diagonal(shift) - X(); }

}  // namespace ops

/**
 * Unique solution of the PDE recurrence
 *   q^{k+1} a(n+1,k) + a(n,k+1) - a(n,k) = 0
 * with prescribed column a(n,0).  The column must have length at least
 * valid_x + valid_y + 1 to determine the requested region.
 */
inline BiSeries solve_pde_from_column(const std::vector<QRat>& column, std::size_t valid_x, std::size_t valid_y) {
  if (column.size() < valid_x + valid_y + 1) throw truncation_error("solve_pde_from_column: column too short");
  std::vector<QRat> cur = column;
  BiSeries out(valid_x, valid_y);
  for (std::size_t k = 0; k <= valid_y; ++k) {
    for (std::size_t n = 0; n <= valid_x; ++n) out(n, k) = cur[n];
    std::vector<QRat> next(cur.size() - 1);
    for (std::size_t n = 0; n + 1 < cur.size(); ++n) next[n] = cur[n] - QRat::q_power(static_cast<long>(k + 1)) * cur[n + 1];
    cur = std::move(next);
  }
  return out;
}

/**
 * Decides injectivity of op on the truncated space of series valid up to
 * (valid_x, valid_y) by exhibiting a triangular structure: under some
 * ordering of the basis (k-major or n-major), every basis element maps to
 * a series whose first nonzero coefficient sits at its own index.  Returns
 * false when no such ordering works or when op shrinks the region.
 */
inline bool injective_on_truncation(const SeriesOp& op, std::size_t valid_x, std::size_t valid_y) {
  std::vector<BiSeries> images;
  for (std::size_t n = 0; n <= valid_x; ++n) {
    for (std::size_t k = 0; k <= valid_y; ++k) {
      images.push_back(op.apply(BiSeries::basis(n, k, valid_x, valid_y)));
      if (images.back().valid_x() < valid_x || images.back().valid_y() < valid_y) return false;
    }
  }
  auto triangular = [&](bool k_major) {
    for (std::size_t n = 0; n <= valid_x; ++n) {
      for (std::size_t k = 0; k <= valid_y; ++k) {
        const BiSeries& img = images[n * (valid_y + 1) + k];
        if (img(n, k).is_zero()) return false;
        for (std::size_t n2 = 0; n2 <= valid_x; ++n2) {
          for (std::size_t k2 = 0; k2 <= valid_y; ++k2) {
            const bool earlier = k_major ? (k2 < k || (k2 == k && n2 < n)) : (n2 < n || (n2 == n && k2 < k));
            if (earlier && !img(n2, k2).is_zero()) return false;
          }
        }
      }
    }
    return true;
  };
  return triangular(true) || triangular(false);
}

/// Small random polynomial / q-integer, from a seeded engine.
inline QRat random_qrat(std::mt19937_64& rng, bool allow_denominator = true) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> degree(0, 2);
  std::uniform_int_distribution<std::size_t> den(1, 3);
  std::vector<Rational> c(static_cast<std::size_t>(degree(rng)) + 1);
  for (auto& x : c) x = Rational(coeff(rng));
  QPoly num(std::move(c));
  if (!allow_denominator) return QRat(num);
  return qrat_normalize(std::move(num), q_integer(den(rng)));
}

/// Random series with small integer coefficients.
inline BiSeries random_series(std::mt19937_64& rng, std::size_t valid_x, std::size_t valid_y) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  return BiSeries::generate(valid_x, valid_y, [&](std::size_t, std::size_t) { return QRat(Rational(coeff(rng))); });
}

}  // namespace qmhs
