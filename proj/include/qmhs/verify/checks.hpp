#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmhs/harmonic.hpp"
#include "qmhs/multiindex.hpp"
#include "qmhs/qseries.hpp"
#include "qmhs/verify/direct_eval.hpp"
#include "qmhs/verify/report.hpp"

namespace qmhs::verify {

namespace detail {

template <class F>
Record timed(F&& make_record) {
  Stopwatch sw;
  Record r = make_record();
  r.wall_time_ms = sw.ms();
  return r;
}

inline BiSeries zero_series(std::size_t vx, std::size_t vy) { return BiSeries(vx, vy); }

}  // namespace detail

/// Finitely supported sequence of small random rational functions.
inline QSeq random_sequence(std::mt19937_64& rng, std::size_t length) {
  std::vector<QRat> v;
  for (std::size_t i = 0; i < length; ++i) v.push_back(random_qrat(rng));
  return QSeq::from_values(std::move(v));
}

/// Delta_{q,k} a_mu (n) against c_{mu,mu*}(n,k), closed and iterated forms, on the grid.
inline VerificationReport verify_main_identity(const MultiIndex& mu, std::size_t n_max, std::size_t k_max) {
  VerificationReport rep;
  const QSeq a = a_sequence(mu);
  const MultiIndex d = dual(mu);
  for (std::size_t k = 0; k <= k_max; ++k) {
    const QSeq iterated = delta_qk_iter(a, k);
    for (std::size_t n = 0; n <= n_max; ++n) {
      rep.records.push_back(detail::timed([&] {
        const QRat closed = delta_qk_closed(a, n, k);
        json params{{"mu", mu_json(mu)}, {"n", n}, {"k", k}};
        Record r = compare("main", params, closed, c_value(mu, d, n, k));
        if (r.status == Status::pass) {
          r = compare("main", std::move(params), iterated(n), closed);
          if (r.status == Status::fail) r.detail = "iterated difference disagrees with the closed form";
        }
        return r;
      }));
    }
  }
  return rep;
}

/// nabla_q a_mu (k) against b_{mu*}(k).
inline VerificationReport verify_duality(const MultiIndex& mu, std::size_t k_max) {
  VerificationReport rep;
  const QSeq a = a_sequence(mu);
  const MultiIndex d = dual(mu);
  for (std::size_t k = 0; k <= k_max; ++k) {
    rep.records.push_back(detail::timed([&] {
      return compare("duality", {{"mu", mu_json(mu)}, {"k", k}}, nabla_q(a, k), b_value(d, k));
    }));
  }
  return rep;
}

/// Which inductive case a pair falls under: 1 (mu_1 >= 2, nu_1 = 1), 2 (mu_1 = 1, nu_1 >= 2) or 0.
inline int inductive_case(const MultiIndex& mu, const MultiIndex& nu) {
  if (mu.front() >= 2 && nu.front() == 1) return 1;
  if (mu.front() == 1 && nu.front() >= 2) return 2;
  return 0;
}

/**
 * Scalar inductive relations of c on the grid (n <= n_max, k <= k_max) and,
 * when series_orders > 0, their operator form on G-series truncated at
 * series_orders.  Throws std::invalid_argument when the pair has unequal
 * weights, weight below 2, or falls under neither case.
 */
inline VerificationReport verify_inductive_relations(const MultiIndex& mu, const MultiIndex& nu, std::size_t n_max,
                                                     std::size_t k_max, std::size_t series_orders = 0,
                                                     bool scalar = true) {
  if (mu.weight() != nu.weight()) throw std::invalid_argument("inductive relations: weights differ");
  if (mu.weight() < 2) throw std::invalid_argument("inductive relations: weight must be at least 2");
  const int which = inductive_case(mu, nu);
  if (which == 0) throw std::invalid_argument("inductive relations: neither case applies to " + mu.to_string() + " and " + nu.to_string());
  const MultiIndex rm = minus_reduce(mu), rn = minus_reduce(nu);
  VerificationReport rep;
  const json pair{{"mu", mu_json(mu)}, {"nu", mu_json(nu)}, {"case", which == 1 ? "i" : "ii"}};

  if (scalar) {
    for (std::size_t n = 0; n <= n_max; ++n) {
      for (std::size_t k = 0; k <= k_max; ++k) {
        if (which == 1 && k == 0) continue;
        if (which == 2 && n == 0) continue;
        rep.records.push_back(detail::timed([&] {
          json params = pair;
          params["n"] = n;
          params["k"] = k;
          const QRat top = QRat(q_integer(n + k + 1)) * c_value(mu, nu, n, k);
          QRat lhs = which == 1
                         ? QRat::q_power(-static_cast<long>(n + k + 1)) * (top - QRat(q_integer(k)) * c_value(mu, nu, n, k - 1))
                         : top - QRat(q_integer(n)) * c_value(mu, nu, n - 1, k);
          return compare("prop340", std::move(params), lhs, c_value(rm, rn, n, k));
        }));
      }
    }
  }
  if (series_orders > 0) {
    rep.records.push_back(detail::timed([&] {
      json params = pair;
      params["orders"] = series_orders;
      const SeriesOp op = which == 1 ? ops::reduce_first_part(1) : ops::drop_first_part(1);
      return compare_series("prop350", std::move(params), apply_op(op, G_series(mu, nu, series_orders, series_orders)),
                            G_series(rm, rn, series_orders, series_orders));
    }));
  }
  return rep;
}

/// The PDE annihilates G_{mu,mu*}.
inline VerificationReport verify_pde_residual(const MultiIndex& mu, std::size_t orders) {
  VerificationReport rep;
  rep.records.push_back(detail::timed([&] {
    const BiSeries residual = apply_op(ops::pde(), G_series(mu, dual(mu), orders, orders));
    return compare_series("thm380", {{"mu", mu_json(mu)}, {"orders", orders}}, residual,
                          detail::zero_series(residual.valid_x(), residual.valid_y()));
  }));
  return rep;
}

/// PDE o R_1 = R_2 o PDE for both reduction operators, on random series.
inline VerificationReport verify_intertwining(std::mt19937_64& rng, std::size_t orders, std::size_t trials) {
  using namespace ops;
  VerificationReport rep;
  for (std::size_t t = 0; t < trials; ++t) {
    const BiSeries s = random_series(rng, orders, orders);
    rep.records.push_back(detail::timed([&] {
      return compare_series("lemma360", {{"variant", "i"}, {"trial", t}, {"orders", orders}},
                            apply_op(pde() * reduce_first_part(1), s), apply_op(reduce_first_part(2) * pde(), s));
    }));
    rep.records.push_back(detail::timed([&] {
      return compare_series("lemma360", {{"variant", "ii"}, {"trial", t}, {"orders", orders}},
                            apply_op(pde() * drop_first_part(1), s), apply_op(drop_first_part(2) * pde(), s));
    }));
  }
  return rep;
}

namespace detail {

// Injectivity on the truncation through an explicit triangular structure:
// the image of each basis element has the stated nonzero pivot at its own
// index and vanishes at every index earlier in the given order.
inline Record triangular_record(const std::string& variant, const SeriesOp& op, std::size_t orders, bool k_major,
                                const std::function<QRat(std::size_t, std::size_t)>& pivot) {
  Record r;
  r.identity = "lemma370";
  r.params = {{"variant", variant}, {"orders", orders}};
  r.region = {orders, orders};
  auto earlier = [k_major](std::size_t n2, std::size_t k2, std::size_t n, std::size_t k) {
    return k_major ? (k2 < k || (k2 == k && n2 < n)) : (n2 < n || (n2 == n && k2 < k));
  };
  for (std::size_t n = 0; n <= orders; ++n) {
    for (std::size_t k = 0; k <= orders; ++k) {
      const BiSeries img = op.apply(BiSeries::basis(n, k, orders, orders));
      if (img.valid_x() < orders || img.valid_y() < orders) {
        // cannot happen for the operators checked here; the diagonal entry serves as witness
        r.status = Status::fail;
        r.witness = pivot(n, k);
        r.detail = "operator shrinks the valid region";
        return r;
      }
      const QRat p = pivot(n, k);
      if (p.is_zero() || img(n, k) != p) {
        r.status = Status::fail;
        r.witness = p.is_zero() ? img(n, k) - QRat(1) : img(n, k) - p;
        r.params["basis"] = {n, k};
        r.detail = "pivot differs from the expected value";
        return r;
      }
      for (std::size_t n2 = 0; n2 <= orders; ++n2) {
        for (std::size_t k2 = 0; k2 <= orders; ++k2) {
          if (earlier(n2, k2, n, k) && !img(n2, k2).is_zero()) {
            r.status = Status::fail;
            r.witness = img(n2, k2);
            r.params["basis"] = {n, k};
            r.params["at"] = {n2, k2};
            r.detail = "image not triangular";
            return r;
          }
        }
      }
    }
  }
  return r;
}

}  // namespace detail

/// Both shift-2 reduction operators are injective on the truncation.
inline VerificationReport verify_injectivity(std::size_t orders) {
  VerificationReport rep;
  rep.records.push_back(detail::timed([&] {
    return detail::triangular_record("i", ops::reduce_first_part(2), orders, true, [](std::size_t n, std::size_t k) {
      return QRat::q_power(-static_cast<long>(n + k + 2)) * QRat(q_integer(n + k + 2));
    });
  }));
  rep.records.push_back(detail::timed([&] {
    return detail::triangular_record("ii", ops::drop_first_part(2), orders, false,
                                     [](std::size_t n, std::size_t k) { return QRat(q_integer(n + k + 2)); });
  }));
  return rep;
}

/// A solution of the PDE is determined by its column k = 0.
inline VerificationReport verify_pde_uniqueness(std::mt19937_64& rng, std::size_t orders, std::size_t trials) {
  VerificationReport rep;
  rep.records.push_back(detail::timed([&] {
    const std::vector<QRat> zeros(2 * orders + 1);
    return compare_series("lemma230", {{"column", "zero"}, {"orders", orders}}, solve_pde_from_column(zeros, orders, orders),
                          detail::zero_series(orders, orders));
  }));
  for (std::size_t t = 0; t < trials; ++t) {
    const QSeq seq = random_sequence(rng, 2 * orders + 1);
    rep.records.push_back(detail::timed([&] {
      std::vector<QRat> column;
      for (std::size_t n = 0; n <= 2 * orders; ++n) column.push_back(seq(n));
      const BiSeries F = F_a_series(seq, orders, orders);
      const BiSeries residual = apply_op(ops::pde(), F);
      Record r = compare_series("lemma230", {{"column", "random"}, {"trial", t}, {"orders", orders}}, F,
                                solve_pde_from_column(column, orders, orders));
      if (r.status == Status::pass) {
        r = compare_series("lemma230", {{"column", "random"}, {"trial", t}, {"orders", orders}}, residual,
                           detail::zero_series(residual.valid_x(), residual.valid_y()));
        if (r.status == Status::fail) r.detail = "F_a does not solve the PDE";
      }
      return r;
    }));
  }
  return rep;
}

/// F_a = f_a e(Y) for the given sequence.
inline Record verify_product_identity(json params, const QSeq& seq, std::size_t orders) {
  return detail::timed([&] {
    params["orders"] = orders;
    return compare_series("prop240", std::move(params), series_mul(f_a_series(seq, orders, orders), q_exp(orders, orders)),
                          F_a_series(seq, orders, orders));
  });
}

/// Closed form of Delta_{q,k} against the iterated differences on random sequences.
inline VerificationReport verify_closed_difference(std::mt19937_64& rng, std::size_t bound, std::size_t trials) {
  VerificationReport rep;
  for (std::size_t t = 0; t < trials; ++t) {
    const QSeq seq = random_sequence(rng, 2 * bound + 1);
    rep.records.push_back(detail::timed([&] {
      for (std::size_t k = 0; k <= bound; ++k) {
        const QSeq it = delta_qk_iter(seq, k);
        for (std::size_t n = 0; n <= bound; ++n) {
          Record r = compare("cor250", {{"trial", t}, {"n", n}, {"k", k}}, delta_qk_closed(seq, n, k), it(n));
          if (r.status == Status::fail) return r;
        }
      }
      return Record{"cor250", {{"trial", t}, {"bound", bound}}};
    }));
  }
  return rep;
}

/// Basic operator relations in the divided-power basis, on random series.
inline VerificationReport verify_operator_relations(std::mt19937_64& rng, std::size_t orders, std::size_t trials) {
  using namespace ops;
  VerificationReport rep;
  const QRat one_minus_q(QPoly(std::vector<Rational>{Rational(1), Rational(-1)}));
  auto add = [&](const char* relation, std::size_t t, const SeriesOp& lhs, const SeriesOp& rhs, const BiSeries& s) {
    rep.records.push_back(detail::timed([&] {
      return compare_series("operators", {{"relation", relation}, {"trial", t}, {"orders", orders}}, apply_op(lhs, s),
                            apply_op(rhs, s));
    }));
  };
  for (std::size_t t = 0; t < trials; ++t) {
    const BiSeries s = random_series(rng, orders, orders);
    add("(1-q) X dX = 1 - LX", t, one_minus_q * X() * dX(), one() - LX(), s);
    add("(1-q) Y dY = 1 - LY", t, one_minus_q * Y() * dY(), one() - LY(), s);
    add("[dX, LX]_q = 0", t, q_commutator(dX(), LX()), SeriesOp::scalar(QRat()), s);
    add("[dY, LY]_q = 0", t, q_commutator(dY(), LY()), SeriesOp::scalar(QRat()), s);
    add("[LX, X]_q = 0", t, q_commutator(LX(), X()), SeriesOp::scalar(QRat()), s);
    add("[LY, Y]_q = 0", t, q_commutator(LY(), Y()), SeriesOp::scalar(QRat()), s);
    add("[dX, X]_q = 1", t, q_commutator(dX(), X()), one(), s);
    add("[dY, Y]_q = 1", t, q_commutator(dY(), Y()), one(), s);

    rep.records.push_back(detail::timed([&] {
      const BiSeries r = apply_op(pde(), s);
      const BiSeries expect = BiSeries::generate(r.valid_x(), r.valid_y(), [&](std::size_t n, std::size_t k) {
        return QRat::q_power(static_cast<long>(k + 1)) * s(n + 1, k) + s(n, k + 1) - s(n, k);
      });
      return compare_series("operators", {{"relation", "pde coefficients"}, {"trial", t}, {"orders", orders}}, r, expect);
    }));

    // q-Leibniz: dX^m (s t) = sum_j [m j] (dX^j s) LX^j (dX^{m-j} u)
    const BiSeries u = random_series(rng, orders, orders);
    rep.records.push_back(detail::timed([&] {
      const BiSeries prod = series_mul(s, u);
      for (std::size_t m = 0; m <= orders; ++m) {
        BiSeries lhs = prod;
        for (std::size_t i = 0; i < m; ++i) lhs = q_partial(lhs, Axis::X);
        BiSeries rhs(orders - m, orders);
        for (std::size_t j = 0; j <= m; ++j) {
          BiSeries ds = s, du = u;
          for (std::size_t i = 0; i < j; ++i) ds = q_partial(ds, Axis::X);
          for (std::size_t i = 0; i < m - j; ++i) du = q_partial(du, Axis::X);
          rhs = rhs + QRat(q_binomial(m, j)) *
                          series_mul(ds.truncated(orders - m, orders),
                                     lambda_scale(du, Axis::X, static_cast<int>(j)).truncated(orders - m, orders));
        }
        Record r = compare_series("operators", {{"relation", "q-Leibniz"}, {"trial", t}, {"m", m}, {"orders", orders}},
                                  lhs, rhs);
        if (r.status == Status::fail) return r;
      }
      return Record{"operators", {{"relation", "q-Leibniz"}, {"trial", t}, {"orders", orders}}};
    }));
  }

  // derivatives of (X - q^m Y)...(X - q^n Y)
  rep.records.push_back(detail::timed([&] {
    const std::size_t v = orders + 1;
    for (std::size_t n = 1; n <= orders; ++n) {
      for (std::size_t m = 1; m <= n; ++m) {
        const BiSeries p = shifted_product_series(m, n, v, v);
        const QRat factor(q_integer(n - m + 1));
        Record rx = compare_series("operators", {{"relation", "dX shifted product"}, {"m", m}, {"n", n}}, q_partial(p, Axis::X),
                                   factor * shifted_product_series(m, n - 1, v, v));
        if (rx.status == Status::fail) return rx;
        Record ry = compare_series("operators", {{"relation", "dY shifted product"}, {"m", m}, {"n", n}}, q_partial(p, Axis::Y),
                                   -(QRat::q_power(static_cast<long>(m)) * factor) * shifted_product_series(m + 1, n, v, v));
        if (ry.status == Status::fail) return ry;
      }
    }
    return Record{"operators", {{"relation", "shifted product derivatives"}, {"max_n", orders}}};
  }));
  return rep;
}

/**
 * Both sides of the main identity at each q-point, symbolically (canonical
 * form, then evaluation) and by direct rational summation of the chains.
 * All four numbers must coincide.  Points where some [m]_q, m <= n+k+1,
 * vanishes are reported as skipped.
 */
inline VerificationReport eval_crosscheck(const MultiIndex& mu, std::size_t n, std::size_t k,
                                          const std::vector<Rational>& q_points) {
  VerificationReport rep;
  const QSeq a = a_sequence(mu);
  const MultiIndex d = dual(mu);
  QRat lhs, rhs;
  bool symbolic_done = false;
  for (const auto& q0 : q_points) {
    rep.records.push_back(detail::timed([&] {
      Record r;
      r.identity = "crosscheck";
      r.params = {{"mu", mu_json(mu)}, {"n", n}, {"k", k}, {"q", to_string(q0)}};
      if (q0 == 0 || q0 == 1 || direct::has_pole(q0, n + k + 1)) {
        r.status = Status::skip;
        r.detail = "pole: a q-integer vanishes at this point";
        return r;
      }
      if (!symbolic_done) {
        lhs = delta_qk_closed(a, n, k);
        rhs = c_value(mu, d, n, k);
        symbolic_done = true;
      }
      Rational values[4];
      try {
        values[0] = qrat_eval(lhs, q0);
        values[1] = qrat_eval(rhs, q0);
      } catch (const pole_error&) {
        r.status = Status::skip;
        r.detail = "pole in the canonical form";
        return r;
      }
      values[2] = direct::delta_a_at(mu, n, k, q0);
      values[3] = direct::c_at(mu, d, n, k, q0);
      static const char* names[4] = {"symbolic difference", "symbolic c", "direct difference", "direct c"};
      for (int i = 1; i < 4; ++i) {
        if (values[i] != values[0]) {
          r.status = Status::fail;
          r.witness = QRat(values[i] - values[0]);
          r.detail = std::string(names[i]) + " disagrees with " + names[0];
          break;
        }
      }
      r.params["value"] = to_string(values[0]);
      return r;
    }));
  }
  return rep;
}

}  // namespace qmhs::verify
