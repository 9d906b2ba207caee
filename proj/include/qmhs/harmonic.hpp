#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmhs/exactq.hpp"
#include "qmhs/exactq/cyclotomic.hpp"
#include "qmhs/multiindex.hpp"

namespace qmhs {

/**
 * A sequence n -> QRat given by a deterministic generator, with a memo.
 *
 * Copies share the memo.  The memo is guarded by a mutex so that a QSeq can
 * be evaluated from several threads; since the generator is deterministic
 * the result never depends on who filled the cache.
 */
class QSeq {
 public:
  using generator_type = std::function<QRat(std::size_t)>;

  explicit QSeq(generator_type gen) : state_(std::make_shared<State>(std::move(gen))) {}

  /// Finitely supported sequence: values[n] for n < size, zero afterwards.
  static QSeq from_values(std::vector<QRat> values) {
    auto shared = std::make_shared<const std::vector<QRat>>(std::move(values));
    return QSeq([shared](std::size_t n) { return n < shared->size() ? (*shared)[n] : QRat(); });
  }
  static QSeq constant(QRat value) {
    return QSeq([value = std::move(value)](std::size_t) { return value; });
  }

  QRat operator()(std::size_t n) const {
    {
      std::lock_guard lock(state_->mutex);
      auto it = state_->cache.find(n);
      if (it != state_->cache.end()) return it->second;
    }
    QRat value = state_->generator(n);
    std::lock_guard lock(state_->mutex);
    return state_->cache.emplace(n, std::move(value)).first->second;
  }

 private:
  struct State {
    explicit State(generator_type g) : generator(std::move(g)) {}
    generator_type generator;
    std::mutex mutex;
    std::map<std::size_t, QRat> cache;
  };
  std::shared_ptr<State> state_;
};

/// Block labels (i_1, ..., i_m): label t repeated mu_t times (0-based labels).
struct SubscriptExpansion {
  std::vector<std::size_t> indices;

  explicit SubscriptExpansion(const MultiIndex& mu) {
    for (std::size_t t = 0; t < mu.length(); ++t) indices.insert(indices.end(), mu[t], t);
  }
  std::size_t size() const { return indices.size(); }
  std::size_t operator[](std::size_t t) const { return indices[t]; }
};

namespace detail {

// Sum over chains n = n_1 >= ... >= n_p >= 0 of prod_t term(t, n_t), by
// a table on (block position, current upper bound) filled from the last
// block upwards.
template <class Term>
QRat chain_sum(std::size_t length, std::size_t n, Term&& term) {
  // below[u] = sum over chains of the remaining blocks whose top value is <= u.
  std::vector<CyclotomicFraction> below(n + 1, CyclotomicFraction(QPoly(1)));
  for (std::size_t t = length; t-- > 1;) {
    std::vector<CyclotomicFraction> next(n + 1);
    CyclotomicFraction running;
    for (std::size_t u = 0; u <= n; ++u) {
      CyclotomicFraction step = term(t, u);
      step *= below[u];
      running += step;
      next[u] = running;
    }
    below = std::move(next);
  }
  CyclotomicFraction top = term(0, n);
  top *= below[n];
  return top.to_qrat();
}

}  // namespace detail

/// a_mu(n): sum over n = n_1 >= ... >= n_p >= 0 of q^{sum (mu_t-1)(n_t+1)} / prod [n_t+1]^{mu_t}.
inline QRat a_value(const MultiIndex& mu, std::size_t n) {
  return detail::chain_sum(mu.length(), n, [&](std::size_t t, std::size_t v) {
    return CyclotomicFraction::q_power_over_q_integer((mu[t] - 1) * (v + 1), v + 1, mu[t]);
  });
}

/// b_mu(n): sum over n = n_1 >= ... >= n_p >= 0 of q^{(n_2+1)+...+(n_p+1)} / prod [n_t+1]^{mu_t}.
inline QRat b_value(const MultiIndex& mu, std::size_t n) {
  return detail::chain_sum(mu.length(), n, [&](std::size_t t, std::size_t v) {
    return CyclotomicFraction::q_power_over_q_integer(t == 0 ? 0 : v + 1, v + 1, mu[t]);
  });
}

/**
 * c_{mu,nu}(n,k): the double-chain sum with fused factors
 * 1/[n_{i_t} + k_{j_t} + 1]_q, times 1/[n+k choose n]_q.
 *
 * Dynamic programming over t = 1..m with state (n_{i_t}, k_{j_t}).  When a
 * new block opens on either chain, the state is fed by suffix sums over the
 * previous block's values, which enforces the weak decrease.
 */
inline QRat c_value(const MultiIndex& mu, const MultiIndex& nu, std::size_t n, std::size_t k) {
  if (mu.weight() != nu.weight()) {
    throw std::invalid_argument("c_value: weights differ (" + mu.to_string() + " vs " + nu.to_string() + ")");
  }
  const SubscriptExpansion is(mu);
  const SubscriptExpansion js(nu);
  const std::size_t m = is.size();
  const std::size_t w = k + 1;
  auto at = [w](std::size_t x, std::size_t y) { return x * w + y; };

  std::vector<CyclotomicFraction> state((n + 1) * w);
  state[at(n, k)] = CyclotomicFraction::q_power_over_q_integer((mu[0] - 1) * (n + 1), n + k + 1, 1);

  for (std::size_t t = 1; t < m; ++t) {
    const bool new_n = is[t] != is[t - 1];
    const bool new_k = js[t] != js[t - 1];
    if (new_n) {
      // suffix sums along x: state(x, y) <- sum_{x' >= x} state(x', y)
      for (std::size_t y = 0; y <= k; ++y) {
        for (std::size_t x = n; x-- > 0;) state[at(x, y)] += state[at(x + 1, y)];
      }
    }
    if (new_k) {
      for (std::size_t x = 0; x <= n; ++x) {
        for (std::size_t y = k; y-- > 0;) state[at(x, y)] += state[at(x, y + 1)];
      }
    }
    const std::size_t mu_part = mu[is[t]];
    for (std::size_t x = 0; x <= n; ++x) {
      for (std::size_t y = 0; y <= k; ++y) {
        CyclotomicFraction& v = state[at(x, y)];
        if (v.is_zero()) continue;
        std::size_t e = 0;
        if (new_n) e += (mu_part - 1) * (x + 1);
        if (new_k) e += y;
        v.multiply_by_q_power(e);
        v.divide_by_q_integer(x + y + 1);
      }
    }
  }

  CyclotomicFraction total;
  for (const auto& v : state) total += v;
  // 1 / [n+k choose n] = [n]! [k]! / [n+k]!
  total.multiply_by(q_factorial(n) * q_factorial(k));
  total.divide_by_q_factorial(n + k);
  return total.to_qrat();
}

/// The sequence n -> a_mu(n).
inline QSeq a_sequence(const MultiIndex& mu) {
  return QSeq([mu](std::size_t n) { return a_value(mu, n); });
}

/// The sequence n -> b_mu(n).
inline QSeq b_sequence(const MultiIndex& mu) {
  return QSeq([mu](std::size_t n) { return b_value(mu, n); });
}

/// (Delta_z a)(n) = a(n) - z a(n+1).
inline QSeq delta_z(const QSeq& seq, const QRat& z) {
  return QSeq([seq, z](std::size_t n) { return seq(n) - z * seq(n + 1); });
}

/// Delta_{q^k} o ... o Delta_q, applied one factor at a time; k = 0 is the identity.
inline QSeq delta_qk_iter(const QSeq& seq, std::size_t k) {
  QSeq out = seq;
  for (std::size_t i = 1; i <= k; ++i) out = delta_z(out, QRat(q_power(i)));
  return out;
}

/// sum_{i=0}^{k} (-1)^i q^{i(i+1)/2} [k choose i]_q a(n+i).
inline QRat delta_qk_closed(const QSeq& seq, std::size_t n, std::size_t k) {
  QRat total;
  for (std::size_t i = 0; i <= k; ++i) {
    QPoly weight = q_binomial(k, i).shifted(i * (i + 1) / 2);
    if (i % 2) weight = -weight;
    total += QRat(std::move(weight)) * seq(n + i);
  }
  return total;
}

/// (nabla_q a)(n) = (Delta_{q,n} a)(0).
inline QRat nabla_q(const QSeq& seq, std::size_t n) { return delta_qk_closed(seq, 0, n); }

}  // namespace qmhs
