#pragma once

// Plain rational evaluation of the chain sums at a fixed q0, one chain at a
// time.  Shares nothing with the symbolic pipeline beyond Rational itself.

#include <cstddef>
#include <functional>
#include <vector>

#include "qmhs/exactq/rational.hpp"
#include "qmhs/multiindex.hpp"

namespace qmhs::verify::direct {

/// q0^e for e >= 0.
inline Rational power(const Rational& q0, std::size_t e) {
  Rational r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= q0;
  return r;
}

/// [m]_{q0} = 1 + q0 + ... + q0^{m-1}.
inline Rational q_int(const Rational& q0, std::size_t m) {
  Rational r = 0, p = 1;
  for (std::size_t i = 0; i < m; ++i) {
    r += p;
    p *= q0;
  }
  return r;
}

/// True when [m]_{q0} = 0 for some 1 <= m <= upto.
inline bool has_pole(const Rational& q0, std::size_t upto) {
  for (std::size_t m = 1; m <= upto; ++m) {
    if (q_int(q0, m) == 0) return true;
  }
  return false;
}

/// Calls visit(chain) for every top = c_1 >= c_2 >= ... >= c_len >= 0.
inline void for_each_chain(std::size_t top, std::size_t len, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> c(len, 0);
  c[0] = top;
  // odometer over the tail, each entry bounded by its predecessor
  while (true) {
    visit(c);
    std::size_t t = len;
    while (t > 1) {
      --t;
      if (c[t] < c[t - 1]) {
        ++c[t];
        for (std::size_t u = t + 1; u < len; ++u) c[u] = 0;
        break;
      }
      if (t == 1) return;
    }
    if (len == 1) return;
  }
}

inline Rational a_at(const MultiIndex& mu, std::size_t n, const Rational& q0) {
  Rational total = 0;
  for_each_chain(n, mu.length(), [&](const std::vector<std::size_t>& ch) {
    Rational term = 1;
    for (std::size_t t = 0; t < ch.size(); ++t) {
      term *= power(q0, (mu[t] - 1) * (ch[t] + 1));
      const Rational qi = q_int(q0, ch[t] + 1);
      for (unsigned r = 0; r < mu[t]; ++r) term /= qi;
    }
    total += term;
  });
  return total;
}

/// (Delta_{q0^k} ... Delta_{q0} a_mu)(n), differencing one factor at a time.
inline Rational delta_a_at(const MultiIndex& mu, std::size_t n, std::size_t k, const Rational& q0) {
  std::vector<Rational> vals;
  for (std::size_t i = 0; i <= k; ++i) vals.push_back(a_at(mu, n + i, q0));
  for (std::size_t i = 1; i <= k; ++i) {
    const Rational z = power(q0, i);
    for (std::size_t j = 0; j + i <= k; ++j) vals[j] -= z * vals[j + 1];
  }
  return vals[0];
}

inline Rational c_at(const MultiIndex& mu, const MultiIndex& nu, std::size_t n, std::size_t k, const Rational& q0) {
  std::vector<std::size_t> is, js;
  for (std::size_t t = 0; t < mu.length(); ++t) is.insert(is.end(), mu[t], t);
  for (std::size_t t = 0; t < nu.length(); ++t) js.insert(js.end(), nu[t], t);
  Rational total = 0;
  for_each_chain(n, mu.length(), [&](const std::vector<std::size_t>& nc) {
    for_each_chain(k, nu.length(), [&](const std::vector<std::size_t>& kc) {
      std::size_t e = 0;
      for (std::size_t t = 0; t < nc.size(); ++t) e += (mu[t] - 1) * (nc[t] + 1);
      for (std::size_t t = 1; t < kc.size(); ++t) e += kc[t];
      Rational term = power(q0, e);
      for (std::size_t t = 0; t < is.size(); ++t) term /= q_int(q0, nc[is[t]] + kc[js[t]] + 1);
      total += term;
    });
  });
  // [n]! [k]! / [n+k]!
  for (std::size_t i = 1; i <= k; ++i) total = total * q_int(q0, i) / q_int(q0, n + i);
  return total;
}

}  // namespace qmhs::verify::direct
