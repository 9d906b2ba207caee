#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qmhs {

/**
 * A multi-index: a nonempty finite sequence of positive integers
 * (mu_1, ..., mu_p).  Weight is the sum of the parts, length the number of
 * parts.
 */
class MultiIndex {
 public:
  using part_type = unsigned;

  explicit MultiIndex(std::vector<part_type> parts) : parts_(std::move(parts)) { validate(); }
  MultiIndex(std::initializer_list<part_type> parts) : parts_(parts) { validate(); }

  /// Parses "2,1,3".  Rejects empty input, zeros, negatives and junk.
  static MultiIndex parse(std::string_view text) {
    std::vector<part_type> parts;
    std::size_t pos = 0;
    if (text.empty()) throw std::invalid_argument("empty multi-index");
    while (true) {
      std::size_t comma = text.find(',', pos);
      std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      if (tok.empty()) throw std::invalid_argument("empty part in multi-index \"" + std::string(text) + "\"");
      unsigned long value = 0;
      for (char ch : tok) {
        if (ch < '0' || ch > '9') {
          throw std::invalid_argument("multi-index parts must be positive integers: \"" + std::string(text) + "\"");
        }
        value = value * 10 + static_cast<unsigned long>(ch - '0');
        if (value > 1'000'000) throw std::invalid_argument("multi-index part too large");
      }
      if (value == 0) throw std::invalid_argument("multi-index parts must be positive: \"" + std::string(text) + "\"");
      parts.push_back(static_cast<part_type>(value));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return MultiIndex(std::move(parts));
  }

  std::size_t length() const { return parts_.size(); }
  std::size_t weight() const {
    std::size_t w = 0;
    for (auto p : parts_) w += p;
    return w;
  }
  part_type operator[](std::size_t i) const { return parts_[i]; }
  part_type front() const { return parts_.front(); }
  const std::vector<part_type>& parts() const { return parts_; }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend std::ostream& operator<<(std::ostream& os, const MultiIndex& m) { return os << "(" << m.to_string() << ")"; }

 private:
  void validate() const {
    if (parts_.empty()) throw std::invalid_argument("multi-index must have at least one part");
    for (auto p : parts_) {
      if (p == 0) throw std::invalid_argument("multi-index parts must be positive");
    }
  }

  std::vector<part_type> parts_;
};

/// Partial sums {mu_1, mu_1+mu_2, ..., mu_1+...+mu_{p-1}} inside {1, ..., m-1}.
inline std::set<std::size_t> subset_encode(const MultiIndex& mu) {
  std::set<std::size_t> s;
  std::size_t acc = 0;
  for (std::size_t i = 0; i + 1 < mu.length(); ++i) {
    acc += mu[i];
    s.insert(acc);
  }
  return s;
}

/// Inverse of subset_encode for weight m.
inline MultiIndex subset_decode(std::size_t m, const std::set<std::size_t>& s) {
  if (m == 0) throw std::invalid_argument("weight must be positive");
  std::vector<MultiIndex::part_type> parts;
  std::size_t prev = 0;
  for (std::size_t cut : s) {
    if (cut < 1 || cut >= m) {
      throw std::invalid_argument("subset element " + std::to_string(cut) + " outside {1, ..., " +
                                  std::to_string(m - 1) + "}");
    }
    parts.push_back(static_cast<MultiIndex::part_type>(cut - prev));
    prev = cut;
  }
  parts.push_back(static_cast<MultiIndex::part_type>(m - prev));
  return MultiIndex(std::move(parts));
}

/// The dual mu*: complement the partial-sum subset within {1, ..., m-1}.
inline MultiIndex dual(const MultiIndex& mu) {
  const std::size_t m = mu.weight();
  auto cuts = subset_encode(mu);
  std::set<std::size_t> complement;
  for (std::size_t i = 1; i < m; ++i) {
    if (!cuts.count(i)) complement.insert(i);
  }
  return subset_decode(m, complement);
}

/// Decrements the first part, dropping it when it reaches zero.  Needs weight >= 2.
inline MultiIndex minus_reduce(const MultiIndex& mu) {
  if (mu.weight() < 2) throw std::domain_error("reduction of a weight-1 multi-index is undefined");
  std::vector<MultiIndex::part_type> parts = mu.parts();
  if (parts.front() >= 2) {
    --parts.front();
  } else {
    parts.erase(parts.begin());
  }
  return MultiIndex(std::move(parts));
}

/// All 2^(m-1) multi-indices of weight m, ordered by subset bitmask (bit i-1 <-> cut at i).
inline std::vector<MultiIndex> enumerate_by_weight(std::size_t m) {
  if (m == 0) throw std::invalid_argument("weight must be positive");
  if (m > 31) throw std::invalid_argument("weight too large to enumerate");
  std::vector<MultiIndex> out;
  const std::uint32_t count = std::uint32_t{1} << (m - 1);
  out.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    std::set<std::size_t> s;
    for (std::size_t i = 1; i < m; ++i) {
      if (mask & (std::uint32_t{1} << (i - 1))) s.insert(i);
    }
    out.push_back(subset_decode(m, s));
  }
  return out;
}

/// Every multi-index of weight 1..max_weight, weight-major.
inline std::vector<MultiIndex> enumerate_up_to_weight(std::size_t max_weight) {
  std::vector<MultiIndex> out;
  for (std::size_t m = 1; m <= max_weight; ++m) {
    auto batch = enumerate_by_weight(m);
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

}  // namespace qmhs

template <>
struct std::hash<qmhs::MultiIndex> {
  std::size_t operator()(const qmhs::MultiIndex& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto p : m.parts()) h = (h ^ p) * 1099511628211ull;
    return h;
  }
};
