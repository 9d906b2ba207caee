#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmhs/exactq.hpp"
#include "qmhs/multiindex.hpp"
#include "qmhs/qseries.hpp"

namespace qmhs::verify {

using json = nlohmann::ordered_json;

inline constexpr const char* report_schema = "qmhs-report/1";

enum class Status { pass, fail, skip };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "?";
}

/// Coefficients (ascending powers of q) as exact "p/q" strings.
inline json coefficient_list(const QPoly& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_string(c));
  return out;
}

inline json qrat_json(const QRat& r) {
  json j;
  j["numerator"] = coefficient_list(r.num());
  j["denominator"] = coefficient_list(r.den());
  return j;
}

struct Record {
  std::string identity;
  json params = json::object();
  Status status = Status::pass;
  /// Nonzero difference of the two sides; present exactly when status is fail.
  std::optional<QRat> witness;
  /// Valid region (n_max, k_max) a series comparison was restricted to.
  std::optional<std::pair<std::size_t, std::size_t>> region;
  std::string detail;
  double wall_time_ms = 0;

  json to_json(bool include_timing) const {
    json j;
    j["identity"] = identity;
    j["params"] = params;
    j["status"] = status_name(status);
    if (region) j["region"] = {region->first, region->second};
    if (!detail.empty()) j["detail"] = detail;
    if (witness) j["witness"] = qrat_json(*witness);
    if (include_timing) j["wall_time_ms"] = wall_time_ms;
    return j;
  }
};

struct VerificationReport {
  std::vector<Record> records;
  json config = nullptr;

  std::size_t count(Status s) const {
    std::size_t c = 0;
    for (const auto& r : records) c += r.status == s;
    return c;
  }
  bool all_passed() const { return count(Status::fail) == 0; }

  void append(VerificationReport other) {
    for (auto& r : other.records) records.push_back(std::move(r));
  }

  /// With include_timing = false the output depends on the inputs only.
  json to_json(bool include_timing = true) const {
    json j;
    j["schema"] = report_schema;
    if (!config.is_null()) j["config"] = config;
    j["summary"] = {{"records", records.size()},
                    {"pass", count(Status::pass)},
                    {"fail", count(Status::fail)},
                    {"skip", count(Status::skip)}};
    json list = json::array();
    for (const auto& r : records) list.push_back(r.to_json(include_timing));
    j["records"] = std::move(list);
    return j;
  }
};

/// Builds the record comparing lhs with rhs; the witness is lhs - rhs.
inline Record compare(std::string identity, json params, const QRat& lhs, const QRat& rhs) {
  Record r;
  r.identity = std::move(identity);
  r.params = std::move(params);
  QRat diff = lhs - rhs;
  if (!diff.is_zero()) {
    r.status = Status::fail;
    r.witness = std::move(diff);
  }
  return r;
}

/// Builds the record comparing two series on their common valid region.  A
/// failure reports the first nonzero coefficient of a - b and its position.
inline Record compare_series(std::string identity, json params, const BiSeries& a, const BiSeries& b) {
  Record r;
  r.identity = std::move(identity);
  r.params = std::move(params);
  const BiSeries diff = difference(a, b);
  r.region = {diff.valid_x(), diff.valid_y()};
  for (std::size_t n = 0; n <= diff.valid_x() && r.status == Status::pass; ++n) {
    for (std::size_t k = 0; k <= diff.valid_y(); ++k) {
      if (diff(n, k).is_zero()) continue;
      r.status = Status::fail;
      r.witness = diff(n, k);
      r.params["at"] = {n, k};
      break;
    }
  }
  return r;
}

/**
 * Sanity of a failure witness: it must be nonzero at one of three random
 * rational q-points (points landing on a pole are redrawn).
 */
inline bool witness_is_nonzero_somewhere(const QRat& witness, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 17);
  int evaluated = 0;
  for (int attempt = 0; attempt < 100 && evaluated < 3; ++attempt) {
    const Rational q0 = make_rational(num(rng), den(rng));
    if (witness.den().evaluate(q0) == 0) continue;
    ++evaluated;
    if (witness.evaluate(q0) != 0) return true;
  }
  return false;
}

inline json mu_json(const MultiIndex& mu) { return mu.to_string(); }

/// Milliseconds elapsed since construction.
class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace qmhs::verify
