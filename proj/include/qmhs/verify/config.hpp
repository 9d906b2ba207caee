#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmhs/exactq/rational.hpp"

namespace qmhs::verify {

class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every identity family a campaign can dispatch, in report order.
inline const std::vector<std::string>& known_identities() {
  static const std::vector<std::string> names{"main",     "duality",  "prop340",  "prop350", "thm380",
                                              "lemma360", "lemma370", "lemma230", "prop240", "cor250",
                                              "operators", "crosscheck"};
  return names;
}

/// The families that make up the series suite.
inline const std::vector<std::string>& series_identities() {
  static const std::vector<std::string> names{"thm380",  "lemma360", "lemma370", "lemma230",
                                              "prop240", "cor250",   "operators"};
  return names;
}

struct CampaignConfig {
  // symbolic grids
  std::size_t max_weight = 5;
  std::size_t max_n = 4;
  std::size_t max_k = 4;
  // series identities
  std::size_t series_max_weight = 4;
  std::size_t series_orders = 6;
  std::size_t random_trials = 10;
  // sampled evaluation
  std::vector<Rational> eval_points{make_rational(2, 3), make_rational(5), make_rational(-2)};
  std::size_t crosscheck_samples = 20;

  std::vector<std::string> identities = known_identities();
  std::size_t parallelism = 1;
  std::uint64_t seed = 20240611;

  bool wants(std::string_view identity) const {
    return std::find(identities.begin(), identities.end(), identity) != identities.end();
  }

  /// Throws config_error on the first violated constraint.
  void validate() const {
    auto require = [](bool ok, const char* what) {
      if (!ok) throw config_error(what);
    };
    require(max_weight >= 1, "max_weight must be positive");
    require(max_weight <= 16, "max_weight above 16 is not supported");
    require(series_max_weight >= 1 && series_max_weight <= 16, "series_max_weight must be in 1..16");
    require(series_orders >= 1, "series_orders must be positive");
    require(parallelism >= 1, "parallelism must be positive");
    require(!identities.empty(), "identities must not be empty");
    std::set<std::string> distinct;
    for (const auto& id : identities) {
      const auto& known = known_identities();
      if (std::find(known.begin(), known.end(), id) == known.end()) throw config_error("unknown identity: " + id);
      if (!distinct.insert(id).second) throw config_error("identity listed twice: " + id);
    }
    for (const auto& q0 : eval_points) {
      if (q0 == 0 || q0 == 1) throw config_error("eval_points must exclude 0 and 1");
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["max_weight"] = max_weight;
    j["max_n"] = max_n;
    j["max_k"] = max_k;
    j["series_max_weight"] = series_max_weight;
    j["series_orders"] = series_orders;
    j["random_trials"] = random_trials;
    std::vector<std::string> points;
    for (const auto& q0 : eval_points) points.push_back(to_string(q0));
    j["eval_points"] = points;
    j["crosscheck_samples"] = crosscheck_samples;
    j["identities"] = identities;
    j["seed"] = seed;
    return j;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <class Int>
Int parse_unsigned(std::string_view key, std::string_view value) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    throw config_error(std::string(key) + ": expected a non-negative integer, got '" + std::string(value) + "'");
  }
  return out;
}

}  // namespace detail

/**
 * Parses flat `key = value` lines.  '#' starts a comment; list values are
 * comma separated.  Keys not set keep their defaults.  The result is
 * validated before it is returned.
 */
inline CampaignConfig parse_config(std::string_view text) {
  CampaignConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw config_error("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = detail::trim(line.substr(0, eq));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (!seen.emplace(key).second) throw config_error("duplicate key: " + std::string(key));

    using detail::parse_unsigned;
    if (key == "max_weight") cfg.max_weight = parse_unsigned<std::size_t>(key, value);
    else if (key == "max_n") cfg.max_n = parse_unsigned<std::size_t>(key, value);
    else if (key == "max_k") cfg.max_k = parse_unsigned<std::size_t>(key, value);
    else if (key == "series_max_weight") cfg.series_max_weight = parse_unsigned<std::size_t>(key, value);
    else if (key == "series_orders") cfg.series_orders = parse_unsigned<std::size_t>(key, value);
    else if (key == "random_trials") cfg.random_trials = parse_unsigned<std::size_t>(key, value);
    else if (key == "crosscheck_samples") cfg.crosscheck_samples = parse_unsigned<std::size_t>(key, value);
    else if (key == "parallelism") cfg.parallelism = parse_unsigned<std::size_t>(key, value);
    else if (key == "seed") cfg.seed = parse_unsigned<std::uint64_t>(key, value);
    else if (key == "identities") {
      cfg.identities.clear();
      for (auto item : detail::split_list(value)) {
        if (item.empty()) throw config_error("identities: empty entry");
        if (item == "all") {
          cfg.identities = known_identities();
          break;
        }
        if (item == "series") {
          for (const auto& s : series_identities()) cfg.identities.push_back(s);
          continue;
        }
        cfg.identities.emplace_back(item);
      }
    } else if (key == "eval_points") {
      cfg.eval_points.clear();
      if (!value.empty()) {
        for (auto item : detail::split_list(value)) {
          try {
            cfg.eval_points.push_back(parse_rational(item));
          } catch (const std::invalid_argument& e) {
            throw config_error("eval_points: " + std::string(e.what()));
          }
        }
      }
    } else {
      throw config_error("unknown key: " + std::string(key));
    }
  }
  cfg.validate();
  return cfg;
}

inline CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace qmhs::verify
