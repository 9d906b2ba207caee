#include <array>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmhs/harmonic.hpp"
#include "qmhs/multiindex.hpp"
#include "qmhs/verify.hpp"

namespace {

using namespace qmhs;

std::size_t parse_count(const std::string& text, const char* what) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text.front() == '-') {
    throw std::invalid_argument(std::string(what) + " must be a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::string list(const QPoly& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) out += (i ? ", " : "") + to_string(p.coeffs()[i]);
  return out + "]";
}

int run_compute(const std::vector<std::string>& args, const std::optional<std::string>& at) {
  if (args.empty()) throw std::invalid_argument("compute: expected a, b or c");
  const std::string& kind = args[0];
  QRat value;
  if (kind == "a" || kind == "b") {
    if (args.size() != 3) throw std::invalid_argument("usage: compute " + kind + " <mu> <n>");
    const MultiIndex mu = MultiIndex::parse(args[1]);
    const std::size_t n = parse_count(args[2], "n");
    value = kind == "a" ? a_value(mu, n) : b_value(mu, n);
  } else if (kind == "c") {
    if (args.size() != 5) throw std::invalid_argument("usage: compute c <mu> <nu> <n> <k>");
    value = c_value(MultiIndex::parse(args[1]), MultiIndex::parse(args[2]), parse_count(args[3], "n"),
                    parse_count(args[4], "k"));
  } else {
    throw std::invalid_argument("compute: unknown kind '" + kind + "' (expected a, b or c)");
  }
  std::cout << "value: " << value << '\n'
            << "numerator: " << list(value.num()) << '\n'
            << "denominator: " << list(value.den()) << '\n';
  if (at) {
    const Rational q0 = parse_rational(*at);
    try {
      const Rational v = qrat_eval(value, q0);
      std::cout << "at q = " << to_string(q0) << ": " << to_string(v) << '\n';
    } catch (const pole_error& e) {
      std::cout << "at q = " << to_string(q0) << ": pole\n";
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 0;
}

void print_summary(const verify::VerificationReport& rep, std::ostream& os) {
  std::vector<std::string> order;
  std::map<std::string, std::array<std::size_t, 3>> counts;
  for (const auto& r : rep.records) {
    if (!counts.count(r.identity)) order.push_back(r.identity);
    ++counts[r.identity][static_cast<int>(r.status)];
  }
  for (const auto& id : order) {
    const auto& c = counts[id];
    os << id << ": " << c[0] << " pass, " << c[1] << " fail, " << c[2] << " skip\n";
  }
  for (const auto& r : rep.records) {
    if (r.status == verify::Status::fail) os << "FAIL " << r.to_json(false).dump() << '\n';
  }
  os << (rep.all_passed() ? "all checks passed" : "FAILURES FOUND") << " (" << rep.records.size() << " records)\n";
}

int finish(const verify::VerificationReport& rep, const std::optional<std::string>& json_path) {
  print_summary(rep, std::cout);
  if (json_path) {
    std::ofstream out(*json_path);
    if (!out) throw std::runtime_error("cannot write " + *json_path);
    out << rep.to_json(true).dump(2) << '\n';
  }
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finite multiple harmonic q-series and their duality identities"};
  app.require_subcommand(1);

  auto* dual_cmd = app.add_subcommand("dual", "Print the dual multi-index");
  std::string dual_mu;
  dual_cmd->add_option("mu", dual_mu, "Multi-index, e.g. 2,1,3")->required();

  auto* compute_cmd = app.add_subcommand("compute", "Compute a_mu(n), b_mu(n) or c_{mu,nu}(n,k)");
  std::vector<std::string> compute_args;
  std::optional<std::string> at;
  compute_cmd->add_option("args", compute_args, "a <mu> <n> | b <mu> <n> | c <mu> <nu> <n> <k>")->required();
  compute_cmd->add_option("--at", at, "Also evaluate exactly at this rational q");

  auto* verify_cmd = app.add_subcommand("verify", "Verify one identity family");
  std::string family;
  std::optional<std::size_t> max_weight, max_n, max_k, orders;
  std::size_t jobs = 1;
  std::optional<std::string> verify_json;
  verify_cmd->add_option("family", family, "main, duality, prop340 or series")
      ->required()
      ->check(CLI::IsMember({"main", "duality", "prop340", "series"}));
  verify_cmd->add_option("--max-weight", max_weight, "Largest multi-index weight");
  verify_cmd->add_option("--max-n", max_n, "Largest n");
  verify_cmd->add_option("--max-k", max_k, "Largest k");
  verify_cmd->add_option("--orders", orders, "Series truncation order");
  verify_cmd->add_option("-j,--parallelism", jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--json", verify_json, "Write the JSON report here");

  auto* campaign_cmd = app.add_subcommand("campaign", "Run a configured verification campaign");
  std::string config_path;
  std::optional<std::string> campaign_json;
  campaign_cmd->add_option("--config", config_path, "Flat key = value config file")->required();
  campaign_cmd->add_option("--json", campaign_json, "Write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dual_cmd) {
      std::cout << dual(MultiIndex::parse(dual_mu)).to_string() << '\n';
      return 0;
    }
    if (*compute_cmd) return run_compute(compute_args, at);
    if (*verify_cmd) {
      verify::CampaignConfig cfg;
      cfg.parallelism = jobs;
      if (family == "main") {
        cfg.identities = {"main"};
        cfg.max_weight = max_weight.value_or(5);
        cfg.max_n = max_n.value_or(4);
        cfg.max_k = max_k.value_or(4);
      } else if (family == "duality") {
        cfg.identities = {"duality"};
        cfg.max_weight = max_weight.value_or(6);
        cfg.max_k = max_k.value_or(6);
      } else if (family == "prop340") {
        cfg.identities = {"prop340", "prop350"};
        cfg.max_weight = cfg.series_max_weight = max_weight.value_or(4);
        cfg.max_n = max_n.value_or(4);
        cfg.max_k = max_k.value_or(4);
        cfg.series_orders = orders.value_or(5);
      } else {
        cfg.max_weight = max_weight.value_or(4);
        cfg.series_orders = orders.value_or(6);
        return finish(verify::verify_series_suite(cfg), verify_json);
      }
      return finish(verify::run_campaign(cfg), verify_json);
    }
    if (*campaign_cmd) return finish(verify::run_campaign(verify::load_config(config_path)), campaign_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
