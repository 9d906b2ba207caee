#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qmhs/verify/checks.hpp"
#include "qmhs/verify/config.hpp"

namespace qmhs::verify {

/// One independent unit of a campaign.  The engine it receives is seeded from
/// the campaign seed and the item's position, never from scheduling.
struct WorkItem {
  std::string identity;
  std::function<VerificationReport(std::mt19937_64&)> run;
};

namespace detail {

inline std::mt19937_64 item_engine(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

inline std::vector<std::pair<MultiIndex, MultiIndex>> inductive_pairs(std::size_t max_weight) {
  std::vector<std::pair<MultiIndex, MultiIndex>> out;
  for (std::size_t w = 2; w <= max_weight; ++w) {
    const auto all = enumerate_by_weight(w);
    for (const auto& mu : all) {
      for (const auto& nu : all) {
        if (inductive_case(mu, nu) != 0) out.emplace_back(mu, nu);
      }
    }
  }
  return out;
}

}  // namespace detail

/// The ordered work list for a (validated) config.
inline std::vector<WorkItem> plan_campaign(const CampaignConfig& cfg) {
  std::vector<WorkItem> items;
  const std::size_t orders = cfg.series_orders;
  const std::size_t trials = cfg.random_trials;
  auto add = [&](const std::string& id, std::function<VerificationReport(std::mt19937_64&)> fn) {
    items.push_back({id, std::move(fn)});
  };

  for (const auto& id : known_identities()) {
    if (!cfg.wants(id)) continue;
    if (id == "main") {
      for (const auto& mu : enumerate_up_to_weight(cfg.max_weight)) {
        add(id, [mu, &cfg](std::mt19937_64&) { return verify_main_identity(mu, cfg.max_n, cfg.max_k); });
      }
    } else if (id == "duality") {
      for (const auto& mu : enumerate_up_to_weight(cfg.max_weight)) {
        add(id, [mu, &cfg](std::mt19937_64&) { return verify_duality(mu, cfg.max_k); });
      }
    } else if (id == "prop340") {
      for (const auto& [mu, nu] : detail::inductive_pairs(cfg.max_weight)) {
        add(id, [mu, nu, &cfg](std::mt19937_64&) { return verify_inductive_relations(mu, nu, cfg.max_n, cfg.max_k); });
      }
    } else if (id == "prop350") {
      for (const auto& [mu, nu] : detail::inductive_pairs(cfg.series_max_weight)) {
        add(id, [mu, nu, orders](std::mt19937_64&) { return verify_inductive_relations(mu, nu, 0, 0, orders, false); });
      }
    } else if (id == "thm380") {
      for (const auto& mu : enumerate_up_to_weight(cfg.series_max_weight)) {
        add(id, [mu, orders](std::mt19937_64&) { return verify_pde_residual(mu, orders); });
      }
    } else if (id == "lemma360") {
      add(id, [orders, trials](std::mt19937_64& rng) { return verify_intertwining(rng, orders, trials); });
    } else if (id == "lemma370") {
      add(id, [orders](std::mt19937_64&) { return verify_injectivity(orders); });
    } else if (id == "lemma230") {
      add(id, [orders, trials](std::mt19937_64& rng) { return verify_pde_uniqueness(rng, orders, trials); });
    } else if (id == "prop240") {
      add(id, [orders](std::mt19937_64& rng) {
        VerificationReport rep;
        rep.records.push_back(verify_product_identity({{"sequence", "random"}}, random_sequence(rng, 5), orders));
        return rep;
      });
      for (const auto& mu : enumerate_up_to_weight(cfg.series_max_weight)) {
        add(id, [mu, orders](std::mt19937_64&) {
          VerificationReport rep;
          rep.records.push_back(verify_product_identity({{"sequence", "a"}, {"mu", mu_json(mu)}}, a_sequence(mu), orders));
          return rep;
        });
      }
    } else if (id == "cor250") {
      add(id, [orders, trials](std::mt19937_64& rng) { return verify_closed_difference(rng, orders, trials); });
    } else if (id == "operators") {
      add(id, [orders, trials](std::mt19937_64& rng) { return verify_operator_relations(rng, orders, trials); });
    } else if (id == "crosscheck") {
      // instances drawn once, up front, so the sample is independent of scheduling
      std::mt19937_64 pick(cfg.seed);
      const auto mus = enumerate_up_to_weight(cfg.max_weight);
      std::uniform_int_distribution<std::size_t> which(0, mus.size() - 1), n(0, cfg.max_n), k(0, cfg.max_k);
      for (std::size_t s = 0; s < cfg.crosscheck_samples; ++s) {
        const MultiIndex mu = mus[which(pick)];
        const std::size_t nn = n(pick), kk = k(pick);
        add(id, [mu, nn, kk, &cfg](std::mt19937_64&) { return eval_crosscheck(mu, nn, kk, cfg.eval_points); });
      }
    }
  }
  return items;
}

/**
 * Runs the items on `parallelism` threads and concatenates their reports in
 * item order.  An exception thrown by an item is rethrown after all workers
 * have stopped.
 */
inline VerificationReport execute(const std::vector<WorkItem>& items, std::size_t parallelism, std::uint64_t seed) {
  std::vector<VerificationReport> results(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
      try {
        std::mt19937_64 rng = detail::item_engine(seed, i);
        results[i] = items[i].run(rng);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(parallelism, items.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  VerificationReport out;
  for (auto& r : results) out.append(std::move(r));
  return out;
}

/// Validates the config, runs every selected identity family, and embeds the config in the report.
inline VerificationReport run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  VerificationReport rep = execute(plan_campaign(cfg), cfg.parallelism, cfg.seed);
  rep.config = cfg.to_json();
  return rep;
}

/// The series families over all mu up to cfg.max_weight at cfg.series_orders.
inline VerificationReport verify_series_suite(const CampaignConfig& cfg) {
  CampaignConfig sub = cfg;
  sub.identities = series_identities();
  sub.series_max_weight = cfg.max_weight;
  return run_campaign(sub);
}

}  // namespace qmhs::verify
