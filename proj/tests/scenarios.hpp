// Shared fixtures: the two-group worked example and random scenario corpora.
#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "fairrank/core_model.hpp"
#include "fairrank/ranker.hpp"

namespace fairrank::testing {

// b1..b10 (group "b") and g1..g5 (group "g"); lower index means higher score.
inline std::vector<Candidate> toy_candidates() {
  std::vector<Candidate> out;
  for (int i = 1; i <= 10; ++i) {
    out.push_back({"b" + std::to_string(i), AttributeValue("b"), 1.0 - 0.05 * (i - 1)});
  }
  for (int i = 1; i <= 5; ++i) {
    out.push_back({"g" + std::to_string(i), AttributeValue("g"), 0.97 - 0.1 * (i - 1)});
  }
  return out;
}

inline std::vector<AttributeValue> toy_domain() { return {AttributeValue("b"), AttributeValue("g")}; }

inline PoolRef toy_universe() { return make_pool(toy_candidates(), toy_domain()); }

// All b plus the listed g ids.
inline PoolRef toy_platform(std::vector<std::string> g_ids) {
  std::vector<Candidate> out;
  for (auto& c : toy_candidates()) {
    if (c.attribute.label == "b" || std::find(g_ids.begin(), g_ids.end(), c.id) != g_ids.end()) {
      out.push_back(c);
    }
  }
  return make_pool(std::move(out), toy_domain());
}

inline std::vector<std::string> split_ids(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct RandomScenario {
  PoolRef universe;
  PoolRef platform;
  Ranking urr;
  Ranking lrr;
  std::size_t k;
};

// 2-5 groups of 1-50 candidates, a random non-empty platform subset, URR/LRR
// by the round-target merge with each pool's own ratio, k in [1, |L|].
inline RandomScenario random_scenario(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> n_groups(2, 5);
  std::uniform_int_distribution<int> group_size(1, 50);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  std::uniform_real_distribution<double> keep_prob(0.05, 1.0);

  const int groups = n_groups(gen);
  std::vector<Candidate> candidates;
  std::vector<AttributeValue> domain;
  for (int g = 0; g < groups; ++g) {
    const std::string label = "a" + std::to_string(g);
    domain.emplace_back(label);
    const int n = group_size(gen);
    for (int i = 0; i < n; ++i) {
      candidates.push_back({label + "_" + std::to_string(i), AttributeValue(label), score(gen)});
    }
  }

  std::vector<Candidate> members;
  while (members.empty()) {
    for (int g = 0; g < groups; ++g) {
      const double p = keep_prob(gen);
      std::bernoulli_distribution keep(p);
      for (const auto& c : candidates) {
        if (c.attribute == domain[g] && keep(gen)) members.push_back(c);
      }
    }
  }

  auto universe = make_pool(candidates, domain);
  auto platform = make_pool(members, domain);
  Ranking urr = representative_rank(universe, ratio_from_pool(*universe));
  Ranking lrr = representative_rank(platform, ratio_from_pool(*platform));
  std::uniform_int_distribution<std::size_t> pick_k(1, platform->size());
  const std::size_t k = pick_k(gen);
  return RandomScenario{universe, platform, std::move(urr), std::move(lrr), k};
}

}  // namespace fairrank::testing
