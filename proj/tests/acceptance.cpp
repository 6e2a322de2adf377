// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fairrank/cli.hpp"
#include "fairrank/ideal_fair.hpp"
#include "fairrank/io.hpp"
#include "fairrank/metrics.hpp"
#include "fairrank/ranker.hpp"
#include "fairrank/simulation.hpp"
#include "scenarios.hpp"

using namespace fairrank;
namespace fs = std::filesystem;

namespace {

#ifndef FAIRRANK_CONFIG_DIR
#define FAIRRANK_CONFIG_DIR "configs"
#endif

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

std::set<std::string> top(const Ranking& r, std::size_t k) {
  auto ids = r.prefix(k).ids();
  return {ids.begin(), ids.end()};
}

const std::vector<testing::RandomScenario>& corpus() {
  static const std::vector<testing::RandomScenario> scenarios = [] {
    std::mt19937_64 gen(20240601);
    std::vector<testing::RandomScenario> out;
    for (int i = 0; i < 1000; ++i) out.push_back(testing::random_scenario(gen));
    return out;
  }();
  return scenarios;
}

RepresentationRatio ratio_of(double b, double g) {
  return RepresentationRatio::from({{AttributeValue("b"), b}, {AttributeValue("g"), g}});
}

// ---------------------------------------------------------------------------

Outcome c1_worked_examples() {
  Outcome o;
  const auto start = Clock::now();
  auto u = representative_rank(testing::toy_universe(), ratio_of(2.0 / 3.0, 1.0 / 3.0));
  o.require(u.prefix(6).ids() == testing::split_ids("b1,g1,b2,b3,g2,b4"), "URR top-6");
  auto l = representative_rank(testing::toy_platform({"g1", "g2"}), ratio_of(5.0 / 6.0, 1.0 / 6.0));
  o.require(l.prefix(6).ids() == testing::split_ids("b1,b2,b3,g1,b4,b5"), "LRR top-6");
  auto p2 = representative_rank(testing::toy_platform({"g2", "g4"}), ratio_of(5.0 / 6.0, 1.0 / 6.0));
  o.require(p2.ids() == testing::split_ids("b1,b2,b3,g2,b4,b5,b6,b7,b8,g4,b9,b10"), "g2,g4 platform list");
  const double t = seconds_since(start);
  o.require(t < 1.0, "runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = "3 lists exact, " + std::to_string(t) + " s";
  return o;
}

Outcome c2_definitions() {
  Outcome o;
  auto universe = testing::toy_universe();
  auto urr = representative_rank(universe, ratio_from_pool(*universe));
  auto platform = testing::toy_platform({"g1", "g2"});
  auto lrr = representative_rank(platform, ratio_from_pool(*platform));
  const AttributeValue b("b"), g("g");
  auto rep = fairness_report(urr, lrr, *platform, 6);
  o.require(individual_unfairness("g2", urr, lrr, *platform, 6) == 1, "IUF(g2) != 1");
  o.require(is_favored("b5", urr, lrr, 6), "b5 not favored");
  o.require(group_unfair(g, urr, lrr, 6), "G2 not group-unfair");
  o.require(group_favored(b, urr, lrr, 6), "G1 not group-favored");
  o.require(rep.totals.n_unfair == 1 && rep.totals.n_favored == 1, "toy totals");

  auto p2 = testing::toy_platform({"g2", "g4"});
  auto lrr2 = representative_rank(p2, ratio_from_pool(*p2));
  auto rep2 = fairness_report(urr, lrr2, *p2, 6);
  o.require(rep2.totals.n_unfair == 0, "g2,g4 platform n_unfair != 0");
  o.require(is_favored("b5", urr, lrr2, 6), "g2,g4 platform b5 not favored");
  if (o.pass) o.detail = "toy {unfair=1, favored=1}, g2,g4 platform {unfair=0, favored=1}";
  return o;
}

Outcome c3_counting_identity() {
  Outcome o;
  const auto start = Clock::now();
  for (const auto& s : corpus()) {
    const auto rep = fairness_report(s.urr, s.lrr, *s.platform, s.k);
    const auto ut = top(s.urr, s.k);
    const auto lt = top(s.lrr, s.k);
    std::size_t favored = 0, unfair = 0, absent = 0;
    for (const auto& id : lt) favored += ut.count(id) == 0;
    for (const auto& id : ut) {
      if (!s.platform->contains(id)) {
        ++absent;
      } else if (lt.count(id) == 0) {
        ++unfair;
      }
    }
    o.require(favored == unfair + absent, "identity fails on a brute-force recount");
    o.require(rep.totals.n_favored == favored && rep.totals.n_unfair == unfair && rep.totals.n_absent == absent,
              "report totals disagree with recount");
  }
  const double t = seconds_since(start);
  o.require(t < 30.0, "runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = "1000 scenarios exact, " + std::to_string(t) + " s";
  return o;
}

Outcome c4_implications() {
  Outcome o;
  for (const auto& s : corpus()) {
    const auto rep = fairness_report(s.urr, s.lrr, *s.platform, s.k);
    for (const auto& v : rep.candidate_verdicts) {
      if (v.individually_unfair) o.require(group_unfair(v.attribute, s.urr, s.lrr, s.k), "unfair member without unfair group");
    }
    bool favored = false, unfair = false;
    for (const auto& g : rep.group_verdicts) {
      favored = favored || g.favored;
      unfair = unfair || g.unfair;
    }
    if (favored) o.require(unfair || rep.totals.n_absent > 0, "favored group without unfair group or absentee");

    auto gfrr = ideal_gfrr(s.urr, s.platform);
    for (std::size_t k = 1; k <= s.platform->size(); ++k) {
      o.require(fairness_report(s.urr, gfrr, *s.platform, k).totals.n_unfair == 0, "group-fair re-ranking left a member unfair");
    }
  }

  // every g of the universal top-6 stays off the platform
  auto universe = testing::toy_universe();
  auto urr = representative_rank(universe, ratio_from_pool(*universe));
  auto platform = testing::toy_platform({"g3", "g4", "g5"});
  auto lrr = representative_rank(platform, ratio_from_pool(*platform));
  o.require(fairness_report(urr, lrr, *platform, 6).totals.n_unfair == 0, "non-joiners counted as unfair");
  o.require(group_unfair(AttributeValue("g"), urr, lrr, 6), "non-joiners: group not unfair");
  if (o.pass) o.detail = "implications on 1000 scenarios; non-joiner case";
  return o;
}

Outcome c5_ideal_baselines() {
  Outcome o;
  for (const auto& s : corpus()) {
    const auto& pool = *s.platform;
    auto ifrr = ideal_ifrr(s.urr, s.platform);
    for (std::size_t k = 1; k <= pool.size(); ++k) {
      o.require(fairness_report(s.urr, ifrr, pool, k).totals.n_unfair == 0, "ideal IFRR unfair");
    }
    auto gfrr = ideal_gfrr(s.urr, s.platform);
    // URR slot k corresponds to output prefix m(k) = sum_a min(urr_a(k), |L_a|)
    std::vector<std::size_t> urr_counts(pool.domain().size(), 0);
    std::vector<std::size_t> out_counts(pool.domain().size(), 0);
    std::size_t m = 0;
    for (std::size_t k = 1; k <= s.urr.size(); ++k) {
      const auto& attr = s.urr.at(k).attribute;
      const auto a = pool.domain_index(attr);
      if (!a) continue;
      ++urr_counts[*a];
      if (urr_counts[*a] > pool.group_size(*a)) continue;
      out_counts[gfrr.pool().group_of(gfrr.order()[m])]++;
      ++m;
      for (std::size_t g = 0; g < pool.domain().size(); ++g) {
        o.require(out_counts[g] == std::min(urr_counts[g], pool.group_size(g)), "GFRR min() identity");
      }
    }
    o.require(m == pool.size(), "GFRR length");
  }
  if (o.pass) o.detail = "1000 scenarios, every prefix";
  return o;
}

ScenarioConfig desk(std::size_t trials) {
  auto c = io::load_config(std::string(FAIRRANK_CONFIG_DIR) + "/desk.toml");
  c.trials = trials;
  return c;
}

Outcome c6_generated_gfrr() {
  Outcome o;
  const auto config = desk(20);
  double abs_skew = 0.0;
  std::size_t cells = 0;
  int max_gap = 0;
  for (std::size_t fi = 0; fi < config.activeness_grid.size(); ++fi) {
    const double f = config.activeness_grid[fi];
    for (std::size_t t = 0; t < config.trials; ++t) {
      SeededRng rng(derive_trial_seed(config.master_seed, "acceptance_gfrr", fi, t));
      auto universe = std::make_shared<const CandidatePool>(generate_universe(config, rng));
      auto platform = std::make_shared<const CandidatePool>(sample_platform(*universe, config.activity_at(f), rng));
      auto urr = representative_rank(universe, ratio_from_pool(*universe));
      auto ideal = ideal_gfrr(urr, platform);
      auto generated = generate_gfrr_detconst(platform, ratio_from_pool(*universe));

      const std::size_t d = platform->domain().size();
      std::vector<long> ci(d, 0), cg(d, 0);
      for (std::size_t k = 1; k <= platform->size(); ++k) {
        ci[platform->group_of(ideal.order()[k - 1])]++;
        cg[platform->group_of(generated.order()[k - 1])]++;
        bool exhausted = false;
        for (std::size_t a = 0; a < d; ++a) {
          const auto n = static_cast<long>(platform->group_size(a));
          exhausted = exhausted || ci[a] == n || cg[a] == n;
        }
        if (exhausted) break;
        for (std::size_t a = 0; a < d; ++a) max_gap = std::max(max_gap, static_cast<int>(std::labs(ci[a] - cg[a])));
      }
      abs_skew += std::abs(skew(config.subactive_attribute(), generated, ideal, platform->size()));
      ++cells;
    }
  }
  const double mean_abs = abs_skew / static_cast<double>(cells);
  o.require(max_gap <= 1, "per-prefix gap " + std::to_string(max_gap));
  o.require(mean_abs <= 0.02, "mean |skew| " + std::to_string(mean_abs));
  if (o.pass) {
    o.detail = "max prefix gap " + std::to_string(max_gap) + ", mean |skew| " + std::to_string(mean_abs) +
               " over " + std::to_string(cells) + " runs";
  }
  return o;
}

Outcome c7_missed_scaling() {
  Outcome o;
  auto config = desk(20);
  config.activeness_grid = {0.3, 0.5, 0.7};
  const auto start = Clock::now();
  const auto result = exp_missed_opportunity(config);
  const double t = seconds_since(start);

  auto mean = [&](double f, std::size_t k) {
    for (const auto& row : result.rows) {
      if (row.experiment == "missed_opportunity" && row.f == f && row.k == k && !row.trial) return row.value;
    }
    return std::nan("");
  };
  double worst_rel = 0.0;
  double worst_r2 = 1.0;
  for (double f : config.activeness_grid) {
    for (std::size_t k : {150u, 300u, 450u}) {
      const double expected = static_cast<double>(k) / 3.0 * (1.0 - f);
      const double rel = std::abs(mean(f, k) - expected) / expected;
      worst_rel = std::max(worst_rel, rel);
      std::ostringstream what;
      what << "f=" << f << " k=" << k << " mean " << mean(f, k) << " vs " << expected;
      o.require(rel <= 0.10, what.str());
    }
    // least squares of mean missed on k over the k grid
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = static_cast<double>(config.k_grid.size());
    for (auto k : config.k_grid) {
      const double x = static_cast<double>(k), y = mean(f, k);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      syy += y * y;
    }
    const double cov = sxy - sx * sy / n;
    const double r2 = cov * cov / ((sxx - sx * sx / n) * (syy - sy * sy / n));
    worst_r2 = std::min(worst_r2, r2);
    o.require(r2 >= 0.98, "R^2 " + std::to_string(r2) + " at f=" + std::to_string(f));
  }
  o.require(t < 60.0, "runtime " + std::to_string(t) + " s");
  if (o.pass) {
    o.detail = "worst relative error " + std::to_string(worst_rel) + ", worst R^2 " + std::to_string(worst_r2) +
               ", " + std::to_string(t) + " s";
  }
  return o;
}

Outcome c8_estimator() {
  Outcome o;
  const auto config = desk(20);
  const auto result = exp_rank_difference(config);
  std::ostringstream summary;
  for (double f : config.activeness_grid) {
    double est = std::nan(""), lrr = std::nan("");
    for (const auto& row : result.rows) {
      if (row.trial || row.f != f) continue;
      if (row.experiment == "rank_difference_estimated") est = row.value;
      if (row.experiment == "rank_difference_lrr") lrr = row.value;
    }
    summary << " f=" << f << ":" << est << "/" << lrr;
    std::ostringstream what;
    what << "f=" << f << " estimated " << est << " > LRR " << lrr;
    o.require(est <= lrr, what.str());
  }
  o.detail = (o.pass ? std::string("estimated/LRR") : o.detail + "; estimated/LRR") + summary.str();
  return o;
}

Outcome c9_determinism_scale() {
  Outcome o;
  const auto root = fs::temp_directory_path() / "fairrank_acceptance";
  fs::remove_all(root);
  const std::string config = std::string(FAIRRANK_CONFIG_DIR) + "/paper.toml";
  double worst = 0.0;
  for (auto name : {"run1", "run2"}) {
    std::ostringstream out, err;
    const auto start = Clock::now();
    const int code = cli::run({"simulate", config, "--out", (root / name).string()}, out, err);
    const double t = seconds_since(start);
    worst = std::max(worst, t);
    o.require(code == 0, "simulate failed: " + err.str());
    o.require(t < 300.0, "runtime " + std::to_string(t) + " s");
  }
  for (auto file : {"missed_opportunity.csv", "rank_difference.csv", "skew.csv", "manifest.json"}) {
    o.require(io::read_file((root / "run1" / file).string()) == io::read_file((root / "run2" / file).string()),
              std::string(file) + " differs");
  }

  // merge cost: quadrupling N should scale time near 4x, far from 16x
  auto timed = [](std::size_t per_group, bool detconst) {
    ScenarioConfig c;
    c.groups = {{AttributeValue("g"), per_group, 1.0}, {AttributeValue("b"), per_group, 1.0},
                {AttributeValue("u"), per_group, 1.0}};
    SeededRng rng(1);
    auto pool = std::make_shared<const CandidatePool>(generate_universe(c, rng));
    const auto ratio = ratio_from_pool(*pool);
    double best = 1e9;
    for (int rep = 0; rep < 3; ++rep) {
      const auto start = Clock::now();
      auto r = detconst ? generate_gfrr_detconst(pool, ratio) : representative_rank(pool, ratio);
      best = std::min(best, seconds_since(start));
    }
    return best;
  };
  double worst_ratio = 0.0;
  for (bool detconst : {false, true}) {
    const double ratio = timed(200000, detconst) / std::max(timed(50000, detconst), 1e-6);
    worst_ratio = std::max(worst_ratio, ratio);
    o.require(ratio < 8.0, "merge time ratio for 4x N: " + std::to_string(ratio));
  }
  fs::remove_all(root);
  if (o.pass) {
    o.detail = "byte-identical, slowest run " + std::to_string(worst) + " s, merge time x" +
               std::to_string(worst_ratio) + " for 4x N";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 worked-example regression", c1_worked_examples},
      {"2 definition regression", c2_definitions},
      {"3 counting identity", c3_counting_identity},
      {"4 implication suite", c4_implications},
      {"5 ideal baselines", c5_ideal_baselines},
      {"6 generated GFRR quality", c6_generated_gfrr},
      {"7 missed-opportunity scaling", c7_missed_scaling},
      {"8 estimator improvement", c8_estimator},
      {"9 determinism and scale", c9_determinism_scale},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
