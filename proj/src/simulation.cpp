#include "fairrank/simulation.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "fairrank/error.hpp"
#include "fairrank/ideal_fair.hpp"
#include "fairrank/ranker.hpp"

namespace fairrank {

namespace {

constexpr std::string_view kMissedSeedTag = "missed_opportunity";
constexpr std::string_view kRankDiffSeedTag = "rank_difference";
constexpr std::string_view kSkewSeedTag = "skew";

struct SeriesLayout {
  std::vector<std::string> names;
  std::vector<std::size_t> ks;  // one value per series entry

  std::size_t width() const { return names.size() * ks.size(); }
};

// Values of one (f, trial) cell, laid out series-major then by k.
using CellKernel = std::function<std::vector<double>(double f, SeededRng& rng)>;

struct Scenario {
  PoolRef universe;
  PoolRef platform;
  Ranking urr;
  Ranking lrr;
};

Ranking empty_ranking(const PoolRef& pool) { return Ranking(pool, {}); }

Scenario build_scenario(const ScenarioConfig& config, double f, SeededRng& rng) {
  auto universe = std::make_shared<const CandidatePool>(generate_universe(config, rng));
  auto platform =
      std::make_shared<const CandidatePool>(sample_platform(*universe, config.activity_at(f), rng));
  Ranking urr = representative_rank(universe, ratio_from_pool(*universe));
  Ranking lrr = platform->empty() ? empty_ranking(platform)
                                  : representative_rank(platform, ratio_from_pool(*platform));
  return Scenario{std::move(universe), std::move(platform), std::move(urr), std::move(lrr)};
}

ExperimentResult sweep(const ScenarioConfig& config, std::string_view seed_tag,
                       const SeriesLayout& layout, const CellKernel& kernel, Execution execution) {
  config.validate();
  ExperimentResult result;
  if (layout.width() == 0 || config.activeness_grid.empty()) return result;

  const std::size_t n_f = config.activeness_grid.size();
  const std::size_t trials = config.trials;
  const std::size_t cells = n_f * trials;
  std::vector<std::vector<double>> values(cells);

  auto run_cell = [&](std::size_t cell) {
    const std::size_t fi = cell / trials;
    const std::size_t trial = cell % trials;
    SeededRng rng(derive_trial_seed(config.master_seed, seed_tag, fi, trial));
    values[cell] = kernel(config.activeness_grid[fi], rng);
  };

  if (execution == Execution::Serial) {
    for (std::size_t cell = 0; cell < cells; ++cell) run_cell(cell);
  } else {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t cell = 0; cell < cells; ++cell) {
      try {
        run_cell(cell);
      } catch (...) {
#pragma omp critical(fairrank_sweep_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  for (std::size_t s = 0; s < layout.names.size(); ++s) {
    for (std::size_t fi = 0; fi < n_f; ++fi) {
      for (std::size_t ki = 0; ki < layout.ks.size(); ++ki) {
        const std::size_t slot = s * layout.ks.size() + ki;
        double sum = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
          const double v = values[fi * trials + t][slot];
          sum += v;
          result.rows.push_back({layout.names[s], config.activeness_grid[fi], layout.ks[ki], t, v});
        }
        result.rows.push_back({layout.names[s], config.activeness_grid[fi], layout.ks[ki],
                               std::nullopt, sum / static_cast<double>(trials)});
      }
    }
  }

  std::stable_sort(result.rows.begin(), result.rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.experiment != b.experiment) return a.experiment < b.experiment;
    if (a.f != b.f) return a.f < b.f;
    if (a.k != b.k) return a.k < b.k;
    // numbered trials first, mean last
    if (a.trial.has_value() != b.trial.has_value()) return a.trial.has_value();
    return a.trial.value_or(0) < b.trial.value_or(0);
  });
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// ScenarioConfig

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (groups.empty()) fail("at least one group is required");
  std::unordered_set<std::string> labels;
  for (const auto& g : groups) {
    if (g.attribute.label.empty()) fail("group with empty attribute label");
    if (!labels.insert(g.attribute.label).second) fail("group '" + g.attribute.label + "' listed twice");
    if (g.size == 0) fail("group '" + g.attribute.label + "' has size 0");
    if (!(g.activeness >= 0.0 && g.activeness <= 1.0)) {
      fail("activeness of group '" + g.attribute.label + "' is outside [0,1]");
    }
  }
  if (subactive && !labels.contains(subactive->label)) {
    fail("sub-active attribute '" + subactive->label + "' is not a configured group");
  }
  if (trials < 1) fail("trials must be >= 1");
  const auto total = total_size();
  for (auto k : k_grid) {
    if (k > total) fail("k = " + std::to_string(k) + " exceeds the universe size " + std::to_string(total));
  }
  for (auto f : activeness_grid) {
    if (!(f >= 0.0 && f <= 1.0)) fail("activeness grid value outside [0,1]");
  }
  if (skew_k < 1) fail("skew_k must be >= 1");
  if (!(skew_cap > 0.0)) fail("skew_cap must be > 0");
}

AttributeValue ScenarioConfig::subactive_attribute() const {
  if (subactive) return *subactive;
  for (const auto& g : groups) {
    if (g.activeness < 1.0) return g.attribute;
  }
  if (groups.empty()) throw Error(ErrorCode::InvalidConfig, "no groups configured");
  return groups.front().attribute;
}

std::size_t ScenarioConfig::total_size() const {
  std::size_t total = 0;
  for (const auto& g : groups) total += g.size;
  return total;
}

ActivityModel ScenarioConfig::activity_at(double f) const {
  const auto target = subactive_attribute();
  std::vector<std::pair<AttributeValue, double>> fractions;
  for (const auto& g : groups) fractions.emplace_back(g.attribute, g.attribute == target ? f : g.activeness);
  return ActivityModel::uniform_at_random(std::move(fractions));
}

// ---------------------------------------------------------------------------
// Scenario generation

CandidatePool generate_universe(const ScenarioConfig& config, SeededRng& rng) {
  std::vector<Candidate> candidates;
  candidates.reserve(config.total_size());
  std::vector<AttributeValue> domain;
  for (const auto& g : config.groups) {
    domain.push_back(g.attribute);
    for (std::size_t i = 1; i <= g.size; ++i) {
      candidates.push_back({g.attribute.label + std::to_string(i), g.attribute, rng.uniform_open_closed()});
    }
  }
  return validate_pool(std::move(candidates), std::move(domain));
}

CandidatePool sample_platform(const CandidatePool& universe, const ActivityModel& activity,
                              SeededRng& rng) {
  const auto active = activity.aligned_to(universe.domain());
  std::vector<Candidate> members;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (rng.bernoulli(active[universe.group_of(i)])) members.push_back(universe[i]);
  }
  return validate_pool(std::move(members), universe.domain(), universe.query_id());
}

// ---------------------------------------------------------------------------
// Experiments

ExperimentResult exp_missed_opportunity(const ScenarioConfig& config, Execution execution) {
  SeriesLayout layout{{"missed_opportunity", "missed_opportunity_platform"}, config.k_grid};
  const auto target = config.subactive_attribute();

  CellKernel kernel = [&](double f, SeededRng& rng) {
    const Scenario s = build_scenario(config, f, rng);
    const auto g = *s.universe->domain_index(target);

    // LRR rank of every universe candidate, 0 for non-joiners.
    std::vector<std::size_t> lrr_rank(s.universe->size(), 0);
    for (std::size_t p = 0; p < s.platform->size(); ++p) {
      lrr_rank[*s.universe->index_of((*s.platform)[p].id)] = s.lrr.rank_of_index(p);
    }

    std::vector<double> out(layout.width(), 0.0);
    for (std::size_t ki = 0; ki < layout.ks.size(); ++ki) {
      const std::size_t k = std::min(layout.ks[ki], s.urr.size());
      std::size_t missed = 0;
      std::size_t missed_members = 0;
      for (std::size_t r = 0; r < k; ++r) {
        const auto u = s.urr.order()[r];
        if (s.universe->group_of(u) != g) continue;
        const auto rank = lrr_rank[u];
        if (rank == 0) {
          ++missed;
        } else if (rank > layout.ks[ki]) {
          ++missed;
          ++missed_members;
        }
      }
      out[ki] = static_cast<double>(missed);
      out[layout.ks.size() + ki] = static_cast<double>(missed_members);
    }
    return out;
  };
  return sweep(config, kMissedSeedTag, layout, kernel, execution);
}

ExperimentResult exp_rank_difference(const ScenarioConfig& config, Execution execution) {
  SeriesLayout layout{{"rank_difference_estimated", "rank_difference_lrr"}, {0}};
  const auto target = config.subactive_attribute();

  CellKernel kernel = [&](double f, SeededRng& rng) {
    const Scenario s = build_scenario(config, f, rng);
    const Ranking ideal = ideal_ifrr(s.urr, s.platform);
    const Ranking estimated =
        estimated_ifrr(s.platform, ratio_from_pool(*s.universe), config.activity_at(f), rng);

    const auto g = *s.platform->domain_index(target);
    const auto& members = s.platform->group(g);
    std::vector<double> out(2, 0.0);
    if (members.empty()) return out;
    double est_sum = 0.0;
    double lrr_sum = 0.0;
    for (auto p : members) {
      const auto ideal_rank = static_cast<double>(ideal.rank_of_index(p));
      est_sum += static_cast<double>(estimated.rank_of_index(p)) - ideal_rank;
      lrr_sum += static_cast<double>(s.lrr.rank_of_index(p)) - ideal_rank;
    }
    const auto n = static_cast<double>(members.size());
    out[0] = est_sum / n;
    out[1] = lrr_sum / n;
    return out;
  };
  return sweep(config, kRankDiffSeedTag, layout, kernel, execution);
}

ExperimentResult exp_skew(const ScenarioConfig& config, Execution execution) {
  SeriesLayout layout{{"skew_generated_gfrr", "skew_lrr"}, {config.skew_k}};
  const auto target = config.subactive_attribute();

  CellKernel kernel = [&](double f, SeededRng& rng) {
    const Scenario s = build_scenario(config, f, rng);
    std::vector<double> out(2, 0.0);
    const std::size_t k = std::min(config.skew_k, s.platform->size());
    if (k == 0) return out;
    const Ranking ideal = ideal_gfrr(s.urr, s.platform);
    const Ranking generated = generate_gfrr_detconst(s.platform, ratio_from_pool(*s.universe));
    out[0] = skew(target, generated, ideal, k, config.skew_cap);
    out[1] = skew(target, s.lrr, ideal, k, config.skew_cap);
    return out;
  };
  return sweep(config, kSkewSeedTag, layout, kernel, execution);
}

// ---------------------------------------------------------------------------
// Output

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw Error(ErrorCode::InvalidArgument, "unformattable value");
  return std::string(buf, end);
}

std::string ExperimentResult::to_csv() const {
  std::string out = "experiment,f,k,trial,value\n";
  for (const auto& row : rows) {
    out += row.experiment;
    out += ',';
    out += format_double(row.f);
    out += ',';
    out += std::to_string(row.k);
    out += ',';
    out += row.trial ? std::to_string(*row.trial) : std::string("mean");
    out += ',';
    out += format_double(row.value);
    out += '\n';
  }
  return out;
}

namespace {

nlohmann::ordered_json config_to_json(const ScenarioConfig& config) {
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const auto& g : config.groups) {
    groups.push_back({{"attribute", g.attribute.label}, {"size", g.size}, {"activeness", g.activeness}});
  }
  nlohmann::ordered_json j;
  j["groups"] = std::move(groups);
  j["subactive"] = config.subactive_attribute().label;
  j["k_grid"] = config.k_grid;
  j["activeness_grid"] = config.activeness_grid;
  j["trials"] = config.trials;
  j["master_seed"] = config.master_seed;
  j["skew_k"] = config.skew_k;
  j["skew_cap"] = config.skew_cap;
  j["score_distribution"] = "uniform(0,1]";
  return j;
}

}  // namespace

RunBundle run_all(const ScenarioConfig& config, Execution execution) {
  config.validate();
  RunBundle bundle;
  bundle.missed_opportunity = exp_missed_opportunity(config, execution);
  bundle.rank_difference = exp_rank_difference(config, execution);
  bundle.skew = exp_skew(config, execution);

  nlohmann::ordered_json manifest;
  manifest["software"] = kSoftwareName;
  manifest["version"] = kSoftwareVersion;
  manifest["master_seed"] = config.master_seed;
  manifest["seed_rule"] =
      "trial_seed = splitmix64(master_seed ^ splitmix64(fnv1a64(experiment) ^ "
      "splitmix64((f_index << 32) | trial))); experiment in {missed_opportunity, "
      "rank_difference, skew}; rng = mt19937_64(trial_seed)";
  manifest["config"] = config_to_json(config);
  manifest["files"] = {
      {{"name", "missed_opportunity.csv"}, {"rows", bundle.missed_opportunity.rows.size()}},
      {{"name", "rank_difference.csv"}, {"rows", bundle.rank_difference.rows.size()}},
      {{"name", "skew.csv"}, {"rows", bundle.skew.rows.size()}},
  };
  bundle.manifest_json = manifest.dump(2) + "\n";
  return bundle;
}

void write_bundle(const RunBundle& bundle, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir + ": " + ec.message());

  auto write = [&](const std::string& name, const std::string& content) {
    const auto path = fs::path(out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << content;
  };
  write("missed_opportunity.csv", bundle.missed_opportunity.to_csv());
  write("rank_difference.csv", bundle.rank_difference.to_csv());
  write("skew.csv", bundle.skew.to_csv());
  write("manifest.json", bundle.manifest_json);
}

}  // namespace fairrank
