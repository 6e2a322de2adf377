#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairrank/core_model.hpp"
#include "fairrank/estimator.hpp"
#include "fairrank/metrics.hpp"
#include "fairrank/rng.hpp"

namespace fairrank {

inline constexpr std::string_view kSoftwareName = "fairrank";
inline constexpr std::string_view kSoftwareVersion = "1.0.0";

struct GroupSpec {
  AttributeValue attribute;
  std::size_t size = 0;
  double activeness = 1.0;
};

/// Synthetic scenario: groups with i.i.d. Uniform(0,1] scores, one sub-active
/// group whose activeness is swept over `activeness_grid`.
struct ScenarioConfig {
  std::vector<GroupSpec> groups;
  // Defaults to the first group with activeness < 1, else the first group.
  std::optional<AttributeValue> subactive;
  std::vector<std::size_t> k_grid;
  std::vector<double> activeness_grid;
  std::size_t trials = 20;
  std::uint64_t master_seed = 0;
  // Prefix of the skew experiment, clamped to the platform size.
  std::size_t skew_k = 10000;
  double skew_cap = kDefaultSkewCap;

  // Throws InvalidConfig.
  void validate() const;
  AttributeValue subactive_attribute() const;
  std::size_t total_size() const;
  // Activity for one grid value: the sub-active group gets `f`, the rest keep theirs.
  ActivityModel activity_at(double f) const;
};

CandidatePool generate_universe(const ScenarioConfig& config, SeededRng& rng);

// Keeps each candidate of group a independently with probability f_a. The
// returned pool keeps the universe's domain and candidate order.
CandidatePool sample_platform(const CandidatePool& universe, const ActivityModel& activity,
                              SeededRng& rng);

struct ResultRow {
  std::string experiment;
  double f = 0.0;
  std::size_t k = 0;
  std::optional<std::size_t> trial;  // empty for the mean row
  double value = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;

  // Header `experiment,f,k,trial,value`; rows in the stored (sorted) order.
  std::string to_csv() const;
};

// Serial is the reference path; Parallel runs trial cells with OpenMP and
// must produce identical rows.
enum class Execution { Serial, Parallel };

// Series `missed_opportunity`: sub-active members of URR top-k not in LRR
// top-k, non-joiners included. Series `missed_opportunity_platform`: the same
// restricted to platform members.
ExperimentResult exp_missed_opportunity(const ScenarioConfig& config,
                                        Execution execution = Execution::Parallel);

// Series `rank_difference_lrr` / `rank_difference_estimated`: mean over the
// sub-active group's platform members of rank(X) - rank(ideal IFRR); k = 0.
ExperimentResult exp_rank_difference(const ScenarioConfig& config,
                                     Execution execution = Execution::Parallel);

// Series `skew_lrr` / `skew_generated_gfrr`: skew of the sub-active group
// against the ideal GFRR at min(skew_k, |platform|).
ExperimentResult exp_skew(const ScenarioConfig& config, Execution execution = Execution::Parallel);

struct RunBundle {
  ExperimentResult missed_opportunity;
  ExperimentResult rank_difference;
  ExperimentResult skew;
  std::string manifest_json;
};

RunBundle run_all(const ScenarioConfig& config, Execution execution = Execution::Parallel);

// Writes missed_opportunity.csv, rank_difference.csv, skew.csv and manifest.json.
void write_bundle(const RunBundle& bundle, const std::string& out_dir);

std::string format_double(double value);

}  // namespace fairrank
