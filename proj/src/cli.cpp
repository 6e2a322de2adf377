#include "fairrank/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "fairrank/error.hpp"
#include "fairrank/estimator.hpp"
#include "fairrank/ideal_fair.hpp"
#include "fairrank/io.hpp"
#include "fairrank/metrics.hpp"
#include "fairrank/ranker.hpp"
#include "fairrank/simulation.hpp"

namespace fairrank::cli {

namespace {

struct RankArgs {
  std::string candidates;
  std::string policy = "round";
  std::string ratio;
  std::string activeness;
  std::optional<std::uint64_t> seed;
  std::string out;
};

struct IdealArgs {
  std::string universe;
  std::string platform;
  std::string mode;
  std::string ratio;
  std::string out;
};

struct AnalyzeArgs {
  std::string reference;
  std::string platform_ranking;
  std::string platform;
  std::string k_list;
  double skew_cap = kDefaultSkewCap;
  bool strict = false;
  std::string out;
};

struct SimulateArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool serial = false;
};

// --seed, then FAIRRANK_SEED.
std::optional<std::uint64_t> resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("FAIRRANK_SEED"); env && *env) {
    std::uint64_t value = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw Error(ErrorCode::ParseError, "FAIRRANK_SEED='" + std::string(text) + "' is not an unsigned integer");
    }
    return value;
  }
  return std::nullopt;
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot write " + path);
  file << content;
}

RepresentationRatio ratio_or_pool(const std::string& flag, const CandidatePool& pool) {
  if (flag.empty()) return ratio_from_pool(pool);
  return RepresentationRatio::from(io::parse_assignments(flag));
}

int cmd_rank(const RankArgs& args, std::ostream& out) {
  if (args.policy == "estimated-ifrr" && args.activeness.empty()) {
    throw Error(ErrorCode::MissingFlag, "--activeness is required for --policy estimated-ifrr");
  }
  auto pool = io::load_candidates(args.candidates);
  const auto ratio = ratio_or_pool(args.ratio, *pool);

  std::optional<Ranking> ranking;
  if (args.policy == "round") {
    ranking = merge(pool, ratio, MergePolicy::round_target());
  } else if (args.policy == "detconst") {
    ranking = merge(pool, ratio, MergePolicy::det_const_sort());
  } else {
    const auto activity = ActivityModel::uniform_at_random(io::parse_assignments(args.activeness));
    SeededRng rng(resolve_seed(args.seed).value_or(0));
    ranking = estimated_ifrr(pool, ratio, activity, rng);
  }
  emit(io::ranking_to_csv(*ranking), args.out, out);
  return 0;
}

int cmd_ideal(const IdealArgs& args, std::ostream& out) {
  auto universe = io::load_candidates(args.universe);
  auto platform = io::load_candidates(args.platform);
  const Ranking urr = representative_rank(universe, ratio_or_pool(args.ratio, *universe));
  const Ranking result = args.mode == "gfrr" ? ideal_gfrr(urr, platform) : ideal_ifrr(urr, platform);
  emit(io::ranking_to_csv(result), args.out, out);
  return 0;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& err) {
  const Ranking reference = io::load_ranking(args.reference);
  const Ranking platform_ranking = io::load_ranking(args.platform_ranking);
  const auto platform = io::load_candidates(args.platform);
  const auto full = std::max(reference.size(), platform_ranking.size());

  std::vector<FairnessReport> reports;
  for (auto k : io::parse_size_list(args.k_list)) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "--k values must be >= 1");
    if (k > full) {
      err << "WARNING: k=" << k << " exceeds the ranking length; using k=" << full << "\n";
      k = full;
    }
    if (k == 0) continue;
    reports.push_back(fairness_report(reference, platform_ranking, *platform, k, args.skew_cap,
                                      args.strict ? UnfairnessScope::Strict
                                                  : UnfairnessScope::PlatformMembers));
  }

  std::error_code ec;
  std::filesystem::create_directories(args.out, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + args.out + ": " + ec.message());
  emit(io::report_to_json(reports), (std::filesystem::path(args.out) / "report.json").string(), err);
  emit(io::report_to_csv(reports), (std::filesystem::path(args.out) / "report.csv").string(), err);
  return 0;
}

int cmd_simulate(const SimulateArgs& args) {
  auto config = io::load_config(args.config);
  if (auto seed = resolve_seed(args.seed)) config.master_seed = *seed;
  const auto bundle = run_all(config, args.serial ? Execution::Serial : Execution::Parallel);
  write_bundle(bundle, args.out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fairness-aware representative ranking under missing platform data", "fairrank"};
  app.require_subcommand(1);

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank", "Representative ranking of a candidate file");
  rank_cmd->add_option("candidates", rank.candidates, "Candidate CSV or JSON")->required();
  rank_cmd->add_option("--policy", rank.policy, "round | detconst | estimated-ifrr")
      ->check(CLI::IsMember({"round", "detconst", "estimated-ifrr"}));
  rank_cmd->add_option("--ratio", rank.ratio, "Target ratio, e.g. g=0.5,b=0.5 (default: pool ratio)");
  rank_cmd->add_option("--activeness", rank.activeness, "Active fractions, e.g. g=0.4,b=1.0");
  rank_cmd->add_option("--seed", rank.seed, "RNG seed (fallback: FAIRRANK_SEED)");
  rank_cmd->add_option("--out", rank.out, "Output ranking CSV (default: stdout)");

  IdealArgs ideal;
  auto* ideal_cmd = app.add_subcommand("ideal", "Ideal fair re-ranking of a platform");
  ideal_cmd->add_option("universe", ideal.universe, "Universe candidate file")->required();
  ideal_cmd->add_option("platform", ideal.platform, "Platform candidate file")->required();
  ideal_cmd->add_option("--mode", ideal.mode, "ifrr | gfrr")
      ->required()
      ->check(CLI::IsMember({"ifrr", "gfrr"}));
  ideal_cmd->add_option("--ratio", ideal.ratio, "Universal ratio (default: universe ratio)");
  ideal_cmd->add_option("--out", ideal.out, "Output ranking CSV (default: stdout)");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Fairness audit of a platform ranking");
  analyze_cmd->add_option("reference", analyze.reference, "Reference ranking CSV (e.g. URR)")->required();
  analyze_cmd->add_option("ranking", analyze.platform_ranking, "Platform ranking CSV (e.g. LRR)")->required();
  analyze_cmd->add_option("platform", analyze.platform, "Platform candidate file")->required();
  analyze_cmd->add_option("--k", analyze.k_list, "Prefix sizes, e.g. 6,10")->required();
  analyze_cmd->add_option("--skew-cap", analyze.skew_cap, "Skew value when one count is zero");
  analyze_cmd->add_flag("--strict", analyze.strict, "Count non-joiners as individually unfair");
  analyze_cmd->add_option("--out", analyze.out, "Output directory for report.json / report.csv")->required();

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run the synthetic experiments");
  simulate_cmd->add_option("config", simulate.config, "Scenario config (.toml or .json)")->required();
  simulate_cmd->add_option("--out", simulate.out, "Output directory")->required();
  simulate_cmd->add_option("--seed", simulate.seed, "Override master seed (fallback: FAIRRANK_SEED)");
  simulate_cmd->add_flag("--serial", simulate.serial, "Use the serial reference path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::RequiredError& e) {
    err << "ERROR MissingFlag: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    err << "ERROR UsageError: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*rank_cmd) return cmd_rank(rank, out);
    if (*ideal_cmd) return cmd_ideal(ideal, out);
    if (*analyze_cmd) return cmd_analyze(analyze, err);
    if (*simulate_cmd) return cmd_simulate(simulate);
  } catch (const Error& e) {
    err << "ERROR " << to_string(e.code()) << ": " << e.detail() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "ERROR Internal: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace fairrank::cli
