#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairrank/core_model.hpp"
#include "fairrank/metrics.hpp"
#include "fairrank/simulation.hpp"

namespace fairrank::io {

std::string read_file(const std::string& path);

/// Candidates from CSV (header `id,attribute,score`) or a JSON array of
/// objects with the same keys. JSON is detected by a leading '['. The domain
/// is the order of first appearance.
std::vector<Candidate> parse_candidates(std::string_view text, std::string_view source = "input");
PoolRef load_candidates(const std::string& path);

// Ranking CSV: header `rank,id,attribute,score`, rows in rank order.
std::string ranking_to_csv(const Ranking& ranking);

// A ranking file read back as a pool (domain by first appearance) and the
// ranking over it. Rank column must run 1..n.
Ranking parse_ranking_csv(std::string_view text, std::string_view source = "input");
Ranking load_ranking(const std::string& path);

// `g=0.4,b=1.0` style lists.
std::vector<std::pair<AttributeValue, double>> parse_assignments(std::string_view text);
// `6,10,20`.
std::vector<std::size_t> parse_size_list(std::string_view text);

// JSON or TOML (by extension; `.json` is JSON, anything else TOML).
ScenarioConfig parse_config(std::string_view text, bool json, std::string_view source = "config");
ScenarioConfig load_config(const std::string& path);

std::string report_to_json(const std::vector<FairnessReport>& reports);
// Columns: k,kind,id,attribute,benefited,unfair,favored,rank_difference,
// count_reference_topk,count_platform_topk,skew
std::string report_to_csv(const std::vector<FairnessReport>& reports);

}  // namespace fairrank::io
