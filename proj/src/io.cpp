#include "fairrank/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <toml.hpp>

#include "fairrank/error.hpp"

namespace fairrank::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// RFC 4180 style: fields may be double-quoted, "" escapes a quote.
std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.emplace_back(trim(field));
  return fields;
}

std::vector<std::vector<std::string>> read_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = trim(text.substr(start, end - start));
    if (!line.empty()) rows.push_back(split_csv_line(line));
    start = end + 1;
  }
  return rows;
}

double parse_real(std::string_view s, std::string_view what) {
  s = trim(s);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": '" + std::string(s) + "' is not a number");
  }
  return value;
}

std::size_t parse_count(std::string_view s, std::string_view what) {
  s = trim(s);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError,
                std::string(what) + ": '" + std::string(s) + "' is not a non-negative integer");
  }
  return value;
}

void require_header(const std::vector<std::string>& header, const std::vector<std::string>& expected,
                    std::string_view source) {
  if (header != expected) {
    std::string want;
    for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
    throw Error(ErrorCode::ParseError, std::string(source) + ": expected header '" + want + "'");
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<Candidate> parse_candidates(std::string_view text, std::string_view source) {
  std::vector<Candidate> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string(source) + ": " + e.what());
    }
    for (const auto& item : doc) {
      if (!item.is_object() || !item.contains("id") || !item.contains("attribute") ||
          !item.contains("score")) {
        throw Error(ErrorCode::ParseError,
                    std::string(source) + ": each entry needs id, attribute and score");
      }
      try {
        out.push_back({item["id"].get<std::string>(),
                       AttributeValue(item["attribute"].get<std::string>()),
                       item["score"].get<double>()});
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string(source) + ": " + e.what());
      }
    }
    return out;
  }

  const auto rows = read_csv(text);
  if (rows.empty()) throw Error(ErrorCode::ParseError, std::string(source) + ": missing header");
  require_header(rows.front(), {"id", "attribute", "score"}, source);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 3) {
      throw Error(ErrorCode::ParseError,
                  std::string(source) + ": line " + std::to_string(r + 1) + " needs 3 fields");
    }
    out.push_back({rows[r][0], AttributeValue(rows[r][1]), parse_real(rows[r][2], source)});
  }
  return out;
}

PoolRef load_candidates(const std::string& path) {
  return make_pool(parse_candidates(read_file(path), path));
}

std::string ranking_to_csv(const Ranking& ranking) {
  std::string out = "rank,id,attribute,score\n";
  for (std::size_t r = 1; r <= ranking.size(); ++r) {
    const auto& c = ranking.at(r);
    out += std::to_string(r) + ',' + c.id + ',' + c.attribute.label + ',' + format_double(c.score) + '\n';
  }
  return out;
}

Ranking parse_ranking_csv(std::string_view text, std::string_view source) {
  const auto rows = read_csv(text);
  if (rows.empty()) throw Error(ErrorCode::ParseError, std::string(source) + ": missing header");
  require_header(rows.front(), {"rank", "id", "attribute", "score"}, source);
  std::vector<Candidate> candidates;
  std::vector<CandidateId> ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 4) {
      throw Error(ErrorCode::ParseError,
                  std::string(source) + ": line " + std::to_string(r + 1) + " needs 4 fields");
    }
    if (parse_count(rows[r][0], source) != r) {
      throw Error(ErrorCode::ParseError, std::string(source) + ": line " + std::to_string(r + 1) +
                                             " has rank " + rows[r][0] + ", expected " + std::to_string(r));
    }
    candidates.push_back({rows[r][1], AttributeValue(rows[r][2]), parse_real(rows[r][3], source)});
    ids.push_back(rows[r][1]);
  }
  auto pool = make_pool(std::move(candidates));
  return Ranking::from_ids(pool, ids);
}

Ranking load_ranking(const std::string& path) { return parse_ranking_csv(read_file(path), path); }

std::vector<std::pair<AttributeValue, double>> parse_assignments(std::string_view text) {
  std::vector<std::pair<AttributeValue, double>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const auto item = trim(text.substr(start, end - start));
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorCode::ParseError, "expected attribute=value, got '" + std::string(item) + "'");
    }
    out.emplace_back(AttributeValue(std::string(trim(item.substr(0, eq)))),
                     parse_real(item.substr(eq + 1), "assignment"));
    start = end + 1;
  }
  return out;
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(parse_count(text.substr(start, end - start), "list"));
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scenario config

namespace {

ScenarioConfig config_from_json(const nlohmann::json& doc) {
  ScenarioConfig config;
  if (!doc.is_object()) throw Error(ErrorCode::InvalidConfig, "config must be an object");
  if (!doc.contains("groups") || !doc["groups"].is_array()) {
    throw Error(ErrorCode::InvalidConfig, "config needs a 'groups' array");
  }
  for (const auto& g : doc["groups"]) {
    GroupSpec spec;
    spec.attribute = AttributeValue(g.at("attribute").get<std::string>());
    spec.size = g.at("size").get<std::size_t>();
    spec.activeness = g.value("activeness", 1.0);
    config.groups.push_back(std::move(spec));
  }
  if (doc.contains("subactive")) config.subactive = AttributeValue(doc["subactive"].get<std::string>());
  if (doc.contains("score_distribution")) {
    const auto dist = doc["score_distribution"].get<std::string>();
    if (dist != "uniform") {
      throw Error(ErrorCode::InvalidConfig, "unsupported score_distribution '" + dist + "'");
    }
  }
  config.k_grid = doc.value("k_grid", std::vector<std::size_t>{});
  config.activeness_grid = doc.value("activeness_grid", std::vector<double>{});
  if (doc.contains("trials")) {
    const auto trials = doc["trials"].get<long long>();
    if (trials < 1) throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
    config.trials = static_cast<std::size_t>(trials);
  }
  config.master_seed = doc.value("master_seed", std::uint64_t{0});
  config.skew_k = doc.value("skew_k", config.skew_k);
  config.skew_cap = doc.value("skew_cap", config.skew_cap);
  return config;
}

nlohmann::json toml_to_json(const toml::node& node) {
  if (auto table = node.as_table()) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [key, value] : *table) out[std::string(key.str())] = toml_to_json(value);
    return out;
  }
  if (auto array = node.as_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& value : *array) out.push_back(toml_to_json(value));
    return out;
  }
  if (auto v = node.as_integer()) return v->get();
  if (auto v = node.as_floating_point()) return v->get();
  if (auto v = node.as_boolean()) return v->get();
  if (auto v = node.as_string()) return v->get();
  throw Error(ErrorCode::InvalidConfig, "unsupported TOML value type");
}

}  // namespace

ScenarioConfig parse_config(std::string_view text, bool json, std::string_view source) {
  nlohmann::json doc;
  try {
    if (json) {
      doc = nlohmann::json::parse(text);
    } else {
      doc = toml_to_json(toml::parse(text, source));
    }
    auto config = config_from_json(doc);
    config.validate();
    return config;
  } catch (const toml::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string(source) + ": " + std::string(e.description()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string(source) + ": " + e.what());
  }
}

ScenarioConfig load_config(const std::string& path) {
  const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  return parse_config(read_file(path), json, path);
}

// ---------------------------------------------------------------------------
// Reports

std::string report_to_json(const std::vector<FairnessReport>& reports) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& report : reports) {
    nlohmann::ordered_json r;
    r["k"] = report.k;
    r["scope"] = report.scope == UnfairnessScope::Strict ? "strict" : "platform_members";
    r["totals"] = {{"n_unfair", report.totals.n_unfair},
                   {"n_favored", report.totals.n_favored},
                   {"n_absent", report.totals.n_absent}};
    auto& groups = r["group_verdicts"] = nlohmann::ordered_json::array();
    for (const auto& g : report.group_verdicts) {
      groups.push_back({{"attribute", g.attribute.label},
                        {"count_reference_topk", g.count_reference_topk},
                        {"count_platform_topk", g.count_platform_topk},
                        {"unfair", g.unfair},
                        {"favored", g.favored},
                        {"skew", g.skew}});
    }
    auto& candidates = r["candidate_verdicts"] = nlohmann::ordered_json::array();
    for (const auto& c : report.candidate_verdicts) {
      nlohmann::ordered_json v{{"id", c.candidate_id},
                               {"attribute", c.attribute.label},
                               {"benefited", c.benefited},
                               {"individually_unfair", c.individually_unfair},
                               {"favored", c.favored}};
      v["rank_difference"] = c.rank_difference ? nlohmann::ordered_json(*c.rank_difference) : nullptr;
      candidates.push_back(std::move(v));
    }
    out.push_back(std::move(r));
  }
  return out.dump(2) + "\n";
}

std::string report_to_csv(const std::vector<FairnessReport>& reports) {
  std::string out =
      "k,kind,id,attribute,benefited,unfair,favored,rank_difference,count_reference_topk,"
      "count_platform_topk,skew\n";
  auto flag = [](bool b) { return b ? "1" : "0"; };
  for (const auto& report : reports) {
    const auto k = std::to_string(report.k);
    for (const auto& c : report.candidate_verdicts) {
      out += k + ",candidate," + c.candidate_id + ',' + c.attribute.label + ',' + flag(c.benefited) +
             ',' + flag(c.individually_unfair) + ',' + flag(c.favored) + ',' +
             (c.rank_difference ? std::to_string(*c.rank_difference) : std::string()) + ",,,\n";
    }
    for (const auto& g : report.group_verdicts) {
      out += k + ",group,," + g.attribute.label + ",," + flag(g.unfair) + ',' + flag(g.favored) +
             ",," + std::to_string(g.count_reference_topk) + ',' +
             std::to_string(g.count_platform_topk) + ',' + format_double(g.skew) + '\n';
    }
  }
  return out;
}

}  // namespace fairrank::io
