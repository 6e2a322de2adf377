#include "fairrank/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "fairrank/error.hpp"

namespace fairrank {

namespace {

constexpr double kRatioTolerance = 1e-9;

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownAttribute: return "UnknownAttribute";
    case ErrorCode::NonFiniteScore: return "NonFiniteScore";
    case ErrorCode::EmptyPool: return "EmptyPool";
    case ErrorCode::InvalidRatio: return "InvalidRatio";
    case ErrorCode::RatioDomainMismatch: return "RatioDomainMismatch";
    case ErrorCode::ZeroProportionWithCandidates: return "ZeroProportionWithCandidates";
    case ErrorCode::PlatformNotSubset: return "PlatformNotSubset";
    case ErrorCode::InfeasibleActivity: return "InfeasibleActivity";
    case ErrorCode::InvalidActivity: return "InvalidActivity";
    case ErrorCode::UnknownCandidate: return "UnknownCandidate";
    case ErrorCode::MissingFromRanking: return "MissingFromRanking";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MissingFlag: return "MissingFlag";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(std::move(detail)) {}

bool ranks_before(const Candidate& lhs, const Candidate& rhs) {
  if (lhs.score != rhs.score) return lhs.score > rhs.score;
  return lhs.id < rhs.id;
}

// ---------------------------------------------------------------------------
// CandidatePool

CandidatePool validate_pool(std::vector<Candidate> candidates,
                            std::vector<AttributeValue> domain, std::string query_id) {
  CandidatePool pool;
  std::unordered_map<std::string, std::uint32_t> domain_lookup;
  for (std::size_t g = 0; g < domain.size(); ++g) {
    if (domain[g].label.empty()) {
      throw Error(ErrorCode::UnknownAttribute, "empty attribute label in domain");
    }
    if (!domain_lookup.emplace(domain[g].label, static_cast<std::uint32_t>(g)).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "attribute '" + domain[g].label + "' listed twice in domain");
    }
  }

  pool.group_of_.reserve(candidates.size());
  pool.id_index_.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    if (c.id.empty()) {
      throw Error(ErrorCode::InvalidArgument, "candidate at position " + std::to_string(i) +
                                                   " has an empty id");
    }
    if (!std::isfinite(c.score)) {
      throw Error(ErrorCode::NonFiniteScore, c.id);
    }
    auto g = domain_lookup.find(c.attribute.label);
    if (g == domain_lookup.end()) {
      throw Error(ErrorCode::UnknownAttribute, c.id + " has attribute '" + c.attribute.label + "'");
    }
    if (!pool.id_index_.emplace(c.id, static_cast<std::uint32_t>(i)).second) {
      throw Error(ErrorCode::DuplicateId, c.id);
    }
    pool.group_of_.push_back(g->second);
  }

  pool.groups_.resize(domain.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    pool.groups_[pool.group_of_[i]].push_back(static_cast<std::uint32_t>(i));
  }
  for (auto& members : pool.groups_) {
    std::sort(members.begin(), members.end(), [&](std::uint32_t a, std::uint32_t b) {
      return ranks_before(candidates[a], candidates[b]);
    });
  }

  pool.candidates_ = std::move(candidates);
  pool.domain_ = std::move(domain);
  pool.query_id_ = std::move(query_id);
  return pool;
}

CandidatePool validate_pool(std::vector<Candidate> candidates, std::string query_id) {
  std::vector<AttributeValue> domain;
  std::unordered_set<std::string> seen;
  for (const auto& c : candidates) {
    if (seen.insert(c.attribute.label).second) domain.push_back(c.attribute);
  }
  return validate_pool(std::move(candidates), std::move(domain), std::move(query_id));
}

PoolRef make_pool(std::vector<Candidate> candidates, std::vector<AttributeValue> domain,
                  std::string query_id) {
  return std::make_shared<const CandidatePool>(
      validate_pool(std::move(candidates), std::move(domain), std::move(query_id)));
}

PoolRef make_pool(std::vector<Candidate> candidates) {
  return std::make_shared<const CandidatePool>(validate_pool(std::move(candidates)));
}

std::optional<std::size_t> CandidatePool::index_of(std::string_view id) const {
  auto it = id_index_.find(std::string(id));
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> CandidatePool::domain_index(const AttributeValue& attribute) const {
  for (std::size_t g = 0; g < domain_.size(); ++g) {
    if (domain_[g] == attribute) return g;
  }
  return std::nullopt;
}

std::vector<Group> partition_groups(const CandidatePool& pool) {
  std::vector<Group> out;
  out.reserve(pool.domain().size());
  for (std::size_t g = 0; g < pool.domain().size(); ++g) {
    Group group{pool.domain()[g], {}};
    group.members.reserve(pool.group_size(g));
    for (auto index : pool.group(g)) group.members.push_back(pool[index]);
    out.push_back(std::move(group));
  }
  return out;
}

std::vector<Candidate> within_group_rank(std::span<const Candidate> group) {
  for (const auto& c : group) {
    if (c.attribute != group.front().attribute) {
      throw Error(ErrorCode::InvalidArgument,
                  "within_group_rank: " + c.id + " is not in group '" +
                      group.front().attribute.label + "'");
    }
  }
  std::vector<Candidate> out(group.begin(), group.end());
  std::sort(out.begin(), out.end(), ranks_before);
  return out;
}

// ---------------------------------------------------------------------------
// RepresentationRatio

RepresentationRatio RepresentationRatio::from(
    std::vector<std::pair<AttributeValue, double>> proportions) {
  double sum = 0.0;
  std::unordered_set<std::string> seen;
  for (const auto& [attribute, p] : proportions) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw Error(ErrorCode::InvalidRatio,
                  "proportion of '" + attribute.label + "' is outside [0,1]");
    }
    if (!seen.insert(attribute.label).second) {
      throw Error(ErrorCode::InvalidRatio, "attribute '" + attribute.label + "' listed twice");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kRatioTolerance) {
    throw Error(ErrorCode::InvalidRatio, "proportions sum to " + std::to_string(sum));
  }
  RepresentationRatio ratio;
  ratio.entries_ = std::move(proportions);
  return ratio;
}

std::optional<double> RepresentationRatio::proportion(const AttributeValue& attribute) const {
  for (const auto& [a, p] : entries_) {
    if (a == attribute) return p;
  }
  return std::nullopt;
}

std::vector<double> RepresentationRatio::aligned_to(std::span<const AttributeValue> domain) const {
  std::vector<double> out;
  out.reserve(domain.size());
  for (const auto& attribute : domain) {
    auto p = proportion(attribute);
    if (!p) {
      throw Error(ErrorCode::RatioDomainMismatch,
                  "ratio has no entry for attribute '" + attribute.label + "'");
    }
    out.push_back(*p);
  }
  for (const auto& [a, p] : entries_) {
    if (std::find(domain.begin(), domain.end(), a) == domain.end()) {
      throw Error(ErrorCode::RatioDomainMismatch,
                  "ratio attribute '" + a.label + "' is not in the pool's domain");
    }
  }
  return out;
}

RepresentationRatio ratio_from_pool(const CandidatePool& pool) {
  if (pool.empty()) throw Error(ErrorCode::EmptyPool, "cannot derive a ratio from an empty pool");
  std::vector<std::pair<AttributeValue, double>> entries;
  const double total = static_cast<double>(pool.size());
  for (std::size_t g = 0; g < pool.domain().size(); ++g) {
    entries.emplace_back(pool.domain()[g], static_cast<double>(pool.group_size(g)) / total);
  }
  return RepresentationRatio::from(std::move(entries));
}

// ---------------------------------------------------------------------------
// Ranking

Ranking::Ranking(PoolRef pool, std::vector<std::uint32_t> order)
    : pool_(std::move(pool)), order_(std::move(order)) {
  if (!pool_) throw Error(ErrorCode::InvalidArgument, "ranking without a pool");
  rank_by_index_.assign(pool_->size(), 0);
  for (std::size_t r = 0; r < order_.size(); ++r) {
    const auto index = order_[r];
    if (index >= pool_->size()) {
      throw Error(ErrorCode::UnknownCandidate, "pool index " + std::to_string(index));
    }
    if (rank_by_index_[index] != 0) {
      throw Error(ErrorCode::DuplicateId, (*pool_)[index].id);
    }
    rank_by_index_[index] = static_cast<std::uint32_t>(r + 1);
  }
}

Ranking Ranking::from_ids(PoolRef pool, std::span<const CandidateId> ids) {
  std::vector<std::uint32_t> order;
  order.reserve(ids.size());
  for (const auto& id : ids) {
    auto index = pool->index_of(id);
    if (!index) throw Error(ErrorCode::UnknownCandidate, id);
    order.push_back(static_cast<std::uint32_t>(*index));
  }
  return Ranking(std::move(pool), std::move(order));
}

std::optional<std::size_t> Ranking::rank_of(std::string_view id) const {
  auto index = pool_->index_of(id);
  if (!index || rank_by_index_[*index] == 0) return std::nullopt;
  return rank_by_index_[*index];
}

Ranking Ranking::prefix(std::size_t k) const {
  const auto n = std::min(k, order_.size());
  return Ranking(pool_, std::vector<std::uint32_t>(order_.begin(), order_.begin() + n));
}

std::vector<CandidateId> Ranking::ids() const {
  std::vector<CandidateId> out;
  out.reserve(order_.size());
  for (auto index : order_) out.push_back((*pool_)[index].id);
  return out;
}

std::size_t Ranking::count_in_prefix(const AttributeValue& attribute, std::size_t k) const {
  auto g = pool_->domain_index(attribute);
  if (!g) return 0;
  const auto n = std::min(k, order_.size());
  std::size_t count = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (pool_->group_of(order_[r]) == *g) ++count;
  }
  return count;
}

bool Ranking::operator==(const Ranking& other) const {
  return ids() == other.ids();
}

bool preserves_group_order(const Ranking& ranking) {
  const auto& pool = ranking.pool();
  std::vector<const Candidate*> last(pool.domain().size(), nullptr);
  for (auto index : ranking.order()) {
    const auto g = pool.group_of(index);
    if (last[g] && ranks_before(pool[index], *last[g])) return false;
    last[g] = &pool[index];
  }
  return true;
}

std::size_t GroupCounts::at(const AttributeValue& attribute) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i] == attribute) return counts[i];
  }
  return 0;
}

std::size_t GroupCounts::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

GroupCounts count_groups(const Ranking& ranking, std::size_t k) {
  const auto& pool = ranking.pool();
  GroupCounts out{pool.domain(), std::vector<std::size_t>(pool.domain().size(), 0)};
  const auto n = std::min(k, ranking.size());
  for (std::size_t r = 0; r < n; ++r) ++out.counts[pool.group_of(ranking.order()[r])];
  return out;
}

}  // namespace fairrank
