#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fairrank {

// Value of the protected attribute, e.g. "g", "b", "u". A tuple of attributes
// is expressed as one composite label.
struct AttributeValue {
  std::string label;

  AttributeValue() = default;
  explicit AttributeValue(std::string l) : label(std::move(l)) {}

  auto operator<=>(const AttributeValue&) const = default;
};

using CandidateId = std::string;

struct Candidate {
  CandidateId id;
  AttributeValue attribute;
  double score = 0.0;

  bool operator==(const Candidate&) const = default;
};

// Score descending, ties by ascending id.
bool ranks_before(const Candidate& lhs, const Candidate& rhs);

class CandidatePool;
using PoolRef = std::shared_ptr<const CandidatePool>;

/// A validated, immutable candidate set for one query.
///
/// Holds the attribute domain (in caller order; groups may be empty) and the
/// within-group ordering of every group, precomputed at construction.
class CandidatePool {
 public:
  const std::vector<Candidate>& candidates() const noexcept { return candidates_; }
  const std::vector<AttributeValue>& domain() const noexcept { return domain_; }
  const std::string& query_id() const noexcept { return query_id_; }
  std::size_t size() const noexcept { return candidates_.size(); }
  bool empty() const noexcept { return candidates_.empty(); }

  const Candidate& operator[](std::size_t index) const { return candidates_[index]; }

  std::optional<std::size_t> index_of(std::string_view id) const;
  bool contains(std::string_view id) const { return index_of(id).has_value(); }

  std::optional<std::size_t> domain_index(const AttributeValue& attribute) const;
  // Domain index of the candidate at `index`.
  std::size_t group_of(std::size_t index) const { return group_of_[index]; }

  // Candidate indices of domain group `g`, best first.
  const std::vector<std::uint32_t>& group(std::size_t g) const { return groups_[g]; }
  std::size_t group_size(std::size_t g) const { return groups_[g].size(); }

 private:
  friend CandidatePool validate_pool(std::vector<Candidate>, std::vector<AttributeValue>,
                                     std::string);

  CandidatePool() = default;

  std::vector<Candidate> candidates_;
  std::vector<AttributeValue> domain_;
  std::string query_id_;
  std::vector<std::uint32_t> group_of_;
  std::vector<std::vector<std::uint32_t>> groups_;
  std::unordered_map<std::string, std::uint32_t> id_index_;
};

/// Builds a pool, rejecting duplicate ids, attributes outside `domain`,
/// non-finite scores, empty ids and repeated domain labels.
CandidatePool validate_pool(std::vector<Candidate> candidates,
                            std::vector<AttributeValue> domain, std::string query_id = {});

// Domain in order of first appearance.
CandidatePool validate_pool(std::vector<Candidate> candidates, std::string query_id = {});

PoolRef make_pool(std::vector<Candidate> candidates, std::vector<AttributeValue> domain,
                  std::string query_id = {});
PoolRef make_pool(std::vector<Candidate> candidates);

struct Group {
  AttributeValue attribute;
  std::vector<Candidate> members;
};

// One entry per domain attribute, in domain order; each group ranked.
std::vector<Group> partition_groups(const CandidatePool& pool);

// Requires all candidates to share one attribute.
std::vector<Candidate> within_group_rank(std::span<const Candidate> group);

/// Target proportion p_a per attribute; proportions lie in [0,1] and sum to 1
/// within 1e-9.
class RepresentationRatio {
 public:
  static RepresentationRatio from(std::vector<std::pair<AttributeValue, double>> proportions);

  const std::vector<std::pair<AttributeValue, double>>& entries() const noexcept {
    return entries_;
  }
  std::optional<double> proportion(const AttributeValue& attribute) const;

  // Proportions aligned with `domain`; throws RatioDomainMismatch unless the
  // ratio's attributes are exactly the domain's.
  std::vector<double> aligned_to(std::span<const AttributeValue> domain) const;

 private:
  std::vector<std::pair<AttributeValue, double>> entries_;
};

RepresentationRatio ratio_from_pool(const CandidatePool& pool);

/// Ordered, duplicate-free list of candidates of one pool. Ranks are 1-based.
class Ranking {
 public:
  Ranking(PoolRef pool, std::vector<std::uint32_t> order);

  static Ranking from_ids(PoolRef pool, std::span<const CandidateId> ids);

  const CandidatePool& pool() const noexcept { return *pool_; }
  const PoolRef& pool_ref() const noexcept { return pool_; }
  const std::vector<std::uint32_t>& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return order_.size(); }
  bool empty() const noexcept { return order_.empty(); }

  // Candidate at 1-based rank.
  const Candidate& at(std::size_t rank) const { return (*pool_)[order_.at(rank - 1)]; }

  std::optional<std::size_t> rank_of(std::string_view id) const;
  // 0 when the pool candidate is not in this ranking.
  std::size_t rank_of_index(std::size_t pool_index) const { return rank_by_index_[pool_index]; }

  Ranking prefix(std::size_t k) const;
  std::vector<CandidateId> ids() const;

  // Members of `attribute` among the first min(k, size) entries.
  std::size_t count_in_prefix(const AttributeValue& attribute, std::size_t k) const;

  bool operator==(const Ranking& other) const;

 private:
  PoolRef pool_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> rank_by_index_;
};

// True when same-attribute candidates appear in within-group rank order.
bool preserves_group_order(const Ranking& ranking);

struct GroupCounts {
  std::vector<AttributeValue> attributes;
  std::vector<std::size_t> counts;

  std::size_t at(const AttributeValue& attribute) const;
  std::size_t total() const;
};

GroupCounts count_groups(const Ranking& ranking, std::size_t k);

}  // namespace fairrank

template <>
struct std::hash<fairrank::AttributeValue> {
  std::size_t operator()(const fairrank::AttributeValue& a) const noexcept {
    return std::hash<std::string>{}(a.label);
  }
};
