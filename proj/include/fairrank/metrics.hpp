#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "fairrank/core_model.hpp"

namespace fairrank {

inline constexpr double kDefaultSkewCap = 50.0;

// How non-joiners (universe members absent from the platform) are treated by
// individual unfairness.
enum class UnfairnessScope {
  PlatformMembers,  // a candidate who never joined cannot be treated unfairly
  Strict,           // literal reading: any reference top-k member outside the platform top-k
};

// Prefix arguments must be >= 1; a prefix longer than a ranking covers all of it.
bool is_benefited(std::string_view id, const Ranking& platform_ranking, std::size_t k);

int individual_unfairness(std::string_view id, const Ranking& urr, const Ranking& lrr,
                          const CandidatePool& platform, std::size_t k,
                          UnfairnessScope scope = UnfairnessScope::PlatformMembers);

bool is_favored(std::string_view id, const Ranking& urr, const Ranking& lrr, std::size_t k);

bool group_unfair(const AttributeValue& attribute, const Ranking& urr, const Ranking& lrr,
                  std::size_t k);
bool group_favored(const AttributeValue& attribute, const Ranking& urr, const Ranking& lrr,
                   std::size_t k);

// rank in r1 minus rank in r2; positive means r1 treats the candidate worse.
long rank_difference(std::string_view id, const Ranking& r1, const Ranking& r2);

/// ln(count in r1 top-k / count in r2 top-k) for one attribute.
/// One zero count gives -cap (r1 side) or +cap (r2 side); two zeros give 0.
double skew(const AttributeValue& attribute, const Ranking& r1, const Ranking& r2, std::size_t k,
            double cap = kDefaultSkewCap);

struct CandidateVerdict {
  CandidateId candidate_id;
  AttributeValue attribute;
  bool benefited = false;
  bool individually_unfair = false;
  bool favored = false;
  std::optional<long> rank_difference;  // platform rank - reference rank
};

struct GroupVerdict {
  AttributeValue attribute;
  std::size_t count_reference_topk = 0;
  std::size_t count_platform_topk = 0;
  bool unfair = false;
  bool favored = false;
  double skew = 0.0;  // platform vs reference, natural log
};

struct ReportTotals {
  std::size_t n_unfair = 0;
  std::size_t n_favored = 0;
  // Reference top-k members that are not on the platform.
  std::size_t n_absent = 0;
};

struct FairnessReport {
  std::size_t k = 0;
  UnfairnessScope scope = UnfairnessScope::PlatformMembers;
  std::vector<CandidateVerdict> candidate_verdicts;
  std::vector<GroupVerdict> group_verdicts;
  ReportTotals totals;
};

/// Audit of a platform ranking `lrr` against the reference `urr` at prefix k.
///
/// Candidate verdicts cover every candidate of either ranking (reference
/// order first); group verdicts cover the union of both domains. With
/// platform-member scope and k no larger than either ranking,
///   n_favored == n_unfair + n_absent.
FairnessReport fairness_report(const Ranking& urr, const Ranking& lrr,
                               const CandidatePool& platform, std::size_t k,
                               double skew_cap = kDefaultSkewCap,
                               UnfairnessScope scope = UnfairnessScope::PlatformMembers);

}  // namespace fairrank
