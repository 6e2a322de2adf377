#include "fairrank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fairrank/error.hpp"

namespace fairrank {

namespace {

void require_prefix(std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "prefix size k must be >= 1");
}

bool in_top_k(const Ranking& ranking, std::string_view id, std::size_t k) {
  auto rank = ranking.rank_of(id);
  return rank && *rank <= k;
}

}  // namespace

bool is_benefited(std::string_view id, const Ranking& platform_ranking, std::size_t k) {
  require_prefix(k);
  return in_top_k(platform_ranking, id, k);
}

int individual_unfairness(std::string_view id, const Ranking& urr, const Ranking& lrr,
                          const CandidatePool& platform, std::size_t k, UnfairnessScope scope) {
  require_prefix(k);
  if (scope == UnfairnessScope::PlatformMembers && !platform.contains(id)) return 0;
  return in_top_k(urr, id, k) && !in_top_k(lrr, id, k) ? 1 : 0;
}

bool is_favored(std::string_view id, const Ranking& urr, const Ranking& lrr, std::size_t k) {
  require_prefix(k);
  return in_top_k(lrr, id, k) && !in_top_k(urr, id, k);
}

bool group_unfair(const AttributeValue& attribute, const Ranking& urr, const Ranking& lrr,
                  std::size_t k) {
  require_prefix(k);
  return lrr.count_in_prefix(attribute, k) < urr.count_in_prefix(attribute, k);
}

bool group_favored(const AttributeValue& attribute, const Ranking& urr, const Ranking& lrr,
                   std::size_t k) {
  require_prefix(k);
  return lrr.count_in_prefix(attribute, k) > urr.count_in_prefix(attribute, k);
}

long rank_difference(std::string_view id, const Ranking& r1, const Ranking& r2) {
  auto first = r1.rank_of(id);
  if (!first) throw Error(ErrorCode::MissingFromRanking, std::string(id) + " is not in the first ranking");
  auto second = r2.rank_of(id);
  if (!second) throw Error(ErrorCode::MissingFromRanking, std::string(id) + " is not in the second ranking");
  return static_cast<long>(*first) - static_cast<long>(*second);
}

double skew(const AttributeValue& attribute, const Ranking& r1, const Ranking& r2, std::size_t k,
            double cap) {
  require_prefix(k);
  if (!(cap > 0.0)) throw Error(ErrorCode::InvalidArgument, "skew cap must be > 0");
  const auto numerator = r1.count_in_prefix(attribute, k);
  const auto denominator = r2.count_in_prefix(attribute, k);
  if (numerator == 0 && denominator == 0) return 0.0;
  if (numerator == 0) return -cap;
  if (denominator == 0) return cap;
  return std::log(static_cast<double>(numerator) / static_cast<double>(denominator));
}

FairnessReport fairness_report(const Ranking& urr, const Ranking& lrr,
                               const CandidatePool& platform, std::size_t k, double skew_cap,
                               UnfairnessScope scope) {
  require_prefix(k);
  FairnessReport report;
  report.k = k;
  report.scope = scope;

  auto verdict_for = [&](const Candidate& c) {
    CandidateVerdict v;
    v.candidate_id = c.id;
    v.attribute = c.attribute;
    const auto ref_rank = urr.rank_of(c.id);
    const auto plat_rank = lrr.rank_of(c.id);
    const bool in_ref = ref_rank && *ref_rank <= k;
    const bool in_plat = plat_rank && *plat_rank <= k;
    const bool member = platform.contains(c.id);
    v.benefited = in_plat;
    v.favored = in_plat && !in_ref;
    v.individually_unfair =
        in_ref && !in_plat && (member || scope == UnfairnessScope::Strict);
    if (ref_rank && plat_rank) {
      v.rank_difference = static_cast<long>(*plat_rank) - static_cast<long>(*ref_rank);
    }
    if (v.individually_unfair) ++report.totals.n_unfair;
    if (v.favored) ++report.totals.n_favored;
    if (in_ref && !member) ++report.totals.n_absent;
    return v;
  };

  report.candidate_verdicts.reserve(urr.size());
  for (std::size_t r = 1; r <= urr.size(); ++r) report.candidate_verdicts.push_back(verdict_for(urr.at(r)));
  for (std::size_t r = 1; r <= lrr.size(); ++r) {
    const auto& c = lrr.at(r);
    if (!urr.rank_of(c.id)) report.candidate_verdicts.push_back(verdict_for(c));
  }

  std::vector<AttributeValue> attributes = urr.pool().domain();
  for (const auto& a : lrr.pool().domain()) {
    if (std::find(attributes.begin(), attributes.end(), a) == attributes.end()) attributes.push_back(a);
  }
  for (const auto& a : attributes) {
    GroupVerdict g;
    g.attribute = a;
    g.count_reference_topk = urr.count_in_prefix(a, k);
    g.count_platform_topk = lrr.count_in_prefix(a, k);
    g.unfair = g.count_platform_topk < g.count_reference_topk;
    g.favored = g.count_platform_topk > g.count_reference_topk;
    g.skew = skew(a, lrr, urr, k, skew_cap);
    report.group_verdicts.push_back(std::move(g));
  }
  return report;
}

}  // namespace fairrank
