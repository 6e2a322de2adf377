#include "fairrank/estimator.hpp"

#include <cmath>
#include <string>

#include "fairrank/error.hpp"
#include "fairrank/ranker.hpp"

namespace fairrank {

ActivityModel ActivityModel::uniform_at_random(
    std::vector<std::pair<AttributeValue, double>> fractions) {
  for (const auto& [attribute, f] : fractions) {
    if (!std::isfinite(f) || f < 0.0 || f > 1.0) {
      throw Error(ErrorCode::InvalidActivity,
                  "active fraction of '" + attribute.label + "' is outside [0,1]");
    }
  }
  return ActivityModel{JoinModel::UniformAtRandom, std::move(fractions)};
}

std::vector<double> ActivityModel::aligned_to(std::span<const AttributeValue> domain) const {
  std::vector<double> out;
  out.reserve(domain.size());
  for (const auto& attribute : domain) {
    bool found = false;
    for (const auto& [a, f] : active_fraction) {
      if (a == attribute) {
        if (!std::isfinite(f) || f < 0.0 || f > 1.0) {
          throw Error(ErrorCode::InvalidActivity,
                      "active fraction of '" + a.label + "' is outside [0,1]");
        }
        out.push_back(f);
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(ErrorCode::InvalidActivity,
                  "no active fraction for attribute '" + attribute.label + "'");
    }
  }
  return out;
}

Ranking estimated_ifrr(const PoolRef& platform, const RepresentationRatio& universal_ratio,
                       const ActivityModel& activity, SeededRng& rng, PlacementRule rule) {
  const auto& domain = platform->domain();
  const auto proportions = universal_ratio.aligned_to(domain);
  const auto active = activity.aligned_to(domain);
  const std::size_t groups = domain.size();

  std::vector<std::size_t> present(groups);
  std::vector<std::size_t> slots(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    present[g] = platform->group_size(g);
    if (present[g] == 0) {
      slots[g] = 0;
    } else if (active[g] <= 0.0) {
      throw Error(ErrorCode::InfeasibleActivity,
                  "attribute '" + domain[g].label + "' has active fraction 0 but " +
                      std::to_string(present[g]) + " platform candidates");
    } else {
      slots[g] = static_cast<std::size_t>(
          std::ceil(static_cast<double>(present[g]) / active[g] - 1e-9));
    }
  }

  const auto pattern = round_target_pattern(slots, proportions);

  std::vector<std::size_t> placed(groups, 0);
  std::vector<std::size_t> slots_left = slots;
  std::vector<std::uint32_t> order;
  order.reserve(platform->size());
  for (auto g : pattern) {
    const std::size_t remaining = present[g] - placed[g];
    const std::size_t open = slots_left[g]--;
    if (remaining == 0) continue;
    bool fill = true;
    if (active[g] < 1.0) {
      const double p = rule == PlacementRule::AdaptiveSelection
                           ? static_cast<double>(remaining) / static_cast<double>(open)
                           : active[g];
      fill = p >= 1.0 || rng.bernoulli(p);
    }
    if (fill) order.push_back(platform->group(g)[placed[g]++]);
  }

  std::vector<std::size_t> leftover(groups);
  bool any_left = false;
  for (std::size_t g = 0; g < groups; ++g) {
    leftover[g] = present[g] - placed[g];
    any_left = any_left || leftover[g] > 0;
  }
  if (any_left) {
    for (auto g : round_target_pattern(leftover, proportions)) {
      order.push_back(platform->group(g)[placed[g]++]);
    }
  }
  return Ranking(platform, std::move(order));
}

}  // namespace fairrank
