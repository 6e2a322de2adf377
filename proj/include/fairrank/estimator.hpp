#pragma once

#include <utility>
#include <vector>

#include "fairrank/core_model.hpp"
#include "fairrank/rng.hpp"

namespace fairrank {

// How candidates come to be missing from the platform. Score-correlated
// joining models would be added here.
enum class JoinModel { UniformAtRandom };

struct ActivityModel {
  JoinModel kind = JoinModel::UniformAtRandom;
  std::vector<std::pair<AttributeValue, double>> active_fraction;

  // Throws InvalidActivity unless every fraction is in [0,1].
  static ActivityModel uniform_at_random(std::vector<std::pair<AttributeValue, double>> fractions);

  // Fractions aligned with `domain`; throws InvalidActivity on a missing entry.
  std::vector<double> aligned_to(std::span<const AttributeValue> domain) const;
};

enum class PlacementRule {
  // Fill a reserved slot with probability remaining / remaining-slots for the
  // group. The first draw is ~f and every uniform subset of slots is equally
  // likely, matching the projection of a u.a.r.-thinned universe.
  AdaptiveSelection,
  // Fill every reserved slot with probability f, independently.
  FixedBernoulli,
};

/// Estimated individual-fair ranking of the platform when only the universal
/// ratio and per-group activeness are known.
///
/// A round-target slot pattern is laid out for the estimated universe
/// (ceil(n_a / f_a) slots per group, universal proportions). Fully active
/// groups fill their slots in order; slots of sub-active groups are filled by
/// `rule` and dropped on a miss. Anything left is appended ratio-interleaved.
Ranking estimated_ifrr(const PoolRef& platform, const RepresentationRatio& universal_ratio,
                       const ActivityModel& activity, SeededRng& rng,
                       PlacementRule rule = PlacementRule::AdaptiveSelection);

}  // namespace fairrank
