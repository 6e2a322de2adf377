#include "fairrank/ranker.hpp"

#include <cmath>
#include <limits>

#include "fairrank/error.hpp"

namespace fairrank {

namespace {

constexpr double kEps = 1e-9;

long long floor_guarded(double x) { return static_cast<long long>(std::floor(x + kEps)); }
long long ceil_guarded(double x) { return static_cast<long long>(std::ceil(x - kEps)); }

// True when group `a` should win over the current best `b` on proportion.
bool proportion_preferred(double pa, double pb, TieBreak tie_break) {
  return tie_break == TieBreak::LargerProportionFirst ? pa > pb : pa < pb;
}

// Fills every slot of `pattern` with the next within-group candidate.
Ranking materialize(const PoolRef& pool, std::span<const std::uint32_t> pattern) {
  std::vector<std::size_t> next(pool->domain().size(), 0);
  std::vector<std::uint32_t> order;
  order.reserve(pattern.size());
  for (auto g : pattern) order.push_back(pool->group(g)[next[g]++]);
  return Ranking(pool, std::move(order));
}

std::vector<std::size_t> group_sizes(const CandidatePool& pool) {
  std::vector<std::size_t> sizes(pool.domain().size());
  for (std::size_t g = 0; g < sizes.size(); ++g) sizes[g] = pool.group_size(g);
  return sizes;
}

}  // namespace

long long round_half_up(double x) { return static_cast<long long>(std::floor(x + 0.5 + kEps)); }

std::vector<std::uint32_t> round_target_pattern(std::span<const std::size_t> group_sizes,
                                                std::span<const double> proportions,
                                                TieBreak tie_break) {
  const std::size_t groups = group_sizes.size();
  std::size_t total = 0;
  for (auto n : group_sizes) total += n;

  std::vector<std::size_t> count(groups, 0);
  std::vector<std::uint32_t> pattern;
  pattern.reserve(total);
  for (std::size_t k = 1; k <= total; ++k) {
    std::size_t pick = groups;
    for (std::size_t g = 0; g < groups; ++g) {
      if (count[g] >= group_sizes[g]) continue;
      const auto target = round_half_up(proportions[g] * static_cast<double>(k));
      if (static_cast<long long>(count[g]) >= target) continue;
      if (pick == groups || proportion_preferred(proportions[g], proportions[pick], tie_break)) {
        pick = g;
      }
    }
    if (pick == groups) {
      for (std::size_t g = 0; g < groups; ++g) {
        if (count[g] >= group_sizes[g]) continue;
        if (pick == groups || proportions[g] > proportions[pick]) pick = g;
      }
    }
    ++count[pick];
    pattern.push_back(static_cast<std::uint32_t>(pick));
  }
  return pattern;
}

Ranking representative_rank(const PoolRef& pool, const RepresentationRatio& ratio,
                            TieBreak tie_break) {
  const auto proportions = ratio.aligned_to(pool->domain());
  const auto sizes = group_sizes(*pool);
  return materialize(pool, round_target_pattern(sizes, proportions, tie_break));
}

Ranking generate_gfrr_detconst(const PoolRef& pool, const RepresentationRatio& ratio,
                               TieBreak tie_break) {
  const auto proportions = ratio.aligned_to(pool->domain());
  const auto sizes = group_sizes(*pool);
  const std::size_t groups = sizes.size();
  for (std::size_t g = 0; g < groups; ++g) {
    if (proportions[g] <= 0.0 && sizes[g] > 0) {
      throw Error(ErrorCode::ZeroProportionWithCandidates,
                  "attribute '" + pool->domain()[g].label + "' has proportion 0 but " +
                      std::to_string(sizes[g]) + " candidates");
    }
  }

  std::vector<std::size_t> count(groups, 0);
  std::vector<std::uint32_t> order;
  order.reserve(pool->size());
  for (std::size_t k = 1; k <= pool->size(); ++k) {
    const double kd = static_cast<double>(k);
    std::size_t under_rep = groups;
    std::size_t under_limit = groups;
    double best_limit = std::numeric_limits<double>::infinity();

    for (std::size_t g = 0; g < groups; ++g) {
      if (count[g] >= sizes[g]) continue;
      const auto c = static_cast<long long>(count[g]);
      const auto lo = floor_guarded(kd * proportions[g]);
      const auto hi = ceil_guarded(kd * proportions[g]);
      if (c < lo) {
        const double score = (*pool)[pool->group(g)[count[g]]].score;
        if (under_rep == groups || score > (*pool)[pool->group(under_rep)[count[under_rep]]].score) {
          under_rep = g;
        }
      } else if (c < hi) {
        const double key = static_cast<double>(hi) / proportions[g];
        const double tol = kEps * std::max(1.0, std::abs(best_limit));
        if (under_limit == groups || key < best_limit - tol) {
          under_limit = g;
          best_limit = key;
        } else if (std::abs(key - best_limit) <= tol &&
                   proportion_preferred(proportions[g], proportions[under_limit], tie_break)) {
          under_limit = g;
          best_limit = key;
        }
      }
    }

    std::size_t pick = under_rep != groups ? under_rep : under_limit;
    if (pick == groups) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t g = 0; g < groups; ++g) {
        if (count[g] >= sizes[g]) continue;
        const double key = static_cast<double>(count[g]) / proportions[g];
        if (pick == groups || key < best - kEps ||
            (std::abs(key - best) <= kEps &&
             proportion_preferred(proportions[g], proportions[pick], tie_break))) {
          pick = g;
          best = key;
        }
      }
    }
    order.push_back(pool->group(pick)[count[pick]++]);
  }
  return Ranking(pool, std::move(order));
}

Ranking merge(const PoolRef& pool, const RepresentationRatio& ratio, const MergePolicy& policy) {
  switch (policy.kind) {
    case MergeKind::RoundTarget: return representative_rank(pool, ratio, policy.tie_break);
    case MergeKind::DetConstSort: return generate_gfrr_detconst(pool, ratio, policy.tie_break);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown merge kind");
}

}  // namespace fairrank
