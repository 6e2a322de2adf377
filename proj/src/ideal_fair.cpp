#include "fairrank/ideal_fair.hpp"

#include <deque>

#include "fairrank/error.hpp"

namespace fairrank {

namespace {

void require_subset(const Ranking& urr, const CandidatePool& platform) {
  const auto& universe = urr.pool();
  for (const auto& c : platform.candidates()) {
    auto index = universe.index_of(c.id);
    if (!index || urr.rank_of_index(*index) == 0) {
      throw Error(ErrorCode::PlatformNotSubset, c.id + " is not in the universal ranking");
    }
    if (universe[*index].attribute != c.attribute) {
      throw Error(ErrorCode::PlatformNotSubset,
                  c.id + " has attribute '" + c.attribute.label + "' on the platform but '" +
                      universe[*index].attribute.label + "' in the universe");
    }
  }
}

}  // namespace

Ranking ideal_ifrr(const Ranking& urr, const PoolRef& platform) {
  require_subset(urr, *platform);
  const auto& universe = urr.pool();
  std::vector<std::uint32_t> order;
  order.reserve(platform->size());
  for (auto u : urr.order()) {
    if (auto p = platform->index_of(universe[u].id)) order.push_back(static_cast<std::uint32_t>(*p));
  }
  return Ranking(platform, std::move(order));
}

Ranking ideal_gfrr(const Ranking& urr, const PoolRef& platform) {
  const Ranking ifrr = ideal_ifrr(urr, platform);

  // getNext(IFRR, a) is the head of a per-attribute queue in IFRR order.
  std::vector<std::deque<std::uint32_t>> remaining(platform->domain().size());
  for (auto p : ifrr.order()) remaining[platform->group_of(p)].push_back(p);

  const auto& universe = urr.pool();
  std::vector<std::optional<std::size_t>> platform_group(universe.domain().size());
  for (std::size_t g = 0; g < universe.domain().size(); ++g) {
    platform_group[g] = platform->domain_index(universe.domain()[g]);
  }

  std::vector<std::uint32_t> order;
  order.reserve(platform->size());
  for (auto u : urr.order()) {
    const auto& g = platform_group[universe.group_of(u)];
    if (!g || remaining[*g].empty()) continue;
    order.push_back(remaining[*g].front());
    remaining[*g].pop_front();
  }
  return Ranking(platform, std::move(order));
}

}  // namespace fairrank
