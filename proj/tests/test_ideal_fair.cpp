#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "fairrank/error.hpp"
#include "fairrank/ideal_fair.hpp"
#include "fairrank/metrics.hpp"
#include "fairrank/ranker.hpp"
#include "scenarios.hpp"

using namespace fairrank;
using testing::split_ids;

namespace {

Ranking toy_urr() {
  auto u = testing::toy_universe();
  return representative_rank(u, ratio_from_pool(*u));
}

}  // namespace

TEST_CASE("ideal_ifrr projects the universal ranking") {
  const auto urr = toy_urr();
  auto l = testing::toy_platform({"g1", "g2"});
  CHECK(ideal_ifrr(urr, l).ids() == split_ids("b1,g1,b2,b3,g2,b4,b5,b6,b7,b8,b9,b10"));
  CHECK(ideal_ifrr(urr, urr.pool_ref()).ids() == urr.ids());

  auto empty = make_pool({}, testing::toy_domain());
  CHECK(ideal_ifrr(urr, empty).empty());
}

TEST_CASE("ideal_gfrr substitutes within group") {
  const auto urr = toy_urr();
  CHECK(ideal_gfrr(urr, testing::toy_platform({"g1", "g2"})).ids() ==
        split_ids("b1,g1,b2,b3,g2,b4,b5,b6,b7,b8,b9,b10"));
  CHECK(ideal_gfrr(urr, testing::toy_platform({"g2", "g4"})).ids() ==
        split_ids("b1,g2,b2,b3,g4,b4,b5,b6,b7,b8,b9,b10"));
  CHECK(ideal_gfrr(urr, urr.pool_ref()).ids() == urr.ids());
}

TEST_CASE("platform must be a subset of the universe") {
  const auto urr = toy_urr();
  auto foreign = make_pool({{"b1", AttributeValue("b"), 1.0}, {"x9", AttributeValue("g"), 0.4}},
                           testing::toy_domain());
  for (auto fn : {&ideal_ifrr, &ideal_gfrr}) {
    try {
      fn(urr, foreign);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PlatformNotSubset);
      CHECK(e.detail().find("x9") != std::string::npos);
    }
  }

  auto relabelled = make_pool({{"b1", AttributeValue("g"), 1.0}}, testing::toy_domain());
  CHECK_THROWS_AS(ideal_ifrr(urr, relabelled), Error);
}

TEST_CASE("ideal rankings on random scenarios") {
  std::mt19937_64 gen(29);
  for (int round = 0; round < 300; ++round) {
    auto s = testing::random_scenario(gen);
    auto ifrr = ideal_ifrr(s.urr, s.platform);
    auto gfrr = ideal_gfrr(s.urr, s.platform);
    CHECK(ifrr.size() == s.platform->size());
    CHECK(gfrr.size() == s.platform->size());
    CHECK(preserves_group_order(ifrr));
    CHECK(preserves_group_order(gfrr));

    const auto& pool = *s.platform;
    for (std::size_t k = 1; k <= s.platform->size(); ++k) {
      for (const auto& c : pool.candidates()) {
        CHECK(individual_unfairness(c.id, s.urr, ifrr, pool, k) == 0);
        CHECK(individual_unfairness(c.id, s.urr, gfrr, pool, k) == 0);
      }
    }

    // URR slot k maps to output prefix m(k) = sum_a min(urr_a(k), |L_a|);
    // m(k) = k until the first platform group is exhausted.
    for (std::size_t k = 1; k <= s.urr.size(); ++k) {
      std::size_t m = 0;
      std::vector<std::size_t> expected;
      for (std::size_t a = 0; a < pool.domain().size(); ++a) {
        expected.push_back(std::min(s.urr.count_in_prefix(pool.domain()[a], k), pool.group_size(a)));
        m += expected.back();
      }
      for (std::size_t a = 0; a < pool.domain().size(); ++a) {
        CHECK(gfrr.count_in_prefix(pool.domain()[a], m) == expected[a]);
      }
    }
  }
}
