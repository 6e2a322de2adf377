#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fairrank/core_model.hpp"

namespace fairrank {

enum class MergeKind { RoundTarget, DetConstSort };

// Which group wins when several are equally eligible for the next slot.
enum class TieBreak { LargerProportionFirst, SmallerProportionFirst };

struct MergePolicy {
  MergeKind kind = MergeKind::RoundTarget;
  TieBreak tie_break = TieBreak::LargerProportionFirst;

  static MergePolicy round_target() { return {MergeKind::RoundTarget, TieBreak::LargerProportionFirst}; }
  static MergePolicy det_const_sort() {
    return {MergeKind::DetConstSort, TieBreak::SmallerProportionFirst};
  }
};

// floor(x + 0.5) with a 1e-9 guard so products like (1/6)*3 round up.
long long round_half_up(double x);

/// Round-target slot pattern: the domain index that fills each position.
///
/// At position k a group is in deficit when its count is below
/// round_half_up(p * k) and it still has members; the deficit group with the
/// preferred proportion wins (then lower domain index). With no deficit the
/// non-exhausted group with the largest proportion is used. The pattern has
/// sum(group_sizes) entries.
std::vector<std::uint32_t> round_target_pattern(std::span<const std::size_t> group_sizes,
                                                std::span<const double> proportions,
                                                TieBreak tie_break = TieBreak::LargerProportionFirst);

// Representative ranking of the whole pool under the round-target merge.
Ranking representative_rank(const PoolRef& pool, const RepresentationRatio& ratio,
                            TieBreak tie_break = TieBreak::LargerProportionFirst);

/// Greedy floor/ceil merge with per-prefix bounds floor(k p) <= count <= ceil(k p).
///
/// Under-represented groups (count < floor(k p)) go first, best next score
/// wins. Otherwise groups below ceil(k p) compete on ceil(k p) / p, smallest
/// wins. Once both sets are empty (a group ran out), the remaining group with
/// the smallest count / p fills the slot.
Ranking generate_gfrr_detconst(const PoolRef& pool, const RepresentationRatio& ratio,
                               TieBreak tie_break = TieBreak::SmallerProportionFirst);

Ranking merge(const PoolRef& pool, const RepresentationRatio& ratio, const MergePolicy& policy);

}  // namespace fairrank
