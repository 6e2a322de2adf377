#pragma once

#include "fairrank/core_model.hpp"

namespace fairrank {

// Projection of the universal ranking onto platform members. Throws
// PlatformNotSubset if a platform candidate is absent from `urr` or carries a
// different attribute there.
Ranking ideal_ifrr(const Ranking& urr, const PoolRef& platform);

/// Slot-substitution re-ranking: walks `urr` and fills each position with the
/// best not-yet-placed platform candidate of that position's attribute.
/// Positions whose group is exhausted on the platform are dropped, so the
/// output is a permutation of the platform.
Ranking ideal_gfrr(const Ranking& urr, const PoolRef& platform);

}  // namespace fairrank
