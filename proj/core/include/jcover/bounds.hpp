#pragma once

// Ball sizes in the Johnson scheme and the sphere-covering lower bound.

#include <optional>

#include "jcover/core.hpp"

namespace jcover {

struct BoundSummary {
  Params params = Params::standard();
  // |{S : |S ∩ B| >= threshold}| for any fixed k-subset B.
  Count neighborhood_size = 0;
  Count total_subsets = 0;
  // ceil(total_subsets / neighborhood_size).
  Count lower_bound = 0;
  // Size of a family verified to cover, if one is known.
  std::optional<Count> upper_bound_known;
};

// sum_{i = threshold}^{k} C(k, i) * C(n - k, k - i), with C(a, b) = 0 for b > a.
Count neighborhood_size(const Params& params);

// Throws kInvalidParams if a supplied upper bound is below the lower bound.
BoundSummary sphere_covering_lower_bound(
    const Params& params, std::optional<Count> upper_bound_known = std::nullopt);

}  // namespace jcover
