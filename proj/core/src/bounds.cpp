#include "jcover/bounds.hpp"

namespace jcover {

Count neighborhood_size(const Params& params) {
  const int n = params.n();
  const int k = params.k();
  unsigned __int128 total = 0;
  for (int i = params.threshold(); i <= k; ++i) {
    total += static_cast<unsigned __int128>(binomial(k, i)) *
             binomial(n - k, k - i);
  }
  // Bounded by C(n, k), which fits in 64 bits for n <= 64.
  return static_cast<Count>(total);
}

BoundSummary sphere_covering_lower_bound(const Params& params,
                                         std::optional<Count> upper_bound_known) {
  BoundSummary summary;
  summary.params = params;
  summary.neighborhood_size = neighborhood_size(params);
  summary.total_subsets = binomial(params.n(), params.k());
  const Count n = summary.neighborhood_size;
  summary.lower_bound =
      summary.total_subsets / n + (summary.total_subsets % n != 0 ? 1 : 0);
  if (upper_bound_known && *upper_bound_known < summary.lower_bound) {
    throw Error(Errc::kInvalidParams,
                "claimed cover of size " + std::to_string(*upper_bound_known) +
                    " is below the lower bound " +
                    std::to_string(summary.lower_bound));
  }
  summary.upper_bound_known = upper_bound_known;
  return summary;
}

}  // namespace jcover
