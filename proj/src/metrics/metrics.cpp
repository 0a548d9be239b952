#include <algorithm>
#include <cmath>
#include <numeric>

#include "seqvote/metrics.hpp"

namespace seqvote {

double avg_utility(const UtilityVector& u, std::size_t horizon) {
  if (u.empty() || horizon == 0) return 0.0;
  const double total = static_cast<double>(std::accumulate(u.begin(), u.end(), std::size_t{0}));
  return total / (static_cast<double>(u.size()) * static_cast<double>(horizon));
}

double p25_utility(const UtilityVector& u, std::size_t horizon) {
  if (u.empty() || horizon == 0) return 0.0;
  UtilityVector sorted = u;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t rank = (sorted.size() + 3) / 4;  // ceil(n / 4), 1-based
  return static_cast<double>(sorted[rank - 1]) / static_cast<double>(horizon);
}

double gini(const UtilityVector& u) {
  const std::size_t total = std::accumulate(u.begin(), u.end(), std::size_t{0});
  if (total == 0) return 0.0;
  // Sum of |u_i - u_j| over ordered pairs from the sorted vector.
  UtilityVector sorted = u;
  std::sort(sorted.begin(), sorted.end());
  long double pairwise = 0;
  long double prefix = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    pairwise += static_cast<long double>(sorted[i]) * static_cast<long double>(i) - prefix;
    prefix += static_cast<long double>(sorted[i]);
  }
  pairwise *= 2;
  return static_cast<double>(pairwise / (2.0L * static_cast<long double>(u.size()) * static_cast<long double>(total)));
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size()) - 1e-12));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

MetricsRow metrics_row(std::string rule, std::size_t trial, const UtilityVector& u, std::size_t horizon) {
  return {std::move(rule), trial, avg_utility(u, horizon), p25_utility(u, horizon), gini(u)};
}

}  // namespace seqvote
