#pragma once

#include <string>
#include <vector>

#include "seqvote/instance.hpp"

namespace seqvote {

struct MetricsRow {
  std::string rule;
  std::size_t trial = 0;
  double avg_utility = 0;
  double p25_utility = 0;
  double gini = 0;
};

double avg_utility(const UtilityVector& u, std::size_t horizon);
/// Nearest-rank 25th percentile of u / horizon.
double p25_utility(const UtilityVector& u, std::size_t horizon);
double gini(const UtilityVector& u);

/// Nearest-rank percentile (q in [0, 1]) of `values`; 0 for an empty list.
double percentile(std::vector<double> values, double q);

MetricsRow metrics_row(std::string rule, std::size_t trial, const UtilityVector& u, std::size_t horizon);

}  // namespace seqvote
