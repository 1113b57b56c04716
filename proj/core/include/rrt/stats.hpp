#pragma once

#include <cstdint>
#include <vector>

namespace rrt {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Two-sided 95% Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

// Nearest-rank quantile on an ascending-sorted sample: element of rank
// ceil(p * N), clamped to [1, N].
std::uint64_t nearest_rank_quantile(const std::vector<std::uint64_t>& sorted, double p);

struct SizeQuantiles {
  std::uint64_t q50 = 0;
  std::uint64_t q90 = 0;
  std::uint64_t q99 = 0;
  std::uint64_t max = 0;
};

// Sorts `values` in place.
SizeQuantiles size_quantiles(std::vector<std::uint64_t>& values);

// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_upper_p(double statistic, double dof);

struct ChiSquareResult {
  double statistic = 0.0;
  std::uint64_t dof = 0;
  double p_value = 1.0;
  std::uint64_t bins = 0;
};

// Pearson statistic of observed bin counts against per-bin expectations.
ChiSquareResult chi_square_test(const std::vector<std::uint64_t>& observed,
                                const std::vector<double>& expected);

}  // namespace rrt
