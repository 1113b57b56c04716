#include "rrt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace rrt {

namespace {
constexpr double kZ95 = 1.959963984540054;  // Phi^-1(0.975)
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  if (successes > trials) throw std::invalid_argument("wilson_interval: successes > trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // the score interval touches the boundary exactly at 0 and n successes
  const double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

std::uint64_t nearest_rank_quantile(const std::vector<std::uint64_t>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("nearest_rank_quantile: empty sample");
  const auto n = sorted.size();
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return sorted[rank - 1];
}

SizeQuantiles size_quantiles(std::vector<std::uint64_t>& values) {
  std::sort(values.begin(), values.end());
  SizeQuantiles q;
  q.q50 = nearest_rank_quantile(values, 0.50);
  q.q90 = nearest_rank_quantile(values, 0.90);
  q.q99 = nearest_rank_quantile(values, 0.99);
  q.max = values.back();
  return q;
}

double chi_square_upper_p(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  const boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquareResult chi_square_test(const std::vector<std::uint64_t>& observed,
                                const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.empty()) {
    throw std::invalid_argument("chi_square_test: observed/expected size mismatch");
  }
  ChiSquareResult result;
  result.bins = observed.size();
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("chi_square_test: expected count <= 0");
    const double diff = static_cast<double>(observed[i]) - expected[i];
    result.statistic += diff * diff / expected[i];
  }
  result.dof = observed.size() - 1;
  result.p_value = chi_square_upper_p(result.statistic, static_cast<double>(result.dof));
  return result;
}

}  // namespace rrt
