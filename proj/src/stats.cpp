#include "regres/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace regres::stats {

double chi_square_upper_tail(double statistic, std::size_t dof) {
  if (dof == 0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> expected_prob) {
  if (observed.size() != expected_prob.size()) {
    throw std::invalid_argument("chi_square_gof: size mismatch");
  }
  const double total_prob = std::accumulate(expected_prob.begin(), expected_prob.end(), 0.0);
  const double total = static_cast<double>(
      std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  if (total_prob <= 0.0 || total <= 0.0) throw std::invalid_argument("chi_square_gof: empty data");

  ChiSquareResult r;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = total * expected_prob[i] / total_prob;
    if (e == 0.0) {
      if (observed[i] != 0) {
        r.statistic = std::numeric_limits<double>::infinity();
        r.p_value = 0.0;
        return r;
      }
      continue;
    }
    const double diff = static_cast<double>(observed[i]) - e;
    r.statistic += diff * diff / e;
    ++cells;
  }
  r.dof = cells > 0 ? cells - 1 : 0;
  r.p_value = chi_square_upper_tail(r.statistic, r.dof);
  return r;
}

ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> observed) {
  const std::vector<double> uniform(observed.size(), 1.0);
  return chi_square_gof(observed, uniform);
}

ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> first,
                                      std::span<const std::uint64_t> second) {
  if (first.size() != second.size()) throw std::invalid_argument("chi_square_two_sample: size mismatch");
  const double n1 = static_cast<double>(std::accumulate(first.begin(), first.end(), std::uint64_t{0}));
  const double n2 = static_cast<double>(std::accumulate(second.begin(), second.end(), std::uint64_t{0}));
  if (n1 == 0.0 || n2 == 0.0) throw std::invalid_argument("chi_square_two_sample: empty sample");
  ChiSquareResult r;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    const double col = static_cast<double>(first[i] + second[i]);
    if (col == 0.0) continue;
    ++cols;
    const double e1 = col * n1 / (n1 + n2);
    const double e2 = col * n2 / (n1 + n2);
    const double d1 = static_cast<double>(first[i]) - e1;
    const double d2 = static_cast<double>(second[i]) - e2;
    r.statistic += d1 * d1 / e1 + d2 * d2 / e2;
  }
  r.dof = cols > 0 ? cols - 1 : 0;
  r.p_value = chi_square_upper_tail(r.statistic, r.dof);
  return r;
}

double binomial_cdf(std::uint64_t trials, double p, std::int64_t k) {
  if (k < 0) return 0.0;
  if (static_cast<std::uint64_t>(k) >= trials) return 1.0;
  p = std::clamp(p, 0.0, 1.0);
  const boost::math::binomial_distribution<double> dist(static_cast<double>(trials), p);
  return boost::math::cdf(dist, static_cast<double>(k));
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double alpha) {
  if (trials == 0) return {0.0, 1.0};
  const double z = boost::math::quantile(boost::math::normal_distribution<double>(), 1.0 - alpha / 2.0);
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (phat + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Summary summarize(std::span<const double> xs) {
  Summary s;
  if (xs.empty()) return s;
  const double n = static_cast<double>(xs.size());
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double sq = 0.0;
  for (double x : xs) sq += (x - s.mean) * (x - s.mean);
  s.stddev = xs.size() > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

}  // namespace regres::stats
