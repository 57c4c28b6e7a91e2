#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace regres::stats {

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness-of-fit against expected probabilities (which need not be
/// normalised). Cells with zero expected mass must have zero observations.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> expected_prob);

/// Goodness-of-fit against the uniform law on observed.size() cells.
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> observed);

/// Two-sample homogeneity test on a 2 x k contingency table. Columns empty in
/// both samples are dropped.
ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> first,
                                      std::span<const std::uint64_t> second);

/// Upper tail P[X >= statistic] for X ~ chi-square(dof).
double chi_square_upper_tail(double statistic, std::size_t dof);

/// P[X <= k] for X ~ Bin(trials, p); p is clamped to [0,1].
double binomial_cdf(std::uint64_t trials, double p, std::int64_t k);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion at level 1 - alpha.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double alpha = 0.05);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
};
Summary summarize(std::span<const double> xs);

}  // namespace regres::stats
