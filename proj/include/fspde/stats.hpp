#pragma once

#include <cstddef>
#include <vector>

namespace fspde::stats {

double mean(const std::vector<double>& x);
double variance(const std::vector<double>& x);  // unbiased; NaN for size < 2
double median(std::vector<double> x);           // by value: scrambles its copy
double standard_error(const std::vector<double>& x);

double normal_cdf(double x);

// Two-sided Kolmogorov-Smirnov distance against the standard normal.
double ks_distance_normal(std::vector<double> sample);
// Asymptotic p-value Q_KS(sqrt(M) * D).
double ks_pvalue(double d, std::size_t m);

}  // namespace fspde::stats
