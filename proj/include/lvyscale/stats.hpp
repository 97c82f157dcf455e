#pragma once

#include <cstddef>
#include <span>

namespace lvyscale {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov statistic with the asymptotic p-value
/// Q_KS(sqrt(nm/(n+m)) D); no small-sample correction.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda);

/// Asymptotic critical value c(level) sqrt((n + m) / (n m)).
double ks_critical_value(double level, std::size_t n, std::size_t m);

/// Linear-interpolation quantile (Hyndman-Fan type 7) of unsorted data.
double quantile(std::span<const double> data, double q);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

}  // namespace lvyscale
