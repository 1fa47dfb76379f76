#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tnet::stats {

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double stddev(std::span<const double> xs);
/// Standard error of the mean.
double std_error(std::span<const double> xs);

/// Linear-interpolation quantile (Hyndman-Fan type 7) of sorted data.
double quantile_sorted(std::span<const double> sorted, double q);

struct BoxStats {
    double min = 0;
    double q1 = 0;
    double median = 0;
    double q3 = 0;
    double max = 0;
    /// Values outside [q1 - 1.5 IQR, q3 + 1.5 IQR].
    std::vector<double> outliers;
};

BoxStats box_stats(std::span<const double> xs);

/// Ranks starting at 1, ties get the average of their positions.
std::vector<double> average_ranks(std::span<const double> xs);
double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);

} // namespace tnet::stats
