#pragma once

#include <functional>
#include <string>
#include <vector>

namespace calckit {

struct DoubleSeriesProbe {
    std::function<double(int, int)> term;
    std::function<double(double, double)> integrand;
    int truncation = 256;
};

enum class SeriesVerdict { converges, diverges, undecided };

std::string to_string(SeriesVerdict v);

struct DoubleSeriesReport {
    SeriesVerdict verdict = SeriesVerdict::undecided;
    std::vector<int> levels;             // K at which sums and integrals were taken
    std::vector<double> upper_sums;      // sum over 0 <= n, m < K
    std::vector<double> lower_sums;      // sum over 1 <= n, m <= K
    std::vector<double> integrals;       // integral over [0, K]^2
    double increment_ratio = 0.0;        // last dyadic increment over the previous one
};

// Integral test for nonnegative double series: partial sums are bracketed by
// the integral over [0, K]^2, and the verdict comes from how the integral grows
// over dyadic K. Throws PreconditionError for non-monotone or negative samples.
DoubleSeriesReport double_series_integral_test(const DoubleSeriesProbe& probe);

} // namespace calckit
