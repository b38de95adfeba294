#pragma once

#include <cstddef>
#include <vector>

namespace ginstat {

/// k-statistics (unbiased cumulant estimators) of a Monte Carlo batch.
/// Orders 1..4 use the Fisher formulas; 5 and 6 are plug-in estimates from
/// central moments. Standard errors for k2..k4 are leave-one-out jackknife.
struct CumulantReport {
    std::size_t sample_count = 0;
    double k1 = 0, k2 = 0, k3 = 0, k4 = 0, k5 = 0, k6 = 0;
    double se2 = 0, se3 = 0, se4 = 0;

    double k(int order) const;
    double se(int order) const;
};

CumulantReport k_statistics(const std::vector<double>& samples, int max_order = 6);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct NormalityCheck {
    double predicted_variance = 0;
    double variance_tolerance = 0;
    bool pass_variance = false;
    bool pass_k3 = false;
    bool pass_k4 = false;
    bool pass() const { return pass_variance && pass_k3 && pass_k4; }
};

/// |k2 - predicted| <= tol * predicted, |k3| <= 4 se3, |k4| <= 4 se4.
/// Requires at least 1000 samples.
NormalityCheck normality_report(const CumulantReport& rep, double predicted_variance,
                                double var_tol = 0.15);

}  // namespace ginstat
