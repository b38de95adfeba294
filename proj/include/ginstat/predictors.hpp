#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "ginstat/kernels.hpp"
#include "ginstat/test_functions.hpp"

namespace ginstat {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

/// (1/4pi) Int (f_x^2 + f_y^2), the bulk limiting variance (upper-half bump).
double predict_bulk_variance(const TestFunction& f);

/// (2 - sqrt2)/sqrt(pi) * Int f^2, the real-line limiting variance
/// of the n^{-1/4}-normalized statistic (interval bump).
double predict_line_variance(const TestFunction& f);

struct GinueVariance {
    double sigma_a2 = 0;  // (1/4pi) Int_D |grad f|^2
    double sigma_b2 = 0;  // (1/2) sum_k |k| |f_hat_k|^2 on the unit circle
    double total() const { return sigma_a2 + sigma_b2; }
};

/// Bulk + edge variance components for the complex ensemble (bump or
/// harmonic-polynomial families).
GinueVariance predict_ginue_variance(const TestFunction& f);

/// N!/(k_1! ... k_m!), exact. Requires positive parts summing to N <= 64.
bigint multinomial(int N, const std::vector<int>& parts);

/// a_N = sum_m ((-1)^{m-1}/m) sum_{k_1+..+k_m=N} N!/(k_1!..k_m!), exact.
/// Vanishes for N >= 2.
bigrat identity_aN(int N);

/// Same weights with the extra sum_{i != j} k_i k_j factor, exact.
/// Vanishes for N > 2; direct enumeration gives b_2 = -2.
bigrat identity_bN(int N);

/// Cumulant of the S-only point process by the cyclic-integral formula,
/// tensor quadrature over supp f. Complex regime, k <= 3.
double costin_lebowitz_cumulant(const KernelContext& ctx, const TestFunction& f, int k);

}  // namespace ginstat
