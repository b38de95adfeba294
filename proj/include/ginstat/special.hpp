#pragma once

#include "ginstat/scalar.hpp"

namespace ginstat {

/// Scaled complementary error function exp(t^2) erfc(t).
double erfcx(double t);

/// log(erfc(t)), finite up to t ~ 1e3 (erfc itself underflows past t ~ 26.6).
double log_erfc(double t);

/// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a).
/// Series for x < a+1, Lentz continued fraction otherwise.
double gammap(double a, double x);

/// Lower incomplete gamma gamma(a,x). Overflows for large a; use the log form
/// when composing with other exponential factors.
double lower_incomplete_gamma(double a, double x);
double log_lower_incomplete_gamma(double a, double x);

/// e^{-w} * sum_{m=j0}^{K} w^m/m! for complex w, kept in log scale.
/// Uses the complement 1 - e^{-w} * tail when |w| is safely below K, which
/// avoids the alternating-sum cancellation that kills the direct sum.
LogScaled partial_exp_sum_scaled(cplx w, int K, int j0 = 0);

/// sum_{m=0}^{n-1} v^{2m}/(2m)!  (partial cosh series, positive terms).
LogScaled cosh_partial_scaled(double v, int n);

}  // namespace ginstat
